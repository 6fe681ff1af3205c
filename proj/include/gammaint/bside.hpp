#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <set>

#include "gamma.hpp"
#include "series.hpp"

namespace gammaint {

/// Laurent polynomial in t_1..t_n with coefficients of type C.
template <class C>
struct LaurentPoly {
    std::map<ZVec, C> terms;
};

/// A Landau-Ginzburg mirror W = W^(0) - sum_{j>=1} W^(j) (the split is kept explicit).
struct LGModel {
    std::vector<std::vector<size_t>> parts; ///< indices of vectors b_i in each part, j = 0..c
    std::vector<QVec> alpha_exponents;      ///< alpha_i = prod_a q_a^{x_a[i]} (length N, each of length k)
    size_t n = 0;
};

/// W^(j) = sum_{i in I_j} alpha_i t^{b_i}. Part 0 collects all vectors outside the nef partition.
inline LGModel build_W(const ToricModel& model, const std::vector<ZVec>& section = {}) {
    const auto& fan = model.fan();
    LGModel lg;
    lg.n = fan.n;
    size_t c = model.codim();
    lg.parts.assign(c + 1, {});
    for (size_t i = 0; i < fan.N(); ++i) {
        size_t owner = 0;
        for (size_t j = 0; j < c; ++j)
            if (model.partition()->lifts[j][i] == 1) owner = j + 1;
        lg.parts[owner].push_back(i);
    }
    const auto& lifts = section.empty() ? model.lattice().nef_lifts() : section;
    if (lifts.size() != model.k()) fail(ErrorKind::InvalidInput, "alpha section needs one vector per q variable");
    // D S = id check: each lift pairs to the dual basis.
    for (size_t a = 0; a < model.k(); ++a)
        for (size_t b = 0; b < model.k(); ++b) {
            long s = 0;
            for (size_t i = 0; i < fan.N(); ++i) s += lifts[a][i] * model.lattice().basis()[b][i];
            if (s != (a == b ? 1 : 0)) fail(ErrorKind::InvalidInput, "alpha section is not a section of the divisor map");
        }
    lg.alpha_exponents.assign(fan.N(), QVec(model.k(), Rational(0)));
    for (size_t i = 0; i < fan.N(); ++i)
        for (size_t a = 0; a < model.k(); ++a) lg.alpha_exponents[i][a] = lifts[a][i];
    return lg;
}

inline std::string format_W(const ToricModel& model, const LGModel& lg) {
    std::ostringstream os;
    for (size_t j = 0; j < lg.parts.size(); ++j) {
        if (j) os << " ; W" << j << " = ";
        else os << "W0 = ";
        bool first = true;
        for (size_t i : lg.parts[j]) {
            if (!first) os << " + ";
            first = false;
            std::string coef = format_monomial(lg.alpha_exponents[i]);
            std::string mono;
            const auto& b = model.fan().b(i);
            for (size_t r = 0; r < b.size(); ++r) {
                if (b[r] == 0) continue;
                if (!mono.empty()) mono += "*";
                mono += "t" + std::to_string(r + 1);
                if (b[r] != 1) mono += "^" + std::to_string(b[r]);
            }
            if (coef == "1" && mono.empty()) os << "1";
            else if (coef == "1") os << mono;
            else if (mono.empty()) os << coef;
            else os << coef << "*" << mono;
        }
        if (first) os << "0";
    }
    return os.str();
}

/// Exact rational series in q with a (2 pi i)^power prefactor.
struct ResidueSeries {
    int two_pi_i_power = 0;
    Rational bound;
    std::map<QVec, Rational> terms;
};

namespace detail {

/// Nonnegative integer d (length N) with sum d_j b_j + v = 0 and q-degree of d + v at most bound.
inline std::vector<std::pair<ZVec, QVec>> admissible_exponents(const ToricModel& model, size_t v, const Rational& bound) {
    std::vector<std::pair<ZVec, QVec>> out;
    for (const auto& f : model.lattice().enumerate_Kv(v, bound)) {
        bool ok = true;
        ZVec d(f.d.size());
        for (size_t i = 0; i < f.d.size() && ok; ++i) {
            if (!is_integer(f.d[i]) || f.d[i] < 0) ok = false;
            else d[i] = to_long(f.d[i]);
        }
        if (ok) out.push_back({d, f.q});
    }
    return out;
}

inline long require_integral_age(const ToricModel& model, size_t v) {
    const Rational& age = model.box()[v].age;
    if (!is_integer(age)) fail(ErrorKind::Domain, "compact-cycle series needs an integral age");
    return to_long(age);
}

} // namespace detail

/// Residue-side series: (2 pi i)^{n-1} times the constant-term expansion of
/// -(1/2 pi i) (-1)^age age! alpha^v t^v (W - 1)^{-1-age}, computed from powers of W.
inline ResidueSeries torus_residue_series(const ToricModel& model, size_t v, const Rational& order) {
    const auto& fan = model.fan();
    long age = detail::require_integral_age(model, v);
    auto adm = detail::admissible_exponents(model, v, order);
    size_t N = fan.N();
    ZVec cap(N, 0);
    for (const auto& [d, q] : adm)
        for (size_t j = 0; j < N; ++j) cap[j] = std::max(cap[j], d[j]);
    ZVec target(fan.n);
    for (size_t r = 0; r < fan.n; ++r) target[r] = -model.box()[v].v[r];
    // (W - 1)^{-(age+1)} = (-1)^{age+1} sum_m binom(m+age, age) W^m
    Rational prefactor = -Rational(age % 2 ? -1 : 1) * factorial(age) * Rational((age + 1) % 2 ? -1 : 1);
    ResidueSeries out;
    out.two_pi_i_power = static_cast<int>(fan.n) - 1;
    out.bound = order;
    std::map<ZVec, Rational> level{{ZVec(N, 0), Rational(1)}};
    QVec cv(N, Rational(0));
    for (size_t i = 0; i < fan.m(); ++i) cv[i] = model.box()[v].c[i];
    for (long m = 0; !level.empty(); ++m) {
        Rational bin = binomial(m + age, age);
        for (const auto& [d, coef] : level) {
            ZVec t(fan.n, 0);
            for (size_t j = 0; j < N; ++j)
                for (size_t r = 0; r < fan.n; ++r) t[r] += d[j] * fan.b(j)[r];
            if (t != target) continue;
            QVec cls = cv;
            for (size_t j = 0; j < N; ++j) cls[j] += d[j];
            QVec q = model.lattice().coords(cls);
            if (total_degree(q) > order) continue;
            out.terms[q] += prefactor * bin * coef;
        }
        std::map<ZVec, Rational> next;
        for (const auto& [d, coef] : level)
            for (size_t j = 0; j < N; ++j) {
                if (d[j] + 1 > cap[j]) continue;
                ZVec e = d;
                e[j] += 1;
                next[e] += coef;
            }
        level = std::move(next);
    }
    for (auto it = out.terms.begin(); it != out.terms.end();) it = it->second == 0 ? out.terms.erase(it) : std::next(it);
    return out;
}

/// A-side closed form: (2 pi i)^{n-1} sum (|d| + age)! / prod d_j! q^{d+v}.
inline ResidueSeries multinomial_period_series(const ToricModel& model, size_t v, const Rational& order) {
    long age = detail::require_integral_age(model, v);
    ResidueSeries out;
    out.two_pi_i_power = static_cast<int>(model.n()) - 1;
    out.bound = order;
    for (const auto& [d, q] : detail::admissible_exponents(model, v, order)) {
        long tot = age;
        Rational den = 1;
        for (long x : d) {
            tot += x;
            den *= factorial(x);
        }
        out.terms[q] += factorial(tot) / den;
    }
    return out;
}

/// Series in alpha_0..alpha_N (exponent vectors of length N+1).
using AlphaSeries = std::map<ZVec, Rational>;

struct GKZGenerator {
    ZVec b;
    long k;
};

struct GKZCheck {
    size_t generators = 0;
    size_t operators_checked = 0;
    size_t terms_compared = 0;
    size_t failures = 0;
    Integer normalized_volume;
    std::vector<std::string> failure_notes;
    Rational log_period_scaling_residual; ///< Z_{0,0} applied to the k = 0 period (equals 1)
};

/// Periods Pi_c = (-1)^{k-1}(k-1)! [t^0] t^b / W^k, W = alpha_0 + sum_j alpha_j t^{b_j}, expanded in alpha_0^{-1}.
class GKZFamily {
public:
    GKZFamily(const ToricModel& model, long box) : model_(model), box_(box) {
        const auto& fan = model.fan();
        N_ = fan.N();
        std::map<ZVec, Rational> level{{ZVec(N_, 0), Rational(1)}};
        while (!level.empty()) {
            for (const auto& [d, coef] : level) {
                ZVec t(fan.n, 0);
                for (size_t j = 0; j < N_; ++j)
                    for (size_t r = 0; r < fan.n; ++r) t[r] += d[j] * fan.b(j)[r];
                buckets_[t].push_back({d, coef});
            }
            std::map<ZVec, Rational> next;
            for (const auto& [d, coef] : level)
                for (size_t j = 0; j < N_; ++j) {
                    if (d[j] + 1 > box_) continue;
                    ZVec e = d;
                    e[j] += 1;
                    next[e] += coef;
                }
            level = std::move(next);
        }
    }

    AlphaSeries period(const GKZGenerator& c) const {
        AlphaSeries out;
        if (c.k <= 0) fail(ErrorKind::Domain, "use log_period for k = 0");
        ZVec key(c.b.size());
        for (size_t r = 0; r < c.b.size(); ++r) key[r] = -c.b[r];
        auto it = buckets_.find(key);
        if (it == buckets_.end()) return out;
        Rational lead = Rational((c.k - 1) % 2 ? -1 : 1) * factorial(c.k - 1);
        for (const auto& [d, coef] : it->second) {
            long m = 0;
            for (long x : d) m += x;
            // binom(-k, m) = (-1)^m binom(k+m-1, m)
            Rational bin = Rational(m % 2 ? -1 : 1) * binomial(c.k + m - 1, m);
            ZVec e(N_ + 1);
            e[0] = -c.k - m;
            for (size_t j = 0; j < N_; ++j) e[j + 1] = d[j];
            out[e] += lead * bin * coef;
        }
        return out;
    }

    /// Non-logarithmic part of the k = 0 period log alpha_0 - sum_{d != 0} (-1)^{|d|} (|d|-1)!/prod d! alpha_0^{-|d|} alpha^d.
    AlphaSeries log_period_series() const {
        AlphaSeries out;
        auto it = buckets_.find(ZVec(model_.n(), 0));
        if (it == buckets_.end()) return out;
        for (const auto& [d, coef] : it->second) {
            long m = 0;
            for (long x : d) m += x;
            if (m == 0) continue;
            ZVec e(N_ + 1);
            e[0] = -m;
            for (size_t j = 0; j < N_; ++j) e[j + 1] = d[j];
            // coef = m!/prod d!, so (m-1)!/prod d! = coef / m
            out[e] -= Rational(m % 2 ? -1 : 1) * coef / Rational(m);
        }
        return out;
    }

    long box() const { return box_; }
    size_t N() const { return N_; }

private:
    const ToricModel& model_;
    long box_;
    size_t N_;
    std::map<ZVec, std::vector<std::pair<ZVec, Rational>>> buckets_;
};

inline AlphaSeries alpha_derivative(const AlphaSeries& s, const ZVec& nu) {
    AlphaSeries out;
    for (const auto& [e, c] : s) {
        Rational coef = c;
        ZVec f = e;
        for (size_t j = 0; j < nu.size() && coef != 0; ++j)
            for (long t = 0; t < nu[j]; ++t) {
                coef *= f[j];
                f[j] -= 1;
            }
        if (coef != 0) out[f] += coef;
    }
    return out;
}

/// Generators c = (b, k) with b in k * conv(vectors), 1 <= k <= kmax.
inline std::vector<GKZGenerator> gkz_generators(const ToricModel& model, long kmax) {
    std::vector<GKZGenerator> out;
    auto pts = model.fan().all_vectors();
    for (long k = 1; k <= kmax; ++k)
        for (const auto& b : lattice_points_dilate(pts, k)) out.push_back({b, k});
    return out;
}

/// Check the box and homogeneity operators of the multi-GKZ system on the truncated family.
inline GKZCheck gkz_check(const ToricModel& model, long order, long kmax = -1, long max_order_nu = 2) {
    const auto& fan = model.fan();
    if (kmax < 0) kmax = static_cast<long>(fan.n) + 1;
    GKZFamily fam(model, order);
    size_t N = fan.N();
    auto gens = gkz_generators(model, kmax);
    std::map<std::pair<ZVec, long>, size_t> index;
    for (size_t i = 0; i < gens.size(); ++i) index[{gens[i].b, gens[i].k}] = i;
    std::vector<AlphaSeries> per;
    for (const auto& g : gens) per.push_back(fam.period(g));

    GKZCheck res;
    res.generators = gens.size();
    res.normalized_volume = normalized_volume(fan.all_vectors());
    // bhat_0 = (0,1), bhat_j = (b_j, 1)
    auto bhat = [&](size_t j) {
        ZVec h(fan.n + 1, 0);
        if (j > 0)
            for (size_t r = 0; r < fan.n; ++r) h[r] = fan.b(j - 1)[r];
        h[fan.n] = 1;
        return h;
    };
    auto within_box = [&](const ZVec& e, const ZVec& np, const ZVec& nm) {
        for (size_t j = 1; j <= N; ++j)
            if (e[j] + std::max(np[j], nm[j]) > order) return false;
        return true;
    };

    // Homogeneity operators Z_{i,c}.
    for (size_t g = 0; g < gens.size(); ++g)
        for (size_t i = 0; i <= fan.n; ++i) {
            ++res.operators_checked;
            for (const auto& [e, c] : per[g]) {
                Rational val = 0;
                for (size_t j = 0; j <= N; ++j) {
                    long mij = i == 0 ? 1 : bhat(j)[i - 1];
                    val += Rational(mij * e[j]) * c;
                }
                val += Rational(i == 0 ? gens[g].k : gens[g].b[i - 1]) * c;
                ++res.terms_compared;
                if (val != 0) {
                    ++res.failures;
                    res.failure_notes.push_back("Z_" + std::to_string(i) + " at c=" + to_string(gens[g].b));
                }
            }
        }

    // Box operators: d^{nu+} Pi_c = d^{nu-} Pi_{c'} with c' = c + (nu+ - nu-) . bhat.
    std::vector<ZVec> nus;
    {
        ZVec cur(N + 1, 0);
        std::function<void(size_t, long)> rec = [&](size_t j, long left) {
            if (j == N + 1) {
                bool nz = false;
                for (long x : cur)
                    if (x) nz = true;
                if (nz) nus.push_back(cur);
                return;
            }
            for (long t = -left; t <= left; ++t) {
                cur[j] = t;
                rec(j + 1, left - (t < 0 ? -t : t));
            }
            cur[j] = 0;
        };
        rec(0, max_order_nu);
    }
    for (size_t g = 0; g < gens.size(); ++g)
        for (const auto& nu : nus) {
            ZVec np(N + 1, 0), nm(N + 1, 0), shift(fan.n + 1, 0);
            for (size_t j = 0; j <= N; ++j) {
                (nu[j] > 0 ? np : nm)[j] = nu[j] > 0 ? nu[j] : -nu[j];
                for (size_t r = 0; r <= fan.n; ++r) shift[r] += nu[j] * bhat(j)[r];
            }
            ZVec b2(fan.n);
            for (size_t r = 0; r < fan.n; ++r) b2[r] = gens[g].b[r] + shift[r];
            long k2 = gens[g].k + shift[fan.n];
            auto it = index.find({b2, k2});
            if (it == index.end()) continue;
            ++res.operators_checked;
            AlphaSeries lhs = alpha_derivative(per[g], np);
            AlphaSeries rhs = alpha_derivative(per[it->second], nm);
            std::set<ZVec> keys;
            for (const auto& [e, c] : lhs) keys.insert(e);
            for (const auto& [e, c] : rhs) keys.insert(e);
            for (const auto& e : keys) {
                if (!within_box(e, np, nm)) continue;
                ++res.terms_compared;
                Rational a = lhs.count(e) ? lhs.at(e) : Rational(0);
                Rational b = rhs.count(e) ? rhs.at(e) : Rational(0);
                if (a != b) {
                    ++res.failures;
                    if (res.failure_notes.size() < 10)
                        res.failure_notes.push_back("box operator nu=" + to_string(nu) + " at c=" + to_string(gens[g].b));
                }
            }
        }

    // The k = 0 period: d_0 Pi_0 = Pi_{(0,1)} and Z_{0,0} Pi_0 = 1 from the logarithm.
    AlphaSeries d0 = alpha_derivative(fam.log_period_series(), [&] {
        ZVec e(N + 1, 0);
        e[0] = 1;
        return e;
    }());
    {
        ZVec e(N + 1, 0);
        e[0] = -1;
        d0[e] += 1;
    }
    auto it0 = index.find({ZVec(fan.n, 0), 1});
    if (it0 != index.end()) {
        ++res.operators_checked;
        const auto& target = per[it0->second];
        ZVec np(N + 1, 0), nm(N + 1, 0);
        np[0] = 1;
        std::set<ZVec> keys;
        for (const auto& [e, c] : d0) keys.insert(e);
        for (const auto& [e, c] : target) keys.insert(e);
        for (const auto& e : keys) {
            if (!within_box(e, np, nm)) continue;
            ++res.terms_compared;
            Rational a = d0.count(e) ? d0.at(e) : Rational(0);
            Rational b = target.count(e) ? target.at(e) : Rational(0);
            if (a != b) {
                ++res.failures;
                res.failure_notes.push_back("k=0 derivative relation");
            }
        }
    }
    // Z_{0,0}: the series part is homogeneous of degree 0; log alpha_0 contributes the constant 1.
    Rational euler_part = 0;
    for (const auto& [e, c] : fam.log_period_series()) {
        long deg = 0;
        for (long x : e) deg += x;
        euler_part += Rational(deg) * c;
    }
    res.log_period_scaling_residual = 1 + euler_part;
    return res;
}

/// Critical values of W = sum_{i=0}^{n} alpha_i t^{b_i} for a simplex configuration with relation l > 0:
/// W_crit = |l| lambda, lambda^{|l|} = prod alpha^l / prod l^l.
struct CriticalValues {
    long relation_degree = 0;  ///< |l|
    QVec relation;             ///< l
    Rational scale;            ///< |l| / (prod l_i^{l_i})^{1/|l|} when a perfect power, else 0
    Rational constant;         ///< prod l_i^{l_i}
    std::vector<Complex> values(const std::vector<double>& alpha) const {
        double prod = 1;
        for (size_t i = 0; i < relation.size(); ++i) prod *= std::pow(alpha[i], relation[i].get_d());
        double lam_abs = std::pow(prod / constant.get_d(), 1.0 / static_cast<double>(relation_degree));
        std::vector<Complex> out;
        for (long j = 0; j < relation_degree; ++j)
            out.push_back(static_cast<double>(relation_degree) * lam_abs *
                          std::exp(kTwoPiI * (static_cast<double>(j) / static_cast<double>(relation_degree))));
        return out;
    }
};

inline CriticalValues critical_values(const ToricModel& model) {
    const auto& fan = model.fan();
    if (fan.N() != fan.n + 1) fail(ErrorKind::Unsupported, "closed-form critical values need a simplex configuration");
    const auto& ell = model.lattice().basis()[0];
    CriticalValues cv;
    bool positive = true;
    for (long x : ell) {
        if (x <= 0) positive = false;
        cv.relation.push_back(Rational(x));
        cv.relation_degree += x;
    }
    if (!positive) fail(ErrorKind::Unsupported, "relation is not positive");
    cv.constant = 1;
    for (long x : ell) cv.constant *= pow_q(Rational(x), x);
    // Integral |l|-th root of the constant, if any.
    cv.scale = 0;
    for (long r = 1; r <= 64; ++r)
        if (pow_q(Rational(r), cv.relation_degree) == cv.constant) cv.scale = ratio(cv.relation_degree, r);
    return cv;
}

/// Element a + b w of Q(w), w a primitive cube root of unity.
struct Eisenstein {
    Rational a, b;

    friend Eisenstein operator+(const Eisenstein& x, const Eisenstein& y) { return {x.a + y.a, x.b + y.b}; }
    friend Eisenstein operator-(const Eisenstein& x, const Eisenstein& y) { return {x.a - y.a, x.b - y.b}; }
    friend Eisenstein operator*(const Eisenstein& x, const Eisenstein& y) {
        return {x.a * y.a - x.b * y.b, x.a * y.b + x.b * y.a - x.b * y.b};
    }
    friend bool operator==(const Eisenstein& x, const Eisenstein& y) { return x.a == y.a && x.b == y.b; }
    Eisenstein inverse() const {
        Rational norm = a * a - a * b + b * b;
        if (norm == 0) fail(ErrorKind::Domain, "division by zero in Q(w)");
        return {(a - b) / norm, -b / norm};
    }
    Eisenstein pow(long e) const {
        Eisenstein base = e < 0 ? inverse() : *this, out{1, 0};
        for (long i = 0; i < (e < 0 ? -e : e); ++i) out = out * base;
        return out;
    }
    std::string str() const {
        if (b == 0) return to_string(a);
        return "(" + to_string(a) + (b < 0 ? " - " : " + ") + to_string(b < 0 ? Rational(-b) : b) + "*w)";
    }
};

/// Exact critical points t with lambda = zeta^j s, at q = C s^{|l|}.
struct CriticalCheck {
    Rational s, q;
    std::vector<Eisenstein> values;   ///< W at the critical points
    std::vector<Eisenstein> expected; ///< |l| zeta^j s
    bool gradients_vanish = true;
    bool equations_hold = true;
    bool distinct = true;
};

/// Solves alpha_i t^{b_i} = l_i lambda over a unimodular subset and verifies all equations in Q(w).
inline CriticalCheck verify_critical_values(const ToricModel& model, const LGModel& lg, const Rational& s) {
    const auto& fan = model.fan();
    CriticalValues cv = critical_values(model);
    long L = cv.relation_degree;
    Eisenstein zeta;
    switch (L) {
    case 1: zeta = {1, 0}; break;
    case 2: zeta = {-1, 0}; break;
    case 3: zeta = {0, 1}; break;
    case 6: zeta = {1, 1}; break;
    default: fail(ErrorKind::Unsupported, "exact critical values need |l| in {1, 2, 3, 6}");
    }
    size_t n = fan.n, N = fan.N();
    std::vector<size_t> basis;
    for (size_t skip = 0; skip < N && basis.empty(); ++skip) {
        std::vector<size_t> S;
        for (size_t i = 0; i < N; ++i)
            if (i != skip) S.push_back(i);
        QMatrix B(n, n);
        for (size_t r = 0; r < n; ++r)
            for (size_t c = 0; c < n; ++c) B(r, c) = fan.b(S[r])[c];
        Rational det = determinant(B);
        if (det == 1 || det == -1) basis = S;
    }
    if (basis.empty()) fail(ErrorKind::Unsupported, "no unimodular subset of the configuration");
    QMatrix B(n, n);
    for (size_t r = 0; r < n; ++r)
        for (size_t c = 0; c < n; ++c) B(r, c) = fan.b(basis[r])[c];
    QMatrix Binv = *inverse(B);

    CriticalCheck out;
    out.s = s;
    out.q = cv.constant * pow_q(s, L);
    std::vector<Eisenstein> alpha;
    for (size_t i = 0; i < N; ++i) {
        Rational x = lg.alpha_exponents[i][0];
        if (!is_integer(x)) fail(ErrorKind::Unsupported, "alpha section must be integral");
        alpha.push_back({pow_q(out.q, to_long(x)), 0});
    }
    Eisenstein z{1, 0};
    for (long j = 0; j < L; ++j, z = z * zeta) {
        Eisenstein lambda = z * Eisenstein{s, 0};
        std::vector<Eisenstein> rhs;
        for (size_t r = 0; r < n; ++r)
            rhs.push_back(Eisenstein{cv.relation[basis[r]], 0} * lambda * alpha[basis[r]].inverse());
        // u = B^{-1} y  =>  t_c = prod_r rhs_r^{Binv(c, r)}
        std::vector<Eisenstein> t(n, Eisenstein{1, 0});
        for (size_t c = 0; c < n; ++c)
            for (size_t r = 0; r < n; ++r) t[c] = t[c] * rhs[r].pow(to_long(Binv(c, r)));
        Eisenstein W{0, 0};
        std::vector<Eisenstein> grad(n, Eisenstein{0, 0});
        for (size_t i = 0; i < N; ++i) {
            Eisenstein term = alpha[i];
            for (size_t c = 0; c < n; ++c) term = term * t[c].pow(fan.b(i)[c]);
            if (!(term == Eisenstein{cv.relation[i], 0} * lambda)) out.equations_hold = false;
            W = W + term;
            for (size_t c = 0; c < n; ++c) grad[c] = grad[c] + Eisenstein{Rational(fan.b(i)[c]), 0} * term;
        }
        for (const auto& g : grad)
            if (!(g == Eisenstein{0, 0})) out.gradients_vanish = false;
        out.values.push_back(W);
        out.expected.push_back(Eisenstein{Rational(L), 0} * lambda);
    }
    for (size_t i = 0; i < out.values.size(); ++i)
        for (size_t j = i + 1; j < out.values.size(); ++j)
            if (out.values[i] == out.values[j]) out.distinct = false;
    return out;
}

/// Numeric W at t = exp(u) with coefficients alpha.
inline Complex eval_W(const ToricModel& model, const std::vector<double>& alpha, const std::vector<Complex>& t) {
    Complex s(0);
    for (size_t i = 0; i < model.fan().N(); ++i) {
        Complex term(alpha[i]);
        for (size_t r = 0; r < model.n(); ++r) term *= std::pow(t[r], static_cast<double>(model.fan().b(i)[r]));
        s += term;
    }
    return s;
}

/// Numeric alpha_i for given q values under the section.
inline std::vector<double> alpha_values(const LGModel& lg, const std::vector<double>& q) {
    std::vector<double> out;
    for (const auto& ex : lg.alpha_exponents) {
        double a = 1;
        for (size_t k = 0; k < q.size(); ++k) a *= std::pow(q[k], ex[k].get_d());
        out.push_back(a);
    }
    return out;
}

struct QuadratureResult {
    double value = 0;
    double error_estimate = 0;
    double step = 0;
    double half_width = 0;
};

/// int_{R^n} exp(-W(e^u)/z) du by the trapezoidal rule on an adaptively chosen box, step halving until converged.
inline QuadratureResult oscillatory_integral(const ToricModel& model, const std::vector<double>& alpha, double z,
                                             double rel_tol = 1e-9, double h_min = 1.0 / 64) {
    size_t n = model.n();
    if (n > 2) fail(ErrorKind::Unsupported, "quadrature is implemented for n <= 2");
    auto integrand = [&](const std::vector<double>& u) {
        double w = 0;
        for (size_t i = 0; i < model.fan().N(); ++i) {
            double ex = 0;
            for (size_t r = 0; r < n; ++r) ex += static_cast<double>(model.fan().b(i)[r]) * u[r];
            w += alpha[i] * std::exp(ex);
        }
        return std::exp(-w / z);
    };
    // Box: expand until the integrand is negligible on its boundary.
    double lo = -8, hi = 8;
    auto boundary_max = [&](double a, double b) {
        double worst = 0;
        const int samples = 400;
        for (int s = 0; s <= samples; ++s) {
            double x = a + (b - a) * s / samples;
            if (n == 1) worst = std::max({worst, integrand({a}), integrand({b})});
            else
                worst = std::max({worst, integrand({a, x}), integrand({b, x}), integrand({x, a}), integrand({x, b})});
        }
        return worst;
    };
    while (boundary_max(lo, hi) > 1e-17) {
        lo -= 4;
        hi += 4;
        if (hi > 80) fail(ErrorKind::NumericFailure, "integrand does not decay on the real torus");
    }
    auto trapezoid = [&](double h) {
        long steps = static_cast<long>(std::ceil((hi - lo) / h));
        double hh = (hi - lo) / static_cast<double>(steps);
        double s = 0;
        if (n == 1)
            for (long i = 0; i <= steps; ++i) s += integrand({lo + hh * static_cast<double>(i)});
        else
            for (long i = 0; i <= steps; ++i)
                for (long j = 0; j <= steps; ++j) s += integrand({lo + hh * static_cast<double>(i), lo + hh * static_cast<double>(j)});
        return s * std::pow(hh, static_cast<double>(n));
    };
    QuadratureResult res;
    double h = 0.5;
    double prev = trapezoid(h);
    while (true) {
        h /= 2;
        double cur = trapezoid(h);
        double err = std::abs(cur - prev);
        if (err <= rel_tol * std::abs(cur)) {
            res = {cur, err, h, std::max(-lo, hi)};
            return res;
        }
        if (h < h_min) fail(ErrorKind::NumericFailure, "quadrature did not converge");
        prev = cur;
    }
}

} // namespace gammaint
