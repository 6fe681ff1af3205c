#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "toric.hpp"

namespace gammaint {

using Complex = std::complex<double>;
using CVec = std::vector<Complex>;

template <class S>
inline S from_q(const Rational& r) {
    if constexpr (std::is_same_v<S, Rational>) return r;
    else return S(r.get_d());
}

/// Input presentation of a twisted sector.
struct SectorSpec {
    ZVec box;
    bool point = true;
    std::optional<Rational> stabilizer; ///< point sectors: integral of 1 is 1/stabilizer
    std::vector<int> degrees;           ///< table sectors: complex degrees of basis elements
    std::vector<std::string> labels;
    std::map<std::pair<size_t, size_t>, QVec> products;
    std::vector<QVec> restrictions; ///< images of D_i, i < m
    QVec integrals;
};

struct Sector {
    size_t box_index = 0;
    Rational age;
    size_t dim = 0;
    size_t offset = 0;
    size_t inv = 0;
    std::vector<int> degree;
    std::vector<std::string> labels;
    std::vector<std::vector<std::vector<std::pair<size_t, Rational>>>> product; ///< sparse e_i e_j
    std::vector<QVec> divisor;   ///< restriction of D_i (i < m)
    QVec integral;
    QMatrix restriction;         ///< untwisted basis -> local basis
};

/// Orbifold cohomology H^*_CR of a toric DM stack, presented sector by sector.
class OrbifoldRing {
public:
    OrbifoldRing() = default;

    OrbifoldRing(const StackyFan& fan, const BoxTable& box, const std::vector<SectorSpec>& specs = {}) {
        n_ = fan.n;
        m_ = fan.m();
        build_untwisted(fan);
        for (size_t t = 1; t < box.size(); ++t) {
            const SectorSpec* spec = nullptr;
            for (const auto& s : specs)
                if (s.box == box[t].v) spec = &s;
            sectors_.push_back(build_twisted(fan, box, t, spec));
        }
        for (const auto& s : specs)
            if (!box.find(s.box)) fail(ErrorKind::Presentation, "sector " + to_string(s.box) + " is not a Box element");
        size_t off = 0;
        for (auto& s : sectors_) {
            s.offset = off;
            off += s.dim;
            s.inv = box[s.box_index].inv;
        }
        dim_ = off;
        for (size_t t = 0; t < sectors_.size(); ++t)
            if (sectors_[sectors_[t].inv].dim != sectors_[t].dim)
                fail(ErrorKind::Presentation, "sector and its involution image have different dimensions");
        for (auto& s : sectors_) s.restriction = restriction_matrix(s);
    }

    size_t dim() const { return dim_; }
    size_t n() const { return n_; }
    size_t m() const { return m_; }
    size_t num_sectors() const { return sectors_.size(); }
    const Sector& sector(size_t v) const { return sectors_[v]; }
    const Sector& untwisted() const { return sectors_[0]; }
    const std::vector<ZVec>& monomials() const { return monomials_; }

    /// Sector and local index of a global basis index.
    std::pair<size_t, size_t> locate(size_t g) const {
        for (size_t v = 0; v < sectors_.size(); ++v)
            if (g < sectors_[v].offset + sectors_[v].dim) return {v, g - sectors_[v].offset};
        fail(ErrorKind::Domain, "basis index out of range");
    }

    /// Unshifted complex degree of each global basis element.
    int unshifted_degree(size_t g) const {
        auto [v, i] = locate(g);
        return sectors_[v].degree[i];
    }
    /// Orbifold (real) degree: 2 * (unshifted + age).
    Rational degree(size_t g) const {
        auto [v, i] = locate(g);
        return 2 * (Rational(sectors_[v].degree[i]) + sectors_[v].age);
    }
    std::string label(size_t g) const {
        auto [v, i] = locate(g);
        return sectors_[v].labels[i];
    }

    QVec zero() const { return QVec(dim_, Rational(0)); }
    QVec unit(size_t v = 0) const {
        QVec e = zero();
        e[sectors_[v].offset] = 1;
        return e;
    }
    /// D_i as an untwisted element (zero for extended indices i >= m).
    QVec divisor(size_t i) const {
        QVec out(sectors_[0].dim, Rational(0));
        if (i < m_) out = sectors_[0].divisor[i];
        return out;
    }
    QVec untwisted_from_divisor(const QVec& coeffs) const {
        QVec out(sectors_[0].dim, Rational(0));
        for (size_t i = 0; i < m_ && i < coeffs.size(); ++i) axpy(out, coeffs[i], sectors_[0].divisor[i]);
        return out;
    }
    template <class S = Rational>
    std::vector<S> embed_untwisted(const std::vector<S>& a) const {
        std::vector<S> out(dim_, S(0));
        for (size_t i = 0; i < a.size(); ++i) out[i] = a[i];
        return out;
    }

    template <class S>
    std::vector<S> local_mul(size_t v, const std::vector<S>& a, const std::vector<S>& b) const {
        const Sector& sec = sectors_[v];
        std::vector<S> out(sec.dim, S(0));
        for (size_t i = 0; i < sec.dim; ++i) {
            if (a[i] == S(0)) continue;
            for (size_t j = 0; j < sec.dim; ++j) {
                if (b[j] == S(0)) continue;
                S ab = a[i] * b[j];
                for (const auto& [k, c] : sec.product[i][j]) out[k] += from_q<S>(c) * ab;
            }
        }
        return out;
    }

    template <class S>
    std::vector<S> component(const std::vector<S>& x, size_t v) const {
        const Sector& sec = sectors_[v];
        return std::vector<S>(x.begin() + static_cast<long>(sec.offset),
                              x.begin() + static_cast<long>(sec.offset + sec.dim));
    }
    template <class S>
    void set_component(std::vector<S>& x, size_t v, const std::vector<S>& c) const {
        for (size_t i = 0; i < c.size(); ++i) x[sectors_[v].offset + i] = c[i];
    }

    template <class S>
    std::vector<S> restrict_to(size_t v, const std::vector<S>& untw) const {
        const Sector& sec = sectors_[v];
        std::vector<S> out(sec.dim, S(0));
        for (size_t i = 0; i < sec.dim; ++i)
            for (size_t j = 0; j < untw.size(); ++j)
                if (sec.restriction(i, j) != 0) out[i] += from_q<S>(sec.restriction(i, j)) * untw[j];
        return out;
    }

    /// Cup product of an untwisted class with an arbitrary class.
    template <class S>
    std::vector<S> cup(const std::vector<S>& untw, const std::vector<S>& x) const {
        std::vector<S> out(dim_, S(0));
        for (size_t v = 0; v < sectors_.size(); ++v) {
            auto xv = component(x, v);
            bool nz = false;
            for (const auto& t : xv)
                if (t != S(0)) nz = true;
            if (!nz) continue;
            set_component(out, v, local_mul(v, restrict_to(v, untw), xv));
        }
        return out;
    }

    /// Sector-wise product in H^*(IX).
    template <class S>
    std::vector<S> sector_product(const std::vector<S>& x, const std::vector<S>& y) const {
        std::vector<S> out(dim_, S(0));
        for (size_t v = 0; v < sectors_.size(); ++v) set_component(out, v, local_mul(v, component(x, v), component(y, v)));
        return out;
    }

    template <class S>
    S integrate_sector(size_t v, const std::vector<S>& local) const {
        S s(0);
        for (size_t i = 0; i < local.size(); ++i) s += from_q<S>(sectors_[v].integral[i]) * local[i];
        return s;
    }

    /// Integral over X of the untwisted component.
    template <class S>
    S integrate(const std::vector<S>& x) const {
        return integrate_sector(0, component(x, 0));
    }

    template <class S>
    std::vector<S> inv_star(const std::vector<S>& x) const {
        std::vector<S> out(dim_, S(0));
        for (size_t v = 0; v < sectors_.size(); ++v) set_component(out, sectors_[v].inv, component(x, v));
        return out;
    }

    /// Orbifold Poincare pairing.
    template <class S>
    S pairing(const std::vector<S>& x, const std::vector<S>& y) const {
        S s(0);
        for (size_t v = 0; v < sectors_.size(); ++v) {
            auto xv = component(x, v);
            auto yv = component(y, sectors_[v].inv);
            s += integrate_sector(v, local_mul(v, xv, yv));
        }
        return s;
    }

    QMatrix pairing_matrix() const {
        QMatrix G(dim_, dim_);
        for (size_t i = 0; i < dim_; ++i)
            for (size_t j = 0; j < dim_; ++j) {
                QVec a = zero(), b = zero();
                a[i] = 1;
                b[j] = 1;
                G(i, j) = pairing(a, b);
            }
        return G;
    }

    /// Matrix of cup product with an untwisted class on the full space.
    QMatrix cup_matrix(const QVec& untw) const {
        QMatrix M(dim_, dim_);
        for (size_t j = 0; j < dim_; ++j) {
            QVec e = zero();
            e[j] = 1;
            M.set_col(j, cup(untw, e));
        }
        return M;
    }

    /// Multiply the component of (unshifted) degree k by f(k).
    template <class S, class F>
    std::vector<S> by_degree(const std::vector<S>& x, F f) const {
        std::vector<S> out(x);
        for (size_t g = 0; g < dim_; ++g) out[g] *= f(unshifted_degree(g));
        return out;
    }

    /// (-1)^{deg0/2}
    template <class S>
    std::vector<S> parity(const std::vector<S>& x) const {
        return by_degree(x, [](int k) { return S(k % 2 ? -1 : 1); });
    }

    /// Local nilpotent-aware power series f(a) = sum_k coeff[k] a^k in sector v.
    template <class S>
    std::vector<S> local_series(size_t v, const std::vector<S>& a, const std::vector<S>& coeff) const {
        const Sector& sec = sectors_[v];
        std::vector<S> out(sec.dim, S(0)), pw(sec.dim, S(0));
        pw[0] = S(1);
        for (size_t k = 0; k < coeff.size(); ++k) {
            for (size_t i = 0; i < sec.dim; ++i) out[i] += coeff[k] * pw[i];
            pw = local_mul(v, pw, a);
        }
        return out;
    }

    /// Exponential of a local element whose degree-zero part is a scalar.
    template <class S>
    std::vector<S> local_exp(size_t v, const std::vector<S>& a) const {
        const Sector& sec = sectors_[v];
        std::vector<S> nil(a);
        S a0 = nil[0];
        nil[0] = S(0);
        std::vector<S> coeff;
        S fact(1);
        for (size_t k = 0; k <= n_ + 1; ++k) {
            coeff.push_back(S(1) / fact);
            fact *= S(static_cast<long>(k + 1));
        }
        auto e = local_series(v, nil, coeff);
        if constexpr (std::is_same_v<S, Rational>) {
            if (a0 != 0) fail(ErrorKind::Domain, "exact exponential of a non-nilpotent element");
        } else {
            for (auto& t : e) t *= std::exp(a0);
        }
        (void)sec;
        return e;
    }

    /// Normal form of an untwisted monomial (exponents over the rays).
    QVec monomial_normal_form(const ZVec& e) const {
        long deg = 0;
        for (long x : e) deg += x;
        QVec out(sectors_[0].dim, Rational(0));
        if (deg > static_cast<long>(n_)) return out;
        auto it = normal_form_.find(e);
        if (it == normal_form_.end()) fail(ErrorKind::Domain, "unknown monomial");
        return it->second;
    }

private:
    static std::vector<ZVec> monomials_of_degree(size_t m, long k) {
        std::vector<ZVec> out;
        ZVec cur(m, 0);
        std::function<void(size_t, long)> rec = [&](size_t i, long left) {
            if (i + 1 == m) {
                cur[i] = left;
                out.push_back(cur);
                return;
            }
            for (long t = 0; t <= left; ++t) {
                cur[i] = t;
                rec(i + 1, left - t);
            }
        };
        if (m == 0) return out;
        rec(0, k);
        std::sort(out.begin(), out.end());
        return out;
    }

    void build_untwisted(const StackyFan& fan) {
        Sector s;
        s.box_index = 0;
        s.age = 0;
        std::vector<ZVec> basis;
        for (long k = 0; k <= static_cast<long>(n_); ++k) {
            auto mons = monomials_of_degree(m_, k);
            std::map<ZVec, size_t> col;
            for (size_t i = 0; i < mons.size(); ++i) col[mons[i]] = i;
            std::vector<QVec> rels;
            for (const auto& mu : mons) {
                std::vector<size_t> support;
                for (size_t i = 0; i < m_; ++i)
                    if (mu[i] > 0) support.push_back(i);
                if (!fan.is_cone(support)) {
                    QVec r(mons.size(), Rational(0));
                    r[col[mu]] = 1;
                    rels.push_back(r);
                }
            }
            if (k >= 1) {
                for (const auto& mu : monomials_of_degree(m_, k - 1))
                    for (size_t row = 0; row < n_; ++row) {
                        QVec r(mons.size(), Rational(0));
                        for (size_t i = 0; i < m_; ++i) {
                            ZVec nu(mu);
                            nu[i] += 1;
                            r[col[nu]] += fan.b(i)[row];
                        }
                        rels.push_back(r);
                    }
            }
            QMatrix R = QMatrix::from_rows(rels, mons.size());
            std::vector<size_t> piv = rels.empty() ? std::vector<size_t>{} : rref(R);
            std::vector<int> pivot_row(mons.size(), -1);
            for (size_t r = 0; r < piv.size(); ++r) pivot_row[piv[r]] = static_cast<int>(r);
            std::vector<size_t> free_cols;
            for (size_t c = 0; c < mons.size(); ++c)
                if (pivot_row[c] < 0) free_cols.push_back(c);
            size_t base = basis.size();
            for (size_t f : free_cols) {
                basis.push_back(mons[f]);
                s.degree.push_back(static_cast<int>(k));
            }
            degree_start_.push_back(base);
            for (size_t c = 0; c < mons.size(); ++c) {
                normal_form_[mons[c]] = {}; // filled after total dimension is known
                pending_.push_back({mons[c], {}});
                auto& nf = pending_.back().second;
                if (pivot_row[c] < 0) {
                    size_t pos = std::find(free_cols.begin(), free_cols.end(), c) - free_cols.begin();
                    nf.push_back({base + pos, Rational(1)});
                } else {
                    for (size_t t = 0; t < free_cols.size(); ++t) {
                        const Rational& a = R(static_cast<size_t>(pivot_row[c]), free_cols[t]);
                        if (a != 0) nf.push_back({base + t, -a});
                    }
                }
            }
        }
        s.dim = basis.size();
        for (auto& [mu, terms] : pending_) {
            QVec v(s.dim, Rational(0));
            for (auto& [i, a] : terms) v[i] = a;
            normal_form_[mu] = v;
        }
        pending_.clear();
        monomials_ = basis;
        if (s.dim != fan.cones.size())
            fail(ErrorKind::Presentation, "cohomology dimension " + std::to_string(s.dim) +
                                              " differs from the number of maximal cones");
        size_t top_count = 0;
        for (int d : s.degree)
            if (d == static_cast<int>(n_)) ++top_count;
        if (top_count != 1) fail(ErrorKind::Presentation, "top cohomology is not one-dimensional");
        for (const auto& mu : basis) {
            std::string lab;
            for (size_t i = 0; i < m_; ++i)
                if (mu[i] > 0) {
                    if (!lab.empty()) lab += "*";
                    lab += "D" + std::to_string(i + 1);
                    if (mu[i] > 1) lab += "^" + std::to_string(mu[i]);
                }
            s.labels.push_back(lab.empty() ? "1" : lab);
        }
        s.product.assign(s.dim, std::vector<std::vector<std::pair<size_t, Rational>>>(s.dim));
        for (size_t i = 0; i < s.dim; ++i)
            for (size_t j = 0; j < s.dim; ++j) {
                ZVec mu(m_);
                for (size_t t = 0; t < m_; ++t) mu[t] = basis[i][t] + basis[j][t];
                QVec nf = monomial_normal_form_raw(mu, s.dim);
                for (size_t t = 0; t < s.dim; ++t)
                    if (nf[t] != 0) s.product[i][j].push_back({t, nf[t]});
            }
        for (size_t i = 0; i < m_; ++i) {
            ZVec mu(m_, 0);
            mu[i] = 1;
            s.divisor.push_back(monomial_normal_form_raw(mu, s.dim));
        }
        // Integration: every maximal cone monomial integrates to 1/multiplicity.
        size_t top = 0;
        for (size_t i = 0; i < s.dim; ++i)
            if (s.degree[i] == static_cast<int>(n_)) top = i;
        s.integral = QVec(s.dim, Rational(0));
        std::optional<Rational> top_value;
        for (const auto& sigma : fan.cones) {
            ZVec mu(m_, 0);
            for (size_t i : sigma) mu[i] = 1;
            QVec nf = monomial_normal_form_raw(mu, s.dim);
            if (nf[top] == 0) fail(ErrorKind::Presentation, "cone monomial vanishes in cohomology");
            Rational val = Rational(1) / (Rational(fan.multiplicity(sigma)) * nf[top]);
            if (top_value && *top_value != val) fail(ErrorKind::Presentation, "inconsistent integration of cone monomials");
            top_value = val;
        }
        s.integral[top] = *top_value;
        sectors_.push_back(std::move(s));
    }

    QVec monomial_normal_form_raw(const ZVec& e, size_t dim) const {
        long deg = 0;
        for (long x : e) deg += x;
        if (deg > static_cast<long>(n_)) return QVec(dim, Rational(0));
        return normal_form_.at(e);
    }

    Sector build_twisted(const StackyFan& fan, const BoxTable& box, size_t t, const SectorSpec* spec) const {
        Sector s;
        s.box_index = t;
        s.age = box[t].age;
        const auto& cone = box[t].cone;
        if (!spec || spec->point) {
            Rational stab;
            if (spec && spec->stabilizer) stab = *spec->stabilizer;
            else if (cone.size() == fan.n) {
                std::vector<size_t> sorted(cone);
                std::sort(sorted.begin(), sorted.end());
                stab = Rational(fan.multiplicity(sorted));
            } else
                fail(ErrorKind::Presentation, "twisted sector " + to_string(box[t].v) + " needs a presentation");
            s.dim = 1;
            s.degree = {0};
            s.labels = {"1_" + to_string(box[t].v)};
            s.product.assign(1, std::vector<std::vector<std::pair<size_t, Rational>>>(1));
            s.product[0][0].push_back({0, Rational(1)});
            s.divisor.assign(fan.m(), QVec{Rational(0)});
            s.integral = QVec{Rational(1) / stab};
            return s;
        }
        s.dim = spec->degrees.size();
        if (s.dim == 0) fail(ErrorKind::Presentation, "empty sector presentation");
        s.degree = spec->degrees;
        s.labels = spec->labels;
        if (s.labels.size() != s.dim) {
            s.labels.clear();
            for (size_t i = 0; i < s.dim; ++i) s.labels.push_back("e" + std::to_string(i) + "_" + to_string(box[t].v));
        }
        s.product.assign(s.dim, std::vector<std::vector<std::pair<size_t, Rational>>>(s.dim));
        for (size_t i = 0; i < s.dim; ++i)
            for (size_t j = 0; j < s.dim; ++j) {
                QVec val(s.dim, Rational(0));
                if (i == 0) val[j] = 1;
                else if (j == 0) val[i] = 1;
                else {
                    auto it = spec->products.find({std::min(i, j), std::max(i, j)});
                    if (it != spec->products.end()) val = it->second;
                }
                if (val.size() != s.dim) fail(ErrorKind::Presentation, "product vector has wrong length");
                for (size_t k = 0; k < s.dim; ++k)
                    if (val[k] != 0) s.product[i][j].push_back({k, val[k]});
            }
        if (spec->restrictions.size() != fan.m()) fail(ErrorKind::Presentation, "sector needs a restriction for every ray");
        s.divisor = spec->restrictions;
        if (spec->integrals.size() != s.dim) fail(ErrorKind::Presentation, "sector integral vector has wrong length");
        s.integral = spec->integrals;
        return s;
    }

    QMatrix restriction_matrix(const Sector& s) const {
        const Sector& u = sectors_[0];
        QMatrix R(s.dim, u.dim);
        for (size_t j = 0; j < u.dim; ++j) {
            QVec img(s.dim, Rational(0));
            img[0] = 1;
            for (size_t i = 0; i < m_; ++i)
                for (long e = 0; e < monomials_[j][i]; ++e) img = local_mul<Rational>(index_of(s), img, s.divisor[i]);
            for (size_t i = 0; i < s.dim; ++i) R(i, j) = img[i];
        }
        return R;
    }

    size_t index_of(const Sector& s) const {
        for (size_t v = 0; v < sectors_.size(); ++v)
            if (&sectors_[v] == &s) return v;
        fail(ErrorKind::Domain, "sector not found");
    }

    size_t n_ = 0, m_ = 0, dim_ = 0;
    std::vector<Sector> sectors_;
    std::vector<ZVec> monomials_;
    std::map<ZVec, QVec> normal_form_;
    std::vector<std::pair<ZVec, std::vector<std::pair<size_t, Rational>>>> pending_;
    std::vector<size_t> degree_start_;
};

} // namespace gammaint
