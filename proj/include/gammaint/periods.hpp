#pragma once

#include <map>
#include <vector>

#include "gamma.hpp"
#include "ifunction.hpp"

namespace gammaint {

/// Polynomial in log q_1..log q_k with coefficients of type C.
template <class C>
using LogPoly = std::map<ZVec, C>;

/// Sum_e q^e P_e(log q): an A-period expanded around the large radius limit.
struct PeriodSeries {
    size_t vars = 0;
    Rational bound;
    std::map<QVec, LogPoly<Complex>> terms;

    Complex evaluate(const std::vector<double>& q) const {
        Complex total(0);
        std::vector<double> lq(q.size());
        for (size_t a = 0; a < q.size(); ++a) lq[a] = std::log(q[a]);
        for (const auto& [e, poly] : terms) {
            double qe = 1.0;
            for (size_t a = 0; a < vars; ++a) qe *= std::exp(e[a].get_d() * lq[a]);
            Complex p(0);
            for (const auto& [mono, c] : poly) {
                double l = 1.0;
                for (size_t a = 0; a < vars; ++a) l *= std::pow(lq[a], static_cast<double>(mono[a]));
                p += c * l;
            }
            total += qe * p;
        }
        return total;
    }
};

/// Phi = z^{n - deg/2} z^{rho} Psi, twisted or not, at real z > 0.
inline CVec period_vector(const ToricModel& model, const GammaEnv& env, const KClass& E, double z, bool twisted) {
    const auto& ring = model.ring();
    CVec psiE = twisted ? psi_twisted(model, env, E) : psi(model, env, E);
    QVec rho = twisted ? model.c1_Y() : model.c1();
    CVec y = z_grading(ring, rho, z, psiE);
    double zn = std::pow(z, static_cast<double>(model.n()));
    for (auto& t : y) t *= zn;
    return y;
}

/// Pi(theta_v, E) = (I^v(q,-z), z^{n-deg/2} z^rho Psi(E))_orb as a series in q and log q.
inline PeriodSeries a_period(const ToricModel& model, const GammaEnv& env, const QSeries& Iv, const KClass& E,
                             double z = 1.0, bool twisted = false) {
    if (!Iv.prefactor) fail(ErrorKind::Domain, "A-period needs a series carrying the exp(P/z) prefactor");
    const auto& ring = model.ring();
    size_t k = model.k();
    CVec phi = period_vector(model, env, E, z, twisted);
    // e^{-P/z} phi with P = sum_a p_a log q_a; the exponential is self-adjoint for the pairing.
    LogPoly<CVec> psi_tilde;
    LogPoly<CVec> cur{{ZVec(k, 0), phi}};
    for (size_t j = 0; !cur.empty(); ++j) {
        for (const auto& [mono, vec] : cur) {
            auto& slot = psi_tilde[mono];
            if (slot.empty()) slot = CVec(ring.dim(), Complex(0));
            for (size_t i = 0; i < vec.size(); ++i) slot[i] += vec[i];
        }
        LogPoly<CVec> next;
        for (const auto& [mono, vec] : cur)
            for (size_t a = 0; a < k; ++a) {
                CVec pa = to_complex(model.p_bar()[a]);
                bool zero_pa = true;
                for (const auto& t : pa)
                    if (t != Complex(0)) zero_pa = false;
                if (zero_pa) continue;
                CVec w = ring.cup(pa, vec);
                bool nz = false;
                for (auto& t : w) {
                    t *= -1.0 / (z * static_cast<double>(j + 1));
                    if (std::abs(t) > 0) nz = true;
                }
                if (!nz) continue;
                ZVec m2 = mono;
                m2[a] += 1;
                auto& slot = next[m2];
                if (slot.empty()) slot = CVec(ring.dim(), Complex(0));
                for (size_t i = 0; i < w.size(); ++i) slot[i] += w[i];
            }
        cur = std::move(next);
        if (j > ring.n() + 2) fail(ErrorKind::Formula, "log expansion did not terminate");
    }
    PeriodSeries out{k, Iv.bound, {}};
    for (const auto& [e, lv] : Iv.terms) {
        CVec w(ring.dim(), Complex(0));
        for (const auto& [p, vec] : lv) {
            double f = std::pow(-z, static_cast<double>(p));
            for (size_t i = 0; i < vec.size(); ++i) w[i] += f * vec[i].get_d();
        }
        LogPoly<Complex> poly;
        for (const auto& [mono, vec] : psi_tilde) {
            Complex c = ring.pairing(w, vec);
            if (c != Complex(0)) poly[mono] += c;
        }
        if (!poly.empty()) out.terms[e] = poly;
    }
    return out;
}

/// Substitute q -> e^{2 pi i w} q, i.e. log q_a -> log q_a + 2 pi i w_a.
inline PeriodSeries shift_logs(const PeriodSeries& s, const QVec& w) {
    PeriodSeries out{s.vars, s.bound, {}};
    for (const auto& [e, poly] : s.terms) {
        Complex phase = std::exp(kTwoPiI * dot(w, e).get_d());
        LogPoly<Complex> res;
        for (const auto& [mono, c] : poly) {
            // prod_a (l_a + 2 pi i w_a)^{mono_a}
            LogPoly<Complex> expand{{ZVec(s.vars, 0), c * phase}};
            for (size_t a = 0; a < s.vars; ++a) {
                LogPoly<Complex> next;
                Complex shift = kTwoPiI * w[a].get_d();
                for (const auto& [mm, cc] : expand)
                    for (long t = 0; t <= mono[a]; ++t) {
                        ZVec m2 = mm;
                        m2[a] += t;
                        next[m2] += cc * binomial(mono[a], t).get_d() * std::pow(shift, mono[a] - t);
                    }
                expand = std::move(next);
            }
            for (const auto& [mm, cc] : expand) res[mm] += cc;
        }
        out.terms[e] = res;
    }
    return out;
}

inline double max_difference(const PeriodSeries& a, const PeriodSeries& b) {
    double worst = 0;
    auto visit = [&](const PeriodSeries& x, const PeriodSeries& y) {
        for (const auto& [e, poly] : x.terms)
            for (const auto& [mono, c] : poly) {
                Complex other(0);
                auto it = y.terms.find(e);
                if (it != y.terms.end()) {
                    auto jt = it->second.find(mono);
                    if (jt != it->second.end()) other = jt->second;
                }
                worst = std::max(worst, std::abs(c - other));
            }
    };
    visit(a, b);
    visit(b, a);
    return worst;
}

struct MonodromyResult {
    double residual = 0;
    double scale = 0; ///< largest coefficient magnitude, for context
};

/// Pi(theta_v,E)(e^{2 pi i xi} q) - Pi(theta_v, L_xi^dual tensor E)(q); xi has ray coefficients n.
inline MonodromyResult monodromy_check(const ToricModel& model, const GammaEnv& env, const QSeries& Iv, const KClass& E,
                                       const QVec& n, double z = 1.0) {
    QVec lift(model.fan().N(), Rational(0));
    for (size_t i = 0; i < n.size(); ++i) lift[i] = n[i];
    QVec w = model.lattice().functional_coords(lift);
    PeriodSeries lhs = shift_logs(a_period(model, env, Iv, E, z), w);
    PeriodSeries rhs = a_period(model, env, Iv, KClass::line(scale(n, -1)).tensor(E), z);
    MonodromyResult r;
    r.residual = max_difference(lhs, rhs);
    for (const auto& [e, poly] : rhs.terms)
        for (const auto& [m, c] : poly) r.scale = std::max(r.scale, std::abs(c));
    return r;
}

} // namespace gammaint
