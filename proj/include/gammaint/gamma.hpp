#pragma once

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/polygamma.hpp>
#include <boost/math/special_functions/zeta.hpp>

#include <cmath>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include "model.hpp"

namespace gammaint {

inline constexpr double kPi = boost::math::constants::pi<double>();
inline const Complex kTwoPiI(0.0, 2.0 * kPi);

/// A K-class given as an integer combination of line bundles L_xi, xi = sum_i n_i D_i over the rays.
struct KClass {
    std::vector<std::pair<long, QVec>> terms; ///< (multiplicity, ray coefficients)

    static KClass line(const QVec& n) { return KClass{{{1, n}}}; }
    static KClass structure_sheaf(size_t m) { return line(QVec(m, Rational(0))); }

    KClass dual() const {
        KClass out;
        for (const auto& [c, n] : terms) out.terms.push_back({c, scale(n, -1)});
        return out;
    }
    KClass tensor(const KClass& o) const {
        KClass out;
        for (const auto& [c1, n1] : terms)
            for (const auto& [c2, n2] : o.terms) out.terms.push_back({c1 * c2, add(n1, n2)});
        return out;
    }
    KClass plus(const KClass& o) const {
        KClass out = *this;
        out.terms.insert(out.terms.end(), o.terms.begin(), o.terms.end());
        return out;
    }
    KClass negated() const {
        KClass out = *this;
        for (auto& t : out.terms) t.first = -t.first;
        return out;
    }
};

/// Cached special-function values for Gamma-class expansions.
class GammaEnv {
public:
    explicit GammaEnv(size_t depth = 8) : depth_(depth) {}

    size_t depth() const { return depth_; }
    double euler_gamma() const { return boost::math::constants::euler<double>(); }

    /// Taylor coefficients of log Gamma(a + x) at x = 0, a = 1 - f, up to x^depth.
    const std::vector<double>& log_gamma_coeffs(const Rational& f) const {
        auto it = cache_.find(f);
        if (it != cache_.end()) return it->second;
        double a = 1.0 - f.get_d();
        std::vector<double> c(depth_ + 1);
        c[0] = std::log(boost::math::tgamma(a));
        double fact = 1.0;
        for (size_t k = 1; k <= depth_; ++k) {
            fact *= static_cast<double>(k);
            c[k] = boost::math::polygamma(static_cast<int>(k - 1), a) / fact;
        }
        if (f != 0) {
            double fd = f.get_d();
            double lhs = boost::math::tgamma(1.0 - fd) * boost::math::tgamma(fd);
            double rhs = kPi / std::sin(kPi * fd);
            if (std::abs(lhs - rhs) > 1e-10 * std::abs(rhs))
                fail(ErrorKind::Precision, "Gamma reflection self-check failed at " + f.get_str());
        }
        return cache_.emplace(f, std::move(c)).first->second;
    }

    void require_depth(size_t needed) const {
        if (needed > depth_) fail(ErrorKind::Precision, "Gamma expansion depth " + std::to_string(depth_) +
                                                          " is below the nilpotency order " + std::to_string(needed));
    }

private:
    size_t depth_;
    mutable std::map<Rational, std::vector<double>> cache_;
};

inline CVec to_complex(const QVec& v) {
    CVec out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = Complex(v[i].get_d(), 0.0);
    return out;
}

/// Local complex element prod_j Gamma(1 - f_j + x_j) in sector v.
inline CVec gamma_product_local(const OrbifoldRing& ring, const GammaEnv& env, size_t v,
                                const std::vector<std::pair<Rational, QVec>>& roots) {
    env.require_depth(ring.n() + 1);
    const Sector& sec = ring.sector(v);
    CVec log_sum(sec.dim, Complex(0));
    for (const auto& [f, x] : roots) {
        const auto& c = env.log_gamma_coeffs(f);
        std::vector<Complex> coeff(c.begin(), c.end());
        CVec xl = to_complex(x);
        CVec term = ring.local_series(v, xl, coeff);
        for (size_t i = 0; i < sec.dim; ++i) log_sum[i] += term[i];
    }
    return ring.local_exp(v, log_sum);
}

/// Gamma class of TX (plus trivial summands) on H^*(IX).
inline CVec gamma_class(const ToricModel& model, const GammaEnv& env) {
    const auto& ring = model.ring();
    CVec out(ring.dim(), Complex(0));
    for (size_t v = 0; v < ring.num_sectors(); ++v) {
        const auto& sec = ring.sector(v);
        const auto& be = model.box()[sec.box_index];
        std::vector<std::pair<Rational, QVec>> roots;
        for (size_t i = 0; i < model.fan().m(); ++i) roots.push_back({be.c[i], sec.divisor[i]});
        ring.set_component(out, v, gamma_product_local(ring, env, v, roots));
    }
    return out;
}

/// Fractional age {phi_xi(v)} of the line bundle with ray coefficients n on sector v.
inline Rational line_age(const ToricModel& model, size_t v, const QVec& n) {
    const auto& be = model.box()[model.ring().sector(v).box_index];
    Rational s = 0;
    for (size_t i = 0; i < model.fan().m(); ++i) s += be.c[i] * n[i];
    return frac(s);
}

/// Local restriction of the divisor sum_i n_i D_i to sector v.
inline QVec local_divisor(const ToricModel& model, size_t v, const QVec& n) {
    const auto& sec = model.ring().sector(v);
    QVec out(sec.dim, Rational(0));
    for (size_t i = 0; i < model.fan().m(); ++i) axpy(out, n[i], sec.divisor[i]);
    return out;
}

/// Gamma class of a sum of line bundles (K-class with nonnegative multiplicities).
inline CVec gamma_class_of(const ToricModel& model, const GammaEnv& env, const KClass& E) {
    const auto& ring = model.ring();
    CVec out(ring.dim(), Complex(0));
    for (size_t v = 0; v < ring.num_sectors(); ++v) {
        std::vector<std::pair<Rational, QVec>> roots;
        for (const auto& [c, n] : E.terms) {
            if (c < 0) fail(ErrorKind::Domain, "Gamma class of a virtual bundle is not supported");
            for (long t = 0; t < c; ++t) roots.push_back({line_age(model, v, n), local_divisor(model, v, n)});
        }
        ring.set_component(out, v, gamma_product_local(ring, env, v, roots));
    }
    return out;
}

/// Orbifold Chern character: sum over sectors of e^{2 pi i f} ch.
inline CVec tch(const ToricModel& model, const KClass& E) {
    const auto& ring = model.ring();
    CVec out(ring.dim(), Complex(0));
    for (size_t v = 0; v < ring.num_sectors(); ++v) {
        CVec local(ring.sector(v).dim, Complex(0));
        for (const auto& [c, n] : E.terms) {
            Rational f = line_age(model, v, n);
            Complex phase = std::exp(kTwoPiI * f.get_d());
            CVec e = ring.local_exp(v, to_complex(local_divisor(model, v, n)));
            for (size_t i = 0; i < local.size(); ++i) local[i] += static_cast<double>(c) * phase * e[i];
        }
        ring.set_component(out, v, local);
    }
    return out;
}

/// (2 pi i)^{deg0/2}
inline CVec two_pi_i_grading(const OrbifoldRing& ring, const CVec& x) {
    return ring.by_degree(x, [](int k) { return std::pow(kTwoPiI, k); });
}

inline CVec psi(const ToricModel& model, const GammaEnv& env, const KClass& E) {
    const auto& ring = model.ring();
    return ring.sector_product(gamma_class(model, env), two_pi_i_grading(ring, ring.inv_star(tch(model, E))));
}

/// exp(c) for an untwisted complex class c, acting by cup product.
inline CVec exp_untwisted(const OrbifoldRing& ring, const CVec& c) { return ring.local_exp(0, c); }

/// Psi_V(E) = e^{pi i c1(V)} Gamma(V^dual) Psi(E).
inline CVec psi_twisted(const ToricModel& model, const GammaEnv& env, const KClass& E) {
    const auto& ring = model.ring();
    if (!model.partition()) fail(ErrorKind::Domain, "twisted Psi needs a nef partition");
    KClass Vdual;
    QVec c1V(ring.untwisted().dim, Rational(0));
    for (size_t j = 0; j < model.partition()->c(); ++j) {
        Vdual.terms.push_back({1, scale(model.partition()->divisors[j], -1)});
        c1V = add(c1V, model.xi(j));
    }
    CVec phase = exp_untwisted(ring, [&] {
        CVec t = to_complex(c1V);
        for (auto& x : t) x *= Complex(0, kPi);
        return t;
    }());
    CVec g = gamma_class_of(model, env, Vdual);
    CVec out = ring.sector_product(g, psi(model, env, E));
    return ring.cup(phase, out);
}

/// Exact Todd class of TX on the untwisted sector.
inline QVec todd_class(const ToricModel& model) {
    const auto& ring = model.ring();
    size_t n = ring.n();
    // x / (1 - e^{-x}) = 1 / (sum_k (-1)^k x^k / (k+1)!)
    std::vector<Rational> denom(n + 1), inv(n + 1);
    for (size_t k = 0; k <= n; ++k) denom[k] = Rational(k % 2 ? -1 : 1) / factorial(static_cast<long>(k + 1));
    inv[0] = 1;
    for (size_t k = 1; k <= n; ++k) {
        Rational s = 0;
        for (size_t j = 1; j <= k; ++j) s += denom[j] * inv[k - j];
        inv[k] = -s;
    }
    QVec td(ring.untwisted().dim, Rational(0));
    td[0] = 1;
    for (size_t i = 0; i < model.fan().m(); ++i)
        td = ring.local_mul<Rational>(0, td, ring.local_series<Rational>(0, ring.divisor(i), inv));
    return td;
}

/// Exact Chern character of a K-class on the untwisted sector.
inline QVec chern_character(const ToricModel& model, const KClass& E) {
    const auto& ring = model.ring();
    size_t n = ring.n();
    std::vector<Rational> ex(n + 1);
    for (size_t k = 0; k <= n; ++k) ex[k] = Rational(1) / factorial(static_cast<long>(k));
    QVec out(ring.untwisted().dim, Rational(0));
    for (const auto& [c, nv] : E.terms)
        axpy(out, Rational(c), ring.local_series<Rational>(0, ring.untwisted_from_divisor(nv), ex));
    return out;
}

inline void require_manifold(const ToricModel& model) {
    if (model.box().size() != 1)
        fail(ErrorKind::Unsupported, "Euler pairing on orbifolds needs Kawasaki correction data");
}

/// chi(E1, E2) = int_X Td(TX) ch(E1^dual tensor E2), exact.
inline Rational euler_chi(const ToricModel& model, const KClass& E1, const KClass& E2) {
    require_manifold(model);
    const auto& ring = model.ring();
    QVec integrand = ring.local_mul<Rational>(0, todd_class(model), chern_character(model, E1.dual().tensor(E2)));
    return ring.integrate_sector<Rational>(0, integrand);
}

/// chi on the complete intersection Y cut out by the nef partition, computed on X via the Koszul factor.
inline Rational euler_chi_complete_intersection(const ToricModel& model, const KClass& E1, const KClass& E2) {
    require_manifold(model);
    if (!model.partition()) fail(ErrorKind::Domain, "complete intersection needs a nef partition");
    const auto& ring = model.ring();
    KClass koszul = KClass::structure_sheaf(model.fan().m());
    for (size_t j = 0; j < model.partition()->c(); ++j) {
        KClass factor = KClass::structure_sheaf(model.fan().m()).plus(
            KClass::line(scale(model.partition()->divisors[j], -1)).negated());
        koszul = koszul.tensor(factor);
    }
    QVec ch = chern_character(model, E1.dual().tensor(E2).tensor(koszul));
    return ring.integrate_sector<Rational>(0, ring.local_mul<Rational>(0, todd_class(model), ch));
}

/// (2 pi i)^{-n} int ((-1)^{deg0/2} Psi(E1)) e^{pi i rho} Psi(E2).
inline Complex psi_pairing(const ToricModel& model, const GammaEnv& env, const KClass& E1, const KClass& E2) {
    require_manifold(model);
    const auto& ring = model.ring();
    CVec rho = to_complex(model.c1());
    for (auto& x : rho) x *= Complex(0, kPi);
    CVec a = ring.parity(psi(model, env, E1));
    CVec b = ring.cup(exp_untwisted(ring, rho), psi(model, env, E2));
    return ring.integrate(ring.sector_product(a, b)) / std::pow(kTwoPiI, static_cast<int>(ring.n()));
}

/// Largest coefficient of ((-1)^{deg0/2} Gamma) Gamma e^{pi i c1} - (2 pi i)^{deg0/2} Td.
inline double half_identity_residual(const ToricModel& model, const GammaEnv& env) {
    require_manifold(model);
    const auto& ring = model.ring();
    CVec g = gamma_class(model, env);
    CVec rho = to_complex(model.c1());
    for (auto& x : rho) x *= Complex(0, kPi);
    CVec lhs = ring.cup(exp_untwisted(ring, rho), ring.sector_product(ring.parity(g), g));
    CVec rhs = two_pi_i_grading(ring, ring.embed_untwisted(to_complex(todd_class(model))));
    double worst = 0;
    for (size_t i = 0; i < lhs.size(); ++i) worst = std::max(worst, std::abs(lhs[i] - rhs[i]));
    return worst;
}

/// Galois action of a line bundle class: shift by -2 pi i xi_0 and sector phases e^{2 pi i f_v}.
struct GaloisAction {
    QVec xi0;                 ///< untwisted H^2 class
    std::vector<Rational> f;  ///< per sector, in [0,1)

    GaloisAction compose(const GaloisAction& o) const {
        GaloisAction g{add(xi0, o.xi0), {}};
        for (size_t v = 0; v < f.size(); ++v) g.f.push_back(frac(f[v] + o.f[v]));
        return g;
    }
    friend bool operator==(const GaloisAction& a, const GaloisAction& b) { return a.xi0 == b.xi0 && a.f == b.f; }
};

inline GaloisAction galois(const ToricModel& model, const QVec& n) {
    const auto& ring = model.ring();
    GaloisAction g;
    g.xi0 = ring.untwisted_from_divisor(n);
    for (size_t v = 0; v < ring.num_sectors(); ++v) g.f.push_back(line_age(model, v, n));
    return g;
}

/// Apply G(xi) to a point tau of H^*_CR (coordinates).
inline CVec galois_apply(const OrbifoldRing& ring, const GaloisAction& g, const CVec& tau) {
    CVec out(tau);
    for (size_t i = 0; i < g.xi0.size(); ++i) out[i] -= kTwoPiI * g.xi0[i].get_d();
    for (size_t v = 1; v < ring.num_sectors(); ++v) {
        Complex ph = std::exp(kTwoPiI * g.f[v].get_d());
        const auto& sec = ring.sector(v);
        for (size_t i = 0; i < sec.dim; ++i) out[sec.offset + i] *= ph;
    }
    return out;
}

/// z^{-deg/2} z^{rho} x for real z > 0 (deg includes the age shift), rho an untwisted class.
inline CVec z_grading(const OrbifoldRing& ring, const QVec& rho, double z, const CVec& x) {
    CVec r = to_complex(rho);
    for (auto& t : r) t *= std::log(z);
    CVec y = ring.cup(exp_untwisted(ring, r), x);
    for (size_t g = 0; g < y.size(); ++g) y[g] *= std::pow(z, -ring.degree(g).get_d() / 2.0);
    return y;
}

} // namespace gammaint
