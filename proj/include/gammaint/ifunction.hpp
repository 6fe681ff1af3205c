#pragma once

#include <functional>
#include <vector>

#include "series.hpp"

namespace gammaint {

struct ZWindow {
    int lo = -64, hi = 64;
};

namespace detail {

inline void check_window(const QSeries& s, const ZWindow& w) {
    for (const auto& [e, lv] : s.terms)
        for (const auto& [p, v] : lv)
            if (p < w.lo || p > w.hi)
                fail(ErrorKind::WidenWindow, "term q^" + to_string(e) + " has z^" + std::to_string(p) +
                                                 " outside the window [" + std::to_string(w.lo) + "," +
                                                 std::to_string(w.hi) + "]");
}

inline QSeries build_I_impl(const ToricModel& model, size_t v, const Rational& bound, const ZWindow& w, bool twisted) {
    const auto& ring = model.ring();
    const auto& fan = model.fan();
    if (twisted && !model.partition()) fail(ErrorKind::Domain, "twisted I-function needs a nef partition");
    QSeries s;
    s.vars = model.k();
    s.bound = bound;
    s.prefactor = true;
    s.zmin = w.lo;
    s.zmax = w.hi;
    s.sector = v;
    for (const auto& f : model.lattice().enumerate_Kv(v, bound)) {
        LaurentVec lv{{0, ring.unit(f.target)}};
        for (size_t i = 0; i < fan.N() && !lv_zero(lv); ++i) {
            const Rational& r = f.d[i];
            QVec D = ring.divisor(i);
            if (r > 0)
                for (Rational k = r; k > 0; k -= 1) lv = lv_div_linear(ring, lv, D, k);
            else if (r < 0)
                for (Rational k = r + 1; k <= 0; k += 1) lv = lv_mul_linear(ring, lv, D, k);
        }
        if (twisted && !lv_zero(lv)) {
            const auto& np = *model.partition();
            for (size_t j = 0; j < np.c(); ++j) {
                Rational a = dot(np.lifts[j], f.cls);
                if (!is_integer(a)) fail(ErrorKind::Formula, "non-integral twisting degree at q^" + to_string(f.q));
                if (a < 0) fail(ErrorKind::Formula, "negative twisting degree at q^" + to_string(f.q));
                QVec xi = model.xi(j);
                for (long k = 1; k <= to_long(a); ++k) lv = lv_mul_linear(ring, lv, xi, Rational(k));
            }
        }
        series_add(s, f.q, lv);
    }
    check_window(s, w);
    return s;
}

} // namespace detail

/// I^v(q,z) of the toric stack, truncated at total q-degree <= bound.
inline QSeries build_I(const ToricModel& model, size_t v, const Rational& bound, const ZWindow& w = {}) {
    return detail::build_I_impl(model, v, bound, w, false);
}

/// Euler-twisted I^v_V(q,z) for the nef partition of the model.
inline QSeries build_I_twisted(const ToricModel& model, size_t v, const Rational& bound, const ZWindow& w = {}) {
    return detail::build_I_impl(model, v, bound, w, true);
}

/// Homogeneity: deg(class) + 2 zpow + 2 <rho_Y, d+v> = 2 age(v) for every nonzero component.
/// Returns the number of violating components.
inline size_t homogeneity_violations(const ToricModel& model, const QSeries& s, bool twisted) {
    const auto& ring = model.ring();
    QVec rho = twisted ? model.rho_lift() : QVec(model.fan().N(), Rational(1));
    Rational age2 = 2 * model.box()[s.sector].age;
    size_t bad = 0;
    for (const auto& [e, lv] : s.terms) {
        Rational qdeg = 2 * dot(rho, model.lattice().class_from_coords(e));
        for (const auto& [p, v] : lv)
            for (size_t g = 0; g < v.size(); ++g)
                if (v[g] != 0 && ring.degree(g) + 2 * p + qdeg != age2) ++bad;
    }
    return bad;
}

/// Apply the log vector field for the functional with lift x (length N).
inline QSeries apply_log_field(const ToricModel& model, const QSeries& s, const QVec& x) {
    const auto& ring = model.ring();
    QVec m = model.lattice().functional_coords(x);
    QVec xbar = ring.untwisted_from_divisor(x);
    QSeries out = s;
    out.terms.clear();
    for (const auto& [e, lv] : s.terms) {
        LaurentVec res;
        Rational w = dot(m, e);
        for (const auto& [p, v] : lv) {
            if (s.prefactor) lv_add(res, p, ring.cup(xbar, v));
            if (w != 0) lv_add(res, p + 1, scale(v, w));
        }
        series_add(out, e, res);
    }
    return out;
}

inline QSeries apply_log_field_index(const ToricModel& model, const QSeries& s, size_t i) {
    QVec x(model.fan().N(), Rational(0));
    x[i] = 1;
    return apply_log_field(model, s, x);
}

/// Smallest (by total, then lexicographic) e >= 0 with sum_i e_i b_i = v.
inline ZVec nonnegative_representation(const StackyFan& fan, const ZVec& v, long max_total = 16) {
    size_t N = fan.N();
    ZVec e(N, 0);
    std::optional<ZVec> found;
    std::function<void(size_t, long)> rec = [&](size_t i, long left) {
        if (found) return;
        if (i + 1 == N) {
            e[i] = left;
            ZVec s(fan.n, 0);
            for (size_t j = 0; j < N; ++j)
                for (size_t r = 0; r < fan.n; ++r) s[r] += e[j] * fan.b(j)[r];
            if (s == v) found = e;
            return;
        }
        for (long t = left; t >= 0 && !found; --t) {
            e[i] = t;
            rec(i + 1, left - t);
        }
    };
    for (long total = 0; total <= max_total && !found; ++total) rec(0, total);
    if (!found) fail(ErrorKind::SearchFailure, "no nonnegative representation of " + to_string(v));
    return *found;
}

/// I^v obtained from I = I^0 by the differential operator prod_i prod_{nu<e_i} (bD_i - nu z) and the shift q^{-delta}.
inline QSeries derive_Iv_from_I(const ToricModel& model, size_t v, const QSeries& I) {
    const auto& fan = model.fan();
    const auto& bv = model.box()[v];
    ZVec e = nonnegative_representation(fan, bv.v);
    QVec delta(fan.N(), Rational(0));
    for (size_t i = 0; i < fan.N(); ++i) delta[i] = e[i];
    for (size_t i = 0; i < fan.m(); ++i) delta[i] -= bv.c[i];
    QSeries cur = I;
    for (size_t i = 0; i < fan.N(); ++i)
        for (long nu = 0; nu < e[i]; ++nu) {
            QSeries next = apply_log_field_index(model, cur, i);
            if (nu != 0)
                for (const auto& [q, lv] : cur.terms) {
                    LaurentVec shifted;
                    for (const auto& [p, vec] : lv) lv_add(shifted, p + 1, scale(vec, Rational(-nu)));
                    series_add(next, q, shifted);
                }
            cur = next;
        }
    QVec shift = model.lattice().coords(delta);
    QSeries out = cur;
    out.terms.clear();
    out.sector = v;
    out.bound = I.bound - total_degree(shift);
    for (const auto& [q, lv] : cur.terms) {
        QVec k = sub(q, shift);
        if (total_degree(k) <= out.bound) out.terms[k] = lv;
    }
    return out;
}

/// Truncate a series to a smaller bound.
inline QSeries truncate(const QSeries& s, const Rational& bound) {
    QSeries out = s;
    out.bound = std::min(bound, s.bound);
    out.terms.clear();
    for (const auto& [e, lv] : s.terms)
        if (total_degree(e) <= out.bound) out.terms[e] = lv;
    return out;
}

/// Mirror map data: I = F(q) 1 + G(q)/z + O(z^-2) (after removing the prefactor), tau = P log q + G/F.
struct MirrorMap {
    ScalarSeries F;
    VecSeries correction;       ///< G/F
    std::vector<QVec> log_part; ///< p-bar_a as global classes
};

inline MirrorMap mirror_map(const ToricModel& model, const QSeries& I) {
    const auto& ring = model.ring();
    if (I.sector != 0) fail(ErrorKind::Domain, "mirror map needs the v = 0 I-function");
    MirrorMap mm;
    mm.F = {I.vars, I.bound, {}};
    mm.correction = {I.vars, I.bound, {}};
    std::map<QVec, QVec> G;
    for (const auto& [e, lv] : I.terms)
        for (const auto& [p, v] : lv) {
            if (p > 0) fail(ErrorKind::Formula, "I-function has positive powers of z; the mirror map is undefined");
            if (p == 0) {
                for (size_t g = 1; g < v.size(); ++g)
                    if (v[g] != 0) fail(ErrorKind::Formula, "z^0 coefficient is not a multiple of the unit");
                if (v[0] != 0) mm.F.terms[e] = v[0];
            }
            if (p == -1) {
                for (size_t g = 0; g < v.size(); ++g)
                    if (v[g] != 0 && ring.degree(g) > 2) fail(ErrorKind::Formula, "z^-1 coefficient has degree > 2");
                G[e] = v;
            }
        }
    ScalarSeries Finv = inverse(mm.F);
    for (const auto& [eg, g] : G)
        for (const auto& [ef, c] : Finv.terms) {
            QVec e = add(eg, ef);
            if (total_degree(e) > I.bound) continue;
            auto& slot = mm.correction.terms[e];
            if (slot.empty()) slot = ring.zero();
            axpy(slot, c, g);
        }
    for (auto it = mm.correction.terms.begin(); it != mm.correction.terms.end();)
        it = is_zero(it->second) ? mm.correction.terms.erase(it) : std::next(it);
    for (const auto& p : model.p_bar()) mm.log_part.push_back(ring.embed_untwisted(p));
    return mm;
}

} // namespace gammaint
