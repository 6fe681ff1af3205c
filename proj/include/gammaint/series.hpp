#pragma once

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "model.hpp"

namespace gammaint {

/// Laurent polynomial in z with vector coefficients: z-power -> vector.
using LaurentVec = std::map<int, QVec>;

/// Sum_e q^e (Laurent polynomial in z with coefficients in H^*_CR), optionally times exp(P/z).
struct QSeries {
    size_t vars = 0;
    Rational bound;        ///< terms with total q-degree <= bound are exact
    bool prefactor = true; ///< whether the series carries exp(sum_a p_a log q_a / z)
    int zmin = -64, zmax = 64;
    size_t sector = 0;     ///< Box index v for I^v
    std::map<QVec, LaurentVec> terms;

    const LaurentVec* at(const QVec& e) const {
        auto it = terms.find(e);
        return it == terms.end() ? nullptr : &it->second;
    }
    QVec coefficient(const QVec& e, int zpow, size_t dim) const {
        auto* lv = at(e);
        if (!lv) return QVec(dim, Rational(0));
        auto it = lv->find(zpow);
        return it == lv->end() ? QVec(dim, Rational(0)) : it->second;
    }
};

/// Scalar power series in (fractional) q.
struct ScalarSeries {
    size_t vars = 0;
    Rational bound;
    std::map<QVec, Rational> terms;

    Rational at(const QVec& e) const {
        auto it = terms.find(e);
        return it == terms.end() ? Rational(0) : it->second;
    }
};

/// Series with vector coefficients and no z-dependence.
struct VecSeries {
    size_t vars = 0;
    Rational bound;
    std::map<QVec, QVec> terms;
};

inline Rational total_degree(const QVec& e) {
    Rational s = 0;
    for (const auto& t : e) s += t;
    return s;
}

inline void lv_add(LaurentVec& acc, int zpow, const QVec& v) {
    if (is_zero(v)) return;
    auto it = acc.find(zpow);
    if (it == acc.end()) acc.emplace(zpow, v);
    else {
        for (size_t i = 0; i < v.size(); ++i) it->second[i] += v[i];
        if (is_zero(it->second)) acc.erase(it);
    }
}

inline bool lv_zero(const LaurentVec& lv) {
    for (const auto& [k, v] : lv)
        if (!is_zero(v)) return false;
    return true;
}

/// (D + k z) * lv with D untwisted.
inline LaurentVec lv_mul_linear(const OrbifoldRing& ring, const LaurentVec& lv, const QVec& D, const Rational& k) {
    LaurentVec out;
    for (const auto& [p, v] : lv) {
        lv_add(out, p, ring.cup(D, v));
        if (k != 0) lv_add(out, p + 1, scale(v, k));
    }
    return out;
}

/// (D + k z)^{-1} * lv with D untwisted (nilpotent) and k != 0.
inline LaurentVec lv_div_linear(const OrbifoldRing& ring, const LaurentVec& lv, const QVec& D, const Rational& k) {
    if (k == 0) fail(ErrorKind::Formula, "division by a nilpotent class");
    LaurentVec out;
    for (const auto& [p, v] : lv) {
        QVec cur = v;
        Rational c = Rational(1) / k;
        for (int j = 0; !is_zero(cur); ++j) {
            lv_add(out, p - j - 1, scale(cur, c));
            cur = ring.cup(D, cur);
            c = -c / k;
            if (j > static_cast<int>(ring.n()) + 2) fail(ErrorKind::Formula, "class is not nilpotent");
        }
    }
    return out;
}

inline void series_add(QSeries& s, const QVec& e, const LaurentVec& lv) {
    if (lv_zero(lv)) return;
    auto& slot = s.terms[e];
    for (const auto& [p, v] : lv) lv_add(slot, p, v);
    if (slot.empty()) s.terms.erase(e);
}

/// Scalar series product truncated at the smaller bound.
inline ScalarSeries mul(const ScalarSeries& a, const ScalarSeries& b) {
    ScalarSeries out{a.vars, std::min(a.bound, b.bound), {}};
    for (const auto& [ea, ca] : a.terms)
        for (const auto& [eb, cb] : b.terms) {
            QVec e = add(ea, eb);
            if (total_degree(e) > out.bound) continue;
            out.terms[e] += ca * cb;
        }
    for (auto it = out.terms.begin(); it != out.terms.end();)
        it = it->second == 0 ? out.terms.erase(it) : std::next(it);
    return out;
}

/// Inverse of a scalar series with constant term 1.
inline ScalarSeries inverse(const ScalarSeries& f) {
    QVec zero(f.vars, Rational(0));
    if (f.at(zero) != 1) fail(ErrorKind::Domain, "series inverse needs constant term 1");
    ScalarSeries x{f.vars, f.bound, {}};
    Rational mindeg = -1;
    for (const auto& [e, c] : f.terms) {
        if (e == zero) continue;
        x.terms[e] = -c;
        Rational d = total_degree(e);
        if (d <= 0) fail(ErrorKind::Domain, "series inverse needs positive degrees");
        if (mindeg < 0 || d < mindeg) mindeg = d;
    }
    ScalarSeries out{f.vars, f.bound, {{zero, Rational(1)}}};
    if (x.terms.empty()) return out;
    ScalarSeries pw = out;
    long J = checked_long(floor_q(f.bound / mindeg));
    for (long j = 1; j <= J; ++j) {
        pw = mul(pw, x);
        for (const auto& [e, c] : pw.terms) out.terms[e] += c;
    }
    for (auto it = out.terms.begin(); it != out.terms.end();)
        it = it->second == 0 ? out.terms.erase(it) : std::next(it);
    return out;
}

inline std::string format_monomial(const QVec& e) {
    std::string s;
    for (size_t a = 0; a < e.size(); ++a) {
        if (e[a] == 0) continue;
        if (!s.empty()) s += "*";
        s += "q" + std::to_string(a + 1);
        if (e[a] != 1) s += "^" + (is_integer(e[a]) ? e[a].get_str() : "(" + e[a].get_str() + ")");
    }
    return s.empty() ? "1" : s;
}

inline std::string format_vector(const OrbifoldRing& ring, const QVec& v) {
    std::string s;
    for (size_t g = 0; g < v.size(); ++g) {
        if (v[g] == 0) continue;
        std::string c = v[g].get_str();
        if (!s.empty()) s += (v[g] > 0 ? " + " : " - ");
        else if (v[g] < 0) s += "-";
        Rational a = abs(v[g]);
        if (a != 1) s += a.get_str() + "*";
        s += ring.label(g);
    }
    return s.empty() ? "0" : s;
}

inline std::string format_series(const OrbifoldRing& ring, const QSeries& s) {
    std::ostringstream os;
    if (s.prefactor) os << "exp(P/z) * (";
    bool first = true;
    for (const auto& [e, lv] : s.terms)
        for (auto it = lv.rbegin(); it != lv.rend(); ++it) {
            if (!first) os << " + ";
            first = false;
            os << format_monomial(e) << "*z^" << it->first << "*[" << format_vector(ring, it->second) << "]";
        }
    if (first) os << "0";
    if (s.prefactor) os << ")";
    os << " + O(deg > " << s.bound.get_str() << ")";
    return os.str();
}

} // namespace gammaint
