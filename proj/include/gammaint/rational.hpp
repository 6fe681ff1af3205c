#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace gammaint {

using Rational = mpq_class;
using Integer = mpz_class;
using QVec = std::vector<Rational>;
using ZVec = std::vector<long>;

/// p/q in lowest terms.
inline Rational ratio(long p, long q) {
    if (q == 0) fail(ErrorKind::Domain, "zero denominator");
    Rational r(p, q);
    r.canonicalize();
    return r;
}

inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    while (!s.empty() && s.front() == ' ') s.erase(s.begin());
    while (!s.empty() && s.back() == ' ') s.pop_back();
    if (s.empty()) fail(ErrorKind::InvalidInput, "empty rational literal");
    if (s.front() == '+') s.erase(s.begin());
    Rational r;
    if (r.set_str(s, 10) != 0) fail(ErrorKind::InvalidInput, "bad rational literal '" + s + "'");
    if (r.get_den() == 0) fail(ErrorKind::InvalidInput, "zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline std::string to_string(const QVec& v) {
    std::string out = "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += v[i].get_str();
    }
    return out + ")";
}

inline std::string to_string(const ZVec& v) {
    std::string out = "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(v[i]);
    }
    return out + ")";
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline Integer floor_q(const Rational& r) {
    Integer out;
    mpz_fdiv_q(out.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return out;
}

inline Integer ceil_q(const Rational& r) {
    Integer out;
    mpz_cdiv_q(out.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return out;
}

/// Fractional part in [0,1).
inline Rational frac(const Rational& r) { return r - Rational(floor_q(r)); }

inline long to_long(const Rational& r) {
    if (!is_integer(r)) fail(ErrorKind::Domain, "expected an integer, got " + r.get_str());
    if (!r.get_num().fits_slong_p()) fail(ErrorKind::Domain, "integer overflow");
    return r.get_num().get_si();
}

inline Rational factorial(long n) {
    if (n < 0) fail(ErrorKind::Domain, "factorial of negative number");
    Integer f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return Rational(f);
}

inline Rational binomial(long n, long k) {
    if (k < 0 || k > n) return 0;
    Integer b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(b);
}

inline Rational pow_q(const Rational& r, long e) {
    Rational out = 1;
    Rational base = e >= 0 ? r : Rational(1) / r;
    for (long i = 0; i < (e >= 0 ? e : -e); ++i) out *= base;
    return out;
}

inline QVec to_qvec(const ZVec& v) {
    QVec out;
    out.reserve(v.size());
    for (long x : v) out.emplace_back(x);
    return out;
}

inline Rational dot(const QVec& a, const QVec& b) {
    Rational s = 0;
    for (size_t i = 0; i < a.size() && i < b.size(); ++i) s += a[i] * b[i];
    return s;
}

inline bool is_zero(const QVec& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

inline QVec add(const QVec& a, const QVec& b) {
    QVec out(a);
    for (size_t i = 0; i < b.size(); ++i) out[i] += b[i];
    return out;
}

inline QVec sub(const QVec& a, const QVec& b) {
    QVec out(a);
    for (size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
    return out;
}

inline QVec scale(const QVec& a, const Rational& c) {
    QVec out(a);
    for (auto& x : out) x *= c;
    return out;
}

inline void axpy(QVec& y, const Rational& a, const QVec& x) {
    if (a == 0) return;
    for (size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

inline double to_double(const Rational& r) { return r.get_d(); }

} // namespace gammaint
