#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "ifunction.hpp"

namespace gammaint {

using LaurentMat = std::map<int, QMatrix>;

/// Matrix-valued series sum_e q^e sum_k z^k M_{e,k}.
struct LoopMatrix {
    size_t dim = 0;
    size_t vars = 0;
    Rational bound;
    std::map<QVec, LaurentMat> terms;

    QMatrix coefficient(const QVec& e, int k) const {
        auto it = terms.find(e);
        if (it == terms.end()) return QMatrix(dim, dim);
        auto jt = it->second.find(k);
        return jt == it->second.end() ? QMatrix(dim, dim) : jt->second;
    }
};

inline void lm_add(LaurentMat& acc, int k, const QMatrix& m) {
    if (m.is_zero()) return;
    auto it = acc.find(k);
    if (it == acc.end()) acc.emplace(k, m);
    else {
        it->second += m;
        if (it->second.is_zero()) acc.erase(it);
    }
}

inline LaurentMat lm_mul(const LaurentMat& a, const LaurentMat& b) {
    LaurentMat out;
    for (const auto& [ka, ma] : a)
        for (const auto& [kb, mb] : b) lm_add(out, ka + kb, ma * mb);
    return out;
}

inline LoopMatrix loop_mul(const LoopMatrix& a, const LoopMatrix& b) {
    LoopMatrix out{a.dim, a.vars, std::min(a.bound, b.bound), {}};
    for (const auto& [ea, la] : a.terms)
        for (const auto& [eb, lb] : b.terms) {
            QVec e = add(ea, eb);
            if (total_degree(e) > out.bound) continue;
            auto prod = lm_mul(la, lb);
            auto& slot = out.terms[e];
            for (const auto& [k, m] : prod) lm_add(slot, k, m);
            if (slot.empty()) out.terms.erase(e);
        }
    return out;
}

inline LoopMatrix loop_sub(const LoopMatrix& a, const LoopMatrix& b) {
    LoopMatrix out = a;
    for (const auto& [e, lb] : b.terms) {
        auto& slot = out.terms[e];
        for (const auto& [k, m] : lb) lm_add(slot, k, m.scaled(-1));
        if (slot.empty()) out.terms.erase(e);
    }
    return out;
}

inline bool loop_is_zero(const LoopMatrix& a) {
    for (const auto& [e, l] : a.terms)
        for (const auto& [k, m] : l)
            if (!m.is_zero()) return false;
    return true;
}

/// z -> -z
inline LoopMatrix loop_negate_z(const LoopMatrix& a) {
    LoopMatrix out = a;
    for (auto& [e, l] : out.terms)
        for (auto& [k, m] : l)
            if (k % 2) m = m.scaled(-1);
    return out;
}

inline LoopMatrix loop_transpose(const LoopMatrix& a) {
    LoopMatrix out = a;
    for (auto& [e, l] : out.terms)
        for (auto& [k, m] : l) m = m.transpose();
    return out;
}

inline LoopMatrix loop_constant(const QMatrix& m, size_t vars, const Rational& bound) {
    LoopMatrix out{m.rows(), vars, bound, {}};
    out.terms[QVec(vars, Rational(0))][0] = m;
    return out;
}

/// Inverse of a loop matrix of the form 1 + O(q).
inline LoopMatrix loop_inverse_unipotent(const LoopMatrix& a) {
    QVec zero(a.vars, Rational(0));
    LoopMatrix x = a;
    auto it = x.terms.find(zero);
    if (it == x.terms.end() || it->second.size() != 1 || !it->second.count(0) ||
        !(it->second.at(0) == QMatrix::identity(a.dim)))
        fail(ErrorKind::Domain, "loop inverse needs leading term 1");
    x.terms.erase(zero);
    for (auto& [e, l] : x.terms)
        for (auto& [k, m] : l) m = m.scaled(-1);
    LoopMatrix out = loop_constant(QMatrix::identity(a.dim), a.vars, a.bound);
    if (x.terms.empty()) return out;
    Rational mindeg = -1;
    for (const auto& [e, l] : x.terms) {
        Rational d = total_degree(e);
        if (d <= 0) fail(ErrorKind::Domain, "loop inverse needs positive q-degrees");
        if (mindeg < 0 || d < mindeg) mindeg = d;
    }
    LoopMatrix pw = out;
    long J = checked_long(floor_q(a.bound / mindeg));
    for (long j = 1; j <= J; ++j) {
        pw = loop_mul(pw, x);
        for (const auto& [e, l] : pw.terms) {
            auto& slot = out.terms[e];
            for (const auto& [k, m] : l) lm_add(slot, k, m);
            if (slot.empty()) out.terms.erase(e);
        }
    }
    return out;
}

/// Monomial in z d_1..z d_r applied to I^v; exponents over the nef basis.
struct BasisOperator {
    size_t sector;
    ZVec exponents;
};

struct BirkhoffResult {
    std::vector<BasisOperator> operators;
    QMatrix C;          ///< q^0 coefficient of the column matrix
    LoopMatrix M;       ///< column matrix times C^{-1}
    LoopMatrix N;       ///< negative part: 1 + O(z^{-1}) = inverse fundamental solution without prefactor
    LoopMatrix U;       ///< nonnegative part with U_0 = 1
    LoopMatrix L;       ///< fundamental solution without prefactor (N^{-1})
    LoopMatrix Upsilon; ///< U C
    bool remultiplies = false;
    bool twisted = false;
};

namespace detail {

inline std::vector<BasisOperator> choose_operators(const ToricModel& model) {
    const auto& ring = model.ring();
    std::vector<BasisOperator> ops;
    size_t r = model.r();
    for (size_t v = 0; v < ring.num_sectors(); ++v) {
        const auto& sec = ring.sector(v);
        std::vector<QVec> chosen;
        for (long deg = 0; deg <= static_cast<long>(ring.n()) && chosen.size() < sec.dim; ++deg) {
            ZVec mono(r, 0);
            std::function<void(size_t, long)> rec = [&](size_t a, long left) {
                if (chosen.size() >= sec.dim) return;
                if (a + 1 >= r) {
                    if (r > 0) mono[r - 1] = left;
                    else if (left > 0) return;
                    QVec img(sec.dim, Rational(0));
                    img[0] = 1;
                    for (size_t b = 0; b < r; ++b)
                        for (long t = 0; t < mono[b]; ++t)
                            img = ring.local_mul<Rational>(v, img, ring.restrict_to<Rational>(v, model.p_bar()[b]));
                    auto trial = chosen;
                    trial.push_back(img);
                    if (rank(QMatrix::from_rows(trial, sec.dim)) == trial.size()) {
                        chosen = trial;
                        ZVec full(model.k(), 0);
                        for (size_t b = 0; b < r; ++b) full[b] = mono[b];
                        ops.push_back({v, full});
                    }
                    return;
                }
                for (long t = left; t >= 0; --t) {
                    mono[a] = t;
                    rec(a + 1, left - t);
                }
            };
            rec(0, deg);
        }
        if (chosen.size() < sec.dim)
            fail(ErrorKind::SearchFailure, "nef basis classes do not generate sector " + std::to_string(v));
    }
    return ops;
}

inline std::vector<QVec> additive_closure(const std::set<QVec>& keys, const Rational& bound, size_t vars) {
    std::set<QVec> cl;
    QVec zero(vars, Rational(0));
    for (const auto& k : keys)
        if (k != zero && total_degree(k) <= bound) cl.insert(k);
    std::vector<QVec> base(cl.begin(), cl.end());
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<QVec> cur(cl.begin(), cl.end());
        for (const auto& a : cur)
            for (const auto& b : base) {
                QVec s = add(a, b);
                if (total_degree(s) <= bound && cl.insert(s).second) grew = true;
            }
    }
    std::vector<QVec> out(cl.begin(), cl.end());
    std::sort(out.begin(), out.end(), [](const QVec& a, const QVec& b) {
        Rational da = total_degree(a), db = total_degree(b);
        if (da != db) return da < db;
        return a < b;
    });
    return out;
}

} // namespace detail

/// Columns P_{v,i}(z d) I^v (or I_V^v), Birkhoff-factorized as N U after normalizing by the q^0 term.
inline BirkhoffResult birkhoff_factorize(const ToricModel& model, const Rational& bound, bool twisted,
                                         const ZWindow& w = {}, std::vector<BasisOperator> ops = {}) {
    const auto& ring = model.ring();
    size_t dim = ring.dim();
    size_t k = model.k();
    BirkhoffResult res;
    res.twisted = twisted;
    res.operators = ops.empty() ? detail::choose_operators(model) : ops;
    if (res.operators.size() != dim) fail(ErrorKind::Domain, "need one operator per basis element");
    LoopMatrix Mt{dim, k, bound, {}};
    std::map<size_t, QSeries> Iv;
    for (size_t col = 0; col < dim; ++col) {
        const auto& op = res.operators[col];
        if (!Iv.count(op.sector))
            Iv[op.sector] = twisted ? build_I_twisted(model, op.sector, bound, w) : build_I(model, op.sector, bound, w);
        QSeries s = Iv[op.sector];
        for (size_t a = 0; a < k; ++a)
            for (long t = 0; t < op.exponents[a]; ++t) s = apply_log_field(model, s, to_qvec(model.lattice().nef_lifts()[a]));
        for (const auto& [e, lv] : s.terms)
            for (const auto& [p, vec] : lv) {
                auto& slot = Mt.terms[e];
                auto it = slot.find(p);
                if (it == slot.end()) it = slot.emplace(p, QMatrix(dim, dim)).first;
                it->second.set_col(col, vec);
            }
    }
    QVec zero(k, Rational(0));
    const auto& lead = Mt.terms[zero];
    if (lead.size() != 1 || !lead.count(0)) fail(ErrorKind::Gauge, "leading coefficient depends on z");
    res.C = lead.at(0);
    auto Cinv = inverse(res.C);
    if (!Cinv) fail(ErrorKind::Gauge, "leading coefficient is not invertible");
    res.M = loop_mul(Mt, loop_constant(*Cinv, k, bound));

    std::set<QVec> keys;
    for (const auto& [e, l] : res.M.terms) keys.insert(e);
    auto order = detail::additive_closure(keys, bound, k);
    res.N = loop_constant(QMatrix::identity(dim), k, bound);
    res.U = res.N;
    for (const auto& e : order) {
        LaurentMat R;
        auto mit = res.M.terms.find(e);
        if (mit != res.M.terms.end()) R = mit->second;
        for (const auto& [e1, n1] : res.N.terms) {
            if (e1 == zero) continue;
            QVec e2 = sub(e, e1);
            if (e2 == zero) continue;
            auto uit = res.U.terms.find(e2);
            if (uit == res.U.terms.end()) continue;
            for (const auto& [kk, m] : lm_mul(n1, uit->second)) lm_add(R, kk, m.scaled(-1));
        }
        LaurentMat neg, pos;
        for (const auto& [kk, m] : R) {
            if (kk < w.lo || kk > w.hi)
                fail(ErrorKind::WidenWindow, "Birkhoff factor at q^" + to_string(e) + " needs z^" + std::to_string(kk));
            (kk < 0 ? neg : pos)[kk] = m;
        }
        if (!neg.empty()) res.N.terms[e] = neg;
        if (!pos.empty()) res.U.terms[e] = pos;
    }
    res.remultiplies = loop_is_zero(loop_sub(loop_mul(res.N, res.U), res.M));
    res.L = loop_inverse_unipotent(res.N);
    res.Upsilon = loop_mul(res.U, loop_constant(res.C, k, bound));
    return res;
}

/// Matrix-valued q-series (no z).
using MatSeries = std::map<QVec, QMatrix>;

/// A_a = L (p_a cup) L^{-1} + L (z d_a L^{-1}); fails with a gauge error if any z-dependence remains.
inline std::vector<MatSeries> quantum_products(const ToricModel& model, const BirkhoffResult& b) {
    const auto& ring = model.ring();
    size_t k = model.k();
    std::vector<MatSeries> out;
    for (size_t a = 0; a < k; ++a) {
        LoopMatrix D = loop_mul(loop_constant(ring.cup_matrix(model.p_bar()[a]), k, b.N.bound), b.N);
        for (const auto& [e, l] : b.N.terms) {
            if (e[a] == 0) continue;
            auto& slot = D.terms[e];
            for (const auto& [kk, m] : l) lm_add(slot, kk + 1, m.scaled(e[a]));
            if (slot.empty()) D.terms.erase(e);
        }
        LoopMatrix A = loop_mul(b.L, D);
        MatSeries s;
        for (const auto& [e, l] : A.terms)
            for (const auto& [kk, m] : l) {
                if (kk != 0) fail(ErrorKind::Gauge, "quantum product has z^" + std::to_string(kk) + " at q^" + to_string(e));
                s[e] = m;
            }
        out.push_back(std::move(s));
    }
    return out;
}

inline MatSeries mat_series_mul(const MatSeries& a, const MatSeries& b, const Rational& bound) {
    MatSeries out;
    for (const auto& [ea, ma] : a)
        for (const auto& [eb, mb] : b) {
            QVec e = add(ea, eb);
            if (total_degree(e) > bound) continue;
            auto it = out.find(e);
            QMatrix p = ma * mb;
            if (it == out.end()) out.emplace(e, p);
            else it->second += p;
        }
    for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

inline bool mat_series_equal(const MatSeries& a, const MatSeries& b) {
    auto clean = [](const MatSeries& s) {
        MatSeries c;
        for (const auto& [e, m] : s)
            if (!m.is_zero()) c.emplace(e, m);
        return c;
    };
    return clean(a) == clean(b);
}

/// z(d_a A_b - d_b A_a) = 0 and [A_a, A_b] = 0 for all a < b.
inline bool flatness(const std::vector<MatSeries>& A, const Rational& bound) {
    for (size_t a = 0; a < A.size(); ++a)
        for (size_t b = a + 1; b < A.size(); ++b) {
            std::set<QVec> keys;
            for (const auto& [e, m] : A[a]) keys.insert(e);
            for (const auto& [e, m] : A[b]) keys.insert(e);
            for (const auto& e : keys) {
                QMatrix lhs = A[b].count(e) ? A[b].at(e).scaled(e[a]) : QMatrix();
                QMatrix rhs = A[a].count(e) ? A[a].at(e).scaled(e[b]) : QMatrix();
                if (lhs.rows() == 0) lhs = QMatrix(rhs.rows(), rhs.cols());
                if (rhs.rows() == 0) rhs = QMatrix(lhs.rows(), lhs.cols());
                if (!(lhs - rhs).is_zero()) return false;
            }
            if (!mat_series_equal(mat_series_mul(A[a], A[b], bound), mat_series_mul(A[b], A[a], bound))) return false;
        }
    return true;
}

/// L(-z)^T G L(z) = G for the untwisted theory.
inline bool unitarity(const ToricModel& model, const BirkhoffResult& b) {
    QMatrix G = model.ring().pairing_matrix();
    size_t k = model.k();
    LoopMatrix lhs = loop_mul(loop_mul(loop_transpose(loop_negate_z(b.L)), loop_constant(G, k, b.L.bound)), b.L);
    return loop_is_zero(loop_sub(lhs, loop_constant(G, k, b.L.bound)));
}

} // namespace gammaint
