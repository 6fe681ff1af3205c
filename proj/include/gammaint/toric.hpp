#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "linalg.hpp"
#include "polytope.hpp"

namespace gammaint {

/// Simplicial stacky fan with extra ("extended") lattice vectors.
/// Indices 0..m-1 are rays, m..m+s-1 are extended vectors.
struct StackyFan {
    size_t n = 0;
    std::vector<ZVec> rays;
    std::vector<ZVec> extended;
    std::vector<std::vector<size_t>> cones; ///< maximal cones, sorted ray indices

    size_t m() const { return rays.size(); }
    size_t s() const { return extended.size(); }
    size_t N() const { return rays.size() + extended.size(); }
    const ZVec& b(size_t i) const { return i < rays.size() ? rays[i] : extended[i - rays.size()]; }

    /// Points whose convex hull is the fan polytope (rays plus extended vectors).
    std::vector<ZVec> all_vectors() const {
        std::vector<ZVec> out(rays);
        out.insert(out.end(), extended.begin(), extended.end());
        return out;
    }

    QMatrix cone_matrix(const std::vector<size_t>& sigma) const {
        QMatrix M(n, sigma.size());
        for (size_t j = 0; j < sigma.size(); ++j)
            for (size_t i = 0; i < n; ++i) M(i, j) = b(sigma[j])[i];
        return M;
    }

    /// Coefficients of x in the basis of a maximal cone.
    QVec cone_coefficients(const QVec& x, const std::vector<size_t>& sigma) const {
        auto sol = solve(cone_matrix(sigma), x);
        if (!sol) fail(ErrorKind::InvalidFan, "degenerate cone");
        return *sol;
    }

    bool is_cone(const std::vector<size_t>& face) const {
        for (const auto& c : cones)
            if (std::includes(c.begin(), c.end(), face.begin(), face.end())) return true;
        return face.empty();
    }

    /// Minimal cone containing x together with the coefficient vector over the rays (length m).
    std::optional<std::pair<std::vector<size_t>, QVec>> minimal_cone(const QVec& x) const {
        for (const auto& c : cones) {
            QVec coeff = cone_coefficients(x, c);
            bool ok = true;
            for (const auto& t : coeff)
                if (t < 0) ok = false;
            if (!ok) continue;
            std::vector<size_t> support;
            QVec full(m(), Rational(0));
            for (size_t j = 0; j < c.size(); ++j) {
                full[c[j]] = coeff[j];
                if (coeff[j] != 0) support.push_back(c[j]);
            }
            return std::make_pair(support, full);
        }
        return std::nullopt;
    }

    Integer multiplicity(const std::vector<size_t>& sigma) const {
        if (sigma.size() != n) fail(ErrorKind::Domain, "multiplicity requires a maximal cone");
        return Rational(abs(determinant(cone_matrix(sigma)))).get_num();
    }

    /// Rows of the n x N matrix of all vectors.
    std::vector<ZVec> beta_rows() const {
        std::vector<ZVec> A(n, ZVec(N()));
        for (size_t i = 0; i < N(); ++i)
            for (size_t r = 0; r < n; ++r) A[r][i] = b(i)[r];
        return A;
    }
};

/// Throws InvalidFan describing the first violated condition.
inline void validate_fan(const StackyFan& fan) {
    const size_t n = fan.n;
    auto bad = [](const std::string& msg) { fail(ErrorKind::InvalidFan, msg); };
    if (n == 0) bad("rank must be positive");
    if (fan.m() < n + 1) bad("a complete fan needs at least n+1 rays");
    for (size_t i = 0; i < fan.N(); ++i) {
        if (fan.b(i).size() != n) bad("vector " + std::to_string(i) + " has wrong dimension");
        if (gcd_vec(fan.b(i)) == 0) bad("vector " + std::to_string(i) + " is zero");
    }
    std::set<ZVec> distinct(fan.rays.begin(), fan.rays.end());
    distinct.insert(fan.extended.begin(), fan.extended.end());
    if (distinct.size() != fan.N()) bad("repeated lattice vector");
    if (fan.cones.empty()) bad("no cones");
    std::vector<bool> used(fan.m(), false);
    std::set<std::vector<size_t>> cone_set;
    for (const auto& c : fan.cones) {
        if (c.size() != n) bad("maximal cone " + to_string(ZVec(c.begin(), c.end())) + " is not n-dimensional");
        if (!std::is_sorted(c.begin(), c.end()) || std::adjacent_find(c.begin(), c.end()) != c.end())
            bad("cone indices must be sorted and distinct");
        for (size_t i : c) {
            if (i >= fan.m()) bad("cone index out of range");
            used[i] = true;
        }
        if (determinant(fan.cone_matrix(c)) == 0) bad("cone " + to_string(ZVec(c.begin(), c.end())) + " is not simplicial");
        if (!cone_set.insert(c).second) bad("repeated cone");
    }
    for (size_t i = 0; i < fan.m(); ++i)
        if (!used[i]) bad("ray " + std::to_string(i) + " lies in no cone");

    // Each codimension-one face is shared by exactly two maximal cones lying on opposite sides.
    std::map<std::vector<size_t>, std::vector<size_t>> faces;
    for (size_t ci = 0; ci < fan.cones.size(); ++ci)
        for (size_t drop = 0; drop < n; ++drop) {
            std::vector<size_t> f;
            for (size_t j = 0; j < n; ++j)
                if (j != drop) f.push_back(fan.cones[ci][j]);
            faces[f].push_back(ci);
        }
    for (const auto& [f, owners] : faces) {
        if (owners.size() != 2) bad("facet " + to_string(ZVec(f.begin(), f.end())) + " is not shared by exactly two cones");
        std::vector<QVec> rows;
        for (size_t i : f) rows.push_back(to_qvec(fan.b(i)));
        auto ns = nullspace(QMatrix::from_rows(rows, n));
        if (n == 1) ns = {QVec{Rational(1)}};
        if (ns.size() != 1) bad("degenerate facet");
        int signs[2];
        for (int t = 0; t < 2; ++t) {
            const auto& c = fan.cones[owners[t]];
            size_t other = 0;
            for (size_t i : c)
                if (!std::binary_search(f.begin(), f.end(), i)) other = i;
            signs[t] = dot(ns[0], to_qvec(fan.b(other))) > 0 ? 1 : -1;
        }
        if (signs[0] == signs[1]) bad("cones sharing a facet overlap");
    }

    // Generic sample directions must lie in exactly one maximal cone.
    const long primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29};
    size_t patterns = 1;
    for (size_t i = 0; i < n; ++i) patterns *= 3;
    for (size_t p = 0; p < patterns && p < 729; ++p) {
        QVec x(n);
        size_t code = p;
        for (size_t i = 0; i < n; ++i) {
            long digit = static_cast<long>(code % 3) - 1;
            code /= 3;
            x[i] = Rational(digit * 97 + primes[i % 10], primes[(i + 3) % 10]);
        }
        size_t interior = 0, closed = 0;
        for (const auto& c : fan.cones) {
            QVec coeff = fan.cone_coefficients(x, c);
            bool in_closed = true, in_open = true;
            for (const auto& t : coeff) {
                if (t < 0) in_closed = false;
                if (t <= 0) in_open = false;
            }
            closed += in_closed;
            interior += in_open;
        }
        if (closed == 0) bad("fan is not complete: direction " + to_string(x) + " is uncovered");
        if (interior > 1) bad("maximal cones overlap near " + to_string(x));
    }

    if (lattice_index(fan.beta_rows(), fan.N()) != 1) bad("the vectors do not generate the lattice");

    auto pts = fan.all_vectors();
    auto refl = reflexivity(pts);
    if (!refl.origin_interior) bad("origin is not interior to the fan polytope");
    for (const auto& e : fan.extended) {
        if (!fan.minimal_cone(to_qvec(e))) bad("extended vector outside the fan support");
    }
}

struct BoxElement {
    ZVec v;
    std::vector<size_t> cone; ///< minimal cone
    QVec c;                   ///< coefficients over the rays (length m)
    Rational age;
    size_t inv = 0;           ///< index of the involution image
};

/// Box elements sorted by (age, v); index 0 is the untwisted sector.
class BoxTable {
public:
    BoxTable() = default;
    explicit BoxTable(const StackyFan& fan) {
        std::map<ZVec, BoxElement> found;
        for (const auto& sigma : fan.cones) {
            long D = checked_long(fan.multiplicity(sigma));
            size_t n = fan.n;
            std::vector<long> k(n, 0);
            while (true) {
                QVec x(n, Rational(0));
                for (size_t j = 0; j < n; ++j)
                    for (size_t r = 0; r < n; ++r) x[r] += ratio(k[j], D) * fan.b(sigma[j])[r];
                bool integral = true;
                for (const auto& t : x)
                    if (!is_integer(t)) integral = false;
                if (integral) {
                    ZVec v(n);
                    for (size_t r = 0; r < n; ++r) v[r] = to_long(x[r]);
                    if (!found.count(v)) {
                        BoxElement e;
                        e.v = v;
                        e.c = QVec(fan.m(), Rational(0));
                        for (size_t j = 0; j < n; ++j)
                            if (k[j]) {
                                e.c[sigma[j]] = ratio(k[j], D);
                                e.cone.push_back(sigma[j]);
                            }
                        e.age = 0;
                        for (const auto& t : e.c) e.age += t;
                        found[v] = e;
                    }
                }
                size_t j = 0;
                while (j < n && k[j] == D - 1) k[j++] = 0;
                if (j == n) break;
                ++k[j];
            }
        }
        for (auto& [v, e] : found) elems_.push_back(e);
        std::sort(elems_.begin(), elems_.end(), [](const BoxElement& a, const BoxElement& b) {
            if (a.age != b.age) return a.age < b.age;
            return a.v < b.v;
        });
        for (size_t i = 0; i < elems_.size(); ++i) index_[elems_[i].v] = i;
        for (auto& e : elems_) {
            ZVec w(fan.n, 0);
            QVec x(fan.n, Rational(0));
            for (size_t i = 0; i < fan.m(); ++i)
                if (e.c[i] != 0)
                    for (size_t r = 0; r < fan.n; ++r) x[r] += (1 - e.c[i]) * fan.b(i)[r];
            for (size_t r = 0; r < fan.n; ++r) w[r] = to_long(x[r]);
            e.inv = index_.at(w);
        }
    }

    size_t size() const { return elems_.size(); }
    const BoxElement& operator[](size_t i) const { return elems_[i]; }
    const std::vector<BoxElement>& elements() const { return elems_; }
    std::optional<size_t> find(const ZVec& v) const {
        auto it = index_.find(v);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }
    size_t index_of(const ZVec& v) const {
        auto f = find(v);
        if (!f) fail(ErrorKind::Domain, "vector " + to_string(v) + " is not a Box element");
        return *f;
    }

private:
    std::vector<BoxElement> elems_;
    std::map<ZVec, size_t> index_;
};

inline BoxTable compute_box(const StackyFan& fan) { return BoxTable(fan); }

/// Reduction {-d}: the Box element sum_i <-d_i> b_i. d has length N.
inline size_t reduce(const StackyFan& fan, const BoxTable& box, const QVec& d) {
    if (d.size() != fan.N()) fail(ErrorKind::Domain, "degree vector has wrong length");
    for (size_t j = fan.m(); j < fan.N(); ++j)
        if (!is_integer(d[j])) fail(ErrorKind::Domain, "extended component must be integral");
    std::vector<size_t> support;
    QVec x(fan.n, Rational(0));
    for (size_t i = 0; i < fan.m(); ++i) {
        Rational f = frac(-d[i]);
        if (f == 0) continue;
        support.push_back(i);
        for (size_t r = 0; r < fan.n; ++r) x[r] += f * fan.b(i)[r];
    }
    if (!fan.is_cone(support)) fail(ErrorKind::Domain, "fractional support of d is not a cone");
    ZVec v(fan.n);
    for (size_t r = 0; r < fan.n; ++r) {
        if (!is_integer(x[r])) fail(ErrorKind::Domain, "reduction is not a lattice point");
        v[r] = to_long(x[r]);
    }
    return box.index_of(v);
}

/// A term index of the I-function: d in K_v together with derived data.
struct FractionalDegree {
    QVec d;          ///< length N
    size_t target;   ///< Box index of {-d}
    QVec cls;        ///< d + v in L_Q (length N)
    QVec q;          ///< q-exponents <p_a, d+v>
    Rational grading;
};

/// Extended Mori lattice data: a basis of L dual to an extended-nef basis of L^*.
class ExtendedLattice {
public:
    ExtendedLattice() = default;

    /// nef_lifts: optional list of k integer lift vectors (length N) for the nef basis.
    ExtendedLattice(const StackyFan& fan, const BoxTable& box, const std::vector<ZVec>& nef_lifts = {})
        : fan_(&fan), box_(&box) {
        N_ = fan.N();
        k_ = N_ - fan.n;
        auto L0 = integer_kernel(fan.beta_rows(), N_);
        if (L0.size() != k_) fail(ErrorKind::InvalidFan, "unexpected kernel rank");
        QMatrix L0m(N_, k_);
        for (size_t a = 0; a < k_; ++a)
            for (size_t i = 0; i < N_; ++i) L0m(i, a) = L0[a][i];

        // Generators of the extended Mori cone, in Q^N.
        for (const auto& sigma : fan.cones) {
            QMatrix B = fan.cone_matrix(sigma);
            auto Binv = *inverse(B);
            for (size_t kk = 0; kk < fan.m(); ++kk) {
                if (std::binary_search(sigma.begin(), sigma.end(), kk)) continue;
                QVec g(N_, Rational(0));
                g[kk] = 1;
                QVec c = Binv.apply(to_qvec(fan.b(kk)));
                for (size_t j = 0; j < sigma.size(); ++j) g[sigma[j]] = -c[j];
                add_generator(g);
            }
        }
        for (size_t j = fan.m(); j < N_; ++j) {
            auto mc = fan.minimal_cone(to_qvec(fan.b(j)));
            QVec g(N_, Rational(0));
            g[j] = 1;
            for (size_t i = 0; i < fan.m(); ++i) g[i] = -mc->second[i];
            deltas_.push_back(g);
            add_generator(g);
        }

        auto coords0 = [&](const QVec& g) { return *solve(L0m, g); };
        std::vector<QVec> gens0;
        for (const auto& g : gens_) gens0.push_back(coords0(g));

        // Nef basis as functionals on L0 (values on L0 basis).
        std::vector<ZVec> W;
        if (!nef_lifts.empty()) {
            if (nef_lifts.size() != k_) fail(ErrorKind::InvalidInput, "nef basis needs " + std::to_string(k_) + " vectors");
            for (const auto& x : nef_lifts) {
                if (x.size() != N_) fail(ErrorKind::InvalidInput, "nef basis vector has wrong length");
                ZVec w(k_);
                for (size_t a = 0; a < k_; ++a) {
                    long t = 0;
                    for (size_t i = 0; i < N_; ++i) t += x[i] * L0[a][i];
                    w[a] = t;
                }
                W.push_back(w);
            }
            for (const auto& w : W)
                for (const auto& g : gens0)
                    if (dot(to_qvec(w), g) < 0) fail(ErrorKind::InvalidInput, "supplied nef basis vector is not extended-nef");
        } else {
            W = search_nef_basis(L0, gens0, fan);
        }
        QMatrix Wm(k_, k_);
        for (size_t a = 0; a < k_; ++a)
            for (size_t b = 0; b < k_; ++b) Wm(a, b) = W[a][b];
        Rational det = determinant(Wm);
        if (det != 1 && det != -1) fail(ErrorKind::InvalidInput, "nef basis is not a lattice basis of L^*");
        QMatrix Minv = *inverse(Wm); // M^T = W^{-1}
        ell_.assign(k_, ZVec(N_, 0));
        for (size_t b = 0; b < k_; ++b)
            for (size_t c = 0; c < k_; ++c) {
                long coeff = to_long(Minv(c, b));
                for (size_t i = 0; i < N_; ++i) ell_[b][i] += coeff * L0[c][i];
            }
        // Integer lifts x_a with x_a . ell_b = delta_ab.
        std::vector<ZVec> Lrows(ell_.begin(), ell_.end());
        for (size_t a = 0; a < k_; ++a) {
            ZVec rhs(k_, 0);
            rhs[a] = 1;
            auto x = integer_solve(Lrows, N_, rhs);
            if (!x) fail(ErrorKind::Domain, "cannot lift nef basis");
            p_lift_.push_back(*x);
        }
        std::vector<QVec> gens_final;
        for (const auto& g : gens_) gens_final.push_back(coords(g));
        cone_ = PolyhedralCone(gens_final, k_);
        for (const auto& g : gens_final) {
            Rational gr = 0;
            for (const auto& t : g) gr += t;
            if (gr <= 0) fail(ErrorKind::Domain, "grading is not positive on the extended Mori cone");
        }
        gens_coords_ = gens_final;
        // Split into r untwisted and s extended directions.
        r_ = k_ - fan.s();
    }

    size_t k() const { return k_; }
    size_t r() const { return r_; }
    size_t N() const { return N_; }
    const std::vector<ZVec>& basis() const { return ell_; }
    const std::vector<ZVec>& nef_lifts() const { return p_lift_; }
    const std::vector<QVec>& cone_generators() const { return gens_; }
    const std::vector<QVec>& cone_generator_coords() const { return gens_coords_; }
    const std::vector<QVec>& deltas() const { return deltas_; }
    const PolyhedralCone& cone() const { return cone_; }

    /// Coordinates (q-exponents) of a class in L_Q.
    QVec coords(const QVec& cls) const {
        QVec y(k_);
        for (size_t a = 0; a < k_; ++a) y[a] = dot(to_qvec(p_lift_[a]), cls);
        return y;
    }
    QVec class_from_coords(const QVec& y) const {
        QVec d(N_, Rational(0));
        for (size_t a = 0; a < k_; ++a)
            for (size_t i = 0; i < N_; ++i) d[i] += y[a] * ell_[a][i];
        return d;
    }
    /// Coordinates in the nef basis of the functional with lift x (length N).
    QVec functional_coords(const QVec& x) const {
        QVec w(k_);
        for (size_t a = 0; a < k_; ++a) w[a] = dot(x, to_qvec(ell_[a]));
        return w;
    }
    static Rational grading(const QVec& q) {
        Rational g = 0;
        for (const auto& t : q) g += t;
        return g;
    }
    bool in_cone(const QVec& y) const { return cone_.contains(y); }

    /// Enumerate K_v up to total q-degree bound, sorted by grading.
    std::vector<FractionalDegree> enumerate_Kv(size_t v, const Rational& bound, bool cone_filter = true) const {
        const auto& fan = *fan_;
        const auto& box = *box_;
        if (v >= box.size()) fail(ErrorKind::Domain, "Box index out of range");
        if (bound < 0) fail(ErrorKind::Domain, "negative truncation bound");
        QVec lo(k_, Rational(0)), hi(k_, Rational(0));
        for (const auto& g : gens_coords_) {
            Rational gr = grading(g);
            for (size_t a = 0; a < k_; ++a) {
                Rational t = g[a] * bound / gr;
                if (t < lo[a]) lo[a] = t;
                if (t > hi[a]) hi[a] = t;
            }
        }
        auto A = fan.beta_rows();
        std::vector<FractionalDegree> out;
        for (size_t t = 0; t < box.size(); ++t) {
            ZVec rhs(fan.n);
            for (size_t r = 0; r < fan.n; ++r) rhs[r] = box[t].v[r] - box[v].v[r];
            auto e0 = integer_solve(A, N_, rhs);
            if (!e0) fail(ErrorKind::Domain, "lattice solve failed");
            QVec d0(N_, Rational(0));
            for (size_t i = 0; i < N_; ++i) d0[i] = (*e0)[i];
            for (size_t i = 0; i < fan.m(); ++i) d0[i] -= box[t].c[i];
            QVec cls0 = d0;
            for (size_t i = 0; i < fan.m(); ++i) cls0[i] += box[v].c[i];
            QVec y0 = coords(cls0);
            std::vector<long> tlo(k_), thi(k_);
            for (size_t a = 0; a < k_; ++a) {
                tlo[a] = checked_long(ceil_q(lo[a] - y0[a]));
                thi[a] = checked_long(floor_q(hi[a] - y0[a]));
                if (!cone_filter) {
                    tlo[a] = checked_long(ceil_q(-bound - y0[a]));
                    thi[a] = checked_long(floor_q(bound - y0[a]));
                }
            }
            bool empty = false;
            for (size_t a = 0; a < k_; ++a)
                if (tlo[a] > thi[a]) empty = true;
            if (empty) continue;
            std::vector<long> cur(tlo);
            while (true) {
                QVec y(y0);
                for (size_t a = 0; a < k_; ++a) y[a] += cur[a];
                Rational gr = grading(y);
                bool keep = cone_filter ? (gr <= bound && in_cone(y)) : (gr <= bound && gr >= -bound);
                if (keep) {
                    FractionalDegree f;
                    f.d = d0;
                    for (size_t a = 0; a < k_; ++a)
                        for (size_t i = 0; i < N_; ++i) f.d[i] += Rational(cur[a] * ell_[a][i]);
                    f.target = t;
                    f.cls = class_from_coords(y);
                    f.q = y;
                    f.grading = gr;
                    out.push_back(std::move(f));
                }
                size_t a = 0;
                while (a < k_ && cur[a] == thi[a]) {
                    cur[a] = tlo[a];
                    ++a;
                }
                if (a == k_) break;
                ++cur[a];
            }
        }
        std::sort(out.begin(), out.end(), [](const FractionalDegree& x, const FractionalDegree& y) {
            if (x.grading != y.grading) return x.grading < y.grading;
            if (x.q != y.q) return x.q < y.q;
            return x.target < y.target;
        });
        return out;
    }

private:
    void add_generator(const QVec& g) {
        for (const auto& h : gens_)
            if (h == g) return;
        gens_.push_back(g);
    }

    std::vector<ZVec> search_nef_basis(const std::vector<ZVec>& L0, const std::vector<QVec>& gens0,
                                       const StackyFan& fan) const {
        std::vector<QVec> dj;
        for (size_t j = fan.m(); j < N_; ++j) {
            QVec w(k_);
            for (size_t a = 0; a < k_; ++a) w[a] = L0[a][j];
            dj.push_back(w);
        }
        PolyhedralCone ext_cone(dj, k_);
        for (long R = 1; R <= 4; ++R) {
            std::vector<ZVec> ext, unt;
            std::vector<long> cur(k_, -R);
            while (true) {
                ZVec w(cur.begin(), cur.end());
                QVec wq = to_qvec(w);
                bool nef = gcd_vec(w) == 1;
                for (const auto& g : gens0)
                    if (nef && dot(wq, g) < 0) nef = false;
                if (nef) {
                    if (!dj.empty() && ext_cone.contains(wq)) ext.push_back(w);
                    else unt.push_back(w);
                }
                size_t a = 0;
                while (a < k_ && cur[a] == R) cur[a++] = -R;
                if (a == k_) break;
                ++cur[a];
            }
            auto l1 = [](const ZVec& w) {
                long s = 0;
                for (long x : w) s += x < 0 ? -x : x;
                return s;
            };
            auto by_norm = [&](const ZVec& a, const ZVec& b) {
                if (l1(a) != l1(b)) return l1(a) < l1(b);
                return a > b;
            };
            std::sort(ext.begin(), ext.end(), by_norm);
            std::sort(unt.begin(), unt.end(), by_norm);
            std::vector<ZVec> chosen;
            size_t s = fan.s();
            size_t r = k_ - s;
            std::function<bool(size_t, size_t)> pick_unt;
            std::function<bool(size_t, size_t)> pick_ext = [&](size_t start, size_t need) -> bool {
                if (need == 0) return pick_unt(0, r);
                for (size_t i = start; i < ext.size(); ++i) {
                    chosen.push_back(ext[i]);
                    if (independent(chosen) && pick_ext(i + 1, need - 1)) return true;
                    chosen.pop_back();
                }
                return false;
            };
            pick_unt = [&](size_t start, size_t need) -> bool {
                if (need == 0) {
                    QMatrix M(k_, k_);
                    for (size_t a = 0; a < k_; ++a)
                        for (size_t b = 0; b < k_; ++b) M(a, b) = chosen[a][b];
                    Rational det = determinant(M);
                    return det == 1 || det == -1;
                }
                for (size_t i = start; i < unt.size(); ++i) {
                    chosen.push_back(unt[i]);
                    if (independent(chosen) && pick_unt(i + 1, need - 1)) return true;
                    chosen.pop_back();
                }
                return false;
            };
            if (pick_ext(0, s)) {
                // Order: untwisted directions first, then extended ones.
                std::vector<ZVec> ordered(chosen.begin() + static_cast<long>(s), chosen.end());
                ordered.insert(ordered.end(), chosen.begin(), chosen.begin() + static_cast<long>(s));
                return ordered;
            }
        }
        fail(ErrorKind::SearchFailure, "no unimodular extended-nef basis found with small coefficients");
    }

    bool independent(const std::vector<ZVec>& vs) const {
        std::vector<QVec> rows;
        for (const auto& v : vs) rows.push_back(to_qvec(v));
        return rank(QMatrix::from_rows(rows, k_)) == vs.size();
    }

    const StackyFan* fan_ = nullptr;
    const BoxTable* box_ = nullptr;
    size_t N_ = 0, k_ = 0, r_ = 0;
    std::vector<QVec> gens_;
    std::vector<QVec> gens_coords_;
    std::vector<QVec> deltas_;
    std::vector<ZVec> ell_;
    std::vector<ZVec> p_lift_;
    PolyhedralCone cone_;
};

/// Piecewise-linear function on the fan determined by values n_i on the rays.
struct PiecewiseLinear {
    QVec ray_values; ///< length m

    Rational operator()(const StackyFan& fan, const QVec& x) const {
        auto mc = fan.minimal_cone(x);
        if (!mc) fail(ErrorKind::Domain, "point outside the fan");
        Rational s = 0;
        for (size_t i = 0; i < fan.m(); ++i) s += mc->second[i] * ray_values[i];
        return s;
    }
    /// Values on all N vectors.
    QVec on_vectors(const StackyFan& fan) const {
        QVec out(fan.N());
        for (size_t i = 0; i < fan.N(); ++i) out[i] = (*this)(fan, to_qvec(fan.b(i)));
        return out;
    }
    /// Convexity in the sense of nefness: the linear function of each maximal cone lies below the values.
    bool nef(const StackyFan& fan) const {
        for (const auto& sigma : fan.cones) {
            QMatrix Bt = fan.cone_matrix(sigma).transpose();
            QVec rhs(sigma.size());
            for (size_t j = 0; j < sigma.size(); ++j) rhs[j] = ray_values[sigma[j]];
            QVec u = *solve(Bt, rhs);
            for (size_t i = 0; i < fan.m(); ++i)
                if (dot(u, to_qvec(fan.b(i))) > ray_values[i]) return false;
        }
        return true;
    }
};

/// Nef partition I_1,...,I_c of a subset of the rays; I_0 is the complement.
struct NefPartition {
    std::vector<std::vector<size_t>> parts;
    std::vector<QVec> lifts;    ///< phi_j(b_i) for i < N, j = 1..c
    std::vector<QVec> divisors; ///< ray coefficients of xi_j (length m)

    size_t c() const { return parts.size(); }
};

inline NefPartition make_nef_partition(const StackyFan& fan, const BoxTable& box,
                                       const std::vector<std::vector<size_t>>& parts) {
    NefPartition np;
    np.parts = parts;
    std::vector<int> owner(fan.m(), -1);
    for (size_t j = 0; j < parts.size(); ++j)
        for (size_t i : parts[j]) {
            if (i >= fan.m()) fail(ErrorKind::NefPartition, "partition index out of range");
            if (owner[i] >= 0) fail(ErrorKind::NefPartition, "partition parts overlap");
            owner[i] = static_cast<int>(j);
        }
    QVec zero_part(fan.m(), Rational(1));
    for (size_t j = 0; j < parts.size(); ++j) {
        PiecewiseLinear phi{QVec(fan.m(), Rational(0))};
        for (size_t i : parts[j]) {
            phi.ray_values[i] = 1;
            zero_part[i] = 0;
        }
        if (!phi.nef(fan)) fail(ErrorKind::NefPartition, "xi_" + std::to_string(j + 1) + " is not nef");
        for (const auto& e : box.elements()) {
            Rational val = 0;
            for (size_t i = 0; i < fan.m(); ++i) val += e.c[i] * phi.ray_values[i];
            if (!is_integer(val))
                fail(ErrorKind::NefPartition, "xi_" + std::to_string(j + 1) + " is not Cartier on the coarse space");
        }
        QVec lift = phi.on_vectors(fan);
        for (size_t i = 0; i < fan.N(); ++i)
            if (lift[i] != 0 && lift[i] != 1)
                fail(ErrorKind::NefPartition, "xi_" + std::to_string(j + 1) + " takes a value outside {0,1}");
        np.lifts.push_back(lift);
        np.divisors.push_back(phi.ray_values);
    }
    PiecewiseLinear phi0{zero_part};
    if (!phi0.nef(fan)) fail(ErrorKind::NefPartition, "xi_0 is not nef");
    for (size_t i = 0; i < fan.N(); ++i) {
        Rational tot = 0;
        for (const auto& l : np.lifts) tot += l[i];
        if (tot > 1) fail(ErrorKind::NefPartition, "vector " + std::to_string(i) + " lies in two parts");
    }
    return np;
}

} // namespace gammaint
