#pragma once

#include <functional>
#include <set>
#include <vector>

#include "linalg.hpp"

namespace gammaint {

/// Supporting half-space {x : <normal, x> >= -offset} of a full-dimensional polytope.
struct Facet {
    QVec normal;
    Rational offset;
    std::vector<size_t> points; ///< indices of input points on the facet
};

namespace detail {

inline void for_each_subset(size_t n, size_t k, const std::function<bool(const std::vector<size_t>&)>& f) {
    std::vector<size_t> idx(k);
    for (size_t i = 0; i < k; ++i) idx[i] = i;
    if (k > n) return;
    while (true) {
        if (!f(idx)) return;
        size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

} // namespace detail

inline size_t affine_dimension(const std::vector<QVec>& pts) {
    if (pts.empty()) return 0;
    std::vector<QVec> diffs;
    for (size_t i = 1; i < pts.size(); ++i) diffs.push_back(sub(pts[i], pts[0]));
    if (diffs.empty()) return 0;
    return rank(QMatrix::from_rows(diffs, pts[0].size()));
}

/// Facets of the convex hull of points spanning Q^k affinely.
inline std::vector<Facet> hull_facets(const std::vector<QVec>& pts) {
    if (pts.empty()) return {};
    size_t k = pts[0].size();
    if (affine_dimension(pts) != k) fail(ErrorKind::Domain, "point set is not full-dimensional");
    std::vector<Facet> out;
    std::set<std::vector<size_t>> seen;
    detail::for_each_subset(pts.size(), k, [&](const std::vector<size_t>& sub_idx) {
        std::vector<QVec> rows;
        for (size_t t = 1; t < sub_idx.size(); ++t) rows.push_back(sub(pts[sub_idx[t]], pts[sub_idx[0]]));
        auto ns = nullspace(QMatrix::from_rows(rows, k));
        if (ns.size() != 1) return true;
        QVec u = ns[0];
        Rational h = dot(u, pts[sub_idx[0]]);
        int sign = 0;
        bool ok = true;
        std::vector<size_t> on;
        for (size_t i = 0; i < pts.size(); ++i) {
            Rational d = dot(u, pts[i]) - h;
            if (d == 0) {
                on.push_back(i);
                continue;
            }
            int s = d > 0 ? 1 : -1;
            if (sign == 0) sign = s;
            else if (s != sign) {
                ok = false;
                break;
            }
        }
        if (!ok || sign == 0) return true;
        if (!seen.insert(on).second) return true;
        if (sign < 0) {
            u = scale(u, -1);
            h = -h;
        }
        out.push_back({u, -h, on});
        return true;
    });
    return out;
}

/// Lattice facet data with primitive inner normal u and <u,x> >= -height.
struct LatticeFacet {
    ZVec normal;
    Rational height;
    std::vector<size_t> points;
};

inline std::vector<LatticeFacet> lattice_facets(const std::vector<ZVec>& pts) {
    std::vector<QVec> q;
    for (const auto& p : pts) q.push_back(to_qvec(p));
    std::vector<LatticeFacet> out;
    for (auto& f : hull_facets(q)) {
        ZVec u = primitive_integer(f.normal);
        QVec uq = to_qvec(u);
        Rational h = -dot(uq, q[f.points[0]]);
        out.push_back({u, h, f.points});
    }
    return out;
}

struct Reflexivity {
    bool reflexive = false;
    bool origin_interior = false;
    std::vector<LatticeFacet> facets;
    std::vector<QVec> dual_vertices; ///< u / height for each facet
};

inline Reflexivity reflexivity(const std::vector<ZVec>& pts) {
    Reflexivity r;
    r.facets = lattice_facets(pts);
    r.origin_interior = true;
    r.reflexive = true;
    for (const auto& f : r.facets) {
        if (f.height <= 0) r.origin_interior = false;
        if (f.height != 1) r.reflexive = false;
    }
    if (!r.origin_interior) r.reflexive = false;
    if (r.origin_interior)
        for (const auto& f : r.facets) r.dual_vertices.push_back(scale(to_qvec(f.normal), Rational(1) / f.height));
    return r;
}

namespace detail {

/// Affine coordinates of points relative to a basis of their affine span.
inline std::vector<QVec> affine_coordinates(const std::vector<QVec>& pts) {
    size_t k = pts[0].size();
    std::vector<QVec> diffs;
    for (const auto& p : pts) diffs.push_back(sub(p, pts[0]));
    QMatrix m = QMatrix::from_rows(diffs, k);
    QMatrix r = m;
    auto piv = rref(r);
    // Rows of r (first |piv|) span the row space; express each diff in that basis via pivot columns.
    std::vector<QVec> out;
    for (const auto& d : diffs) {
        QVec c(piv.size());
        for (size_t t = 0; t < piv.size(); ++t) c[t] = d[piv[t]];
        out.push_back(c);
    }
    return out;
}

inline void pulling_triangulation(const std::vector<QVec>& pts, const std::vector<size_t>& idx,
                                  std::vector<std::vector<size_t>>& simplices) {
    std::vector<QVec> local;
    for (size_t i : idx) local.push_back(pts[i]);
    size_t dim = affine_dimension(local);
    if (dim == 0) {
        simplices.push_back({idx[0]});
        return;
    }
    auto coords = affine_coordinates(local);
    if (dim == 1) {
        size_t lo = 0, hi = 0;
        for (size_t i = 0; i < coords.size(); ++i) {
            if (coords[i][0] < coords[lo][0]) lo = i;
            if (coords[i][0] > coords[hi][0]) hi = i;
        }
        simplices.push_back({idx[lo], idx[hi]});
        return;
    }
    auto facets = hull_facets(coords);
    size_t apex = 0;
    for (const auto& f : facets) {
        bool has_apex = false;
        for (size_t p : f.points)
            if (p == apex) has_apex = true;
        if (has_apex) continue;
        std::vector<size_t> fidx;
        for (size_t p : f.points) fidx.push_back(idx[p]);
        std::vector<std::vector<size_t>> sub_simplices;
        pulling_triangulation(pts, fidx, sub_simplices);
        for (auto& s : sub_simplices) {
            s.push_back(idx[apex]);
            simplices.push_back(s);
        }
    }
}

} // namespace detail

/// Triangulation of the convex hull of a full-dimensional lattice point set.
inline std::vector<std::vector<size_t>> triangulate(const std::vector<ZVec>& pts) {
    std::vector<QVec> q;
    for (const auto& p : pts) q.push_back(to_qvec(p));
    std::vector<size_t> idx(pts.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::vector<std::vector<size_t>> simplices;
    detail::pulling_triangulation(q, idx, simplices);
    return simplices;
}

/// n! times the Euclidean volume of the convex hull.
inline Integer normalized_volume(const std::vector<ZVec>& pts) {
    if (pts.empty()) return 0;
    size_t n = pts[0].size();
    Rational total = 0;
    for (const auto& s : triangulate(pts)) {
        if (s.size() != n + 1) continue;
        QMatrix m(n, n);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) m(i, j) = pts[s[i + 1]][j] - pts[s[0]][j];
        total += abs(determinant(m));
    }
    return total.get_num();
}

/// Lattice points of the dilation k * conv(pts) (pts containing the origin in the interior or not).
inline std::vector<ZVec> lattice_points_dilate(const std::vector<ZVec>& pts, long k) {
    auto facets = lattice_facets(pts);
    size_t n = pts[0].size();
    ZVec lo(n), hi(n);
    for (size_t j = 0; j < n; ++j) {
        lo[j] = hi[j] = pts[0][j] * k;
        for (const auto& p : pts) {
            lo[j] = std::min(lo[j], p[j] * k);
            hi[j] = std::max(hi[j], p[j] * k);
        }
    }
    std::vector<ZVec> out;
    ZVec cur(lo);
    while (true) {
        bool inside = true;
        for (const auto& f : facets) {
            Rational s = 0;
            for (size_t j = 0; j < n; ++j) s += f.normal[j] * cur[j];
            if (s < -f.height * k) {
                inside = false;
                break;
            }
        }
        if (inside) out.push_back(cur);
        size_t j = 0;
        while (j < n && cur[j] == hi[j]) {
            cur[j] = lo[j];
            ++j;
        }
        if (j == n) break;
        ++cur[j];
    }
    return out;
}

/// A polyhedral cone in Q^k given by generators, with its facet inequalities <u,x> >= 0.
class PolyhedralCone {
public:
    PolyhedralCone() = default;
    PolyhedralCone(std::vector<QVec> gens, size_t k) : gens_(std::move(gens)), k_(k) { build(); }

    const std::vector<QVec>& generators() const { return gens_; }
    const std::vector<QVec>& inequalities() const { return ineq_; }
    bool full_dimensional() const { return equations_.empty(); }

    bool contains(const QVec& x) const {
        for (const auto& e : equations_)
            if (dot(e, x) != 0) return false;
        for (const auto& u : ineq_)
            if (dot(u, x) < 0) return false;
        return true;
    }

private:
    void build() {
        std::vector<QVec> nonzero;
        for (const auto& g : gens_)
            if (!is_zero(g)) nonzero.push_back(g);
        if (nonzero.empty()) {
            for (size_t i = 0; i < k_; ++i) {
                QVec e(k_, Rational(0));
                e[i] = 1;
                equations_.push_back(e);
            }
            return;
        }
        QMatrix g = QMatrix::from_rows(nonzero, k_);
        equations_ = nullspace(g);
        size_t d = k_ - equations_.size();
        std::set<std::vector<size_t>> seen;
        if (d == 1) {
            for (const auto& g : nonzero)
                if (dot(g, nonzero[0]) < 0) return; // a line
            ineq_.push_back(nonzero[0]);
            return;
        }
        detail::for_each_subset(nonzero.size(), d - 1, [&](const std::vector<size_t>& sub_idx) {
            std::vector<QVec> rows;
            for (size_t i : sub_idx) rows.push_back(nonzero[i]);
            for (const auto& e : equations_) rows.push_back(e);
            auto ns = nullspace(QMatrix::from_rows(rows, k_));
            if (ns.size() != 1) return true;
            QVec u = ns[0];
            int sign = 0;
            std::vector<size_t> on;
            for (size_t i = 0; i < nonzero.size(); ++i) {
                Rational v = dot(u, nonzero[i]);
                if (v == 0) {
                    on.push_back(i);
                    continue;
                }
                int s = v > 0 ? 1 : -1;
                if (sign == 0) sign = s;
                else if (s != sign) return true;
            }
            if (sign == 0) return true;
            if (!seen.insert(on).second) return true;
            if (sign < 0) u = scale(u, -1);
            ineq_.push_back(u);
            return true;
        });
    }

    std::vector<QVec> gens_;
    size_t k_ = 0;
    std::vector<QVec> ineq_;
    std::vector<QVec> equations_;
};

} // namespace gammaint
