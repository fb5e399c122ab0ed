#pragma once

// Newton polyhedron machinery: Gamma(f) = conv(supp(f) + R^n_+), its facets
// with primitive inward normals a and values m(a) = min <a, Gamma>, the full
// proper-face lattice, the dual fan of open cones (one per face, strictly
// positively spanned by the normals of the facets containing it), pulling
// triangulations of those cones into simplicial pieces, and the half-open
// fundamental-parallelepiped lattice points that turn each simplicial piece
// into a disjoint union of shifted free monoids.
//
// Everything is exact over the rationals. Intended scale is n <= 4 with small
// supports; algorithms are chosen for verifiability, not asymptotics.

#include "linalg.hpp"
#include "polynomial.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

namespace igusa {

using LatticeVector = std::vector<long>;

inline long dot(const LatticeVector& a, const LatticeVector& b) {
    long s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline long abs_sum(const LatticeVector& a) {
    long s = 0;
    for (long v : a) s += v;
    return s;
}

struct Facet {
    LatticeVector normal; // primitive, entries >= 0
    long m = 0;           // m(a) = min over the polyhedron
    long abs = 0;         // |a| = sum of entries
};

struct Face {
    std::vector<ExponentVector> points;  // support points on the face
    std::vector<int> recession;          // coordinate ray directions e_k on the face
    int dim = 0;                         // affine dimension
    std::vector<int> containing_facets;  // indices into NewtonPolyhedron::facets
};

struct OpenCone {
    std::vector<LatticeVector> generators;
    bool simplicial = false;
};

struct NewtonPolyhedron {
    int n = 0;
    std::vector<ExponentVector> support;
    std::vector<ExponentVector> vertices;
    std::vector<Facet> facets;
    std::vector<Face> faces; // all proper faces, facets included

    const Face& face(std::size_t i) const { return faces.at(i); }

    OpenCone cone_of(const Face& f) const {
        OpenCone c;
        for (int j : f.containing_facets) c.generators.push_back(facets[static_cast<std::size_t>(j)].normal);
        c.simplicial = rank_of_longs(c.generators) == static_cast<int>(c.generators.size());
        return c;
    }
};

inline long m_of(const LatticeVector& a, const NewtonPolyhedron& np) {
    for (long v : a)
        if (v < 0) throw DomainError("m_of: weight vector must be nonnegative");
    bool first = true;
    long best = 0;
    for (auto& s : np.support) {
        long d = dot(a, s);
        if (first || d < best) { best = d; first = false; }
    }
    if (first) throw DomainError("m_of: empty support");
    return best;
}

namespace detail {

inline LatticeVector make_primitive(LatticeVector v) {
    long g = 0;
    for (long x : v) g = std::gcd(g, std::abs(x));
    if (g == 0) return v;
    for (long& x : v) x /= g;
    return v;
}

/// Affine dimension of conv(points) + cone(e_k, k in recession).
inline int face_dimension(const std::vector<ExponentVector>& pts, const std::vector<int>& recession,
                          int n) {
    std::vector<std::vector<long>> dirs;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        std::vector<long> d(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j)
            d[static_cast<std::size_t>(j)] = pts[i][static_cast<std::size_t>(j)] - pts[0][static_cast<std::size_t>(j)];
        dirs.push_back(std::move(d));
    }
    for (int k : recession) {
        std::vector<long> d(static_cast<std::size_t>(n), 0);
        d[static_cast<std::size_t>(k)] = 1;
        dirs.push_back(std::move(d));
    }
    return rank_of_longs(dirs);
}

} // namespace detail

/// Build Gamma(f): facet enumeration by exact candidate-normal search over
/// (n-1)-subsets of edge directions, then the closed-subset face lattice.
inline NewtonPolyhedron newton_polyhedron(const IntPolynomial& f) {
    if (f.is_zero()) throw DomainError("newton_polyhedron: empty support");
    if (f.has_constant_term()) throw DomainError("newton_polyhedron: f(0) must be 0");
    NewtonPolyhedron np;
    np.n = f.nvars();
    np.support = f.support();
    const int n = np.n;

    // Candidate hyperplane directions: pairwise support differences plus the
    // recession directions e_k.
    std::vector<LatticeVector> dirs;
    for (std::size_t i = 0; i < np.support.size(); ++i)
        for (std::size_t j = i + 1; j < np.support.size(); ++j) {
            LatticeVector d(static_cast<std::size_t>(n));
            for (int k = 0; k < n; ++k)
                d[static_cast<std::size_t>(k)] =
                    np.support[i][static_cast<std::size_t>(k)] - np.support[j][static_cast<std::size_t>(k)];
            dirs.push_back(std::move(d));
        }
    for (int k = 0; k < n; ++k) {
        LatticeVector e(static_cast<std::size_t>(n), 0);
        e[static_cast<std::size_t>(k)] = 1;
        dirs.push_back(std::move(e));
    }

    std::set<LatticeVector> seen;
    // Iterate all (n-1)-subsets of dirs.
    std::vector<std::size_t> comb;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (comb.size() == static_cast<std::size_t>(n - 1)) {
            std::vector<std::vector<long>> rows;
            for (std::size_t c : comb) rows.push_back(dirs[c]);
            auto nv = primitive_null_vector(rows, static_cast<std::size_t>(n));
            if (!nv) return;
            LatticeVector a = *nv;
            bool nonneg = std::all_of(a.begin(), a.end(), [](long v) { return v >= 0; });
            bool nonpos = std::all_of(a.begin(), a.end(), [](long v) { return v <= 0; });
            if (!nonneg && nonpos)
                for (long& v : a) v = -v;
            else if (!nonneg)
                return;
            if (std::all_of(a.begin(), a.end(), [](long v) { return v == 0; })) return;
            if (seen.count(a)) return;
            // Supporting data and facet check.
            long m = 0;
            bool first = true;
            for (auto& s : np.support) {
                long d = dot(a, s);
                if (first || d < m) { m = d; first = false; }
            }
            std::vector<ExponentVector> tight;
            for (auto& s : np.support)
                if (dot(a, s) == m) tight.push_back(s);
            std::vector<int> rec_dirs;
            for (int k = 0; k < n; ++k)
                if (a[static_cast<std::size_t>(k)] == 0) rec_dirs.push_back(k);
            if (detail::face_dimension(tight, rec_dirs, n) == n - 1) {
                seen.insert(a);
                np.facets.push_back({a, m, abs_sum(a)});
            }
            return;
        }
        for (std::size_t i = start; i < dirs.size(); ++i) {
            comb.push_back(i);
            rec(i + 1);
            comb.pop_back();
        }
    };
    rec(0);
    std::sort(np.facets.begin(), np.facets.end(), [](const Facet& x, const Facet& y) {
        return std::make_pair(x.m, x.normal) < std::make_pair(y.m, y.normal);
    });

    // Face lattice: one face per closed facet subset.
    const std::size_t F = np.facets.size();
    if (F > 24) throw DomainError("newton_polyhedron: facet count too large");
    std::set<std::vector<int>> face_keys;
    for (std::size_t mask = 1; mask < (1u << F); ++mask) {
        std::vector<int> T;
        for (std::size_t j = 0; j < F; ++j)
            if (mask & (1u << j)) T.push_back(static_cast<int>(j));
        std::vector<ExponentVector> pts;
        for (auto& s : np.support) {
            bool all_tight = true;
            for (int j : T)
                if (dot(np.facets[static_cast<std::size_t>(j)].normal, s) != np.facets[static_cast<std::size_t>(j)].m) {
                    all_tight = false;
                    break;
                }
            if (all_tight) pts.push_back(s);
        }
        if (pts.empty()) continue;
        std::vector<int> rec_dirs;
        for (int k = 0; k < n; ++k) {
            bool ortho = true;
            for (int j : T)
                if (np.facets[static_cast<std::size_t>(j)].normal[static_cast<std::size_t>(k)] != 0) {
                    ortho = false;
                    break;
                }
            if (ortho) rec_dirs.push_back(k);
        }
        // Closure: all facets tight on every point and containing the rays.
        std::vector<int> closure;
        for (std::size_t j = 0; j < F; ++j) {
            const Facet& fc = np.facets[j];
            bool tight_all = std::all_of(pts.begin(), pts.end(), [&](const ExponentVector& s) {
                return dot(fc.normal, s) == fc.m;
            });
            if (!tight_all) continue;
            bool rays_ok = std::all_of(rec_dirs.begin(), rec_dirs.end(), [&](int k) {
                return fc.normal[static_cast<std::size_t>(k)] == 0;
            });
            if (rays_ok) closure.push_back(static_cast<int>(j));
        }
        if (closure != T) continue;
        if (face_keys.count(T)) continue;
        face_keys.insert(T);
        Face face;
        face.points = pts;
        face.recession = rec_dirs;
        face.containing_facets = T;
        face.dim = detail::face_dimension(pts, rec_dirs, n);
        np.faces.push_back(std::move(face));
    }
    std::sort(np.faces.begin(), np.faces.end(), [](const Face& a, const Face& b) {
        return std::make_pair(a.dim, a.containing_facets) < std::make_pair(b.dim, b.containing_facets);
    });
    for (auto& face : np.faces)
        if (face.dim == 0) np.vertices.push_back(face.points.at(0));
    std::sort(np.vertices.begin(), np.vertices.end());
    return np;
}

/// The face {x in Gamma : <a,x> = m(a)}.
inline const Face& first_meet_locus(const LatticeVector& a, const NewtonPolyhedron& np) {
    if (std::all_of(a.begin(), a.end(), [](long v) { return v == 0; }))
        throw DomainError("first_meet_locus: a must be nonzero");
    long m = m_of(a, np);
    std::vector<ExponentVector> tight;
    for (auto& s : np.support)
        if (dot(a, s) == m) tight.push_back(s);
    std::vector<int> rec_dirs;
    for (std::size_t k = 0; k < a.size(); ++k)
        if (a[k] == 0) rec_dirs.push_back(static_cast<int>(k));
    std::vector<int> T;
    for (std::size_t j = 0; j < np.facets.size(); ++j) {
        const Facet& fc = np.facets[j];
        bool tight_all = std::all_of(tight.begin(), tight.end(), [&](const ExponentVector& s) {
            return dot(fc.normal, s) == fc.m;
        });
        if (!tight_all) continue;
        bool rays_ok = std::all_of(rec_dirs.begin(), rec_dirs.end(), [&](int k) {
            return fc.normal[static_cast<std::size_t>(k)] == 0;
        });
        if (rays_ok) T.push_back(static_cast<int>(j));
    }
    for (auto& face : np.faces)
        if (face.containing_facets == T) return face;
    throw DomainError("first_meet_locus: face lattice lookup failed");
}

/// f_gamma: the terms of f on the face.
inline IntPolynomial restrict_to_face(const IntPolynomial& f, const Face& gamma) {
    IntPolynomial r = restrict_to_points(f, gamma.points);
    if (r.term_count() != gamma.points.size())
        throw DomainError("restrict_to_face: face does not belong to this polynomial's polyhedron");
    return r;
}

/// The partition (face, Delta_face) of R^n_+ minus the origin.
inline std::vector<std::pair<std::size_t, OpenCone>> fan_partition(const NewtonPolyhedron& np) {
    std::vector<std::pair<std::size_t, OpenCone>> out;
    for (std::size_t i = 0; i < np.faces.size(); ++i) out.emplace_back(i, np.cone_of(np.faces[i]));
    return out;
}

/// Membership of x in the strictly-positive span of gens (exact LP-free test
/// via facet description of the closed cone plus a span check).
namespace detail {

inline std::vector<std::vector<long>> cone_facet_normals(const std::vector<LatticeVector>& gens);

inline bool in_open_cone(const LatticeVector& x, const std::vector<LatticeVector>& gens) {
    // x in relint(cone(gens)): x in span, strictly inside every facet, and in
    // the cone itself. For the pointed rational cones here, check x in span,
    // <u, x> > 0 for all facet normals u, and consistency via rank.
    std::vector<std::vector<long>> span_rows = gens;
    int r0 = rank_of_longs(span_rows);
    span_rows.push_back(x);
    if (rank_of_longs(span_rows) != r0) return false; // outside the span
    span_rows.pop_back();
    auto facets = cone_facet_normals(gens);
    if (facets.empty()) {
        // zero-dimensional or ray case: cone is a single ray
        if (gens.empty()) return false;
        // x must be a positive multiple of the primitive generator direction
        LatticeVector g = make_primitive(gens[0]);
        LatticeVector xp = make_primitive(x);
        if (xp != g) return false;
        return !std::all_of(x.begin(), x.end(), [](long v) { return v == 0; });
    }
    for (auto& u : facets)
        if (dot(u, x) <= 0) return false;
    return true;
}

/// Facet normals of cone(gens) within its span: each vanishes on a facet and
/// is positive on the rest of the cone. Computed by (d-1)-subset search.
inline std::vector<std::vector<long>> cone_facet_normals(const std::vector<LatticeVector>& gens) {
    int d = rank_of_longs(gens);
    std::vector<std::vector<long>> out;
    if (d <= 1) return out;
    std::size_t n = gens[0].size();
    // Basis of the orthogonal complement of span(gens) is not needed: we look
    // for u with <u, g_i> = 0 on a (d-1)-subset, <u, g_j> >= 0 otherwise, u in
    // span(gens) so the facet is relative to the span.
    // Search over subsets of generators of size d-1.
    std::vector<std::size_t> comb;
    std::set<std::vector<long>> seen;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (comb.size() == static_cast<std::size_t>(d - 1)) {
            // u orthogonal to chosen gens and to the complement of span(gens).
            std::vector<std::vector<long>> rows;
            for (std::size_t c : comb) rows.push_back(gens[c]);
            if (rank_of_longs(rows) != d - 1) return;
            // Express u in the span: u = sum mu_i gens_i is overkill; instead
            // compute a null vector of rows augmented with span constraints.
            // Work with rows + orthogonal complement of span: null space of
            // rows within span has dim rank(span) - (d-1) = 1.
            // Build complement constraints: vectors w with <w, g> = 0 for all g.
            // We avoid computing it by running the null-vector search on the
            // matrix [rows; K] where K is a basis of the complement; instead,
            // parameterize u = G^T c with c in R^#gens and solve <u, g_i> = 0.
            std::size_t m = gens.size();
            RatMatrix A; // (d-1) x m over c-coordinates: rows are <g_comb, g_j>
            for (std::size_t cidx : comb) {
                std::vector<Rat> row;
                for (std::size_t j = 0; j < m; ++j) row.emplace_back(dot(gens[cidx], gens[j]));
                A.push_back(std::move(row));
            }
            // Null space of A can have extra dims if gens are dependent; pick
            // any null c and check signs.
            // Gaussian elimination to echelon, then one free-variable vector.
            std::size_t rows_n = A.size(), cols_n = m;
            std::vector<int> pivot_of_col(cols_n, -1);
            std::size_t rr = 0;
            for (std::size_t c = 0; c < cols_n && rr < rows_n; ++c) {
                std::size_t piv = rr;
                while (piv < rows_n && A[piv][c] == 0) ++piv;
                if (piv == rows_n) continue;
                std::swap(A[rr], A[piv]);
                for (std::size_t i = 0; i < rows_n; ++i) {
                    if (i == rr || A[i][c] == 0) continue;
                    Rat f = A[i][c] / A[rr][c];
                    for (std::size_t j = c; j < cols_n; ++j) A[i][j] -= f * A[rr][j];
                }
                pivot_of_col[c] = static_cast<int>(rr);
                ++rr;
            }
            for (std::size_t free_col = 0; free_col < cols_n; ++free_col) {
                if (pivot_of_col[free_col] >= 0) continue;
                std::vector<Rat> cvec(cols_n, Rat(0));
                cvec[free_col] = 1;
                for (std::size_t c2 = 0; c2 < cols_n; ++c2) {
                    int pr = pivot_of_col[c2];
                    if (pr < 0) continue;
                    cvec[c2] = -A[static_cast<std::size_t>(pr)][free_col] / A[static_cast<std::size_t>(pr)][c2];
                }
                // u = sum c_j g_j
                std::vector<Rat> u(n, Rat(0));
                for (std::size_t j = 0; j < m; ++j)
                    for (std::size_t k = 0; k < n; ++k) u[k] += cvec[j] * Rat(gens[j][k]);
                // sign check against all generators
                int pos = 0, neg = 0;
                for (auto& g : gens) {
                    Rat s(0);
                    for (std::size_t k = 0; k < n; ++k) s += u[k] * Rat(g[k]);
                    if (s > 0) ++pos;
                    if (s < 0) ++neg;
                }
                std::optional<int> sign;
                if (pos > 0 && neg == 0) sign = 1;
                if (neg > 0 && pos == 0) sign = -1;
                if (!sign) continue;
                Int lcm = 1;
                for (auto& x : u) lcm = lcm / gcd(lcm, Int(x.get_den())) * Int(x.get_den());
                std::vector<long> w;
                Int g = 0;
                std::vector<Int> wz;
                for (auto& x : u) {
                    Int z = Int(x.get_num()) * (lcm / Int(x.get_den())) * *sign;
                    g = gcd(g, z);
                    wz.push_back(z);
                }
                if (g == 0) continue;
                for (auto& z : wz) w.push_back(static_cast<long>(Int(z / g).get_si()));
                if (!seen.count(w)) {
                    seen.insert(w);
                    out.push_back(w);
                }
            }
            return;
        }
        for (std::size_t i = start; i < gens.size(); ++i) {
            comb.push_back(i);
            rec(i + 1);
            comb.pop_back();
        }
    };
    rec(0);
    return out;
}

/// Pulling triangulation of cone(gens) at the lexicographically largest
/// generator, recursive over facets. Returns generator subsets (as indices
/// into a deduped generator list) of the maximal simplicial cones.
inline void pulling_triangulation(const std::vector<LatticeVector>& gens,
                                  std::vector<std::vector<LatticeVector>>& out) {
    if (gens.empty()) return;
    if (rank_of_longs(gens) == static_cast<int>(gens.size())) {
        out.push_back(gens);
        return;
    }
    int d = rank_of_longs(gens);
    if (d == 1) {
        // All generators parallel: keep one of them; the half-open
        // parallelepiped convention absorbs imprimitivity.
        out.push_back({gens[0]});
        return;
    }
    LatticeVector v = *std::max_element(gens.begin(), gens.end());
    auto facet_normals = cone_facet_normals(gens);
    for (auto& u : facet_normals) {
        if (dot(u, v) == 0) continue; // facet contains the pulled vertex
        std::vector<LatticeVector> facet_gens;
        for (auto& g : gens)
            if (dot(u, g) == 0) facet_gens.push_back(g);
        std::vector<std::vector<LatticeVector>> sub;
        pulling_triangulation(facet_gens, sub);
        for (auto& simplex : sub) {
            simplex.push_back(v);
            std::sort(simplex.begin(), simplex.end());
            out.push_back(simplex);
        }
    }
}

} // namespace detail

/// Partition an open cone into disjoint open simplicial cones spanned by
/// subsets of its generators (Prop-3.3-style, existence made concrete by a
/// pulling triangulation; correctness is enforced by the exhaustive lattice
/// partition tests).
inline std::vector<OpenCone> triangulate_open_cone(const OpenCone& cone) {
    std::vector<LatticeVector> gens = cone.generators;
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    if (gens.empty()) throw DomainError("triangulate_open_cone: no generators");
    if (rank_of_longs(gens) == static_cast<int>(gens.size()))
        return {OpenCone{gens, true}};
    std::vector<std::vector<LatticeVector>> maximal;
    detail::pulling_triangulation(gens, maximal);
    // Collect all faces of the maximal simplices, keep those interior to the
    // input open cone, dedupe by generator subset.
    std::set<std::vector<LatticeVector>> pieces;
    for (auto& simplex : maximal) {
        std::size_t k = simplex.size();
        for (std::size_t mask = 1; mask < (1u << k); ++mask) {
            std::vector<LatticeVector> sub;
            for (std::size_t j = 0; j < k; ++j)
                if (mask & (1u << j)) sub.push_back(simplex[j]);
            LatticeVector relint(sub[0].size(), 0);
            for (auto& g : sub)
                for (std::size_t i = 0; i < g.size(); ++i) relint[i] += g[i];
            if (!detail::in_open_cone(relint, gens)) continue;
            std::sort(sub.begin(), sub.end());
            pieces.insert(sub);
        }
    }
    std::vector<OpenCone> out;
    for (auto& sub : pieces) out.push_back(OpenCone{sub, true});
    return out;
}

/// Lattice points H = N^n intersect {sum lambda_j a_j : 0 < lambda_j <= 1}
/// of a simplicial cone; the sets h + sum_j N a_j, h in H, partition the open
/// cone's lattice points.
inline std::vector<LatticeVector> parallelepiped_points(const OpenCone& cone) {
    const auto& gens = cone.generators;
    if (gens.empty()) throw DomainError("parallelepiped_points: no generators");
    if (rank_of_longs(gens) != static_cast<int>(gens.size()))
        throw DomainError("parallelepiped_points: cone is not simplicial");
    std::size_t n = gens[0].size(), e = gens.size();
    LatticeVector box(n, 0);
    long double cells = 1;
    for (std::size_t i = 0; i < n; ++i) {
        for (auto& g : gens) box[i] += g[i];
        cells *= (box[i] + 1);
    }
    if (cells > 2e7) throw CapExceeded("parallelepiped_points: bounding box too large");
    RatMatrix A(n, std::vector<Rat>(e));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < e; ++j) A[i][j] = Rat(gens[j][i]);
    std::vector<LatticeVector> H;
    LatticeVector x(n, 0);
    while (true) {
        std::vector<Rat> b;
        for (std::size_t i = 0; i < n; ++i) b.emplace_back(x[i]);
        auto lam = solve_unique(A, b);
        if (lam) {
            bool ok = true;
            for (auto& l : *lam)
                if (!(l > 0 && l <= 1)) { ok = false; break; }
            if (ok) H.push_back(x);
        }
        std::size_t i = 0;
        for (; i < n; ++i) {
            if (++x[i] <= box[i]) break;
            x[i] = 0;
        }
        if (i == n) break;
    }
    std::sort(H.begin(), H.end());
    return H;
}

} // namespace igusa
