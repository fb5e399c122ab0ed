#pragma once

// Shared helpers for the suites: the working corpus, an independent n=2
// staircase hull oracle, and the exhaustive fan / parallelepiped lattice
// partition check used by both the unit tests and the acceptance run.

#include <igusa/analysis.hpp>
#include <igusa/newton.hpp>

#include <random>
#include <string>
#include <vector>

namespace testutil {

using namespace igusa;

struct CorpusEntry {
    std::string text;
    std::vector<std::string> vars;
};

inline std::vector<CorpusEntry> corpus() {
    return {
        {"x^2+x*y+y^2", {"x", "y"}},
        {"x^2*y^2+x^5+y^5", {"x", "y"}},
        {"x^2+y^3", {"x", "y"}},
        {"x^3+y^3", {"x", "y"}},
        {"x^2+y^4", {"x", "y"}},
        {"x*y+x^3+y^3", {"x", "y"}},
        {"x^2+y^2+z^2", {"x", "y", "z"}},
    };
}

/// Independent staircase construction of the n=2 facet list.
struct StairFacet {
    std::vector<long> normal;
    long m;
};

inline std::vector<StairFacet> staircase_facets(const std::vector<ExponentVector>& support) {
    std::vector<ExponentVector> pts;
    for (auto& p : support) {
        bool dominated = false;
        for (auto& q : support)
            if (q != p && q[0] <= p[0] && q[1] <= p[1]) { dominated = true; break; }
        if (!dominated) pts.push_back(p);
    }
    std::sort(pts.begin(), pts.end());
    // lower-left convex chain
    std::vector<ExponentVector> chain;
    for (auto& p : pts) {
        while (chain.size() >= 2) {
            auto& A = chain[chain.size() - 2];
            auto& B = chain[chain.size() - 1];
            long cross = (B[0] - A[0]) * (p[1] - A[1]) - (B[1] - A[1]) * (p[0] - A[0]);
            if (cross <= 0)
                chain.pop_back();
            else
                break;
        }
        chain.push_back(p);
    }
    std::vector<StairFacet> out;
    long xmin = pts.front()[0], ymin = pts.back()[1];
    for (auto& p : pts) {
        xmin = std::min(xmin, p[0]);
        ymin = std::min(ymin, p[1]);
    }
    out.push_back({{1, 0}, xmin});
    out.push_back({{0, 1}, ymin});
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
        long a = chain[i][1] - chain[i + 1][1];
        long b = chain[i + 1][0] - chain[i][0];
        long g = std::gcd(a, b);
        a /= g;
        b /= g;
        out.push_back({{a, b}, a * chain[i][0] + b * chain[i][1]});
    }
    return out;
}

/// Exhaustive lattice check on [0, B]^n: every nonzero point belongs to
/// exactly one face (by the independent first-meet characterization), and the
/// triangulated parallelepiped shifts of that face's cone cover it exactly
/// once. Returns true when everything matches.
inline bool fan_and_parallelepiped_partition_ok(const NewtonPolyhedron& np, long B) {
    struct Piece {
        std::size_t face;
        std::vector<LatticeVector> gens;
        std::vector<LatticeVector> H;
    };
    std::vector<Piece> pieces;
    for (auto& [face_idx, cone] : fan_partition(np)) {
        for (auto& piece : triangulate_open_cone(cone))
            pieces.push_back({face_idx, piece.generators, parallelepiped_points(piece)});
    }
    auto face_of_point = [&](const LatticeVector& k) -> long {
        // independent: tight support points and tight coordinate rays
        long m = dot(k, np.support[0]);
        for (auto& s : np.support) m = std::min(m, dot(k, s));
        std::vector<ExponentVector> tight;
        for (auto& s : np.support)
            if (dot(k, s) == m) tight.push_back(s);
        std::vector<int> rec;
        for (std::size_t i = 0; i < k.size(); ++i)
            if (k[i] == 0) rec.push_back(static_cast<int>(i));
        for (std::size_t fi = 0; fi < np.faces.size(); ++fi)
            if (np.faces[fi].points == tight && np.faces[fi].recession == rec)
                return static_cast<long>(fi);
        return -1;
    };
    auto member_count = [&](const LatticeVector& k, const Piece& pc) -> int {
        int count = 0;
        for (auto& h : pc.H) {
            RatMatrix A(k.size(), std::vector<Rat>(pc.gens.size()));
            for (std::size_t i = 0; i < k.size(); ++i)
                for (std::size_t j = 0; j < pc.gens.size(); ++j) A[i][j] = Rat(pc.gens[j][i]);
            std::vector<Rat> b;
            for (std::size_t i = 0; i < k.size(); ++i) b.emplace_back(k[i] - h[i]);
            auto c = solve_unique(A, b);
            if (!c) continue;
            bool ok = true;
            for (auto& v : *c)
                if (!(v >= 0 && v.get_den() == 1)) { ok = false; break; }
            if (ok) ++count;
        }
        return count;
    };
    std::size_t n = static_cast<std::size_t>(np.n);
    LatticeVector k(n, 0);
    while (true) {
        bool zero = std::all_of(k.begin(), k.end(), [](long v) { return v == 0; });
        if (!zero) {
            long fi = face_of_point(k);
            if (fi < 0) return false;
            int total = 0;
            for (auto& pc : pieces) {
                int c = member_count(k, pc);
                if (c > 0 && pc.face != static_cast<std::size_t>(fi)) return false;
                total += c;
            }
            if (total != 1) return false;
        }
        std::size_t i = 0;
        for (; i < n; ++i) {
            if (++k[i] <= B) break;
            k[i] = 0;
        }
        if (i == n) break;
    }
    return true;
}

inline IntPolynomial random_poly(std::mt19937& rng, int n, long max_deg, int max_terms,
                                 bool no_constant = true) {
    std::uniform_int_distribution<int> nterms(1, max_terms);
    std::uniform_int_distribution<long> expd(0, max_deg);
    std::uniform_int_distribution<long> coeff(-9, 9);
    IntPolynomial f(n);
    int k = nterms(rng);
    for (int t = 0; t < k; ++t) {
        ExponentVector e(static_cast<std::size_t>(n));
        for (auto& x : e) x = expd(rng);
        if (no_constant && std::all_of(e.begin(), e.end(), [](long v) { return v == 0; })) continue;
        long c = coeff(rng);
        if (c != 0) f.add_term(e, Int(c));
    }
    return f;
}

} // namespace testutil
