#pragma once

// Assembly of Z(s,f,chi) from the Newton-polyhedron fan:
//
//   Z = Z(torus, s, f, chi) + sum over faces gamma, over simplicial pieces
//       Delta of the triangulated cone of gamma, of Z_Delta(s, f, chi).
//
// Mode A (good reduction mod p on every face): each piece contributes
//   Z(torus, s, f_gamma, chi) * sum_{h in H} q^{-|h|} t^{m(h)}
//                              / prod_j (1 - q^{-|a_j|} t^{m(a_j)}),
// justified by the monomial change of variables and stabilization, since the
// mod-p face nondegeneracy forces C(f_gamma, torus) = 0.
//
// Mode B (general): the lattice sum over each piece is split recursively,
// coordinates below the stability threshold m0 = C + 1 evaluated as honest
// twisted torus integrals, the rest closed into geometric factors against
// the stabilized face polynomial.

#include "newton.hpp"
#include "spf.hpp"

#include <optional>

namespace igusa {

enum class EngineMode { Auto, A, B };

inline std::string mode_name(EngineMode m) {
    switch (m) {
        case EngineMode::Auto: return "auto";
        case EngineMode::A: return "A";
        case EngineMode::B: return "B";
    }
    return "?";
}

struct FaceGateVerdict {
    long face_index = -1; // -1 means Gamma(f) itself
    bool nondegenerate = false;
    long singular_count = 0;
};

struct NondegeneracyReport {
    std::vector<FaceGateVerdict> verdicts;
    bool all_pass = true;
};

/// Mode-A gate: no face restriction (Gamma(f) included) may have a singular
/// torus point mod p.
inline NondegeneracyReport check_nondegenerate_mod_p(const IntPolynomial& f,
                                                     const NewtonPolyhedron& np,
                                                     const PAdicContext& ctx) {
    NondegeneracyReport rep;
    ResidueDomain torus = ResidueDomain::torus(f.nvars());
    auto check = [&](const IntPolynomial& g, long idx) {
        IntPolynomial gbar = reduce_mod_p(g, ctx.p);
        long cnt;
        if (gbar.is_zero()) {
            // every torus point is singular for the zero reduction
            cnt = static_cast<long>(torus.size(ctx.p));
        } else {
            cnt = static_cast<long>(singular_locus_mod(gbar, torus, ctx).size());
        }
        rep.verdicts.push_back({idx, cnt == 0, cnt});
        if (cnt != 0) rep.all_pass = false;
    };
    check(f, -1);
    for (std::size_t i = 0; i < np.faces.size(); ++i)
        check(restrict_to_face(f, np.faces[i]), static_cast<long>(i));
    return rep;
}

/// pi^{-m(k)} f(p^{k_1} x_1, ..., p^{k_n} x_n): the monomial twist of f at a
/// lattice point k of the fan.
inline IntPolynomial twist_at(const IntPolynomial& f, const NewtonPolyhedron& np,
                              const LatticeVector& k, long p) {
    long mk = m_of(k, np);
    IntPolynomial out(f.nvars());
    for (auto& [e, c] : f.terms()) {
        long ord = dot(k, e) - mk;
        out.add_term(e, c * ipow(p, static_cast<unsigned long>(ord)));
    }
    return out;
}

/// sum_{h in H} q^{-|h|} t^{m(h)} / prod_j (1 - q^{-|a_j|} t^{m(a_j)}) for a
/// simplicial piece, all m-values measured against Gamma(f).
inline FactoredRatFun cone_series_factor(const OpenCone& piece, const NewtonPolyhedron& np,
                                         long q) {
    LaurentPoly num;
    for (auto& h : parallelepiped_points(piece))
        num.add(m_of(h, np), Cyclo(qpow(q, -abs_sum(h))));
    DenMultiset den;
    for (auto& a : piece.generators) den[DenFactor{abs_sum(a), m_of(a, np)}] += 1;
    return FactoredRatFun::from_term(q, std::move(num), std::move(den));
}

struct ConeContribution {
    std::size_t face_index = 0;
    OpenCone piece;
    std::vector<LatticeVector> H;
    std::optional<FactoredRatFun> torus_factor;  // Mode A only
    std::optional<FactoredRatFun> series_factor; // Mode A only
    FactoredRatFun total;
    EngineMode mode = EngineMode::A;
};

/// Mode A contribution of one simplicial piece of Delta_gamma.
inline ConeContribution zeta_cone_modeA(const IntPolynomial& f, const NewtonPolyhedron& np,
                                        std::size_t face_index, const OpenCone& piece,
                                        const Character& chi, const PAdicContext& ctx,
                                        TorusZetaEngine& engine) {
    (void)chi; // the engine was constructed with the character
    ConeContribution out;
    out.face_index = face_index;
    out.piece = piece;
    out.H = parallelepiped_points(piece);
    out.mode = EngineMode::A;
    IntPolynomial fg = restrict_to_face(f, np.faces[face_index]);
    out.torus_factor = engine.run(fg, ResidueDomain::torus(f.nvars()));
    out.series_factor = cone_series_factor(piece, np, ctx.p);
    out.total = *out.torus_factor * *out.series_factor;
    return out;
}

namespace detail {

/// Exact lattice sum over {k0 + sum_{a in A} c_a a : c in N^A} of
/// q^{-|k|} t^{m(k)} Z(torus, s, f_k, chi), by stability splitting.
inline FactoredRatFun mode_b_region(const IntPolynomial& f, const NewtonPolyhedron& np,
                                    const LatticeVector& k0, std::vector<LatticeVector> A,
                                    const Character& chi, const PAdicContext& ctx,
                                    TorusZetaEngine& engine) {
    const long q = ctx.p;
    if (A.empty()) {
        IntPolynomial g = twist_at(f, np, k0, q);
        FactoredRatFun z = engine.run(g, ResidueDomain::torus(f.nvars()));
        LaurentPoly w = LaurentPoly::monomial(m_of(k0, np), Cyclo(qpow(q, -abs_sum(k0))));
        return z * FactoredRatFun::from_term(q, std::move(w), {});
    }
    // Stabilized face polynomial for this region: the terms tight on every
    // generator of A, twisted to k0.
    std::vector<ExponentVector> tight;
    for (auto& l : np.support) {
        bool ok = true;
        for (auto& a : A)
            if (dot(a, l) != m_of(a, np)) { ok = false; break; }
        if (ok) tight.push_back(l);
    }
    IntPolynomial f_stab = twist_at(restrict_to_points(f, tight), np, k0, q);
    long m0 = stability_exponent(f_stab, ResidueDomain::torus(f.nvars()), ctx) + 1;

    FactoredRatFun total = FactoredRatFun::zero(q);
    // Tail region: every coordinate >= m0 closes into a geometric factor
    // against the stabilized torus integral (perturbations past the
    // stability exponent leave the twisted integral unchanged).
    {
        LatticeVector b = k0;
        for (auto& a : A)
            for (std::size_t i = 0; i < b.size(); ++i) b[i] += m0 * a[i];
        LaurentPoly num = LaurentPoly::monomial(m_of(b, np), Cyclo(qpow(q, -abs_sum(b))));
        DenMultiset den;
        for (auto& a : A) den[DenFactor{abs_sum(a), m_of(a, np)}] += 1;
        FactoredRatFun tail_factor = FactoredRatFun::from_term(q, std::move(num), std::move(den));
        total = total + engine.run(f_stab, ResidueDomain::torus(f.nvars())) * tail_factor;
    }
    // Remaining assignments: each generator is either pinned to a residue
    // r in [0, m0) or sent to the tail; the all-tail case is above.
    std::size_t e = A.size();
    std::vector<long> choice(e, 0); // 0..m0-1 pinned, m0 = tail
    while (true) {
        bool all_tail = true;
        for (long c : choice)
            if (c != m0) { all_tail = false; break; }
        if (!all_tail) {
            LatticeVector base = k0;
            std::vector<LatticeVector> subA;
            for (std::size_t j = 0; j < e; ++j) {
                long c = choice[j];
                if (c == m0) {
                    subA.push_back(A[j]);
                    for (std::size_t i = 0; i < base.size(); ++i) base[i] += m0 * A[j][i];
                } else {
                    for (std::size_t i = 0; i < base.size(); ++i) base[i] += c * A[j][i];
                }
            }
            total = total + mode_b_region(f, np, base, std::move(subA), chi, ctx, engine);
        }
        std::size_t j = 0;
        for (; j < e; ++j) {
            if (++choice[j] <= m0) break;
            choice[j] = 0;
        }
        if (j == e) break;
    }
    return total;
}

} // namespace detail

/// Mode B contribution of one simplicial piece: exact even without good
/// reduction mod p, as long as f is globally non-degenerate over K.
inline ConeContribution zeta_cone_modeB(const IntPolynomial& f, const NewtonPolyhedron& np,
                                        std::size_t face_index, const OpenCone& piece,
                                        const Character& chi, const PAdicContext& ctx,
                                        TorusZetaEngine& engine) {
    ConeContribution out;
    out.face_index = face_index;
    out.piece = piece;
    out.H = parallelepiped_points(piece);
    out.mode = EngineMode::B;
    out.total = FactoredRatFun::zero(ctx.p);
    for (auto& h : out.H)
        out.total = out.total + detail::mode_b_region(f, np, h, piece.generators, chi, ctx, engine);
    return out;
}

struct ZetaReport {
    IntPolynomial f;
    std::vector<std::string> vars;
    long p = 0;
    Character chi = Character::trivial(2);
    NewtonPolyhedron np;
    NondegeneracyReport gate;
    EngineMode mode_used = EngineMode::A;
    FactoredRatFun torus_term;
    std::vector<ConeContribution> cones;
    FactoredRatFun total;
    FactoredRatFun::Normalized normalized;
    std::vector<PoleFamily> poles;
    long spf_degree_bound = 0;
};

/// The full zeta function of f over the unit polydisc.
inline ZetaReport zeta_full(const IntPolynomial& f, const std::vector<std::string>& vars,
                            const Character& chi, const PAdicContext& ctx,
                            EngineMode mode = EngineMode::Auto) {
    if (f.is_zero()) throw DomainError("zeta_full: f must be nonzero");
    ZetaReport rep;
    rep.f = f;
    rep.vars = vars;
    rep.p = ctx.p;
    rep.chi = chi;
    rep.np = newton_polyhedron(f);
    rep.gate = check_nondegenerate_mod_p(f, rep.np, ctx);
    if (mode == EngineMode::Auto)
        rep.mode_used = rep.gate.all_pass ? EngineMode::A : EngineMode::B;
    else
        rep.mode_used = mode;
    if (rep.mode_used == EngineMode::A && !rep.gate.all_pass)
        throw DomainError("zeta_full: Mode A requested but the mod-p nondegeneracy gate failed; "
                          "use Mode B");

    TorusZetaEngine engine(chi, ctx);
    rep.torus_term = engine.run(f, ResidueDomain::torus(f.nvars()));
    rep.spf_degree_bound = engine.last_degree_bound();
    rep.total = rep.torus_term;
    for (auto& [face_idx, cone] : fan_partition(rep.np)) {
        for (auto& piece : triangulate_open_cone(cone)) {
            ConeContribution c =
                rep.mode_used == EngineMode::A
                    ? zeta_cone_modeA(f, rep.np, face_idx, piece, chi, ctx, engine)
                    : zeta_cone_modeB(f, rep.np, face_idx, piece, chi, ctx, engine);
            rep.total = rep.total + c.total;
            rep.spf_degree_bound = std::max(rep.spf_degree_bound, engine.last_degree_bound());
            rep.cones.push_back(std::move(c));
        }
    }
    rep.normalized = rep.total.normalize();
    rep.poles = pole_families(rep.total);
    return rep;
}

} // namespace igusa
