#pragma once

// Igusa's stationary phase formula over a residue domain D:
//
//   Z(D,s,f,chi) = nu(fbar,D,chi) + sigma(fbar,D,chi) (1-q^-1)q^-s/(1-q^-1-s)
//                  + sum_{P in S(f,D)} q^{-n-e_P s} Z(O^n, s, f_P, chi),
//
// where S(f,D) lifts the singular F_p-points of fbar in Dbar and f_P is the
// dilatation at P. torus_zeta expands this breadth-first over descendant
// towers, memoizes full-space calls by canonical polynomial, and solves the
// linear fixed points that self-similar (e.g. homogeneous) polynomials create
// instead of recursing forever. The index L(f,P) and the stability exponent
// C(f,D) from the same circle of ideas live here as well.

#include "padic.hpp"
#include "ratfun.hpp"

#include <cmath>
#include <deque>
#include <map>
#include <mutex>
#include <set>
#include <tuple>
#include <vector>

namespace igusa {

struct SPFDepthExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// All points of Dbar where fbar and every partial vanish mod p.
inline std::vector<std::vector<long>> singular_locus_mod(const IntPolynomial& f,
                                                         const ResidueDomain& D,
                                                         const PAdicContext& ctx) {
    ctx.check_points(D.size(ctx.p), "singular_locus_mod");
    std::vector<IntPolynomial> dfs = partials(f);
    std::vector<std::vector<long>> out;
    for_each_residue(D, ctx.p, [&](const std::vector<long>& x) {
        if (eval_mod(f, x, ctx.p) != 0) return;
        for (auto& df : dfs)
            if (eval_mod(df, x, ctx.p) != 0) return;
        out.push_back(x);
    });
    return out;
}

/// nu(fbar, D, chi): the non-vanishing-locus average. Trivial chi counts
/// residues off V_fbar; nontrivial chi sums chi(ac f(P)) over lifts mod
/// p^{c_chi} whose reduction lies in Dbar minus V_fbar.
inline Cyclo nu(const IntPolynomial& f, const ResidueDomain& D, const Character& chi,
                const PAdicContext& ctx) {
    const long p = ctx.p;
    const int n = f.nvars();
    if (chi.is_trivial()) {
        ctx.check_points(D.size(p), "nu");
        long count = 0;
        for_each_residue(D, p, [&](const std::vector<long>& x) {
            if (eval_mod(f, x, p) != 0) ++count;
        });
        return Cyclo(Rat(count) / Rat(ipow(p, static_cast<unsigned long>(n))));
    }
    const long c = static_cast<long>(chi.conductor());
    long pc = 1;
    for (long i = 0; i < c; ++i) pc *= p;
    long double total = 1;
    for (int i = 0; i < n; ++i) total *= pc;
    ctx.check_points(total, "nu");
    Cyclo acc = Cyclo::zero_of_order(chi.order());
    std::vector<long> x(static_cast<std::size_t>(n), 0);
    while (true) {
        std::vector<long> xbar(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) xbar[i] = x[i] % p;
        if (D.contains(xbar, p) && eval_mod(f, xbar, p) != 0)
            acc += chi.value(eval_mod(f, x, pc));
        int i = 0;
        for (; i < n; ++i) {
            if (++x[static_cast<std::size_t>(i)] < pc) break;
            x[static_cast<std::size_t>(i)] = 0;
        }
        if (i == n) break;
    }
    Rat norm = Rat(1) / Rat(ipow(pc, static_cast<unsigned long>(n)));
    return acc * norm;
}

/// sigma(fbar, D, chi): smooth-zero density for trivial chi, 0 otherwise.
inline Rat sigma(const IntPolynomial& f, const ResidueDomain& D, const Character& chi,
                 const PAdicContext& ctx) {
    if (!chi.is_trivial()) return Rat(0);
    ctx.check_points(D.size(ctx.p), "sigma");
    std::vector<IntPolynomial> dfs = partials(f);
    long count = 0;
    for_each_residue(D, ctx.p, [&](const std::vector<long>& x) {
        if (eval_mod(f, x, ctx.p) != 0) return;
        for (auto& df : dfs)
            if (eval_mod(df, x, ctx.p) != 0) { ++count; return; }
    });
    return Rat(count) / Rat(ipow(ctx.p, static_cast<unsigned long>(f.nvars())));
}

struct SpfDescendant {
    std::vector<Int> P;  // lifted representative in [0, p)^n
    long e = 0;          // arithmetic multiplicity e_P
    IntPolynomial fP;    // dilated polynomial
};

struct SpfStep {
    Cyclo nu;
    Rat sigma;
    std::vector<SpfDescendant> descendants;
};

/// One application of the stationary phase formula on (f, D).
inline SpfStep spf_step(const IntPolynomial& f, const ResidueDomain& D, const Character& chi,
                        const PAdicContext& ctx) {
    SpfStep out;
    out.nu = nu(f, D, chi, ctx);
    out.sigma = sigma(f, D, chi, ctx);
    for (auto& x : singular_locus_mod(f, D, ctx)) {
        std::vector<Int> P;
        for (long v : x) P.emplace_back(v);
        auto [fP, e] = dilate(f, P, ctx.p);
        out.descendants.push_back({std::move(P), e, std::move(fP)});
    }
    return out;
}

/// L(f,P) = min valuation of f and its partials at P; nullopt encodes the
/// +infinity flag (P is a singular point of f over Z).
inline std::optional<long> L_index(const IntPolynomial& f, const std::vector<Int>& P,
                                   const PAdicContext& ctx) {
    std::optional<long> best;
    auto consider = [&](const Int& v) {
        auto val = valuation(v, ctx.p);
        if (!val) return;
        if (!best || *val < *best) best = *val;
    };
    consider(eval_exact(f, P));
    for (auto& df : partials(f)) consider(eval_exact(df, P));
    return best; // nullopt iff everything vanished identically
}

/// C(f,D): max of L(f,P) over P in D, by breadth-first refinement of residue
/// classes mod p^k. A class survives depth k iff f and all partials vanish
/// mod p^k on it. Throws SPFDepthExceeded past depth_cap (a singular point in
/// D, or the cap is too small).
inline long stability_exponent(const IntPolynomial& f, const ResidueDomain& D,
                               const PAdicContext& ctx, long depth_cap = -1) {
    if (depth_cap < 0) depth_cap = ctx.spf_depth_cap;
    const long p = ctx.p;
    std::vector<IntPolynomial> dfs = partials(f);
    auto vanishes_all = [&](const std::vector<long>& x, long mod) {
        if (eval_mod(f, x, mod) != 0) return false;
        for (auto& df : dfs)
            if (eval_mod(df, x, mod) != 0) return false;
        return true;
    };
    ctx.check_points(D.size(p), "stability_exponent");
    std::vector<std::vector<long>> classes;
    for_each_residue(D, p, [&](const std::vector<long>& x) {
        if (vanishes_all(x, p)) classes.push_back(x);
    });
    if (classes.empty()) return 0;
    long k = 1;
    long mod = p;
    while (true) {
        if (k >= depth_cap)
            throw SPFDepthExceeded("stability_exponent: depth cap " + std::to_string(depth_cap) +
                                   " exceeded (singular point in D?)");
        if (mod > 3000000000L / p)
            throw CapExceeded("stability_exponent: modulus beyond exact-arithmetic range");
        long next_mod = mod * p;
        ctx.check_points(static_cast<long double>(classes.size()) *
                             std::pow(static_cast<long double>(p), f.nvars()),
                         "stability_exponent");
        std::vector<std::vector<long>> next;
        for (auto& base : classes) {
            std::vector<long> lift(base.size(), 0);
            std::vector<long> x(base.size());
            while (true) {
                for (std::size_t i = 0; i < base.size(); ++i) x[i] = base[i] + mod * lift[i];
                if (vanishes_all(x, next_mod)) next.push_back(x);
                std::size_t i = 0;
                for (; i < base.size(); ++i) {
                    if (++lift[i] < p) break;
                    lift[i] = 0;
                }
                if (i == base.size()) break;
            }
        }
        if (next.empty()) return k;
        classes = std::move(next);
        mod = next_mod;
        ++k;
    }
}

// ---------------------------------------------------------------------------
// torus_zeta: the fully expanded SPF recursion with fixed-point solving

namespace detail {

struct SpfNodeEq {
    Cyclo nu;
    Rat sigma;
    // children: canonical key -> sum over descendants of q^{-n} t^{e_P},
    // kept as (coefficient multiset) exponent -> multiplicity
    std::map<std::string, std::map<long, long>> children;
    long depth = 0;
    long max_e = 0; // feeds the twisted-polynomial degree bound
};

struct SpfSolve {
    std::map<std::string, FactoredRatFun> solved;
    long degree_bound = 0;
};

} // namespace detail

class TorusZetaEngine {
public:
    TorusZetaEngine(const Character& chi, const PAdicContext& ctx) : chi_(chi), ctx_(ctx) {}

    /// Exact Z(D, s, f, chi) as a factored rational function. Requires
    /// Sing_f(K) and D to be disjoint for termination (self-similar towers
    /// excepted, which are solved as linear fixed points); violations surface
    /// as SPFDepthExceeded.
    FactoredRatFun run(const IntPolynomial& f, const ResidueDomain& D, long depth_cap = -1) {
        if (depth_cap < 0) depth_cap = ctx_.spf_depth_cap;
        const long q = ctx_.p;
        const int n = f.nvars();

        // Equation graph over canonical polynomial keys; the root is special
        // (its domain may be a torus or an explicit set). Non-root nodes are
        // always full-space calls, so they memoize across runs.
        std::map<std::string, detail::SpfNodeEq> eqs;
        std::set<std::string> enqueued;
        std::map<std::string, FactoredRatFun> solved;
        const std::string root_key = "root";
        std::deque<std::tuple<std::string, IntPolynomial, long>> queue;
        queue.emplace_back(root_key, f, 0);
        enqueued.insert(root_key);

        while (!queue.empty()) {
            auto [key, g, depth] = queue.front();
            queue.pop_front();
            if (depth > depth_cap)
                throw SPFDepthExceeded("torus_zeta: descendant tower deeper than cap " +
                                       std::to_string(depth_cap) +
                                       " (singular point in the domain, or cap too small)");
            ResidueDomain dom = (key == root_key) ? D : ResidueDomain::full(n);
            SpfStep step = spf_step(g, dom, chi_, ctx_);
            detail::SpfNodeEq eq;
            eq.nu = step.nu;
            eq.sigma = step.sigma;
            for (auto& d : step.descendants) {
                std::string ck = d.fP.canonical_key();
                eq.children[ck][d.e] += 1;
                eq.max_e = std::max(eq.max_e, d.e);
                if (enqueued.count(ck)) continue;
                enqueued.insert(ck);
                if (auto cached = memo_lookup(ck)) {
                    solved.emplace(ck, *cached);
                    continue;
                }
                queue.emplace_back(ck, d.fP, depth + 1);
            }
            eqs.emplace(key, std::move(eq));
            if (eqs.size() > 100000)
                throw SPFDepthExceeded("torus_zeta: SPF expansion is diverging");
        }

        // Solve bottom-up: repeatedly resolve nodes all of whose children are
        // solved; when none exists, fold a node's dependency cycle by
        // substitution and solve the resulting 1-unknown linear equation.
        const FactoredRatFun sigma_series = sigma_factor(q);
        auto base_value = [&](const detail::SpfNodeEq& eq) {
            FactoredRatFun v = FactoredRatFun::constant(q, eq.nu);
            if (eq.sigma != 0) v = v + sigma_series * Cyclo(eq.sigma);
            return v;
        };

        long guard = 0;
        while (!solved.count(root_key)) {
            if (++guard > static_cast<long>(eqs.size()) * 4 + 16)
                throw SPFDepthExceeded("torus_zeta: unsolvable recursion structure");
            bool progressed = false;
            for (auto& [key, eq] : eqs) {
                if (solved.count(key)) continue;
                bool ready = true;
                for (auto& [ck, mons] : eq.children)
                    if (!solved.count(ck) && ck != key) { ready = false; break; }
                if (!ready) continue;
                FactoredRatFun value = base_value(eq);
                LaurentPoly self;
                for (auto& [ck, mons] : eq.children) {
                    if (ck == key) {
                        self = weight_poly(mons, n, q);
                        continue;
                    }
                    value = value + scaled(solved.at(ck), n, mons, q);
                }
                if (!self.is_zero()) value = solve_self_loop(value, self, q);
                solved.emplace(key, std::move(value));
                progressed = true;
            }
            if (progressed) continue;
            // No node is ready: there is a cycle of length > 1. Fold it by
            // substituting along an unsolved dependency chain from some node.
            fold_one_cycle(eqs, solved, n, q, base_value);
        }
        last_degree_bound_ = 0;
        for (auto& [key, eq] : eqs) last_degree_bound_ = std::max(last_degree_bound_, eq.max_e);
        for (auto& [key, value] : solved)
            if (key != root_key) memo_store(key, value);
        return solved.at(root_key);
    }

    /// max e_P seen while expanding the last run; for nontrivial characters
    /// this bounds the t-degree of the (polynomial) result.
    long last_degree_bound() const { return last_degree_bound_; }

private:
    Character chi_;
    PAdicContext ctx_;
    long last_degree_bound_ = 0;
    // Memo for full-space descendant values; reads and idempotent inserts are
    // mutex-guarded so independent torus_zeta calls can share an engine.
    mutable std::mutex memo_mutex_;
    std::map<std::string, FactoredRatFun> memo_;

    std::optional<FactoredRatFun> memo_lookup(const std::string& key) const {
        std::lock_guard<std::mutex> lock(memo_mutex_);
        auto it = memo_.find(key);
        if (it == memo_.end()) return std::nullopt;
        return it->second;
    }
    void memo_store(const std::string& key, const FactoredRatFun& value) {
        std::lock_guard<std::mutex> lock(memo_mutex_);
        memo_.emplace(key, value);
    }

    static FactoredRatFun sigma_factor(long q) {
        // (1-q^-1) q^-s / (1 - q^{-1-s}) = (1-q^-1) t / (1 - q^-1 t)
        LaurentPoly num = LaurentPoly::monomial(1, Cyclo(Rat(1) - qpow(q, -1)));
        return FactoredRatFun::from_term(q, std::move(num), {{DenFactor{1, 1}, 1}});
    }

    static LaurentPoly weight_poly(const std::map<long, long>& mons, int n, long q) {
        LaurentPoly w;
        for (auto& [e, mult] : mons) w.add(e, Cyclo(Rat(mult) * qpow(q, -n)));
        return w;
    }

    /// sum over monomials of  mult * q^{-n} t^{e} * Z.
    static FactoredRatFun scaled(const FactoredRatFun& Z, int n, const std::map<long, long>& mons,
                                 long q) {
        return Z * FactoredRatFun::from_term(q, weight_poly(mons, n, q), {});
    }

    /// Solve Z = A + W Z. Representable exactly when the loop weight W is a
    /// single monomial q^{-N} t^M with N >= 1.
    static FactoredRatFun solve_self_loop(const FactoredRatFun& A, const LaurentPoly& W, long q) {
        if (W.coeffs().size() != 1)
            throw SPFDepthExceeded("torus_zeta: self-similar tower with a non-monomial weight");
        long e = W.coeffs().begin()->first;
        Cyclo cv = W.coeffs().begin()->second;
        if (!cv.is_rational())
            throw SPFDepthExceeded("torus_zeta: self-similar weight is not rational");
        Rat c = cv.rational_value();
        long N = 0;
        Rat x = c;
        while (x > 0 && x < 1 && N < 4096) {
            x *= q;
            ++N;
        }
        if (x != 1 || N < 1)
            throw SPFDepthExceeded("torus_zeta: self-similar weight is not a q-power");
        return A.over_factor(DenFactor{N, e});
    }

    template <typename BaseFn>
    void fold_one_cycle(std::map<std::string, detail::SpfNodeEq>& eqs,
                        std::map<std::string, FactoredRatFun>& solved, int n, long q,
                        const BaseFn& base_value) {
        // Find a cycle among unsolved nodes by following first unsolved child.
        std::vector<std::string> path;
        std::map<std::string, std::size_t> where;
        std::string cur;
        for (auto& [key, eq] : eqs)
            if (!solved.count(key)) { cur = key; break; }
        while (!where.count(cur)) {
            where[cur] = path.size();
            path.push_back(cur);
            const auto& eq = eqs.at(cur);
            std::string next;
            for (auto& [ck, mons] : eq.children)
                if (!solved.count(ck) && ck != cur) { next = ck; break; }
            if (next.empty())
                throw SPFDepthExceeded("torus_zeta: cycle detection failed");
            cur = next;
        }
        // Cycle is path[where[cur]..end]. Substitute around the cycle to get a
        // self-equation for `cur`: Z_cur = A + W Z_cur with W a Laurent weight.
        std::size_t start = where[cur];
        FactoredRatFun A = FactoredRatFun::zero(q);
        LaurentPoly W(Cyclo(Rat(1)));
        // Walk the cycle backwards: Z_{k} = base_k + sum(non-cycle children)
        //                                  + w_k Z_{k+1}
        for (std::size_t i = path.size(); i-- > start;) {
            const std::string& key = path[i];
            const auto& eq = eqs.at(key);
            const std::string& succ = (i + 1 < path.size()) ? path[i + 1] : cur;
            FactoredRatFun local = base_value(eq);
            LaurentPoly w_succ;
            for (auto& [ck, mons] : eq.children) {
                if (ck == succ && i + 1 <= path.size()) {
                    for (auto& [e, mult] : mons) w_succ.add(e, Cyclo(Rat(mult) * qpow(q, -n)));
                    continue;
                }
                if (solved.count(ck)) {
                    local = local + scaled(solved.at(ck), n, mons, q);
                    continue;
                }
                throw SPFDepthExceeded("torus_zeta: interlocking cycles are unsupported");
            }
            if (i + 1 >= path.size()) {
                // deepest node: its successor is `cur` (cycle closure)
                A = local;
                W = w_succ;
            } else {
                A = local + FactoredRatFun::from_term(q, w_succ, {}) * A;
                W = w_succ * W;
            }
        }
        solved.emplace(cur, solve_self_loop(A, W, q));
    }
};

/// Convenience wrapper for the one-shot call.
inline FactoredRatFun torus_zeta(const IntPolynomial& f, const ResidueDomain& D,
                                 const Character& chi, const PAdicContext& ctx,
                                 long depth_cap = -1) {
    TorusZetaEngine engine(chi, ctx);
    return engine.run(f, D, depth_cap);
}

} // namespace igusa
