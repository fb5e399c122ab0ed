#pragma once

// Independent brute-force verification. Nothing here touches the polyhedral
// or SPF code: counts mod p^m are plain odometer enumerations with per-point
// re-evaluation, series coefficients come straight from the counts, and
// exponential sums are exact integer count vectors over p^m-th roots of
// unity embedded numerically only at the very end.

#include "padic.hpp"
#include "ratfun.hpp"

#include <complex>
#include <cmath>
#include <vector>

namespace igusa {

namespace oracle_detail {

/// f with coefficients pre-reduced into [0, mod): one plain re-evaluation per
/// point, no incremental tricks.
struct FastPoly {
    long mod;
    std::vector<std::pair<long, ExponentVector>> terms;

    FastPoly(const IntPolynomial& f, long m) : mod(m) {
        for (auto& [e, c] : f.terms()) {
            long cr = static_cast<long>(mpz_fdiv_ui(c.get_mpz_t(), static_cast<unsigned long>(m)));
            if (cr != 0) terms.emplace_back(cr, e);
        }
    }

    long eval(const std::vector<long>& x) const {
        long long acc = 0;
        for (auto& [c, e] : terms) {
            long long t = c;
            for (std::size_t i = 0; i < x.size(); ++i)
                for (long k = 0; k < e[i]; ++k) t = (t * x[i]) % mod;
            acc += t;
            if (acc >= mod) acc -= mod;
        }
        return static_cast<long>(acc);
    }
};

/// Odometer over [0, mod)^n restricted to residues whose reduction mod p lies
/// in D; plain re-evaluation by design.
template <typename Fn>
void enumerate(int n, long p, long mod, const ResidueDomain& D, const PAdicContext& ctx,
               const char* where, Fn&& fn) {
    long double total = 1;
    for (int i = 0; i < n; ++i) total *= mod;
    ctx.check_points(total, where);
    std::vector<long> x(static_cast<std::size_t>(n), 0);
    std::vector<long> xbar(static_cast<std::size_t>(n), 0);
    while (true) {
        for (std::size_t i = 0; i < x.size(); ++i) xbar[i] = x[i] % p;
        if (D.contains(xbar, p)) fn(x);
        int i = 0;
        for (; i < n; ++i) {
            if (++x[static_cast<std::size_t>(i)] < mod) break;
            x[static_cast<std::size_t>(i)] = 0;
        }
        if (i == n) break;
    }
}

} // namespace oracle_detail

/// #{x mod p^m : f(x) = 0 mod p^m} (restricted to a residue domain).
inline Int count_zeros_mod(const IntPolynomial& f, const PAdicContext& ctx, long m,
                           const ResidueDomain& D) {
    if (m == 0) return Int(1);
    ctx.check_depth(m, "count_zeros_mod");
    long mod = 1;
    for (long i = 0; i < m; ++i) {
        if (mod > 3000000000L / ctx.p) throw CapExceeded("count_zeros_mod: modulus too large");
        mod *= ctx.p;
    }
    Int count = 0;
    oracle_detail::FastPoly fp(f, mod);
    oracle_detail::enumerate(f.nvars(), ctx.p, mod, D, ctx, "count_zeros_mod",
                             [&](const std::vector<long>& x) {
                                 if (fp.eval(x) == 0) ++count;
                             });
    return count;
}

inline Int count_zeros_mod(const IntPolynomial& f, const PAdicContext& ctx, long m) {
    return count_zeros_mod(f, ctx, m, ResidueDomain::full(f.nvars()));
}

struct SeriesPrefix {
    unsigned chi_order = 1;
    std::vector<Cyclo> coeffs; // indices 0..k_max
};

/// mu_k = N_k p^{-nk} - N_{k+1} p^{-n(k+1)} for trivial chi: the exact
/// measure of {x in D : v(f(x)) = k}.
inline SeriesPrefix measure_coeffs(const IntPolynomial& f, const PAdicContext& ctx, long k_max,
                                   const ResidueDomain& D) {
    const int n = f.nvars();
    SeriesPrefix out;
    // density_k = measure{x in D : v(f(x)) >= k}; density_0 is the measure of
    // D itself (the N_0 = 1 convention specialized to the full space).
    std::vector<Rat> density(static_cast<std::size_t>(k_max) + 2);
    density[0] = Rat(D.count(ctx.p)) / Rat(ipow(ctx.p, static_cast<unsigned long>(n)));
    for (long k = 1; k <= k_max + 1; ++k)
        density[static_cast<std::size_t>(k)] =
            Rat(count_zeros_mod(f, ctx, k, D)) /
            Rat(ipow(ctx.p, static_cast<unsigned long>(n * k)));
    for (long k = 0; k <= k_max; ++k)
        out.coeffs.push_back(
            Cyclo(density[static_cast<std::size_t>(k)] - density[static_cast<std::size_t>(k + 1)]));
    return out;
}

inline SeriesPrefix measure_coeffs(const IntPolynomial& f, const PAdicContext& ctx, long k_max) {
    return measure_coeffs(f, ctx, k_max, ResidueDomain::full(f.nvars()));
}

/// c_k = p^{-n(k+1)} sum over x mod p^{k+1} with v(f(x)) = k of chi(ac f(x)),
/// in exact cyclotomic arithmetic. Conductor-1 characters only.
inline SeriesPrefix twisted_coeffs(const IntPolynomial& f, const PAdicContext& ctx,
                                   const Character& chi, long k_max, const ResidueDomain& D) {
    if (chi.is_trivial()) return measure_coeffs(f, ctx, k_max, D);
    if (chi.conductor() != 1)
        throw DomainError("twisted_coeffs: only conductor-1 characters are supported");
    const int n = f.nvars();
    const long p = ctx.p;
    ctx.check_depth(k_max + 1, "twisted_coeffs");
    SeriesPrefix out;
    out.chi_order = chi.order();
    for (long k = 0; k <= k_max; ++k) {
        long mod = 1; // p^k
        for (long i = 0; i < k; ++i) {
            if (mod > 3000000000L / (p * p)) throw CapExceeded("twisted_coeffs: modulus too large");
            mod *= p;
        }
        long modk1 = mod * p; // p^{k+1}
        // chi(ac f(x)) for v(f(x)) = k: ac = (f(x)/p^k) mod p
        std::vector<long> counts(static_cast<std::size_t>(p), 0);
        oracle_detail::FastPoly fp(f, modk1);
        oracle_detail::enumerate(f.nvars(), p, modk1, D, ctx, "twisted_coeffs",
                                 [&](const std::vector<long>& x) {
                                     long v = fp.eval(x);
                                     if (v % mod != 0) return;   // v(f) < k
                                     long u = (v / mod) % p;
                                     if (u == 0) return;         // v(f) > k
                                     ++counts[static_cast<std::size_t>(u)];
                                 });
        Cyclo acc = Cyclo::zero_of_order(chi.order());
        for (long u = 1; u < p; ++u)
            if (counts[static_cast<std::size_t>(u)] != 0)
                acc += chi.value(u) * Rat(counts[static_cast<std::size_t>(u)]);
        out.coeffs.push_back(acc * (Rat(1) / Rat(ipow(p, static_cast<unsigned long>(n * (k + 1))))));
    }
    return out;
}

inline SeriesPrefix twisted_coeffs(const IntPolynomial& f, const PAdicContext& ctx,
                                   const Character& chi, long k_max) {
    return twisted_coeffs(f, ctx, chi, k_max, ResidueDomain::full(f.nvars()));
}

/// E(z,K,f) = q^{-nm} sum_{x mod p^m} exp(2 pi i u f(x) / p^m), z = u p^{-m}.
/// Exact integer counts per residue class of u f(x), then one embedding.
inline std::complex<double> exp_sum(const IntPolynomial& f, const PAdicContext& ctx, long m,
                                    long u) {
    const long p = ctx.p;
    if (m < 1) throw DomainError("exp_sum: m must be >= 1");
    ctx.check_depth(m, "exp_sum");
    if (u % p == 0) throw DomainError("exp_sum: u must be a unit");
    long mod = 1;
    for (long i = 0; i < m; ++i) {
        if (mod > 3000000000L / p) throw CapExceeded("exp_sum: modulus too large");
        mod *= p;
    }
    std::vector<long> counts(static_cast<std::size_t>(mod), 0);
    oracle_detail::FastPoly fp(f, mod);
    long uu = ((u % mod) + mod) % mod;
    oracle_detail::enumerate(f.nvars(), p, mod, ResidueDomain::full(f.nvars()), ctx, "exp_sum",
                             [&](const std::vector<long>& x) {
                                 long v = fp.eval(x);
                                 long a = static_cast<long>((static_cast<long long>(v) * uu) % mod);
                                 ++counts[static_cast<std::size_t>(a)];
                             });
    const long double tau = 6.28318530717958647692528676655900577L;
    long double re = 0, im = 0;
    for (long a = 0; a < mod; ++a) {
        long c = counts[static_cast<std::size_t>(a)];
        if (c == 0) continue;
        long double ang = tau * static_cast<long double>(a) / static_cast<long double>(mod);
        re += static_cast<long double>(c) * std::cos(ang);
        im += static_cast<long double>(c) * std::sin(ang);
    }
    long double norm = 1;
    for (int i = 0; i < f.nvars(); ++i) norm *= static_cast<long double>(mod);
    return {static_cast<double>(re / norm), static_cast<double>(im / norm)};
}

struct SeriesComparison {
    bool match = true;
    long first_mismatch = -1;
    std::vector<Cyclo> engine;
    std::vector<Cyclo> oracle;
};

/// Per-coefficient exact equality of engine series against an oracle prefix.
inline SeriesComparison compare_series(const FactoredRatFun& Z, const SeriesPrefix& prefix) {
    SeriesComparison cmp;
    long k_max = static_cast<long>(prefix.coeffs.size()) - 1;
    cmp.engine = Z.series_expand(k_max);
    cmp.oracle = prefix.coeffs;
    for (long k = 0; k <= k_max; ++k) {
        if (cmp.engine[static_cast<std::size_t>(k)] != cmp.oracle[static_cast<std::size_t>(k)]) {
            cmp.match = false;
            cmp.first_mismatch = k;
            break;
        }
    }
    return cmp;
}

} // namespace igusa
