#pragma once

#include <gmpxx.h>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace igusa {

using Int = mpz_class;
using Rat = mpq_class;

struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    std::size_t pos;
    ParseError(std::size_t pos_, const std::string& msg)
        : std::runtime_error(msg + " (at position " + std::to_string(pos_) + ")"), pos(pos_) {}
};

inline Int ipow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Int ipow(long base, unsigned long e) { return ipow(Int(base), e); }

/// q^k for possibly negative k, as an exact rational.
inline Rat qpow(long q, long k) {
    if (k >= 0) return Rat(ipow(q, static_cast<unsigned long>(k)));
    return Rat(1) / Rat(ipow(q, static_cast<unsigned long>(-k)));
}

/// p-adic valuation of a nonzero integer; nullopt encodes v(0) = +infinity.
inline std::optional<long> valuation(const Int& x, long p) {
    if (x == 0) return std::nullopt;
    Int y = x, r;
    long v = 0;
    while (true) {
        Int q;
        mpz_fdiv_qr_ui(q.get_mpz_t(), r.get_mpz_t(), y.get_mpz_t(), static_cast<unsigned long>(p));
        if (r != 0) return v;
        y = q;
        ++v;
    }
}

inline std::string rat_str(const Rat& x) { return x.get_str(); }

inline bool is_prime(long p) {
    if (p < 2) return false;
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

inline long mod_pow(long base, long e, long m) {
    long long r = 1 % m, b = ((base % m) + m) % m;
    while (e > 0) {
        if (e & 1) r = (r * b) % m;
        b = (b * b) % m;
        e >>= 1;
    }
    return static_cast<long>(r);
}

inline Int binomial(unsigned long n, unsigned long k) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

} // namespace igusa
