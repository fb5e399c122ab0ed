#pragma once

// p-adic run context (prime, enumeration caps), residue domains mod p, and
// multiplicative characters of conductor c with exact values in Q(zeta_d).

#include "cyclotomic.hpp"
#include "polynomial.hpp"

#include <functional>
#include <vector>

namespace igusa {

struct PAdicContext {
    long p;
    long m_cap = 12;                 // max residue depth for exhaustive ops
    long long enum_cap = 10000000;   // hard point-count cap, never approximated past
    long spf_depth_cap = 32;

    explicit PAdicContext(long p_) : p(p_) {
        if (!is_prime(p)) throw DomainError("p = " + std::to_string(p) + " is not prime");
        if (m_cap < 1) throw DomainError("m_cap must be >= 1");
    }

    void check_points(long double count, const char* where) const {
        if (count > static_cast<long double>(enum_cap))
            throw CapExceeded(std::string(where) + ": enumeration of " +
                              std::to_string(static_cast<double>(count)) +
                              " points exceeds cap " + std::to_string(enum_cap));
    }

    void check_depth(long m, const char* where) const {
        if (m > m_cap)
            throw CapExceeded(std::string(where) + ": residue depth " + std::to_string(m) +
                              " exceeds m_cap " + std::to_string(m_cap));
    }
};

inline long primitive_root_mod_p(long p) {
    std::vector<long> prime_factors;
    long phi = p - 1, m = phi;
    for (long d = 2; d * d <= m; ++d)
        if (m % d == 0) {
            prime_factors.push_back(d);
            while (m % d == 0) m /= d;
        }
    if (m > 1) prime_factors.push_back(m);
    for (long g = 2; g < p; ++g) {
        bool ok = true;
        for (long f : prime_factors)
            if (mod_pow(g, phi / f, p) == 1) { ok = false; break; }
        if (ok) return g;
    }
    throw DomainError("no primitive root found");
}

inline long primitive_root_mod_pc(long p, long c) {
    if (p == 2) {
        if (c <= 1) return 1;
        throw DomainError("characters modulo powers of 2 beyond conductor 1 are unsupported");
    }
    long g = primitive_root_mod_p(p);
    if (c == 1) return g;
    // g stays primitive mod p^c iff g^(p-1) != 1 mod p^2; otherwise g+p works.
    long p2 = p * p;
    if (mod_pow(g, p - 1, p2) == 1) g += p;
    return g;
}

class Character {
public:
    static Character trivial(long p) {
        Character ch;
        ch.p_ = p;
        ch.trivial_ = true;
        ch.d_ = 1;
        ch.c_ = 1;
        return ch;
    }

    /// Nontrivial character of exact order d and conductor c, defined by
    /// chi(g^k) = zeta_d^k on the chosen generator g of (Z/p^c)^x.
    static Character of_order(long p, unsigned d, unsigned c = 1) {
        if (d <= 1) throw DomainError("nontrivial character needs order > 1");
        Character ch;
        ch.p_ = p;
        ch.trivial_ = false;
        ch.d_ = d;
        ch.c_ = c;
        long pc = 1;
        for (unsigned i = 0; i < c; ++i) {
            if (pc > 10000000 / p)
                throw CapExceeded("character: p^c too large for the value table");
            pc *= p;
        }
        long unit_order = pc / p * (p - 1); // phi(p^c)
        if (unit_order % static_cast<long>(d) != 0)
            throw DomainError("order " + std::to_string(d) + " does not divide the unit group order mod p^c");
        if (c >= 2) {
            long prev_order = unit_order / p; // phi(p^{c-1})
            if (prev_order % static_cast<long>(d) == 0)
                throw DomainError("character of order " + std::to_string(d) +
                                  " has conductor < " + std::to_string(c));
        }
        ch.generator_ = primitive_root_mod_pc(p, static_cast<long>(c));
        ch.pc_ = pc;
        ch.build_dlog();
        return ch;
    }

    bool is_trivial() const { return trivial_; }
    unsigned order() const { return d_; }
    unsigned conductor() const { return c_; }
    long generator() const { return trivial_ ? 0 : generator_; }
    long prime() const { return p_; }

    /// chi(u) for u a unit mod p^c (chi(0) := 0 is the caller's convention;
    /// this rejects non-units).
    Cyclo value(long u) const {
        if (trivial_) return Cyclo(Rat(1));
        long uu = ((u % pc_) + pc_) % pc_;
        if (uu % p_ == 0) throw DomainError("character evaluated at a non-unit");
        long k = dlog_[static_cast<std::size_t>(uu)];
        return Cyclo::root_of_unity(d_, k % static_cast<long>(d_));
    }

private:
    long p_ = 0;
    bool trivial_ = true;
    unsigned d_ = 1;
    unsigned c_ = 1;
    long generator_ = 0;
    long pc_ = 1;
    std::vector<long> dlog_;

    void build_dlog() {
        dlog_.assign(static_cast<std::size_t>(pc_), -1);
        long phi = pc_ / p_ * (p_ - 1);
        long x = 1;
        for (long k = 0; k < phi; ++k) {
            dlog_[static_cast<std::size_t>(x)] = k;
            x = static_cast<long>((static_cast<long long>(x) * generator_) % pc_);
        }
    }
};

/// A subset of F_p^n (equivalently its preimage in O^n): the whole space, the
/// unit torus, or an explicit residue list.
struct ResidueDomain {
    enum class Kind { FullSpace, Torus, Explicit };
    Kind kind = Kind::FullSpace;
    int n = 1;
    std::vector<std::vector<long>> points; // residues mod p, Explicit only

    static ResidueDomain full(int n) { return {Kind::FullSpace, n, {}}; }
    static ResidueDomain torus(int n) { return {Kind::Torus, n, {}}; }
    static ResidueDomain explicit_set(int n, std::vector<std::vector<long>> pts) {
        return {Kind::Explicit, n, std::move(pts)};
    }

    bool contains(const std::vector<long>& x_mod_p, long p) const {
        switch (kind) {
            case Kind::FullSpace: return true;
            case Kind::Torus:
                for (long v : x_mod_p)
                    if (((v % p) + p) % p == 0) return false;
                return true;
            case Kind::Explicit:
                for (auto& q : points) {
                    bool eq = true;
                    for (std::size_t i = 0; i < q.size(); ++i)
                        if (((x_mod_p[i] % p) + p) % p != q[i]) { eq = false; break; }
                    if (eq) return true;
                }
                return false;
        }
        return false;
    }

    Int count(long p) const {
        switch (kind) {
            case Kind::FullSpace: return ipow(p, static_cast<unsigned long>(n));
            case Kind::Torus: return ipow(p - 1, static_cast<unsigned long>(n));
            case Kind::Explicit: return Int(points.size());
        }
        return 0;
    }

    long double size(long p) const {
        switch (kind) {
            case Kind::FullSpace: {
                long double s = 1;
                for (int i = 0; i < n; ++i) s *= p;
                return s;
            }
            case Kind::Torus: {
                long double s = 1;
                for (int i = 0; i < n; ++i) s *= (p - 1);
                return s;
            }
            case Kind::Explicit: return static_cast<long double>(points.size());
        }
        return 0;
    }

    std::string str() const {
        switch (kind) {
            case Kind::FullSpace: return "O^" + std::to_string(n);
            case Kind::Torus: return "Ox^" + std::to_string(n);
            case Kind::Explicit: {
                std::string s = "set{";
                for (auto& q : points) {
                    s += "(";
                    for (std::size_t i = 0; i < q.size(); ++i)
                        s += (i ? "," : "") + std::to_string(q[i]);
                    s += ")";
                }
                return s + "}";
            }
        }
        return "?";
    }
};

/// Iterate all residue points of the domain mod p (odometer order).
inline void for_each_residue(const ResidueDomain& D, long p,
                             const std::function<void(const std::vector<long>&)>& fn) {
    if (D.kind == ResidueDomain::Kind::Explicit) {
        for (auto& q : D.points) fn(q);
        return;
    }
    std::vector<long> x(static_cast<std::size_t>(D.n), 0);
    while (true) {
        if (D.contains(x, p)) fn(x);
        int i = 0;
        for (; i < D.n; ++i) {
            if (++x[static_cast<std::size_t>(i)] < p) break;
            x[static_cast<std::size_t>(i)] = 0;
        }
        if (i == D.n) break;
    }
}

} // namespace igusa
