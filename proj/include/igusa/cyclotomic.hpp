#pragma once

// Exact arithmetic in Q(zeta_d): elements are rational coefficient vectors on
// the power basis 1, zeta, ..., zeta^(phi(d)-1) reduced modulo the d-th
// cyclotomic polynomial. Order d = 1 degenerates to plain rationals, which is
// how rational scalars flow through the same code paths.

#include "rational.hpp"

#include <algorithm>
#include <map>
#include <vector>

namespace igusa {

/// Coefficients of the d-th cyclotomic polynomial (monic, degree phi(d)).
inline std::vector<Int> cyclotomic_polynomial(unsigned d) {
    // x^d - 1 divided by all Phi_e, e | d, e < d. Exact integer division.
    std::vector<Int> num(d + 1, Int(0));
    num[0] = -1;
    num[d] = 1;
    for (unsigned e = 1; e < d; ++e) {
        if (d % e != 0) continue;
        std::vector<Int> phi_e = cyclotomic_polynomial(e);
        std::vector<Int> quot(num.size() - phi_e.size() + 1, Int(0));
        std::vector<Int> rem = num;
        for (long i = static_cast<long>(quot.size()) - 1; i >= 0; --i) {
            Int c = rem[i + phi_e.size() - 1]; // leading coeff of Phi_e is 1
            quot[i] = c;
            if (c == 0) continue;
            for (std::size_t j = 0; j < phi_e.size(); ++j) rem[i + j] -= c * phi_e[j];
        }
        num = quot;
    }
    return num;
}

class Cyclo {
public:
    Cyclo() : d_(1), c_(1, Rat(0)) {}
    explicit Cyclo(const Rat& r) : d_(1), c_(1, r) {}
    explicit Cyclo(const Int& z) : d_(1), c_(1, Rat(z)) {}
    explicit Cyclo(long v) : d_(1), c_(1, Rat(v)) {}

    Cyclo(unsigned d, std::vector<Rat> coeffs) : d_(d), c_(std::move(coeffs)) {
        c_.resize(degree(d_), Rat(0));
    }

    /// zeta_d^k.
    static Cyclo root_of_unity(unsigned d, long k) {
        Cyclo z;
        z.d_ = d;
        z.c_.assign(degree(d), Rat(0));
        std::vector<Rat> raw(d, Rat(0));
        long kk = ((k % static_cast<long>(d)) + d) % d;
        raw[static_cast<std::size_t>(kk)] = 1;
        z.c_ = reduce(d, raw);
        return z;
    }

    static Cyclo zero_of_order(unsigned d) { return Cyclo(d, {}); }
    static Cyclo rational_of_order(unsigned d, const Rat& r) {
        Cyclo z = zero_of_order(d);
        z.c_[0] = r;
        return z;
    }

    unsigned order() const { return d_; }
    const std::vector<Rat>& coeffs() const { return c_; }

    bool is_zero() const {
        return std::all_of(c_.begin(), c_.end(), [](const Rat& r) { return r == 0; });
    }
    bool is_rational() const {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }
    Rat rational_value() const {
        if (!is_rational()) throw DomainError("cyclotomic value is not rational");
        return c_[0];
    }

    Cyclo conj() const {
        // zeta -> zeta^{-1}.
        std::vector<Rat> raw(d_ == 1 ? 1 : d_, Rat(0));
        if (d_ == 1) return *this;
        for (std::size_t j = 0; j < c_.size(); ++j)
            raw[(d_ - j) % d_] += c_[j];
        return Cyclo(d_, reduce(d_, raw));
    }

    friend Cyclo operator+(const Cyclo& a, const Cyclo& b) {
        auto [x, y] = align(a, b);
        for (std::size_t i = 0; i < x.c_.size(); ++i) x.c_[i] += y.c_[i];
        return x;
    }
    friend Cyclo operator-(const Cyclo& a, const Cyclo& b) {
        auto [x, y] = align(a, b);
        for (std::size_t i = 0; i < x.c_.size(); ++i) x.c_[i] -= y.c_[i];
        return x;
    }
    Cyclo operator-() const {
        Cyclo r = *this;
        for (auto& v : r.c_) v = -v;
        return r;
    }
    friend Cyclo operator*(const Cyclo& a, const Cyclo& b) {
        auto [x, y] = align(a, b);
        std::vector<Rat> raw(x.c_.size() + y.c_.size(), Rat(0));
        for (std::size_t i = 0; i < x.c_.size(); ++i) {
            if (x.c_[i] == 0) continue;
            for (std::size_t j = 0; j < y.c_.size(); ++j)
                if (y.c_[j] != 0) raw[i + j] += x.c_[i] * y.c_[j];
        }
        return Cyclo(x.d_, reduce(x.d_, raw));
    }
    friend Cyclo operator*(const Cyclo& a, const Rat& s) {
        Cyclo r = a;
        for (auto& v : r.c_) v *= s;
        return r;
    }
    friend Cyclo operator*(const Rat& s, const Cyclo& a) { return a * s; }
    friend Cyclo operator/(const Cyclo& a, const Rat& s) {
        if (s == 0) throw DomainError("division by zero rational");
        Cyclo r = a;
        for (auto& v : r.c_) v /= s;
        return r;
    }
    Cyclo& operator+=(const Cyclo& o) { return *this = *this + o; }
    Cyclo& operator-=(const Cyclo& o) { return *this = *this - o; }
    Cyclo& operator*=(const Cyclo& o) { return *this = *this * o; }

    friend bool operator==(const Cyclo& a, const Cyclo& b) { return (a - b).is_zero(); }
    friend bool operator!=(const Cyclo& a, const Cyclo& b) { return !(a == b); }

    std::string str() const {
        if (is_rational()) return rat_str(c_[0]);
        std::string s = "[";
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (i) s += ",";
            s += rat_str(c_[i]);
        }
        s += "]@zeta" + std::to_string(d_);
        return s;
    }

private:
    unsigned d_;
    std::vector<Rat> c_; // size phi(d), power basis mod Phi_d

    static std::size_t degree(unsigned d) {
        if (d == 1) return 1;
        return cyclotomic_cache(d).size() - 1;
    }

    static const std::vector<Int>& cyclotomic_cache(unsigned d) {
        static std::map<unsigned, std::vector<Int>> cache;
        auto it = cache.find(d);
        if (it == cache.end()) it = cache.emplace(d, cyclotomic_polynomial(d)).first;
        return it->second;
    }

    static std::vector<Rat> reduce(unsigned d, std::vector<Rat> raw) {
        if (d == 1) {
            Rat s(0);
            for (auto& v : raw) s += v;
            return {s};
        }
        const std::vector<Int>& phi = cyclotomic_cache(d);
        std::size_t deg = phi.size() - 1;
        if (raw.size() < deg) raw.resize(deg, Rat(0));
        for (long i = static_cast<long>(raw.size()) - 1; i >= static_cast<long>(deg); --i) {
            Rat c = raw[i];
            if (c == 0) continue;
            raw[i] = 0;
            for (std::size_t j = 0; j < deg; ++j) raw[i - deg + j] -= c * Rat(phi[j]);
        }
        raw.resize(deg);
        return raw;
    }

    static std::pair<Cyclo, Cyclo> align(const Cyclo& a, const Cyclo& b) {
        if (a.d_ == b.d_) return {a, b};
        if (a.is_rational()) {
            return {rational_of_order(b.d_, a.c_[0]), b};
        }
        if (b.is_rational()) {
            return {a, rational_of_order(a.d_, b.c_[0])};
        }
        throw DomainError("mixed cyclotomic orders " + std::to_string(a.d_) + " and " +
                          std::to_string(b.d_));
    }
};

} // namespace igusa
