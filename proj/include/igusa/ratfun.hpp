#pragma once

// Exact algebra of rational functions in t = q^{-s} whose denominators stay
// factored as multisets of (1 - q^{-N} t^M). This is the shape every local
// zeta value takes here: a sum of terms, each a Laurent polynomial over
// Q(zeta_d) divided by such a multiset. Normalization, series expansion,
// pole families, and exact pole order / limit extraction at t0 = q^{N/M}
// (computed in the real number field Q[y]/(y^M - q^N)) live here too.

#include "cyclotomic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

namespace igusa {

// ---------------------------------------------------------------------------
// Laurent polynomials in t over Q(zeta_d)

class LaurentPoly {
public:
    LaurentPoly() = default;
    explicit LaurentPoly(const Cyclo& c0) { set(0, c0); }

    static LaurentPoly monomial(long k, const Cyclo& c) {
        LaurentPoly p;
        p.set(k, c);
        return p;
    }

    const std::map<long, Cyclo>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }

    void set(long k, const Cyclo& v) {
        if (v.is_zero())
            c_.erase(k);
        else
            c_[k] = v;
    }
    Cyclo get(long k) const {
        auto it = c_.find(k);
        return it == c_.end() ? Cyclo() : it->second;
    }
    void add(long k, const Cyclo& v) { set(k, get(k) + v); }

    long min_exp() const { return c_.empty() ? 0 : c_.begin()->first; }
    long max_exp() const { return c_.empty() ? 0 : c_.rbegin()->first; }

    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r = a;
        for (auto& [k, v] : b.c_) r.add(k, v);
        return r;
    }
    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r = a;
        for (auto& [k, v] : b.c_) r.add(k, -v);
        return r;
    }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r;
        for (auto& [ka, va] : a.c_)
            for (auto& [kb, vb] : b.c_) r.add(ka + kb, va * vb);
        return r;
    }
    friend LaurentPoly operator*(const LaurentPoly& a, const Cyclo& s) {
        LaurentPoly r;
        for (auto& [k, v] : a.c_) r.add(k, v * s);
        return r;
    }
    friend LaurentPoly operator*(const LaurentPoly& a, const Rat& s) {
        LaurentPoly r;
        for (auto& [k, v] : a.c_) r.add(k, v * s);
        return r;
    }
    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return (a - b).is_zero();
    }

    /// Exact quotient by a divisor with rational coefficients, or nullopt.
    std::optional<LaurentPoly> divide_exact(const LaurentPoly& div) const {
        if (div.is_zero()) throw DomainError("division by zero polynomial");
        if (is_zero()) return LaurentPoly();
        LaurentPoly rem = *this, quot;
        long dtop = div.max_exp();
        Cyclo dlead = div.get(dtop);
        if (!dlead.is_rational()) throw DomainError("divisor must have rational coefficients");
        Rat dl = dlead.rational_value();
        long kmin = min_exp() - div.min_exp(); // lowest admissible quotient exponent
        while (!rem.is_zero()) {
            long k = rem.max_exp() - dtop;
            if (k < kmin) return std::nullopt;
            Cyclo c = rem.get(rem.max_exp()) / dl;
            quot.add(k, c);
            for (auto& [j, v] : div.c_) rem.add(k + j, -(c * v));
        }
        return quot;
    }

    std::string str() const {
        if (c_.empty()) return "0";
        std::string s;
        for (auto& [k, v] : c_) {
            if (!s.empty()) s += " + ";
            s += "(" + v.str() + ")";
            if (k != 0) s += "*t^" + std::to_string(k);
        }
        return s;
    }

private:
    std::map<long, Cyclo> c_;
};

// ---------------------------------------------------------------------------
// Factored denominators

/// One factor (1 - q^{-N} t^M); M = 0 encodes the constant (1 - q^{-N}).
struct DenFactor {
    long N = 0;
    long M = 0;
    friend bool operator<(const DenFactor& a, const DenFactor& b) {
        return std::make_pair(a.M, a.N) < std::make_pair(b.M, b.N);
    }
    friend bool operator==(const DenFactor& a, const DenFactor& b) {
        return a.N == b.N && a.M == b.M;
    }
};

using DenMultiset = std::map<DenFactor, int>;

inline LaurentPoly den_factor_poly(const DenFactor& f, long q) {
    LaurentPoly p(Cyclo(Rat(1)));
    p.add(f.M, Cyclo(-qpow(q, -f.N)));
    return p;
}

// ---------------------------------------------------------------------------
// Real number field Q[y]/(y^M - q^N), gcd(N, M) = 1, y = q^{N/M} > 0

class RootPowerField {
public:
    RootPowerField(long q, long N, long M) : q_(q), N_(N), M_(M) {
        if (M < 1) throw DomainError("RootPowerField: M must be >= 1");
    }

    using Elem = std::vector<Rat>; // coefficients on 1, y, ..., y^{M-1}

    long q() const { return q_; }
    long deg() const { return M_; }

    Elem zero() const { return Elem(static_cast<std::size_t>(M_), Rat(0)); }
    Elem from_rat(const Rat& r) const {
        Elem e = zero();
        e[0] = r;
        return e;
    }
    /// y^k for k >= 0, reduced via y^M = q^N.
    Elem y_pow(long k) const {
        Elem e = zero();
        long quot = k / M_, rem = k % M_;
        e[static_cast<std::size_t>(rem)] = qpow(q_, quot * N_);
        return e;
    }

    Elem add(const Elem& a, const Elem& b) const {
        Elem r = a;
        for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
        return r;
    }
    Elem sub(const Elem& a, const Elem& b) const {
        Elem r = a;
        for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
        return r;
    }
    Elem mul(const Elem& a, const Elem& b) const {
        std::vector<Rat> raw(static_cast<std::size_t>(2 * M_), Rat(0));
        for (long i = 0; i < M_; ++i)
            for (long j = 0; j < M_; ++j)
                raw[static_cast<std::size_t>(i + j)] +=
                    a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
        Rat qN = qpow(q_, N_);
        Elem r = zero();
        for (long k = 2 * M_ - 1; k >= 0; --k) {
            if (k >= M_)
                raw[static_cast<std::size_t>(k - M_)] += raw[static_cast<std::size_t>(k)] * qN;
            else
                r[static_cast<std::size_t>(k)] = raw[static_cast<std::size_t>(k)];
        }
        return r;
    }
    Elem scale(const Elem& a, const Rat& s) const {
        Elem r = a;
        for (auto& v : r) v *= s;
        return r;
    }
    bool is_zero(const Elem& a) const {
        return std::all_of(a.begin(), a.end(), [](const Rat& r) { return r == 0; });
    }

    /// Multiplicative inverse via extended Euclid in Q[y] mod (y^M - q^N);
    /// valid because the modulus is irreducible over Q for gcd(N,M)=1.
    Elem inv(const Elem& a) const {
        if (is_zero(a)) throw DomainError("RootPowerField: inverse of zero");
        using Poly = std::vector<Rat>;
        auto trim = [](Poly& p) {
            while (!p.empty() && p.back() == 0) p.pop_back();
        };
        Poly r0(static_cast<std::size_t>(M_) + 1, Rat(0)); // y^M - q^N
        r0[static_cast<std::size_t>(M_)] = 1;
        r0[0] = -qpow(q_, N_);
        Poly r1(a.begin(), a.end());
        trim(r1);
        Poly s0{Rat(0)}, s1{Rat(1)}; // track coefficients on the input
        while (true) {
            // divide r0 by r1
            Poly quot(r0.size() > r1.size() - 1 ? r0.size() - r1.size() + 1 : 1, Rat(0));
            Poly rem = r0;
            while (rem.size() >= r1.size() && !(rem.empty())) {
                trim(rem);
                if (rem.size() < r1.size()) break;
                Rat c = rem.back() / r1.back();
                std::size_t shift = rem.size() - r1.size();
                if (shift < quot.size()) quot[shift] = c;
                for (std::size_t i = 0; i < r1.size(); ++i) rem[shift + i] -= c * r1[i];
                trim(rem);
            }
            // s_new = s0 - quot * s1
            Poly qs(quot.size() + s1.size(), Rat(0));
            for (std::size_t i = 0; i < quot.size(); ++i)
                for (std::size_t j = 0; j < s1.size(); ++j) qs[i + j] += quot[i] * s1[j];
            Poly s_new(std::max(s0.size(), qs.size()), Rat(0));
            for (std::size_t i = 0; i < s_new.size(); ++i) {
                if (i < s0.size()) s_new[i] += s0[i];
                if (i < qs.size()) s_new[i] -= qs[i];
            }
            trim(rem);
            if (rem.empty()) {
                // r1 is the gcd; must be a nonzero constant
                if (r1.size() != 1)
                    throw DomainError("RootPowerField: modulus not coprime to element");
                Elem out = zero();
                for (std::size_t i = 0; i < s1.size() && i < out.size(); ++i)
                    out[i] = s1[i] / r1[0];
                return out;
            }
            r0 = r1;
            r1 = rem;
            s0 = s1;
            s1 = s_new;
        }
    }

    Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }

    double embed(const Elem& a) const {
        double y = std::pow(static_cast<double>(q_), static_cast<double>(N_) / static_cast<double>(M_));
        double acc = 0, yk = 1;
        for (long i = 0; i < M_; ++i) {
            acc += a[static_cast<std::size_t>(i)].get_d() * yk;
            yk *= y;
        }
        return acc;
    }

    std::string str(const Elem& a) const {
        if (M_ == 1) return rat_str(a[0]);
        bool rational = true;
        for (long i = 1; i < M_; ++i)
            if (a[static_cast<std::size_t>(i)] != 0) rational = false;
        if (rational) return rat_str(a[0]);
        std::string s = "[";
        for (long i = 0; i < M_; ++i) {
            if (i) s += ",";
            s += rat_str(a[static_cast<std::size_t>(i)]);
        }
        return s + "] on powers of q^(" + std::to_string(N_) + "/" + std::to_string(M_) + ")";
    }

private:
    long q_, N_, M_;
};

// ---------------------------------------------------------------------------
// Factored rational functions

struct PoleFamily {
    long N = 0, M = 0;      // reduced: real part of the pole line is -N/M
    int multiplicity = 0;
    Rat real_part() const { return Rat(-N) / Rat(M); }
};

class FactoredRatFun {
public:
    struct Term {
        LaurentPoly num;
        DenMultiset den;
    };

    FactoredRatFun() : q_(2) {}
    explicit FactoredRatFun(long q) : q_(q) {}

    static FactoredRatFun zero(long q) { return FactoredRatFun(q); }
    static FactoredRatFun constant(long q, const Cyclo& c) {
        FactoredRatFun f(q);
        if (!c.is_zero()) f.terms_.push_back({LaurentPoly(c), {}});
        return f;
    }
    static FactoredRatFun from_term(long q, LaurentPoly num, DenMultiset den) {
        FactoredRatFun f(q);
        if (!num.is_zero()) f.terms_.push_back({std::move(num), std::move(den)});
        return f;
    }

    long q() const { return q_; }
    const std::vector<Term>& terms() const { return terms_; }

    friend FactoredRatFun operator+(const FactoredRatFun& a, const FactoredRatFun& b) {
        a.check_q(b);
        FactoredRatFun r = a;
        for (auto& t : b.terms_) r.push_term(t);
        return r;
    }
    friend FactoredRatFun operator-(const FactoredRatFun& a, const FactoredRatFun& b) {
        a.check_q(b);
        FactoredRatFun r = a;
        for (auto& t : b.terms_) r.push_term({t.num * Cyclo(Rat(-1)), t.den});
        return r;
    }
    friend FactoredRatFun operator*(const FactoredRatFun& a, const FactoredRatFun& b) {
        a.check_q(b);
        FactoredRatFun r(a.q_);
        for (auto& ta : a.terms_)
            for (auto& tb : b.terms_) {
                DenMultiset den = ta.den;
                for (auto& [f, m] : tb.den) den[f] += m;
                r.push_term({ta.num * tb.num, std::move(den)});
            }
        return r;
    }
    friend FactoredRatFun operator*(const FactoredRatFun& a, const Cyclo& s) {
        FactoredRatFun r(a.q_);
        if (s.is_zero()) return r;
        for (auto& t : a.terms_) r.terms_.push_back({t.num * s, t.den});
        return r;
    }

    /// Divide by (1 - q^{-N} t^M): push the factor into every denominator.
    FactoredRatFun over_factor(const DenFactor& f) const {
        FactoredRatFun r(q_);
        for (auto& t : terms_) {
            DenMultiset den = t.den;
            den[f] += 1;
            r.terms_.push_back({t.num, std::move(den)});
        }
        return r;
    }

    bool is_zero() const { return normalize().num.is_zero(); }

    friend bool operator==(const FactoredRatFun& a, const FactoredRatFun& b) {
        return (a - b).is_zero();
    }
    friend bool operator!=(const FactoredRatFun& a, const FactoredRatFun& b) { return !(a == b); }

    struct Normalized {
        LaurentPoly num;
        DenMultiset den; // canonical, sorted by (M, N); no M = 0 factors
    };

    /// Single fraction over the least common multiple of the factors, then
    /// exact cancellation factor by factor; constant factors (M = 0) are
    /// absorbed into the numerator.
    Normalized normalize() const {
        DenMultiset lcm;
        for (auto& t : terms_)
            for (auto& [f, m] : t.den)
                lcm[f] = std::max(lcm[f], m);
        LaurentPoly num;
        for (auto& t : terms_) {
            LaurentPoly part = t.num;
            for (auto& [f, m] : lcm) {
                int missing = m - (t.den.count(f) ? t.den.at(f) : 0);
                LaurentPoly fp = den_factor_poly(f, q_);
                for (int i = 0; i < missing; ++i) part = part * fp;
            }
            num = num + part;
        }
        if (num.is_zero()) return {LaurentPoly(), {}};
        // absorb constants
        Normalized out;
        out.num = num;
        for (auto& [f, m] : lcm) {
            if (f.M == 0) {
                Rat c = Rat(1) - qpow(q_, -f.N);
                for (int i = 0; i < m; ++i) out.num = out.num * (Rat(1) / c);
            } else if (m > 0) {
                out.den[f] = m;
            }
        }
        // cancel factors that divide the numerator exactly
        for (auto it = out.den.begin(); it != out.den.end();) {
            LaurentPoly fp = den_factor_poly(it->first, q_);
            while (it->second > 0) {
                auto quot = out.num.divide_exact(fp);
                if (!quot) break;
                out.num = *quot;
                --it->second;
            }
            if (it->second == 0)
                it = out.den.erase(it);
            else
                ++it;
        }
        return out;
    }

    /// Exact Taylor coefficients of t^0..t^{k_max} (requires N >= 1 on every
    /// t-dependent factor so the expansion at t = 0 exists).
    std::vector<Cyclo> series_expand(long k_max) const {
        std::vector<Cyclo> out(static_cast<std::size_t>(k_max) + 1, Cyclo());
        for (auto& t : terms_) {
            // start from numerator, multiply truncated geometric series
            std::vector<Cyclo> acc(static_cast<std::size_t>(k_max) + 1, Cyclo());
            for (auto& [k, v] : t.num.coeffs()) {
                if (k < 0) throw DomainError("series_expand: negative t power");
                if (k <= k_max) acc[static_cast<std::size_t>(k)] += v;
            }
            for (auto& [f, m] : t.den) {
                if (f.M == 0) {
                    Rat c = Rat(1) - qpow(q_, -f.N);
                    for (int i = 0; i < m; ++i)
                        for (auto& v : acc) v = v * (Rat(1) / c);
                    continue;
                }
                if (f.N < 1)
                    throw DomainError("series_expand: factor not invertible at t=0");
                for (int i = 0; i < m; ++i) {
                    // multiply by sum_j q^{-Nj} t^{Mj}
                    std::vector<Cyclo> next(acc.size(), Cyclo());
                    for (long j = 0; j * f.M <= k_max; ++j) {
                        Rat w = qpow(q_, -f.N * j);
                        for (long k = 0; k + j * f.M <= k_max; ++k) {
                            if (acc[static_cast<std::size_t>(k)].is_zero()) continue;
                            next[static_cast<std::size_t>(k + j * f.M)] +=
                                acc[static_cast<std::size_t>(k)] * w;
                        }
                    }
                    acc = std::move(next);
                }
            }
            for (std::size_t i = 0; i < out.size(); ++i) out[i] += acc[i];
        }
        return out;
    }

    /// Exact value at a rational t (all factors must be nonzero there).
    Cyclo eval_at(const Rat& t) const {
        Cyclo total;
        for (auto& tm : terms_) {
            Cyclo v;
            for (auto& [k, c] : tm.num.coeffs()) {
                if (k < 0) throw DomainError("eval_at: negative power");
                Rat tk = 1;
                for (long i = 0; i < k; ++i) tk *= t;
                v += c * tk;
            }
            for (auto& [f, m] : tm.den) {
                Rat tM = 1;
                for (long i = 0; i < f.M; ++i) tM *= t;
                Rat fac = Rat(1) - qpow(q_, -f.N) * tM;
                if (fac == 0) throw DomainError("eval_at: pole");
                for (int i = 0; i < m; ++i) v = v / fac;
            }
            total += v;
        }
        return total;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (auto& t : terms_) {
            if (!s.empty()) s += "  +  ";
            s += "[" + t.num.str() + "]";
            for (auto& [f, m] : t.den)
                s += " / (1 - q^-" + std::to_string(f.N) + " t^" + std::to_string(f.M) + ")^" +
                     std::to_string(m);
        }
        return s + "   {q=" + std::to_string(q_) + "}";
    }

private:
    long q_;
    std::vector<Term> terms_;

    void check_q(const FactoredRatFun& o) const {
        if (q_ != o.q_) throw DomainError("FactoredRatFun: q mismatch");
    }
    void push_term(const Term& t) {
        if (t.num.is_zero()) return;
        for (auto& mine : terms_)
            if (mine.den == t.den) {
                mine.num = mine.num + t.num;
                if (mine.num.is_zero()) {
                    mine = terms_.back();
                    terms_.pop_back();
                }
                return;
            }
        terms_.push_back(t);
    }
};

/// Closed form of the open-orthant geometric sum: for pairs (N_j, M_j) with
/// N_j >= 1, sum over y in (N \ 0)^e of q^{-sum y_j N_j} t^{sum y_j M_j}.
inline FactoredRatFun geometric_closed_form(long q, const std::vector<std::pair<long, long>>& pairs) {
    LaurentPoly num(Cyclo(Rat(1)));
    DenMultiset den;
    for (auto& [N, M] : pairs) {
        if (N < 1) throw DomainError("geometric_closed_form: N must be >= 1");
        num = num * LaurentPoly::monomial(M, Cyclo(qpow(q, -N)));
        den[DenFactor{N, M}] += 1;
    }
    return FactoredRatFun::from_term(q, std::move(num), std::move(den));
}

// ---------------------------------------------------------------------------
// Pole structure along the real s-axis

namespace detail {

struct EpsSeries {
    // coefficients of (1 - tau)^j, j = 0..len-1, in a RootPowerField
    std::vector<RootPowerField::Elem> c;
};

/// Expansion of P(t0 * tau) in powers of eps = 1 - tau, t0 = y^{Nr}.
inline EpsSeries numerator_eps_series(const LaurentPoly& num, const RootPowerField& F, long Nr,
                                      long len) {
    EpsSeries s;
    s.c.assign(static_cast<std::size_t>(len), F.zero());
    for (auto& [k, v] : num.coeffs()) {
        if (!v.is_rational()) throw DomainError("pole analysis requires rational coefficients");
        if (k < 0) throw DomainError("pole analysis: negative power");
        RootPowerField::Elem t0k = F.scale(F.y_pow(Nr * k), v.rational_value());
        // tau^k = (1 - eps)^k = sum_j C(k,j) (-eps)^j
        for (long j = 0; j < len && j <= k; ++j) {
            Rat b = Rat(binomial(static_cast<unsigned long>(k), static_cast<unsigned long>(j)));
            if (j % 2 == 1) b = -b;
            s.c[static_cast<std::size_t>(j)] =
                F.add(s.c[static_cast<std::size_t>(j)], F.scale(t0k, b));
        }
    }
    return s;
}

inline EpsSeries mul_eps(const EpsSeries& a, const EpsSeries& b, const RootPowerField& F, long len) {
    EpsSeries r;
    r.c.assign(static_cast<std::size_t>(len), F.zero());
    for (long i = 0; i < static_cast<long>(a.c.size()); ++i)
        for (long j = 0; j < static_cast<long>(b.c.size()) && i + j < len; ++j)
            r.c[static_cast<std::size_t>(i + j)] = F.add(
                r.c[static_cast<std::size_t>(i + j)],
                F.mul(a.c[static_cast<std::size_t>(i)], b.c[static_cast<std::size_t>(j)]));
    return r;
}

} // namespace detail

/// Pole order of f at t0 = q^{N/M} where beta = -N/M (in lowest terms).
/// order = (denominator vanishing order) - (numerator vanishing order).
inline int pole_order_at(const FactoredRatFun& f, const Rat& beta) {
    Rat nb = -beta;
    long Nr = static_cast<long>(Int(nb.get_num()).get_si());
    long Mr = static_cast<long>(Int(nb.get_den()).get_si());
    if (Nr <= 0) throw DomainError("pole_order_at: beta must be negative");
    auto nf = f.normalize();
    if (nf.num.is_zero()) return 0;
    RootPowerField F(f.q(), Nr, Mr);
    int v_den = 0;
    for (auto& [fac, m] : nf.den)
        if (fac.N * Mr == fac.M * Nr) v_den += m;
    // numerator vanishing order at t0; bounded by the numerator's span
    long len = nf.num.max_exp() - nf.num.min_exp() + 2;
    detail::EpsSeries ns = detail::numerator_eps_series(nf.num, F, Nr, len);
    int v_num = 0;
    while (v_num < static_cast<int>(ns.c.size()) && F.is_zero(ns.c[static_cast<std::size_t>(v_num)]))
        ++v_num;
    return v_den - v_num;
}

/// lim_{s->beta} (1 - q^{beta-s})^rho f, exact in Q[y]/(y^M - q^N);
/// zero if rho exceeds the pole order, error if rho is smaller.
inline RootPowerField::Elem limit_value(const FactoredRatFun& f, const Rat& beta, int rho) {
    Rat nb = -beta;
    long Nr = static_cast<long>(Int(nb.get_num()).get_si());
    long Mr = static_cast<long>(Int(nb.get_den()).get_si());
    RootPowerField F(f.q(), Nr, Mr);
    auto nf = f.normalize();
    if (nf.num.is_zero()) return F.zero();
    long len = (nf.num.max_exp() - nf.num.min_exp()) + rho + 4;
    for (auto& [fac, m] : nf.den) len += m * fac.M;
    detail::EpsSeries num_s = detail::numerator_eps_series(nf.num, F, Nr, len);
    // denominator eps-series: product over factors of (1 - u tau^M)
    detail::EpsSeries den_s;
    den_s.c.assign(static_cast<std::size_t>(len), F.zero());
    den_s.c[0] = F.from_rat(Rat(1));
    for (auto& [fac, m] : nf.den) {
        // u = q^{-N} t0^M = y^{M*Nr} * q^{-N} up to reduction
        RootPowerField::Elem u = F.scale(F.y_pow(fac.M * Nr), qpow(f.q(), -fac.N));
        detail::EpsSeries factor;
        factor.c.assign(static_cast<std::size_t>(len), F.zero());
        // 1 - u (1-eps)^M = (1-u) + u*sum_{j>=1} C(M,j) (-1)^{j+1} eps^j
        factor.c[0] = F.sub(F.from_rat(Rat(1)), u);
        for (long j = 1; j < len && j <= fac.M; ++j) {
            Rat b = Rat(binomial(static_cast<unsigned long>(fac.M), static_cast<unsigned long>(j)));
            if (j % 2 == 0) b = -b;
            factor.c[static_cast<std::size_t>(j)] = F.scale(u, b);
        }
        for (int i = 0; i < m; ++i) den_s = detail::mul_eps(den_s, factor, F, len);
    }
    long v_num = 0;
    while (v_num < len && F.is_zero(num_s.c[static_cast<std::size_t>(v_num)])) ++v_num;
    long v_den = 0;
    while (v_den < len && F.is_zero(den_s.c[static_cast<std::size_t>(v_den)])) ++v_den;
    long order = v_den - v_num;
    if (rho > order) return F.zero();
    if (rho < order) throw DomainError("limit_value: limit is infinite (rho below pole order)");
    return F.div(num_s.c[static_cast<std::size_t>(v_num)], den_s.c[static_cast<std::size_t>(v_den)]);
}

/// Distinct pole lines -N/M of the normalized f with their exact
/// multiplicities (families with multiplicity 0 after cancellation dropped).
inline std::vector<PoleFamily> pole_families(const FactoredRatFun& f) {
    auto nf = f.normalize();
    std::set<std::pair<long, long>> lines;
    for (auto& [fac, m] : nf.den) {
        long g = std::gcd(fac.N, fac.M);
        lines.insert({fac.N / g, fac.M / g});
    }
    std::vector<PoleFamily> out;
    for (auto& [N, M] : lines) {
        int ord = pole_order_at(f, Rat(-N) / Rat(M));
        if (ord > 0) out.push_back({N, M, ord});
    }
    std::sort(out.begin(), out.end(), [](const PoleFamily& a, const PoleFamily& b) {
        return a.real_part() > b.real_part();
    });
    return out;
}

} // namespace igusa
