#pragma once

// Sparse multivariate polynomials with exact integer coefficients: the object
// f of the whole engine. Terms are keyed by exponent vector in graded-lex
// order so printing (and therefore every derived report) is deterministic.

#include "rational.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <string>
#include <vector>

namespace igusa {

using ExponentVector = std::vector<long>;

/// Graded-lexicographic, descending exponent on ties: (2,0) > (1,1) > (0,2).
struct GrlexDesc {
    bool operator()(const ExponentVector& a, const ExponentVector& b) const {
        long da = std::accumulate(a.begin(), a.end(), 0L);
        long db = std::accumulate(b.begin(), b.end(), 0L);
        if (da != db) return da > db;
        return a > b;
    }
};

class IntPolynomial {
public:
    using TermMap = std::map<ExponentVector, Int, GrlexDesc>;

    IntPolynomial() : n_(1) {}
    explicit IntPolynomial(int n) : n_(n) {
        if (n < 1) throw DomainError("variable count must be >= 1");
    }
    IntPolynomial(int n, TermMap terms) : n_(n), terms_(std::move(terms)) {
        for (auto it = terms_.begin(); it != terms_.end();) {
            check_exponent(it->first);
            if (it->second == 0)
                it = terms_.erase(it);
            else
                ++it;
        }
    }

    int nvars() const { return n_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    Int coeff(const ExponentVector& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Int(0) : it->second;
    }

    bool has_constant_term() const {
        return terms_.count(ExponentVector(static_cast<std::size_t>(n_), 0)) != 0;
    }

    void add_term(const ExponentVector& e, const Int& c) {
        check_exponent(e);
        Int& slot = terms_[e];
        slot += c;
        if (slot == 0) terms_.erase(e);
    }

    long total_degree() const {
        long d = 0;
        for (auto& [e, c] : terms_)
            d = std::max(d, std::accumulate(e.begin(), e.end(), 0L));
        return d;
    }

    std::vector<ExponentVector> support() const {
        std::vector<ExponentVector> s;
        s.reserve(terms_.size());
        for (auto& [e, c] : terms_) s.push_back(e);
        return s;
    }

    friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
        a.check_same(b);
        IntPolynomial r = a;
        for (auto& [e, c] : b.terms_) r.add_term(e, c);
        return r;
    }
    friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
        a.check_same(b);
        IntPolynomial r = a;
        for (auto& [e, c] : b.terms_) r.add_term(e, -c);
        return r;
    }
    friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
        a.check_same(b);
        IntPolynomial r(a.n_);
        for (auto& [ea, ca] : a.terms_)
            for (auto& [eb, cb] : b.terms_) {
                ExponentVector e(ea.size());
                for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }
    friend IntPolynomial operator*(const Int& s, const IntPolynomial& a) {
        IntPolynomial r(a.n_);
        if (s == 0) return r;
        for (auto& [e, c] : a.terms_) r.terms_[e] = s * c;
        return r;
    }
    friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) {
        return a.n_ == b.n_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const IntPolynomial& a, const IntPolynomial& b) { return !(a == b); }
    friend bool operator<(const IntPolynomial& a, const IntPolynomial& b) {
        if (a.n_ != b.n_) return a.n_ < b.n_;
        return std::lexicographical_compare(
            a.terms_.begin(), a.terms_.end(), b.terms_.begin(), b.terms_.end(),
            [](const auto& x, const auto& y) {
                if (x.first != y.first) return GrlexDesc{}(x.first, y.first);
                return x.second < y.second;
            });
    }

    /// Canonical print against the given variable names; reparses to itself.
    std::string str(const std::vector<std::string>& vars) const {
        if (static_cast<int>(vars.size()) != n_)
            throw DomainError("variable name list does not match variable count");
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (auto& [e, c] : terms_) {
            Int a = c;
            if (first) {
                if (a < 0) { out += "-"; a = -a; }
            } else {
                out += (a < 0) ? "-" : "+";
                if (a < 0) a = -a;
            }
            first = false;
            std::string mono;
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) continue;
                if (!mono.empty()) mono += "*";
                mono += vars[i];
                if (e[i] > 1) mono += "^" + std::to_string(e[i]);
            }
            if (mono.empty()) {
                out += a.get_str();
            } else {
                if (a != 1) out += a.get_str() + "*";
                out += mono;
            }
        }
        return out;
    }

    /// Stable key for memo tables, independent of user variable names.
    std::string canonical_key() const {
        std::vector<std::string> vars;
        for (int i = 0; i < n_; ++i) vars.push_back("x" + std::to_string(i));
        return std::to_string(n_) + "|" + str(vars);
    }

private:
    int n_;
    TermMap terms_;

    void check_exponent(const ExponentVector& e) const {
        if (static_cast<int>(e.size()) != n_)
            throw DomainError("exponent vector length does not match variable count");
        for (long v : e)
            if (v < 0) throw DomainError("negative exponent");
    }
    void check_same(const IntPolynomial& o) const {
        if (n_ != o.n_) throw DomainError("variable count mismatch");
    }
};

namespace detail {

class PolyParser {
public:
    PolyParser(const std::string& text, const std::vector<std::string>& vars)
        : s_(text), vars_(vars) {}

    IntPolynomial run() {
        IntPolynomial p(static_cast<int>(vars_.size()));
        skip_ws();
        bool neg = false;
        if (peek() == '+' || peek() == '-') neg = (get() == '-');
        parse_term(p, neg);
        skip_ws();
        while (pos_ < s_.size()) {
            char op = get();
            if (op != '+' && op != '-') throw ParseError(pos_ - 1, "expected '+' or '-'");
            parse_term(p, op == '-');
            skip_ws();
        }
        return p;
    }

private:
    const std::string& s_;
    const std::vector<std::string>& vars_;
    std::size_t pos_ = 0;

    char peek() { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    char get() { return pos_ < s_.size() ? s_[pos_++] : '\0'; }
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    void parse_term(IntPolynomial& p, bool negate) {
        skip_ws();
        Int coeff = 1;
        bool saw_coeff = false, saw_factor = false;
        ExponentVector e(vars_.size(), 0);
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            coeff = parse_integer();
            saw_coeff = true;
            skip_ws();
            if (peek() == '*') {
                get();
                skip_ws();
                parse_factor(e);
                saw_factor = true;
            } else if (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_') {
                // implicit product, e.g. "2x"
                parse_factor(e);
                saw_factor = true;
            }
        } else {
            parse_factor(e);
            saw_factor = true;
        }
        skip_ws();
        while (peek() == '*') {
            get();
            skip_ws();
            parse_factor(e);
            skip_ws();
        }
        if (!saw_coeff && !saw_factor) throw ParseError(pos_, "empty term");
        p.add_term(e, negate ? -coeff : coeff);
    }

    void parse_factor(ExponentVector& e) {
        skip_ws();
        std::size_t start = pos_;
        if (!(std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_'))
            throw ParseError(pos_, "expected variable name");
        std::string name;
        while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')
            name += get();
        auto it = std::find(vars_.begin(), vars_.end(), name);
        if (it == vars_.end()) throw ParseError(start, "unknown variable '" + name + "'");
        long exp = 1;
        skip_ws();
        if (peek() == '^') {
            get();
            skip_ws();
            if (!std::isdigit(static_cast<unsigned char>(peek())))
                throw ParseError(pos_, "expected natural exponent after '^'");
            exp = parse_natural();
        }
        e[static_cast<std::size_t>(it - vars_.begin())] += exp;
    }

    Int parse_integer() {
        std::string digits;
        while (std::isdigit(static_cast<unsigned char>(peek()))) digits += get();
        if (peek() == '.')
            throw ParseError(pos_, "non-integer coefficient");
        return Int(digits, 10);
    }

    long parse_natural() {
        std::size_t start = pos_;
        std::string digits;
        while (std::isdigit(static_cast<unsigned char>(peek()))) digits += get();
        try {
            return std::stol(digits);
        } catch (const std::exception&) {
            throw ParseError(start, "exponent out of range");
        }
    }
};

} // namespace detail

/// Parse a +/- separated sum of integer monomials over the named variables.
/// With newton_mode the constant term is rejected (the engine needs f(0)=0).
inline IntPolynomial parse_polynomial(const std::string& text,
                                      const std::vector<std::string>& vars,
                                      bool newton_mode = false) {
    if (vars.empty()) throw DomainError("need at least one variable");
    IntPolynomial p = detail::PolyParser(text, vars).run();
    if (newton_mode && p.has_constant_term())
        throw ParseError(0, "constant term present in Newton-analysis mode");
    return p;
}

inline std::vector<IntPolynomial> partials(const IntPolynomial& f) {
    std::vector<IntPolynomial> out;
    for (int i = 0; i < f.nvars(); ++i) {
        IntPolynomial d(f.nvars());
        for (auto& [e, c] : f.terms()) {
            if (e[static_cast<std::size_t>(i)] == 0) continue;
            ExponentVector e2 = e;
            long k = e2[static_cast<std::size_t>(i)]--;
            d.add_term(e2, c * Int(k));
        }
        out.push_back(std::move(d));
    }
    return out;
}

/// Reduce coefficients into {0,...,p-1}, dropping vanishing terms.
inline IntPolynomial reduce_mod_p(const IntPolynomial& f, long p) {
    IntPolynomial r(f.nvars());
    for (auto& [e, c] : f.terms()) {
        Int cr;
        mpz_fdiv_r_ui(cr.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(p));
        if (cr != 0) r.add_term(e, cr);
    }
    return r;
}

/// f(P + p*x) = p^{e_P} * f_P(x) with f_P of unit content: the dilatation of f
/// at P with all m_i = 1. Exact binomial expansion, no modular truncation.
inline std::pair<IntPolynomial, long> dilate(const IntPolynomial& f,
                                             const std::vector<Int>& P, long p) {
    if (f.is_zero()) throw DomainError("dilate: zero polynomial");
    if (static_cast<int>(P.size()) != f.nvars()) throw DomainError("dilate: point size mismatch");
    IntPolynomial g(f.nvars());
    for (auto& [e, c] : f.terms()) {
        IntPolynomial term(f.nvars());
        term.add_term(ExponentVector(P.size(), 0), c);
        for (std::size_t i = 0; i < P.size(); ++i) {
            // (P_i + p x_i)^{e_i} expanded binomially
            IntPolynomial b(f.nvars());
            long ei = e[i];
            for (long k = 0; k <= ei; ++k) {
                ExponentVector mono(P.size(), 0);
                mono[i] = k;
                Int coef = binomial(static_cast<unsigned long>(ei), static_cast<unsigned long>(k)) *
                           ipow(P[i], static_cast<unsigned long>(ei - k)) *
                           ipow(p, static_cast<unsigned long>(k));
                if (coef != 0) b.add_term(mono, coef);
            }
            term = term * b;
        }
        g = g + term;
    }
    long e_P = -1;
    for (auto& [e, c] : g.terms()) {
        long v = valuation(c, p).value();
        if (e_P < 0 || v < e_P) e_P = v;
    }
    if (e_P < 0) throw DomainError("dilate: expansion vanished");
    IntPolynomial out(f.nvars());
    Int scale = ipow(p, static_cast<unsigned long>(e_P));
    for (auto& [e, c] : g.terms()) out.add_term(e, c / scale);
    return {out, e_P};
}

/// Value of f at a residue point, reduced mod `modulus` (fits in long).
inline long eval_mod(const IntPolynomial& f, const std::vector<long>& x, long modulus) {
    if (static_cast<int>(x.size()) != f.nvars()) throw DomainError("eval_mod: point size mismatch");
    long long acc = 0;
    for (auto& [e, c] : f.terms()) {
        long long t = static_cast<long long>(mpz_fdiv_ui(c.get_mpz_t(), static_cast<unsigned long>(modulus)));
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (e[i] == 0) continue;
            long long b = ((x[i] % modulus) + modulus) % modulus;
            for (long k = 0; k < e[i]; ++k) t = (t * b) % modulus;
        }
        acc = (acc + t) % modulus;
    }
    return static_cast<long>(acc);
}

/// Exact integer value of f at an integer point.
inline Int eval_exact(const IntPolynomial& f, const std::vector<Int>& x) {
    if (static_cast<int>(x.size()) != f.nvars()) throw DomainError("eval_exact: point size mismatch");
    Int acc = 0;
    for (auto& [e, c] : f.terms()) {
        Int t = c;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (e[i] != 0) t *= ipow(x[i], static_cast<unsigned long>(e[i]));
        acc += t;
    }
    return acc;
}

/// Keep exactly the terms whose exponent vectors are in `points`.
inline IntPolynomial restrict_to_points(const IntPolynomial& f,
                                        const std::vector<ExponentVector>& points) {
    IntPolynomial r(f.nvars());
    for (auto& e : points) {
        Int c = f.coeff(e);
        if (c != 0) r.add_term(e, c);
    }
    return r;
}

} // namespace igusa
