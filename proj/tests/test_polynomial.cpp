#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <igusa/polynomial.hpp>

#include <random>

using namespace igusa;

namespace {

ExponentVector ev(std::initializer_list<long> v) { return ExponentVector(v); }

IntPolynomial random_poly(std::mt19937& rng, int n, long max_deg, int max_terms,
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

} // namespace

TEST_CASE("parse: spec examples") {
    auto f = parse_polynomial("x^2+x*y+y^2", {"x", "y"});
    CHECK(f.term_count() == 3);
    CHECK(f.coeff(ev({2, 0})) == 1);
    CHECK(f.coeff(ev({1, 1})) == 1);
    CHECK(f.coeff(ev({0, 2})) == 1);

    auto g = parse_polynomial("x^2*y^2 + x^5 + y^5", {"x", "y"});
    CHECK(g.term_count() == 3);
    CHECK(g.coeff(ev({2, 2})) == 1);
    CHECK(g.coeff(ev({5, 0})) == 1);
    CHECK(g.coeff(ev({0, 5})) == 1);

    auto z = parse_polynomial("0", {"x"});
    CHECK(z.is_zero());
}

TEST_CASE("parse: errors") {
    CHECK_THROWS_AS(parse_polynomial("x^2ial", {"x"}), ParseError);
    CHECK_THROWS_AS(parse_polynomial("x+z", {"x", "y"}), ParseError);
    CHECK_THROWS_AS(parse_polynomial("x^2+", {"x"}), ParseError);
    CHECK_THROWS_AS(parse_polynomial("1.5*x", {"x"}), ParseError);
    CHECK_THROWS_AS(parse_polynomial("x^2+3", {"x"}, /*newton_mode=*/true), ParseError);
    // position is reported
    try {
        parse_polynomial("x^2 + w", {"x", "y"});
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.pos == 6);
    }
}

TEST_CASE("parser survives garbage input with clean errors") {
    std::mt19937 rng(8086);
    const std::string alphabet = "xy+-*^0123456789 ()._qz";
    for (int it = 0; it < 500; ++it) {
        std::string s;
        int len = 1 + static_cast<int>(rng() % 12);
        for (int i = 0; i < len; ++i) s += alphabet[rng() % alphabet.size()];
        try {
            auto f = parse_polynomial(s, {"x", "y"});
            // accepted inputs must round-trip
            CHECK(parse_polynomial(f.str({"x", "y"}), {"x", "y"}) == f);
        } catch (const ParseError&) {
        } catch (const DomainError&) {
        }
    }
}

TEST_CASE("print/parse round trip on random polynomials") {
    std::mt19937 rng(12345);
    std::vector<std::string> vars{"x", "y", "z"};
    for (int it = 0; it < 200; ++it) {
        int n = 1 + static_cast<int>(rng() % 3);
        IntPolynomial f = random_poly(rng, n, 5, 6, false);
        std::vector<std::string> vs(vars.begin(), vars.begin() + n);
        IntPolynomial g = parse_polynomial(f.str(vs), vs);
        CHECK(f == g);
    }
}

TEST_CASE("partials: spec examples") {
    auto f = parse_polynomial("x^2+x*y+y^2", {"x", "y"});
    auto df = partials(f);
    CHECK(df[0] == parse_polynomial("2*x+y", {"x", "y"}));
    CHECK(df[1] == parse_polynomial("x+2*y", {"x", "y"}));

    auto g = parse_polynomial("x^2*y^2+x^5+y^5", {"x", "y"});
    auto dg = partials(g);
    CHECK(dg[0] == parse_polynomial("2*x*y^2+5*x^4", {"x", "y"}));
    CHECK(dg[1] == parse_polynomial("2*x^2*y+5*y^4", {"x", "y"}));

    IntPolynomial zero(3);
    for (auto& d : partials(zero)) CHECK(d.is_zero());
}

TEST_CASE("partials: Leibniz rule on random products") {
    std::mt19937 rng(777);
    for (int it = 0; it < 50; ++it) {
        int n = 1 + static_cast<int>(rng() % 2);
        IntPolynomial f = random_poly(rng, n, 3, 4, false);
        IntPolynomial g = random_poly(rng, n, 3, 4, false);
        auto dfg = partials(f * g);
        auto df = partials(f);
        auto dg = partials(g);
        for (int i = 0; i < n; ++i)
            CHECK(dfg[static_cast<std::size_t>(i)] ==
                  f * dg[static_cast<std::size_t>(i)] + g * df[static_cast<std::size_t>(i)]);
    }
}

TEST_CASE("reduce_mod_p: spec examples") {
    CHECK(reduce_mod_p(parse_polynomial("x^2+x*y+y^2", {"x", "y"}), 2) ==
          parse_polynomial("x^2+x*y+y^2", {"x", "y"}));
    CHECK(reduce_mod_p(parse_polynomial("3*x^2+7*y", {"x", "y"}), 7) ==
          parse_polynomial("3*x^2", {"x", "y"}));
    CHECK(reduce_mod_p(parse_polynomial("5*x+10*y", {"x", "y"}), 5).is_zero());
}

TEST_CASE("reduce_mod_p consistent with eval_mod") {
    std::mt19937 rng(31);
    for (int it = 0; it < 100; ++it) {
        long p = std::vector<long>{2, 3, 5, 7}[rng() % 4];
        int n = 1 + static_cast<int>(rng() % 2);
        IntPolynomial f = random_poly(rng, n, 4, 5, false);
        IntPolynomial fbar = reduce_mod_p(f, p);
        std::vector<long> x(static_cast<std::size_t>(n));
        for (auto& v : x) v = static_cast<long>(rng() % static_cast<unsigned long>(p));
        CHECK(eval_mod(fbar, x, p) == eval_mod(f, x, p));
    }
}

TEST_CASE("dilate: spec examples") {
    auto f = parse_polynomial("x^2+x*y+y^2", {"x", "y"});
    auto [fP, e] = dilate(f, {Int(0), Int(0)}, 7);
    CHECK(e == 2);
    CHECK(fP == f);

    auto g = parse_polynomial("x^2+3*x", {"x"});
    auto [gP, eg] = dilate(g, {Int(0)}, 3);
    CHECK(eg == 2);
    CHECK(gP == parse_polynomial("x^2+x", {"x"}));

    auto h = parse_polynomial("x", {"x"});
    auto [hP, eh] = dilate(h, {Int(1)}, 5);
    CHECK(eh == 0);
    CHECK(hP == parse_polynomial("5*x+1", {"x"}));
}

TEST_CASE("dilatation identity f(P + p x) = p^e f_P(x) on random samples") {
    std::mt19937 rng(99);
    for (int it = 0; it < 80; ++it) {
        long p = std::vector<long>{2, 3, 5, 7}[rng() % 4];
        int n = 1 + static_cast<int>(rng() % 2);
        IntPolynomial f = random_poly(rng, n, 4, 5, false);
        if (f.is_zero()) continue;
        std::vector<Int> P;
        for (int i = 0; i < n; ++i) P.emplace_back(static_cast<long>(rng() % static_cast<unsigned long>(p)));
        auto [fP, e] = dilate(f, P, p);
        for (int s = 0; s < 4; ++s) {
            std::vector<Int> x, PpX;
            for (int i = 0; i < n; ++i) {
                long xi = static_cast<long>(rng() % 19) - 9;
                x.emplace_back(xi);
                PpX.push_back(P[static_cast<std::size_t>(i)] + Int(p) * Int(xi));
            }
            CHECK(eval_exact(f, PpX) == ipow(p, static_cast<unsigned long>(e)) * eval_exact(fP, x));
        }
    }
}

TEST_CASE("eval_mod: spec examples") {
    CHECK(eval_mod(parse_polynomial("x^2+x*y+y^2", {"x", "y"}), {1, 2}, 7) == 0);
    CHECK(eval_mod(parse_polynomial("x", {"x"}), {3}, 9) == 3);
    CHECK(eval_mod(parse_polynomial("x^2*y^2+x^5+y^5", {"x", "y"}), {1, 1}, 3) == 0);
}
