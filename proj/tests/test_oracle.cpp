#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"

#include <igusa/oracle.hpp>

#include <complex>

using namespace igusa;

namespace {

IntPolynomial P(const std::string& s, std::vector<std::string> vars = {"x", "y"}) {
    return parse_polynomial(s, vars);
}

} // namespace

TEST_CASE("count_zeros_mod: worked examples") {
    PAdicContext ctx3(3), ctx7(7);
    CHECK(count_zeros_mod(parse_polynomial("x", {"x"}), ctx3, 2) == 1);
    CHECK(count_zeros_mod(P("x^2+x*y+y^2"), ctx7, 1) == 13);
    CHECK(count_zeros_mod(P("x^2+y^2"), ctx3, 1) == 1);
}

TEST_CASE("measure_coeffs: worked examples") {
    PAdicContext ctx3(3);
    auto mu = measure_coeffs(parse_polynomial("x", {"x"}), ctx3, 2);
    CHECK(mu.coeffs[0] == Cyclo(Rat(2) / Rat(3)));
    CHECK(mu.coeffs[1] == Cyclo(Rat(2) / Rat(9)));
    CHECK(mu.coeffs[2] == Cyclo(Rat(2) / Rat(27)));

    PAdicContext ctx7(7);
    CHECK(measure_coeffs(P("x^2+x*y+y^2"), ctx7, 0).coeffs[0] == Cyclo(Rat(36) / Rat(49)));

    PAdicContext ctx5(5);
    auto mu2 = measure_coeffs(parse_polynomial("x^2", {"x"}), ctx5, 2);
    CHECK(mu2.coeffs[0] == Cyclo(Rat(4) / Rat(5)));
    CHECK(mu2.coeffs[1] == Cyclo(Rat(0)));
    CHECK(mu2.coeffs[2] == Cyclo(Rat(4) / Rat(25)));
}

TEST_CASE("measure monotonicity and total measure") {
    PAdicContext ctx(5);
    for (auto& entry : testutil::corpus()) {
        if (entry.vars.size() != 2) continue;
        auto f = parse_polynomial(entry.text, entry.vars);
        long kmax = 3;
        Rat prev(1);
        for (long m = 1; m <= kmax + 1; ++m) {
            Rat density = Rat(count_zeros_mod(f, ctx, m)) /
                          Rat(ipow(ctx.p, static_cast<unsigned long>(2 * m)));
            CHECK(density <= prev);
            prev = density;
        }
        auto mu = measure_coeffs(f, ctx, kmax);
        Rat total(0);
        for (auto& c : mu.coeffs) total += c.rational_value();
        total += Rat(count_zeros_mod(f, ctx, kmax + 1)) /
                 Rat(ipow(ctx.p, static_cast<unsigned long>(2 * (kmax + 1))));
        CHECK(total == Rat(1));
    }
}

TEST_CASE("twisted_coeffs: worked examples") {
    PAdicContext ctx5(5);
    Character chi = Character::of_order(5, 2, 1);
    auto c = twisted_coeffs(parse_polynomial("x", {"x"}), ctx5, chi, 3);
    for (auto& v : c.coeffs) CHECK(v.is_zero());

    auto c2 = twisted_coeffs(parse_polynomial("x^2", {"x"}), ctx5, chi, 0);
    CHECK(c2.coeffs[0] == Cyclo::rational_of_order(2, Rat(4) / Rat(5)));

    auto triv = twisted_coeffs(P("x^2+y^3"), ctx5, Character::trivial(5), 2);
    auto mu = measure_coeffs(P("x^2+y^3"), ctx5, 2);
    for (std::size_t i = 0; i < triv.coeffs.size(); ++i) CHECK(triv.coeffs[i] == mu.coeffs[i]);

    CHECK_THROWS_AS(twisted_coeffs(parse_polynomial("x", {"x"}), ctx5,
                                   Character::of_order(5, 5, 2), 1),
                    DomainError);
}

TEST_CASE("exp_sum: Gauss sum and orthogonality") {
    PAdicContext ctx3(3);
    auto E = exp_sum(parse_polynomial("x^2", {"x"}), ctx3, 1, 1);
    CHECK(std::abs(E.real()) < 1e-12);
    CHECK(std::abs(E.imag() - std::sqrt(3.0) / 3.0) < 1e-12);

    for (long p : {3L, 5L, 7L}) {
        PAdicContext ctx(p);
        auto El = exp_sum(parse_polynomial("x", {"x"}), ctx, 1, 1);
        CHECK(std::abs(El) < 1e-12);
    }

    PAdicContext ctx7(7);
    auto E2 = exp_sum(P("x^2+x*y+y^2"), ctx7, 1, 1);
    CHECK(std::abs(E2) <= 1.0 + 1e-12);
    // |E| <= 1 over a spread of m and u
    for (long m = 1; m <= 3; ++m)
        for (long u : {1L, 2L, 3L}) CHECK(std::abs(exp_sum(P("x^2+y^3"), ctx7, m, u)) <= 1 + 1e-12);
}

TEST_CASE("compare_series flags a deliberate perturbation") {
    PAdicContext ctx(5);
    auto f = P("x^2+y^3");
    auto mu = measure_coeffs(f, ctx, 3);
    auto Z = FactoredRatFun::zero(5);
    // build the truncation of the series itself, then perturb coefficient 2
    LaurentPoly num;
    for (std::size_t k = 0; k < mu.coeffs.size(); ++k)
        num.add(static_cast<long>(k), mu.coeffs[k]);
    Z = FactoredRatFun::from_term(5, num, {});
    CHECK(compare_series(Z, mu).match);
    num.add(2, Cyclo(Rat(1) / Rat(625)));
    auto bad = FactoredRatFun::from_term(5, num, {});
    auto cmp = compare_series(bad, mu);
    CHECK(!cmp.match);
    CHECK(cmp.first_mismatch == 2);
}

TEST_CASE("caps are hard errors") {
    PAdicContext ctx(13);
    ctx.enum_cap = 1000;
    CHECK_THROWS_AS(count_zeros_mod(P("x^2+y^3"), ctx, 2), CapExceeded);
    CHECK_THROWS_AS(measure_coeffs(P("x^2+y^3"), ctx, 3), CapExceeded);
}
