#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"

#include <igusa/analysis.hpp>

using namespace igusa;

namespace {

IntPolynomial P(const std::string& s, std::vector<std::string> vars = {"x", "y"}) {
    return parse_polynomial(s, vars);
}

} // namespace

TEST_CASE("candidate_poles: worked examples") {
    using Pair = std::pair<long, long>;
    CHECK(candidate_poles(newton_polyhedron(P("x^2+x*y+y^2"))) ==
          std::set<Pair>{{2, 2}, {1, 1}});
    CHECK(candidate_poles(newton_polyhedron(P("x^2*y^2+x^5+y^5"))) ==
          std::set<Pair>{{5, 10}, {1, 1}});
    CHECK(candidate_poles(newton_polyhedron(parse_polynomial("x^6", {"x"}))) ==
          std::set<Pair>{{1, 6}, {1, 1}});
}

TEST_CASE("beta_invariants: worked examples") {
    auto i1 = beta_invariants(newton_polyhedron(P("x^2+x*y+y^2")));
    CHECK(i1.beta == Rat(-1));
    CHECK(i1.T0 == std::vector<Rat>{Rat(1), Rat(1)});
    CHECK(i1.rho == 1);

    auto np2 = newton_polyhedron(P("x^2*y^2+x^5+y^5"));
    auto i2 = beta_invariants(np2);
    CHECK(i2.beta == Rat(-1) / Rat(2));
    CHECK(i2.T0 == std::vector<Rat>{Rat(2), Rat(2)});
    CHECK(i2.rho == 2);
    CHECK(np2.faces[i2.tau0_face].points == std::vector<ExponentVector>{{2, 2}});
    CHECK(np2.faces[i2.tau0_face].dim == 0);

    auto i3 = beta_invariants(newton_polyhedron(P("x^2+y^4")));
    CHECK(i3.beta == Rat(-3) / Rat(4));
    CHECK(i3.rho == 1);
}

TEST_CASE("beta equals the max over candidate lines") {
    for (auto& entry : testutil::corpus()) {
        auto np = newton_polyhedron(parse_polynomial(entry.text, entry.vars, true));
        auto inv = beta_invariants(np);
        Rat best;
        bool have = false;
        for (auto& [N, M] : candidate_poles(np)) {
            if (M == 0) continue;
            Rat r = Rat(-N) / Rat(M);
            if ((N == 1 && M == 1)) continue; // (1,1) is not a facet line
            if (!have || r > best) { best = r; have = true; }
        }
        CHECK(inv.beta == best);
        // T0 satisfies every facet inequality, tight exactly on tau0's facets
        for (std::size_t j = 0; j < np.facets.size(); ++j) {
            Rat lhs(0);
            for (long c : np.facets[j].normal) lhs += Rat(c) * inv.T0[0];
            CHECK(lhs >= Rat(np.facets[j].m));
            bool in_tau0 =
                std::find(np.faces[inv.tau0_face].containing_facets.begin(),
                          np.faces[inv.tau0_face].containing_facets.end(),
                          static_cast<int>(j)) != np.faces[inv.tau0_face].containing_facets.end();
            CHECK((lhs == Rat(np.facets[j].m)) == in_tau0);
        }
    }
}

TEST_CASE("theorem B verdicts: both branches of x^2+xy+y^2") {
    auto f = P("x^2+x*y+y^2");
    {
        PAdicContext ctx(7);
        auto rep = zeta_full(f, {"x", "y"}, Character::trivial(7), ctx);
        auto v = theorem_B_verdict(rep.total, rep.np, f, ctx, rep.gate.all_pass);
        CHECK(v.situation == TheoremBVerdict::Case::AtMinusOne);
        CHECK(v.counts_all_positive);
        CHECK(v.observed_multiplicity == 2);
        CHECK(v.pass);
    }
    {
        PAdicContext ctx(5);
        auto rep = zeta_full(f, {"x", "y"}, Character::trivial(5), ctx);
        auto v = theorem_B_verdict(rep.total, rep.np, f, ctx, rep.gate.all_pass);
        CHECK(v.situation == TheoremBVerdict::Case::AtMinusOne);
        CHECK(v.counts_all_zero);
        CHECK(v.observed_multiplicity == 1);
        CHECK(v.pass);
    }
}

TEST_CASE("theorem B verdict: x^2y^2+x^5+y^5 sits above -1") {
    PAdicContext ctx(7);
    auto f = P("x^2*y^2+x^5+y^5");
    auto rep = zeta_full(f, {"x", "y"}, Character::trivial(7), ctx);
    auto v = theorem_B_verdict(rep.total, rep.np, f, ctx, rep.gate.all_pass);
    CHECK(v.situation == TheoremBVerdict::Case::AboveMinusOne);
    CHECK(v.rho == 2);
    CHECK(v.observed_multiplicity == 2);
    CHECK(v.pass);
}

TEST_CASE("theorem A(i) containment across the corpus") {
    for (auto& entry : testutil::corpus()) {
        for (long p : {2L, 3L, 5L, 7L}) {
            if (entry.vars.size() == 3 && p > 3) continue;
            PAdicContext ctx(p);
            auto f = parse_polynomial(entry.text, entry.vars, true);
            auto np = newton_polyhedron(f);
            if (!check_nondegenerate_mod_p(f, np, ctx).all_pass) continue;
            auto rep = zeta_full(f, entry.vars, Character::trivial(p), ctx);
            CAPTURE(entry.text);
            CAPTURE(p);
            CHECK(theorem_A_containment(rep.poles, candidate_poles(np)));
        }
    }
}

TEST_CASE("theorem B verdict: beta < -1 is out of scope") {
    // f = x + y has beta = -2; smooth, so the whole machinery still runs
    PAdicContext ctx(5);
    auto f = P("x+y");
    auto rep = zeta_full(f, {"x", "y"}, Character::trivial(5), ctx);
    auto inv = beta_invariants(rep.np);
    CHECK(inv.beta == Rat(-2));
    auto v = theorem_B_verdict(rep.total, rep.np, f, ctx, rep.gate.all_pass);
    CHECK(v.situation == TheoremBVerdict::Case::OutOfScope);
    CHECK(v.pass);
}

TEST_CASE("char_vanishing: worked examples") {
    auto np1 = newton_polyhedron(P("x^2+x*y+y^2"));
    CHECK(char_vanishing(Character::of_order(7, 3, 1), np1));
    CHECK(!char_vanishing(Character::of_order(7, 2, 1), np1));
    auto np2 = newton_polyhedron(P("x^2*y^2+x^5+y^5"));
    CHECK(char_vanishing(Character::of_order(7, 3, 1), np2));
}

TEST_CASE("theorem A(ii): order-3 and order-6 twists of x^2+xy+y^2 are polynomials") {
    PAdicContext ctx(7);
    auto f = P("x^2+x*y+y^2");
    long deg3 = 0, deg6 = 0;
    {
        Character chi = Character::of_order(7, 3, 1);
        auto rep = zeta_full(f, {"x", "y"}, chi, ctx);
        CHECK(rep.normalized.den.empty()); // polynomial in t
        deg3 = rep.normalized.num.is_zero() ? -1 : rep.normalized.num.max_exp();
        auto oracle = twisted_coeffs(f, ctx, chi, 3);
        CHECK(compare_series(rep.total, oracle).match);
    }
    {
        Character chi = Character::of_order(7, 6, 1);
        auto rep = zeta_full(f, {"x", "y"}, chi, ctx);
        CHECK(rep.normalized.den.empty());
        deg6 = rep.normalized.num.is_zero() ? -1 : rep.normalized.num.max_exp();
    }
    CHECK(deg3 == deg6); // degree independent of the character
}

namespace {

// midpoint-radius interval with conservative fp slack, for the sign
// certification below
struct Iv {
    double v = 0, e = 0;
    static Iv of(double x, double rel = 1e-15) { return {x, std::abs(x) * rel + 1e-300}; }
    Iv operator+(const Iv& o) const { return slack({v + o.v, e + o.e}); }
    Iv operator*(const Iv& o) const {
        return slack({v * o.v, std::abs(v) * o.e + std::abs(o.v) * e + e * o.e});
    }
    static Iv slack(Iv x) {
        x.e += std::abs(x.v) * 4e-16;
        return x;
    }
    bool certainly_nonzero() const { return std::abs(v) > e; }
};

} // namespace

TEST_CASE("pole_order_at cross-checked by number-field deflation and intervals") {
    for (auto& entry : testutil::corpus()) {
        if (entry.vars.size() != 2) continue;
        for (long p : {5L, 7L}) {
            PAdicContext ctx(p);
            auto f = parse_polynomial(entry.text, entry.vars, true);
            auto np = newton_polyhedron(f);
            if (!check_nondegenerate_mod_p(f, np, ctx).all_pass) continue;
            auto rep = zeta_full(f, entry.vars, Character::trivial(p), ctx);
            auto nf = rep.normalized;
            std::set<std::pair<long, long>> lines;
            for (auto& [fac, m] : nf.den) {
                long g = std::gcd(fac.N, fac.M);
                lines.insert({fac.N / g, fac.M / g});
            }
            for (auto& [Nr, Mr] : lines) {
                RootPowerField F(p, Nr, Mr);
                // exact deflation of the numerator by (t - t0), t0 = y^{Nr}
                std::vector<RootPowerField::Elem> coeffs;
                long top = nf.num.max_exp();
                for (long k = 0; k <= top; ++k)
                    coeffs.push_back(F.scale(F.from_rat(Rat(1)),
                                             nf.num.get(k).rational_value()));
                auto t0 = F.y_pow(Nr);
                int v_num = 0;
                while (true) {
                    // synthetic division: remainder = value at t0
                    RootPowerField::Elem acc = F.zero();
                    std::vector<RootPowerField::Elem> quot;
                    for (long k = static_cast<long>(coeffs.size()) - 1; k >= 0; --k) {
                        acc = F.add(F.mul(acc, t0), coeffs[static_cast<std::size_t>(k)]);
                        if (k > 0) quot.push_back(acc);
                    }
                    if (!F.is_zero(acc)) break;
                    std::reverse(quot.begin(), quot.end());
                    coeffs = quot;
                    ++v_num;
                    REQUIRE(v_num < 64);
                }
                int v_den = 0;
                for (auto& [fac, m] : nf.den)
                    if (fac.N * Mr == fac.M * Nr) v_den += m;
                CAPTURE(entry.text);
                CAPTURE(p);
                CHECK(pole_order_at(rep.total, Rat(-Nr) / Rat(Mr)) == v_den - v_num);
                // interval certification that the deflated numerator is
                // really nonzero at t0
                Iv t0iv = Iv::of(std::pow(static_cast<double>(p),
                                          static_cast<double>(Nr) / static_cast<double>(Mr)),
                                 1e-14);
                Iv acc = Iv::of(0.0);
                for (long k = static_cast<long>(coeffs.size()) - 1; k >= 0; --k) {
                    double mid = F.embed(coeffs[static_cast<std::size_t>(k)]);
                    acc = acc * t0iv + Iv::of(mid, 1e-13);
                }
                CHECK(acc.certainly_nonzero());
            }
        }
    }
}

TEST_CASE("exp_sum bound report shapes") {
    PAdicContext ctx(7);
    auto f = P("x^2*y^2+x^5+y^5");
    auto inv = beta_invariants(newton_polyhedron(f));
    auto rep = expsum_bound_report(f, ctx, inv, 3);
    CHECK(rep.rho == 2);
    CHECK(rep.all_below_one);
    REQUIRE(rep.samples.size() == 3);
    for (auto& s : rep.samples) {
        CHECK(s.abs_value <= rep.fitted_C * s.bound_at_C1 + 1e-12);
        CHECK(s.abs_value <= 1.0 + 1e-9);
    }
    // beta = -2/3 > -1 stays in scope; beta = -1 is rejected
    auto np3 = newton_polyhedron(P("x^3+y^3"));
    auto inv3 = beta_invariants(np3);
    CHECK(inv3.beta == Rat(-2) / Rat(3));
    PAdicContext ctx5(5);
    CHECK_NOTHROW(expsum_bound_report(P("x^3+y^3"), ctx5, inv3, 2));
    auto inv1 = beta_invariants(newton_polyhedron(P("x^2+x*y+y^2")));
    CHECK_THROWS_AS(expsum_bound_report(P("x^2+x*y+y^2"), ctx5, inv1, 2), DomainError);
}
