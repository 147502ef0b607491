#include <doctest.h>

#include <algorithm>
#include <random>

#include <puiseux/expr.hpp>
#include <puiseux/henselian.hpp>

#include "helpers.hpp"

using namespace puiseux;
using namespace puiseux::henselian;
using namespace puiseux::testing;

namespace {

MultiIndex mi(std::vector<std::int64_t> v) { return MultiIndex(std::move(v)); }

Scalar sym_expr(const std::string& text) { return parse_scalar(text, 2, ScalarMode::symbolic); }

} // namespace

TEST_CASE("strong reduction recognition") {
    CHECK(laurent_example_equation().strongly_reduced());

    const XYPolynomial ysq = parse_polynomial("y^2", 1);
    const auto bad1 = is_strongly_reduced(ysq);
    CHECK_FALSE(bad1.ok);
    CHECK(bad1.diagnosis.find("Q(x,0)") != std::string::npos);

    // w = (-1,1) has degree 0 and (-1,1) <_lex (0,0): not >_grlex 0.
    const XYPolynomial low = parse_polynomial("x[1]^-1*x[2] + x[2]*y", 2);
    const auto bad2 = is_strongly_reduced(low);
    CHECK_FALSE(bad2.ok);
    CHECK(bad2.diagnosis.find("w(Q)") != std::string::npos);
}

TEST_CASE("fs bounds") {
    const auto b = fs_bounds(laurent_example_equation());
    CHECK(b.iota0 == mi({1, 1}));
    REQUIRE(b.lambda.size() == 2);
    CHECK(b.lambda[0] == 3);
    CHECK(b.lambda[1] == 2);
    CHECK(b.mu(mi({-1, 2})) == 1);
    CHECK(b.mu(mi({-1, 3})) == 3);

    // Polynomial case: lambda = (2, 1), so mu_n <= 2|n| - n_r.
    const auto poly = HenselianEquation(parse_polynomial("x[1] + x[2]*y", 2));
    const auto pb = fs_bounds(poly);
    CHECK(pb.iota0 == mi({0, 0}));
    CHECK(pb.lambda == std::vector<std::int64_t>{2, 1});

    const auto uni = HenselianEquation(parse_polynomial("x[1] + x[1]*y", 1));
    CHECK(fs_bounds(uni).lambda == std::vector<std::int64_t>{1});
}

TEST_CASE("enumerate_M on the Laurent example") {
    const auto eq = laurent_example_equation();

    // Exactly one vector at n = (-1,2), m = 1: the pure a_{-1,2,0} pick.
    const auto single = enumerate_M(eq, mi({-1, 2}), 1);
    REQUIRE(single.size() == 1);
    unsigned long total = 0;
    for (std::size_t t = 0; t < eq.terms().size(); ++t) {
        total += single[0].mult[t];
        if (single[0].mult[t] == 1) {
            CHECK(eq.terms()[t].x == mi({-1, 2}));
            CHECK(eq.terms()[t].y == 0);
        }
    }
    CHECK(total == 1);

    // Structural vanishing along n = (n1, -n1).
    for (std::int64_t n1 = 1; n1 <= 5; ++n1)
        for (unsigned long m = 1; m <= static_cast<unsigned long>(n1); ++m)
            CHECK(enumerate_M(eq, mi({n1, -n1}), m).empty());
}

TEST_CASE("coefficients of the Laurent example solution") {
    const auto eq = laurent_example_equation();

    CHECK(fs_coefficient(eq, mi({-1, 2})) == sym_expr("a_{-1,2,0}"));
    CHECK(fs_coefficient(eq, mi({1, 1})) == sym_expr("a_{1,1,0}"));
    CHECK(fs_coefficient(eq, mi({-1, 3})) ==
          sym_expr("a_{-1,3,0} + a_{0,1,1}*a_{-1,2,0} + a_{1,-1,2}*a_{-1,2,0}^2"));
    CHECK(fs_coefficient(eq, mi({-1, 4})) ==
          sym_expr("a_{0,2,1}*a_{-1,2,0} + a_{0,1,1}*a_{-1,3,0}"
                   " + 2*a_{1,-1,2}*a_{-1,2,0}*a_{-1,3,0} + a_{0,1,1}^2*a_{-1,2,0}"
                   " + 3*a_{0,1,1}*a_{1,-1,2}*a_{-1,2,0}^2 + 2*a_{1,-1,2}^2*a_{-1,2,0}^3"));

    // Structural zeros.
    CHECK(fs_coefficient(eq, mi({-2, 4})).is_zero());
    CHECK(fs_coefficient(eq, mi({0, 2})).is_zero());
    for (std::int64_t n1 = 1; n1 <= 4; ++n1) CHECK(fs_coefficient(eq, mi({n1, -n1})).is_zero());
    for (std::int64_t n1 = 0; n1 <= 4; ++n1)
        if (n1 != 1) CHECK(fs_coefficient(eq, mi({n1, -n1 + 2})).is_zero());
    for (std::int64_t n1 = -3; n1 <= -2; ++n1)
        CHECK(fs_coefficient(eq, mi({n1, -n1 + 3})).is_zero());
}

TEST_CASE("multinomial weights are exact naturals") {
    std::vector<EquationTerm> terms = {
        {mi({1}), 0, Scalar::one(ScalarMode::rational)},
        {mi({1}), 1, Scalar::one(ScalarMode::rational)},
        {mi({1}), 2, Scalar::one(ScalarMode::rational)},
    };
    CHECK(multinomial_weight(1, MVector{{1, 0, 0}}, terms) == 1);
    // m = 3 with multiplicities (2,0,1), ||M|| = 2: 3!/(2!1!)/3 = 1.
    CHECK(multinomial_weight(3, MVector{{2, 0, 1}}, terms) == 1);
    CHECK_THROWS_AS(multinomial_weight(2, MVector{{2, 1, 0}}, terms), precondition_error);

    // Randomized identity: weight * m * M! = m!.
    std::mt19937 rng(99);
    std::uniform_int_distribution<unsigned long> part(0, 4);
    int done = 0;
    while (done < 200) {
        const unsigned long k1 = part(rng), k2 = part(rng);
        const unsigned long norm = k1 + 2 * k2;
        const unsigned long m = norm + 1;
        if (m < k1 + k2) continue;
        const unsigned long k0 = m - k1 - k2; // balances |M| = m
        const MVector mv{{k0, k1, k2}};
        const mpz_class w = multinomial_weight(m, mv, terms);
        mpz_class fact, check;
        mpz_fac_ui(fact.get_mpz_t(), m);
        check = w * m;
        for (unsigned long k : {k0, k1, k2}) {
            mpz_class kf;
            mpz_fac_ui(kf.get_mpz_t(), k);
            check *= kf;
        }
        CHECK(check == fact);
        ++done;
    }
}

TEST_CASE("hensel iteration on classical univariate equations") {
    // y = x + y^2: Catalan numbers.
    const HenselianEquation catalan(parse_polynomial("x[1] + y^2", 1));
    CHECK_FALSE(catalan.strongly_reduced()); // pure-y term, still solvable
    const TruncatedSeries sol = hensel_solve(catalan, mi({6}));
    const std::vector<long> expect = {1, 1, 2, 5, 14, 42};
    for (std::size_t i = 0; i < expect.size(); ++i)
        CHECK(sol.coeff(mi({static_cast<std::int64_t>(i + 1)})) ==
              Scalar::integer(ScalarMode::rational, expect[i]));

    // Fixed-point oracle agrees.
    const TruncatedSeries fp = fixed_point_solution(parse_polynomial("x[1] + y^2", 1), mi({6}), 8);
    for (const auto& [n, c] : sol.coeffs()) CHECK(fp.coeff(n) == c);

    // One-step fixed point: Q = x^3 alone.
    const HenselianEquation pure(parse_polynomial("x[1]^3", 1));
    const TruncatedSeries mono = hensel_solve(pure, mi({9}));
    CHECK(mono.coeffs().size() == 1);
    CHECK(mono.coeff(mi({3})).is_one());

    // Rejected: no constant part.
    CHECK_THROWS_AS(hensel_solve(HenselianEquation(parse_polynomial("y^2", 1)), mi({4})),
                    precondition_error);
}

TEST_CASE("hensel solution of the Laurent example matches the closed form") {
    const auto eq = laurent_example_equation();
    const MultiIndex horizon = adaptive_horizon(eq, 4, 400);
    const TruncatedSeries sol = hensel_solve(eq, horizon, SolveOptions{2000});
    for (const auto& n : support_monoid_segment(eq, horizon, 2000))
        CHECK(fs_coefficient(eq, n) == sol.coeff(n));
}

TEST_CASE("oracle equivalence on random strongly reduced equations") {
    std::mt19937 rng(2024);
    int done = 0;
    while (done < 12) {
        const int r = 1 + static_cast<int>(done % 3);
        const auto eq = random_strongly_reduced(rng, r);
        const MultiIndex horizon = adaptive_horizon(eq, 5, 60);
        std::vector<MultiIndex> segment;
        try {
            segment = support_monoid_segment(eq, horizon, 600);
        } catch (const resource_error&) {
            continue;
        }
        const TruncatedSeries sol = hensel_solve(eq, horizon, SolveOptions{2000});
        for (const auto& n : segment) CHECK(fs_coefficient(eq, n) == sol.coeff(n));
        // Everything nonzero lies inside the candidate monoid segment.
        for (const auto& [n, c] : sol.coeffs())
            CHECK(std::find(segment.begin(), segment.end(), n) != segment.end());
        ++done;
    }
}

TEST_CASE("enumerate_M is empty above the lambda bound") {
    std::mt19937 rng(31337);
    for (int t = 0; t < 8; ++t) {
        const int r = 1 + t % 3;
        const auto eq = random_strongly_reduced(rng, r);
        const auto bounds = fs_bounds(eq);
        const MultiIndex horizon = adaptive_horizon(eq, 4, 40);
        std::vector<MultiIndex> segment;
        try {
            segment = support_monoid_segment(eq, horizon, 300);
        } catch (const resource_error&) {
            continue;
        }
        for (const auto& n : segment) {
            const std::int64_t mu = bounds.mu(n);
            for (std::int64_t m = mu + 1; m <= mu + 2; ++m)
                CHECK(enumerate_M(eq, n, static_cast<unsigned long>(m)).empty());
        }
    }
}

TEST_CASE("finite-horizon fixed-point consistency") {
    // w(z_n - Q(x, z_n)) >=_grlex n at every prefix of the solution.
    std::mt19937 rng(555);
    for (int t = 0; t < 6; ++t) {
        const auto eq = random_strongly_reduced(rng, 2);
        const MultiIndex horizon = adaptive_horizon(eq, 5, 50);
        std::vector<MultiIndex> segment;
        try {
            segment = support_monoid_segment(eq, horizon, 400);
        } catch (const resource_error&) {
            continue;
        }
        const TruncatedSeries sol = hensel_solve(eq, horizon, SolveOptions{2000});
        for (std::size_t cut = 0; cut < segment.size(); cut += 3) {
            const MultiIndex n = segment[cut];
            TruncatedSeries zn = TruncatedSeries::zero(2, ScalarMode::rational);
            for (const auto& [idx, c] : sol.coeffs())
                if (grlex_less(idx, n)) zn.set_coeff(idx, c);
            const TruncatedSeries residue = zn - eq.q().eval_at_series(zn).truncate(horizon);
            for (const auto& [idx, c] : residue.coeffs()) {
                CHECK(grlex_le(n, idx));
                break; // valuation only
            }
        }
    }
}

TEST_CASE("classical univariate closed form") {
    const XYPolynomial catalan = parse_polynomial("x[1] + y^2", 1);
    const std::vector<long> expect = {1, 1, 2, 5, 14, 42};
    for (std::size_t i = 0; i < expect.size(); ++i)
        CHECK(fs_univariate(catalan, i + 1) == Scalar::integer(ScalarMode::rational, expect[i]));

    // y = x + x*y: geometric series, all coefficients 1.
    const XYPolynomial geo = parse_polynomial("x[1] + x[1]*y", 1);
    for (unsigned long n = 1; n <= 8; ++n) CHECK(fs_univariate(geo, n).is_one());

    // n = 1 only sees the x-coefficient.
    const XYPolynomial generic = parse_polynomial("3*x[1] + 2*x[1]^2 + x[1]*y + 5*y^3", 1);
    CHECK(fs_univariate(generic, 1) == Scalar::integer(ScalarMode::rational, 3));

    // Tightened bound m <= n with no pure-y terms: y = x + x*y^2.
    const XYPolynomial tight = parse_polynomial("x[1] + x[1]*y^2", 1);
    const TruncatedSeries fp = fixed_point_solution(tight, mi({9}), 11);
    for (unsigned long n = 1; n <= 9; ++n)
        CHECK(fs_univariate(tight, n) == fp.coeff(mi({static_cast<std::int64_t>(n)})));

    CHECK_THROWS_AS(fs_univariate(parse_polynomial("1 + x[1] + y^2", 1), 2), precondition_error);
    CHECK_THROWS_AS(fs_univariate(parse_polynomial("x[1] + y", 1), 2), precondition_error);
}
