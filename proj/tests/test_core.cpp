#include <doctest.h>

#include <algorithm>
#include <random>

#include <puiseux/determinant.hpp>
#include <puiseux/expr.hpp>
#include <puiseux/truncated_series.hpp>
#include <puiseux/xy_polynomial.hpp>

#include "helpers.hpp"

using namespace puiseux;
using namespace puiseux::testing;

namespace {
MultiIndex mi(std::vector<std::int64_t> v) { return MultiIndex(std::move(v)); }
}

TEST_CASE("grlex order on examples") {
    CHECK(grlex_cmp(mi({0, 1}), mi({1, 0})) == std::strong_ordering::less);
    CHECK(grlex_cmp(mi({2, 0}), mi({0, 3})) == std::strong_ordering::less);
    // Degree can tie at 0 with mixed signs: (-1,1) <_grlex (0,0).
    CHECK(grlex_cmp(mi({-1, 1}), mi({0, 0})) == std::strong_ordering::less);
    CHECK(grlex_cmp(mi({1, -1}), mi({0, 0})) == std::strong_ordering::greater);

    const std::vector<MultiIndex> expected = {
        mi({0, 0}), mi({0, 1}), mi({1, 0}), mi({0, 2}), mi({1, 1}), mi({2, 0}),
        mi({0, 3}), mi({1, 2}), mi({2, 1}), mi({3, 0}), mi({0, 4}),
    };
    const auto got = grlex_range(2, 4);
    REQUIRE(got.size() >= expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) CHECK(got[i] == expected[i]);
}

TEST_CASE("grlex successor") {
    CHECK(grlex_successor(mi({0, 0})) == mi({0, 1}));
    CHECK(grlex_successor(mi({1, 0})) == mi({0, 2}));
    CHECK(grlex_successor(mi({1, 8})) == mi({2, 7}));
    CHECK(grlex_successor(mi({3})) == mi({4}));

    // Order-theoretic successor: nothing strictly between k and S(k).
    for (int r : {1, 2, 3}) {
        const auto all = grlex_range(r, 5);
        for (std::size_t i = 0; i + 1 < all.size(); ++i) {
            CHECK(grlex_successor(all[i]) == all[i + 1]);
            CHECK(grlex_less(all[i], all[i + 1]));
        }
    }
}

TEST_CASE("lex and grlex are total orders") {
    const auto pts = grlex_range(2, 4);
    for (const auto& a : pts)
        for (const auto& b : pts) {
            const auto g = grlex_cmp(a, b);
            CHECK(g == (grlex_cmp(b, a) == std::strong_ordering::less
                            ? std::strong_ordering::greater
                            : (grlex_cmp(b, a) == std::strong_ordering::greater
                                   ? std::strong_ordering::less
                                   : std::strong_ordering::equal)));
            for (const auto& c : pts) {
                if (grlex_le(a, b) && grlex_le(b, c)) CHECK(grlex_le(a, c));
            }
        }
}

TEST_CASE("rational arithmetic agrees with cross-multiplication") {
    std::mt19937 rng(42);
    for (int t = 0; t < 300; ++t) {
        const mpq_class a = rand_mpq(rng), b = rand_mpq(rng);
        const Scalar sa = Scalar::rational(a), sb = Scalar::rational(b);
        // (p/q) + (u/v) = (pv + uq) / (qv), unreduced big-integer route.
        mpz_class num = a.get_num() * b.get_den() + b.get_num() * a.get_den();
        mpz_class den = a.get_den() * b.get_den();
        CHECK((sa + sb) == Scalar::rational(num, den));
        num = a.get_num() * b.get_num();
        CHECK((sa * sb) == Scalar::rational(num, den));
    }
}

TEST_CASE("scalar ring axioms on random triples") {
    std::mt19937 rng(7);
    const std::vector<Scalar> syms = {Scalar::symbol("u"), Scalar::symbol("v"),
                                      Scalar::symbol("w")};
    for (int t = 0; t < 100; ++t) {
        Scalar a = rand_rat(rng), b = rand_rat(rng), c = rand_rat(rng);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a + b == b + a);
    }
    // Same over symbolic fractions.
    std::uniform_int_distribution<int> pick(0, 2), coeff(-3, 3);
    for (int t = 0; t < 50; ++t) {
        auto randSym = [&] {
            Scalar s = Scalar::integer(ScalarMode::symbolic, coeff(rng));
            s = s + syms[pick(rng)].mul_int(coeff(rng));
            if (t % 3 == 0) s = s / (Scalar::one(ScalarMode::symbolic) + syms[pick(rng)]);
            return s;
        };
        Scalar a = randSym(), b = randSym(), c = randSym();
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("scalar mode mixing is an error") {
    const Scalar q = Scalar::rational(mpz_class(1), mpz_class(2));
    const Scalar s = Scalar::symbol("t");
    CHECK_THROWS_AS(q + s, mode_error);
    CHECK_THROWS_AS(q * s, mode_error);
}

TEST_CASE("symbol relations rewrite to normal form") {
    // c^2 -> -a/b, so b*c^2 + a normalizes to zero.
    const symbol_id c = intern_symbol("relc");
    const SparsePoly a = SparsePoly::variable(intern_symbol("rela"));
    const SparsePoly b = SparsePoly::variable(intern_symbol("relb"));
    RelationScope scope({SymbolRule{c, 2, -a, b}});
    const Scalar sc = Scalar::symbol("relc");
    const Scalar sa = Scalar::symbol("rela");
    const Scalar sb = Scalar::symbol("relb");
    CHECK((sb * sc * sc + sa).is_zero());
    CHECK(sc.pow(4) == (sa * sa) / (sb * sb));
    CHECK(sc.pow(3) == -(sa * sc) / sb);
}

TEST_CASE("series power coefficients") {
    const TruncatedSeries y = symbolic_series(2, 6);
    CHECK(series_power_coeff(y, 2, mi({1, 1})) == csym(0, 1) * csym(1, 0).mul_int(2));
    CHECK(series_power_coeff(y, 2, mi({0, 2})) == csym(0, 1) * csym(0, 1));
    CHECK(series_power_coeff(y, 3, mi({0, 2})).is_zero()); // j > |n|
    CHECK(series_power_coeff(y, 0, mi({0, 0})).is_one());
    CHECK(series_power_coeff(y, 0, mi({0, 1})).is_zero());
    CHECK(series_power_coeff(y, 2, mi({2, 2})) ==
          csym(0, 1) * csym(2, 1).mul_int(2) + csym(0, 2) * csym(2, 0).mul_int(2) +
              csym(1, 0) * csym(1, 2).mul_int(2) + csym(1, 1) * csym(1, 1));
}

TEST_CASE("series power coefficient is homogeneous of degree j") {
    const TruncatedSeries y = symbolic_series(2, 5);
    for (unsigned j : {1u, 2u, 3u}) {
        for (const auto& n : grlex_range(2, 4)) {
            if (n.total() < 1) continue;
            const Scalar c = series_power_coeff(y, j, n);
            if (c.is_zero()) continue;
            REQUIRE(c.sym().is_polynomial());
            for (const auto& [m, v] : c.sym().num().terms())
                CHECK(mono_degree(m) == static_cast<std::int64_t>(j));
        }
    }
}

TEST_CASE("series power truncation guard") {
    TruncatedSeries y(2, ScalarMode::rational, mi({0, 2}));
    y.set_coeff(mi({0, 1}), Scalar::rational(mpz_class(1), mpz_class(1)));
    CHECK_THROWS_AS(series_power_coeff(y, 1, mi({0, 3})), truncation_error);
    // C^(2) at (0,3) only needs parts through (0,2): determined.
    CHECK(series_power_coeff(y, 2, mi({0, 3})).is_zero());
    CHECK_THROWS_AS(series_power_coeff(y, 2, mi({2, 2})), truncation_error);
}

TEST_CASE("ff_det matches examples and the Laplace oracle") {
    ScalarMatrix id3(3, std::vector<Scalar>(3, Scalar::zero(ScalarMode::rational)));
    for (int i = 0; i < 3; ++i) id3[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] =
        Scalar::one(ScalarMode::rational);
    CHECK(ff_det(id3, ScalarMode::rational).is_one());

    std::mt19937 rng(11);
    std::uniform_int_distribution<int> d(-4, 4);
    for (int t = 0; t < 40; ++t) {
        const std::size_t n = 1 + static_cast<std::size_t>(t % 5);
        ScalarMatrix m(n, std::vector<Scalar>(n, Scalar::zero(ScalarMode::rational)));
        for (auto& row : m)
            for (auto& e : row) e = Scalar::integer(ScalarMode::rational, d(rng));
        CHECK(ff_det(m, ScalarMode::rational) == laplace_det(m, ScalarMode::rational));
    }
    // Symbolic entries as well.
    const std::vector<Scalar> pool = {Scalar::symbol("d1"), Scalar::symbol("d2"),
                                      Scalar::integer(ScalarMode::symbolic, 2),
                                      Scalar::symbol("d3"),
                                      Scalar::integer(ScalarMode::symbolic, -1)};
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (int t = 0; t < 10; ++t) {
        const std::size_t n = 3;
        ScalarMatrix m(n, std::vector<Scalar>(n, Scalar::zero(ScalarMode::symbolic)));
        for (auto& row : m)
            for (auto& e : row) e = pool[pick(rng)];
        CHECK(ff_det(m, ScalarMode::symbolic) == laplace_det(m, ScalarMode::symbolic));
    }
}

TEST_CASE("rank profile agrees with the Gaussian oracle") {
    std::mt19937 rng(23);
    std::uniform_int_distribution<int> d(-3, 3);
    for (int t = 0; t < 60; ++t) {
        const std::size_t rows = 2 + static_cast<std::size_t>(t % 6);
        const std::size_t cols = 1 + static_cast<std::size_t>((t / 2) % 4);
        ScalarMatrix m(rows, std::vector<Scalar>(cols, Scalar::zero(ScalarMode::rational)));
        for (auto& row : m)
            for (auto& e : row) e = Scalar::integer(ScalarMode::rational, d(rng));
        CHECK(rank_profile(m, ScalarMode::rational).rank == naive_rank(m));
    }
}

TEST_CASE("xy_substitute: y replaced by x2*y when z = 0") {
    const XYPolynomial p = parse_polynomial("y^2 - x[1]*y + x[2]^3", 2);
    TruncatedSeries z(2, ScalarMode::rational, mi({9, 0}));
    const auto sub = xy_substitute(p, z, mi({0, 1}));
    const XYPolynomial expected = parse_polynomial("x[2]^2*y^2 - x[1]*x[2]*y + x[2]^3", 2);
    CHECK(sub.poly == expected);
}

TEST_CASE("xy_substitute at y = 0 equals series evaluation") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> d(-3, 3), e(0, 2);
    for (int t = 0; t < 25; ++t) {
        XYPolynomial p(2, ScalarMode::rational);
        for (int term = 0; term < 5; ++term)
            p.add_term(mi({e(rng), e(rng)}), static_cast<unsigned>(e(rng) % 3 + (term == 0)),
                       Scalar::integer(ScalarMode::rational, d(rng)));
        if (p.is_zero()) continue;
        TruncatedSeries z(2, ScalarMode::rational, mi({4, 0}));
        for (const auto& n : grlex_range(2, 3)) {
            if (n.total() < 1) continue;
            z.set_coeff(n, Scalar::integer(ScalarMode::rational, d(rng)));
        }
        const auto sub = xy_substitute(p, z, mi({0, 1}));
        const TruncatedSeries direct = p.eval_at_series(z);
        // The y = 0 slice of the substitution, compared within both bounds.
        for (const auto& [n, c] : direct.coeffs()) {
            if (sub.bound && !grlex_le(n, *sub.bound)) continue;
            CHECK(sub.poly.coeff(n, 0) == c);
        }
        for (const auto& [key, c] : sub.poly.terms()) {
            if (key.y != 0) continue;
            if (direct.determined(key.x)) CHECK(direct.coeff(key.x) == c);
        }
    }
}

TEST_CASE("truncated series honest bounds") {
    TruncatedSeries a(2, ScalarMode::rational, mi({0, 2}));
    a.set_coeff(mi({0, 1}), Scalar::integer(ScalarMode::rational, 3));
    CHECK_THROWS_AS(a.coeff(mi({1, 1})), truncation_error); // (1,1) >_grlex (0,2)
    CHECK(a.coeff(mi({0, 2})).is_zero());

    // Product bound: min(B_a + v_b, v_a + B_b).
    TruncatedSeries b(2, ScalarMode::rational, mi({0, 3}));
    b.set_coeff(mi({1, 1}), Scalar::integer(ScalarMode::rational, 1));
    const TruncatedSeries prod = a * b;
    REQUIRE(prod.bound().has_value());
    CHECK(*prod.bound() == mi({0, 4})); // min((0,2)+(1,1), (0,1)+(0,3)) = (0,4)
    CHECK(prod.coeff(mi({1, 2})) == Scalar::integer(ScalarMode::rational, 3));
}

TEST_CASE("expression parser round trip") {
    const std::vector<std::string> inputs = {
        "a_{0,0,2}*y^2 + a_{0,2,0}*x[2]^2",
        "y - x[1] - y^2",
        "3/4*x[1]^2*y - 2*x[2] + 1/7",
        "(u + v)^2*y - x[1]*x[2]^3",
    };
    for (const auto& text : inputs) {
        const XYPolynomial p = parse_polynomial(text, 2);
        const XYPolynomial q = parse_polynomial(p.str(), 2);
        CHECK(p == q);
    }
    const XYPolynomial two = parse_polynomial("a_{0,0,2}*y^2 + a_{0,2,0}*x[2]^2", 2);
    CHECK(two.size() == 2);
    CHECK_THROWS_AS(parse_polynomial("y + ", 2), parse_error);
    CHECK_THROWS_AS(parse_polynomial("x[3]", 2), parse_error);
}
