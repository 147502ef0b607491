#ifndef PUISEUX_TESTS_HELPERS_HPP
#define PUISEUX_TESTS_HELPERS_HPP

#include <random>
#include <set>
#include <string>
#include <vector>

#include <puiseux/determinant.hpp>
#include <puiseux/henselian.hpp>
#include <puiseux/truncated_series.hpp>
#include <puiseux/xy_polynomial.hpp>

namespace puiseux::testing {

inline std::string cname(std::int64_t i, std::int64_t j) {
    return "C_{" + std::to_string(i) + "," + std::to_string(j) + "}";
}

// Abstract series sum C_n x^n over all n in N^r with 1 <= |n| <= maxDegree.
inline TruncatedSeries symbolic_series(int r, std::int64_t maxDegree) {
    MultiIndex bound = MultiIndex::zero(r);
    bound[0] = maxDegree;
    TruncatedSeries s(r, ScalarMode::symbolic, bound);
    for (const auto& n : grlex_range(r, maxDegree)) {
        if (n.total() < 1) continue;
        std::string nm = "C_{";
        for (int t = 0; t < r; ++t) nm += (t ? "," : "") + std::to_string(n[t]);
        nm += "}";
        s.set_coeff(n, Scalar::symbol(nm));
    }
    return s;
}

inline Scalar csym(std::int64_t i, std::int64_t j) { return Scalar::symbol(cname(i, j)); }

inline Scalar rand_rat(std::mt19937& rng, int span = 9) {
    std::uniform_int_distribution<int> num(-span, span);
    std::uniform_int_distribution<int> den(1, span);
    return Scalar::rational(mpz_class(num(rng)), mpz_class(den(rng)));
}

inline mpq_class rand_mpq(std::mt19937& rng, int span = 9) {
    std::uniform_int_distribution<int> num(-span, span);
    std::uniform_int_distribution<int> den(1, span);
    return mpq_class(num(rng), den(rng));
}

// Plain Gaussian elimination over the rationals; rank oracle.
inline std::size_t naive_rank(const ScalarMatrix& in) {
    std::vector<std::vector<mpq_class>> m;
    for (const auto& row : in) {
        std::vector<mpq_class> v;
        for (const auto& s : row) v.push_back(s.rat());
        m.push_back(std::move(v));
    }
    std::size_t rank = 0;
    const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[rank]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == rank || m[i][c] == 0) continue;
            const mpq_class f = m[i][c] / m[rank][c];
            for (std::size_t j = 0; j < cols; ++j) m[i][j] -= f * m[rank][j];
        }
        ++rank;
    }
    return rank;
}

// Fixed-point iteration for y = Q(x,y), exponents in N^r; the independent
// oracle for the solver and the closed coefficient formulas.
inline TruncatedSeries fixed_point_solution(const XYPolynomial& q, const MultiIndex& horizon,
                                            int rounds) {
    TruncatedSeries z(q.r(), q.mode(), horizon);
    for (int i = 0; i < rounds; ++i) {
        TruncatedSeries next = q.eval_at_series(z).truncate(horizon);
        TruncatedSeries fixed(q.r(), q.mode(), horizon);
        for (const auto& [n, c] : next.coeffs()) fixed.set_coeff(n, c);
        z = std::move(fixed);
    }
    return z;
}

// The twelve-term Laurent equation with symbolic coefficients.
inline henselian::HenselianEquation laurent_example_equation() {
    XYPolynomial q(2, ScalarMode::symbolic);
    auto add = [&](std::int64_t i1, std::int64_t i2, unsigned j, const std::string& name) {
        q.add_term(MultiIndex({i1, i2}), j, Scalar::symbol(name));
    };
    add(1, -1, 2, "a_{1,-1,2}");
    add(-1, 2, 0, "a_{-1,2,0}");
    add(0, 1, 1, "a_{0,1,1}");
    add(-1, 3, 0, "a_{-1,3,0}");
    add(0, 2, 1, "a_{0,2,1}");
    add(1, 1, 0, "a_{1,1,0}");
    add(1, 1, 2, "a_{1,1,2}");
    add(1, 2, 0, "a_{1,2,0}");
    add(2, 1, 1, "a_{2,1,1}");
    add(1, 3, 0, "a_{1,3,0}");
    add(2, 2, 1, "a_{2,2,1}");
    add(3, 1, 2, "a_{3,1,2}");
    return henselian::HenselianEquation(std::move(q));
}

// Random strongly reduced Henselian equation: every exponent >_grlex 0
// within the box [-expLo, expHi]^r, y-degree <= maxY, at least one pure
// x-term, nonzero rational coefficients.
inline henselian::HenselianEquation random_strongly_reduced(std::mt19937& rng, int r,
                                                            int maxTerms = 6, int expLo = 2,
                                                            int expHi = 3, unsigned maxY = 3) {
    std::uniform_int_distribution<int> expDist(-expLo, expHi);
    std::uniform_int_distribution<unsigned> yDist(0, maxY);
    std::uniform_int_distribution<int> coeffDist(-5, 5);
    std::uniform_int_distribution<int> termDist(2, maxTerms);
    const MultiIndex zero = MultiIndex::zero(r);
    while (true) {
        XYPolynomial q(r, ScalarMode::rational);
        const int terms = termDist(rng);
        for (int t = 0; t < terms; ++t) {
            std::vector<std::int64_t> e(static_cast<std::size_t>(r));
            do {
                for (auto& v : e) v = expDist(rng);
            } while (!grlex_less(zero, MultiIndex(e)));
            int c = coeffDist(rng);
            if (c == 0) c = 1;
            const unsigned j = (t == 0) ? 0u : yDist(rng);
            q.add_term(MultiIndex(e), j, Scalar::integer(ScalarMode::rational, c));
        }
        henselian::HenselianEquation eq(std::move(q));
        if (eq.strongly_reduced()) return eq;
    }
}

// Horizon for an equation: the largest monoid prefix within maxDegree and
// maxCount candidates (keeps segments with slow degree growth finite).
inline MultiIndex adaptive_horizon(const henselian::HenselianEquation& eq,
                                   std::int64_t maxDegree, std::size_t maxCount) {
    MultiIndex best = MultiIndex::zero(eq.r());
    MultiIndex cap = MultiIndex::zero(eq.r());
    cap[0] = maxDegree;
    std::set<MultiIndex, GrlexLess> frontier, seen;
    for (const auto& t : eq.terms())
        if (grlex_le(t.x, cap)) frontier.insert(t.x);
    std::size_t count = 0;
    while (!frontier.empty() && count < maxCount) {
        const MultiIndex n = *frontier.begin();
        frontier.erase(frontier.begin());
        if (seen.count(n)) continue;
        seen.insert(n);
        ++count;
        best = n;
        for (const auto& t : eq.terms()) {
            const MultiIndex m = n + t.x;
            if (grlex_le(m, cap) && !seen.count(m)) frontier.insert(m);
        }
    }
    return best;
}

} // namespace puiseux::testing

#endif
