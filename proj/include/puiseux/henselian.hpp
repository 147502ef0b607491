#ifndef PUISEUX_HENSELIAN_HPP
#define PUISEUX_HENSELIAN_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include <puiseux/truncated_series.hpp>
#include <puiseux/xy_polynomial.hpp>

namespace puiseux::henselian {

struct StrongReductionCheck {
    bool ok = false;
    // Names the violated condition when not ok.
    std::string diagnosis;
};

// y = Q(x,y) is strongly reduced Henselian when w(Q) >_grlex 0 and
// Q(x,0) is not identically zero.
StrongReductionCheck is_strongly_reduced(const XYPolynomial& q);

struct EquationTerm {
    MultiIndex x;
    unsigned y;
    Scalar coeff;
};

// Right-hand side of y = Q(x,y) with its terms in canonical order
// (grlex x-exponent, then y-degree).
class HenselianEquation {
public:
    explicit HenselianEquation(XYPolynomial q);

    int r() const { return q_.r(); }
    ScalarMode mode() const { return q_.mode(); }
    const XYPolynomial& q() const { return q_; }
    const std::vector<EquationTerm>& terms() const { return terms_; }
    bool strongly_reduced() const { return strong_; }

private:
    XYPolynomial q_;
    std::vector<EquationTerm> terms_;
    bool strong_;
};

// Exponent offsets and linear coefficients bounding the outer summation of
// the closed coefficient formula: mu(n) <= sum_k lambda_k n_k.
struct FSBounds {
    MultiIndex iota0;
    std::vector<std::int64_t> lambda;
    // Operational bound, clamped below by 1.
    std::int64_t mu(const MultiIndex& n) const;
};

FSBounds fs_bounds(const HenselianEquation& eq);

// Multiplicity vector over the equation's term list.
struct MVector {
    std::vector<unsigned long> mult; // parallel to eq.terms()

    unsigned long order(const std::vector<EquationTerm>& terms) const;      // |M|
    unsigned long ynorm(const std::vector<EquationTerm>& terms) const;      // ||M||
    MultiIndex gsum(int r, const std::vector<EquationTerm>& terms) const;   // G(M)
};

// (1/m) * m! / M!, an exact natural number whenever |M| = m and
// ||M|| = m - 1. The final division asserts exactness.
mpz_class multinomial_weight(unsigned long m, const MVector& mv,
                             const std::vector<EquationTerm>& terms);

// All M with |M| = m, ||M|| = m - 1, G(M) = n, each exactly once, in the
// deterministic depth-first order over the canonical term list.
std::vector<MVector> enumerate_M(const HenselianEquation& eq, const MultiIndex& n,
                                 unsigned long m);

struct SolveOptions {
    // Cap on processed candidate indices; guards against support segments
    // that are unbounded below the horizon.
    std::size_t max_terms = 100000;
};

// Coefficients of the unique solution for all n <=_grlex horizon by grlex
// iteration over the candidate support, each c_n read off Q(x, z_n).
// Accepts every strongly reduced equation, plus polynomial equations over
// N^r exponents satisfying the classical Hensel conditions (no constant
// term at x^0, no x^0*y term, Q(x,0) of positive valuation).
TruncatedSeries hensel_solve(const HenselianEquation& eq, const MultiIndex& horizon,
                             const SolveOptions& opts = {});

// Candidate support of the solution below the horizon: the monoid generated
// by the x-exponents of Q, enumerated in grlex order by frontier expansion.
std::vector<MultiIndex> support_monoid_segment(const HenselianEquation& eq,
                                               const MultiIndex& horizon,
                                               std::size_t max_terms);

// Closed-form coefficient of the unique solution at x^n:
//   c_n = sum_{m=1}^{mu_n} (1/m) sum_{|M|=m, ||M||=m-1, G(M)=n} (m!/M!) A^M.
Scalar fs_coefficient(const HenselianEquation& eq, const MultiIndex& n);

// Classical univariate closed form for y = Q(x,y) with Q(0,0) = 0,
// dQ/dy(0,0) = 0, Q(x,0) != 0: summation up to m = 2n - 1, tightened to
// m = n when Q has no pure-y terms.
Scalar fs_univariate(const XYPolynomial& q, unsigned long n);

} // namespace puiseux::henselian

#endif
