#ifndef PUISEUX_REDUCTION_HPP
#define PUISEUX_REDUCTION_HPP

#include <map>
#include <optional>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include <puiseux/henselian.hpp>
#include <puiseux/truncated_series.hpp>
#include <puiseux/xy_polynomial.hpp>

namespace puiseux::reduction {

// P(x, z_k + x^{S(k)} y) together with its valuation and x-slice map.
struct ShiftedPolynomial {
    XYPolynomial pk;
    MultiIndex k;
    MultiIndex ik; // w(pk)
    std::map<MultiIndex, std::vector<Scalar>, GrlexLess> pi;
};

// Exact: the prefix z_k is a polynomial, so no truncation is involved in
// the substitution itself. Requires the series to be known through k.
ShiftedPolynomial shift(const XYPolynomial& p, const TruncatedSeries& series, const MultiIndex& k);

// First index where the valuation increments of the shifted polynomials
// stabilize, with the unit derivative coefficient at that point.
struct SeparationResult {
    MultiIndex k0;
    Scalar omega0; // nonzero
    MultiIndex ik0;

    // Valuation of P_k for any k >=_grlex k0 under the stabilized law
    // i_{S(k)} = i_k - S(k) + S^2(k).
    MultiIndex ik_at(const MultiIndex& k) const;
};

struct RootIsPolynomial {
    MultiIndex k; // z_k is an exact root and the series carries nothing beyond
};

struct NotASimpleRoot {
    MultiIndex at;
    std::string reason;
};

using SeparationOutcome = std::variant<SeparationResult, RootIsPolynomial, NotASimpleRoot>;

SeparationOutcome find_separation(const XYPolynomial& p, const TruncatedSeries& series);

struct PolynomialRootDetected {
    MultiIndex k; // z_{S(k)} solves P
};

using HenselianOutcome = std::variant<henselian::HenselianEquation, PolynomialRootDetected>;

// Normalization of P_k to the fixed-point form y = Q(x,y):
//   P_k(x, y + c_{S(k)}) / (-omega0 x^{i_k}) = -y + Q(x,y).
// Requires k >_grlex k0 and the series known through S(k).
HenselianOutcome to_henselian(const XYPolynomial& p, const TruncatedSeries& series,
                              const MultiIndex& k, const SeparationResult& sep);

// Closed form of the same coefficients directly from the a_{i,j} and the
// prefix, bypassing the substitution route:
//   b_{l,m} = (-1/omega0) sum a_{i,j} sum_{|L|=j-m, G(L)=l+i_k-mS(k)-i}
//             (j!/(m! L!)) C^L.
std::map<XYKey, Scalar, XYKeyLess> blm_coefficients(const XYPolynomial& p,
                                                    const TruncatedSeries& series,
                                                    const MultiIndex& k,
                                                    const SeparationResult& sep);

struct ContinueOptions {
    // Waives the |k| >= 2*dx*dy + 1 guarantee threshold.
    bool best_effort = false;
};

using Continuation = std::vector<std::pair<MultiIndex, Scalar>>;
using ContinueOutcome = std::variant<Continuation, PolynomialRootDetected>;

// Coefficients of y0 at the `count` grlex-next indices of N^r beyond S(k),
// computed by the closed coefficient formula over the derived equation.
ContinueOutcome continue_coefficients(const XYPolynomial& p, const TruncatedSeries& series,
                                      const MultiIndex& k, const SeparationResult& sep,
                                      std::size_t count, const ContinueOptions& opts = {});

// Change of variables (x_1,...,x_r) -> (u_1,...,u_r) with
// x_k = u_k^p u_{k+1}^{p q_k} ... u_r^{p q_k ... q_{r-1}} and the pullback
// factor u^m absorbing the denominators introduced by u^{n0} u_r^{-1} y.
struct RamifiedChart {
    std::int64_t p = 1;
    std::vector<std::int64_t> q; // r-1 entries
    MultiIndex n0;

    int r() const { return n0.r(); }
    MultiIndex m(unsigned dy) const;
    // Exponent vector of x_k (0-based) in the u variables.
    MultiIndex x_image(int k) const;
};

XYPolynomial ramified_substitute(const XYPolynomial& pt, const RamifiedChart& chart);

// Necessary mod-p congruences on (k1, k2, j) for membership in the support
// of the transformed polynomial; r = 2 only.
struct R2SupportPredicate {
    std::int64_t p, q1, n1, n2, dy;
    bool operator()(std::int64_t k1, std::int64_t k2, std::int64_t j) const;
};

R2SupportPredicate support_constraints_r2(const RamifiedChart& chart, unsigned dy);

struct EisensteinWitness {
    mpz_class delta0;
    mpz_class delta;
    MultiIndex verified_horizon;
};

struct EisensteinOptions {
    // Supplied unit value when the reconstruction pipeline is bypassed.
    std::optional<mpz_class> omega;
};

// Witness (delta0, delta) with delta0 * delta^|n| * c_n integral, verified
// through the horizon. delta0 clears the prefix denominators; delta is
// |omega0|^M2 for the annihilator reconstructed from the scaled series.
EisensteinWitness eisenstein_witness(const TruncatedSeries& series, std::int64_t dx, unsigned dy,
                                     const MultiIndex& horizon, const EisensteinOptions& opts = {});

// First index violating delta0 * delta^|n| * c_n in Z, if any.
std::optional<MultiIndex> verify_eisenstein(const TruncatedSeries& series, const mpz_class& delta0,
                                            const mpz_class& delta, const MultiIndex& horizon);

struct ParamRatioBounds {
    mpz_class m1;
    mpz_class m2;
    MultiIndex k;
};

ParamRatioBounds param_ratio_bounds(std::int64_t dx, unsigned dy, int r);

} // namespace puiseux::reduction

#endif
