#ifndef PUISEUX_WILCZYNSKI_HPP
#define PUISEUX_WILCZYNSKI_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include <puiseux/determinant.hpp>
#include <puiseux/truncated_series.hpp>
#include <puiseux/xy_polynomial.hpp>

namespace puiseux::wilczynski {

using SupportPair = std::pair<MultiIndex, unsigned>;

// Anti-lexicographic order on (x-exponent, y-degree) pairs:
// compare y-degrees first, ties by grlex on the x-exponent.
std::strong_ordering alex_cmp(const SupportPair& a, const SupportPair& b);

struct AlexLess {
    bool operator()(const SupportPair& a, const SupportPair& b) const {
        return alex_cmp(a, b) == std::strong_ordering::less;
    }
};

// Allowed monomial supports of a candidate annihilator: F for the y-positive
// part, G for the y-free part. Both strictly increasing in alex order;
// G pairs have y-degree 0 and x-degree >= 1, F pairs have y-degree >= 1.
class SupportShape {
public:
    SupportShape(int r, std::vector<SupportPair> f, std::vector<SupportPair> g);

    int r() const { return r_; }
    const std::vector<SupportPair>& F() const { return f_; }
    const std::vector<SupportPair>& G() const { return g_; }

    unsigned dy() const;      // max y-degree over F
    std::int64_t dx() const;  // max total x-degree over F and G
    // Probe depth 2*dx*dy; shapes without x-dependence still need rows up
    // to degree dy to expose the leading column entries.
    std::int64_t depth() const {
        return std::max<std::int64_t>(2 * dx() * static_cast<std::int64_t>(dy()), dy());
    }

    bool is_g_row(const MultiIndex& n) const;

    // Shape spanned by the support of a polynomial (its F u G split).
    static SupportShape of_polynomial(const XYPolynomial& p);
    // Full grid: F = all (i,j) with |i| <= dx, 1 <= j <= dy;
    // G = all (i,0) with 1 <= |i| <= dx.
    static SupportShape full_grid(int r, std::int64_t dx, unsigned dy);

private:
    int r_;
    std::vector<SupportPair> f_, g_;
};

// Read access to the (reduced) Wilczynski matrix of a series relative to a
// shape. Column (i,j) holds C^(j)_{n-i} at row n when i <= n componentwise,
// 0 otherwise; columns with j = 0 are unit row-indicators. Series powers are
// cached, so entries are O(1) lookups after the first touch per y-degree.
class WilczynskiView {
public:
    WilczynskiView(SupportShape shape, TruncatedSeries series, MultiIndex rowLimit);

    const SupportShape& shape() const { return shape_; }
    const TruncatedSeries& series() const { return series_; }
    const MultiIndex& row_limit() const { return rowLimit_; }

    Scalar entry(const MultiIndex& row, const SupportPair& col) const;

    // Rows of the reduced matrix up to the given total degree, grlex order.
    std::vector<MultiIndex> reduced_rows(std::int64_t maxDegree) const;
    // Reduced matrix with the listed rows and all F columns.
    ScalarMatrix materialize(const std::vector<MultiIndex>& rows) const;

    Scalar minor(const std::vector<MultiIndex>& rows, const std::vector<SupportPair>& cols) const;

private:
    SupportShape shape_;
    TruncatedSeries series_;
    MultiIndex rowLimit_;
    mutable std::map<unsigned, TruncatedSeries> powers_;
    const TruncatedSeries& power(unsigned j) const;
};

Scalar wilczynski_entry(const WilczynskiView& view, const MultiIndex& row, const SupportPair& col);
Scalar wilczynski_minor(const WilczynskiView& view, const std::vector<MultiIndex>& rows,
                        const std::vector<SupportPair>& cols);

struct MinorRef {
    std::vector<MultiIndex> rows;
    std::vector<SupportPair> cols;
};

struct ReconstructionResult {
    std::map<SupportPair, Scalar, AlexLess> coefficients; // support in F u G
    MinorRef used_minor;
    std::size_t rank = 0;
    MultiIndex verified_to_order;

    XYPolynomial polynomial(int r, ScalarMode mode) const;
};

struct NotAlgebraicAtDepth {
    std::int64_t depth;
    MinorRef witness;
    Scalar witness_value; // nonzero maximal-order minor inside the horizon
};

struct ConsistentWithReconstruction {
    ReconstructionResult reconstruction;
};

using AlgebraicityVerdict = std::variant<NotAlgebraicAtDepth, ConsistentWithReconstruction>;

struct ReconstructOptions {
    // When the canonical minor fails the order check, scan the remaining
    // nonzero minors of the same order before giving up.
    bool exhaustive_fallback = false;
};

// Kernel assembly from one nonzero minor: rows K, columns I, and the column
// of F adjoined as the pivot. Coefficients over I u {pivot} are the signed
// maximal minors; G coefficients follow from the constant-term relations.
// No order verification is performed here.
ReconstructionResult reconstruct_from_minor(const WilczynskiView& view,
                                            const std::vector<MultiIndex>& K,
                                            const std::vector<SupportPair>& I,
                                            const SupportPair& pivot);

// Reconstruction per the depth-limited procedure: rank of the matrix cut at
// total degree 2*dx*dy, canonical nonzero minor, Cramer assembly, constant
// terms, then the order check ord_x P(x, z_N) > N.
ReconstructionResult reconstruct(const TruncatedSeries& series, const SupportShape& shape,
                                 const ReconstructOptions& opts = {});

AlgebraicityVerdict check_algebraic(const TruncatedSeries& series, const SupportShape& shape,
                                    const ReconstructOptions& opts = {});

struct ReconstructionBounds {
    std::int64_t depth = 0;     // 2*dx*dy
    mpz_class reduced_rows;     // binom(depth + r, r) - |G|
    mpz_class deg_bound_f;      // degree bound for F coefficients
    mpz_class deg_bound_g;      // degree bound for G coefficients (worst |i|)
    mpz_class family_bound;     // bound on the number of reconstruction formulas
};

ReconstructionBounds reconstruction_bounds(std::int64_t dx, unsigned dy, int r,
                                           const std::optional<SupportShape>& shape);

} // namespace puiseux::wilczynski

#endif
