#ifndef PUISEUX_DETERMINANT_HPP
#define PUISEUX_DETERMINANT_HPP

#include <cstddef>
#include <vector>

#include <puiseux/scalar.hpp>

namespace puiseux {

using ScalarMatrix = std::vector<std::vector<Scalar>>;

// Exact determinant. Over polynomial entries this is fraction-free
// (Bareiss) elimination: every division is exact by the Sylvester identity.
Scalar ff_det(const ScalarMatrix& m, ScalarMode mode);

// Cofactor (Laplace) expansion, exponential; kept as an independent oracle
// for small matrices.
Scalar laplace_det(const ScalarMatrix& m, ScalarMode mode);

struct RankProfile {
    std::size_t rank = 0;
    // Row indices that increased the rank, in processing order. Greedy over
    // rows in the given order, hence the lexicographically least independent
    // row set.
    std::vector<std::size_t> pivot_rows;
    // Pivot column of each pivot row.
    std::vector<std::size_t> pivot_cols;
};

RankProfile rank_profile(const ScalarMatrix& m, ScalarMode mode);

// Lexicographically least column subset of the given size whose submatrix
// (over all rows of m) has full column rank; empty if none exists.
std::vector<std::size_t> greedy_min_columns(const ScalarMatrix& m, std::size_t want,
                                            ScalarMode mode);

ScalarMatrix submatrix(const ScalarMatrix& m, const std::vector<std::size_t>& rows,
                       const std::vector<std::size_t>& cols);

} // namespace puiseux

#endif
