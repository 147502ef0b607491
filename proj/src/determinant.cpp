#include <puiseux/determinant.hpp>

#include <puiseux/errors.hpp>

namespace puiseux {

namespace {

void check_rect(const ScalarMatrix& m, const char* where) {
    if (m.empty()) return;
    const std::size_t cols = m.front().size();
    for (const auto& row : m)
        if (row.size() != cols) throw dimension_error(std::string(where) + ": ragged matrix");
}

} // namespace

Scalar ff_det(const ScalarMatrix& in, ScalarMode mode) {
    check_rect(in, "ff_det");
    const std::size_t n = in.size();
    if (n == 0) return Scalar::one(mode);
    if (in.front().size() != n) throw dimension_error("ff_det: matrix not square");
    ScalarMatrix m = in;
    bool negate = false;
    Scalar prev = Scalar::one(mode);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t p = k;
        while (p < n && m[p][k].is_zero()) ++p;
        if (p == n) return Scalar::zero(mode);
        if (p != k) {
            std::swap(m[p], m[k]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            m[i][k] = Scalar::zero(mode);
        }
        prev = m[k][k];
    }
    Scalar det = m[n - 1][n - 1];
    return negate ? -det : det;
}

Scalar laplace_det(const ScalarMatrix& in, ScalarMode mode) {
    check_rect(in, "laplace_det");
    const std::size_t n = in.size();
    if (n == 0) return Scalar::one(mode);
    if (in.front().size() != n) throw dimension_error("laplace_det: matrix not square");
    if (n == 1) return in[0][0];
    Scalar acc = Scalar::zero(mode);
    for (std::size_t j = 0; j < n; ++j) {
        if (in[0][j].is_zero()) continue;
        ScalarMatrix minor;
        minor.reserve(n - 1);
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<Scalar> row;
            row.reserve(n - 1);
            for (std::size_t c = 0; c < n; ++c)
                if (c != j) row.push_back(in[i][c]);
            minor.push_back(std::move(row));
        }
        Scalar term = in[0][j] * laplace_det(minor, mode);
        acc = (j % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

namespace {

// Fraction-free echelon accumulator. Incoming rows are reduced against the
// pivots found so far with the one-step division chain; entries stay equal
// to minors of the original matrix, so the divisions are exact.
struct Echelon {
    ScalarMode mode;
    std::vector<std::vector<Scalar>> rows;
    std::vector<std::size_t> cols;
    std::vector<Scalar> pivots; // pivot value of each echelon row

    explicit Echelon(ScalarMode m) : mode(m) {}

    // Reduces v in place; returns the pivot column if v extends the rank.
    std::optional<std::size_t> absorb(std::vector<Scalar> v) {
        for (std::size_t t = 0; t < rows.size(); ++t) {
            if (v[cols[t]].is_zero()) continue;
            const Scalar& d = pivots[t];
            const Scalar prev = (t == 0) ? Scalar::one(mode) : pivots[t - 1];
            const Scalar f = v[cols[t]];
            for (std::size_t j = 0; j < v.size(); ++j)
                v[j] = (v[j] * d - f * rows[t][j]) / prev;
        }
        for (std::size_t j = 0; j < v.size(); ++j) {
            if (!v[j].is_zero()) {
                pivots.push_back(v[j]);
                cols.push_back(j);
                rows.push_back(std::move(v));
                return cols.back();
            }
        }
        return std::nullopt;
    }
};

} // namespace

RankProfile rank_profile(const ScalarMatrix& m, ScalarMode mode) {
    check_rect(m, "rank_profile");
    RankProfile out;
    Echelon ech(mode);
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (auto col = ech.absorb(m[i])) {
            out.pivot_rows.push_back(i);
            out.pivot_cols.push_back(*col);
            ++out.rank;
        }
    }
    return out;
}

std::vector<std::size_t> greedy_min_columns(const ScalarMatrix& m, std::size_t want,
                                            ScalarMode mode) {
    check_rect(m, "greedy_min_columns");
    std::vector<std::size_t> chosen;
    if (m.empty()) return chosen;
    const std::size_t nrows = m.size(), ncols = m.front().size();
    Echelon ech(mode);
    for (std::size_t j = 0; j < ncols && chosen.size() < want; ++j) {
        std::vector<Scalar> colVec;
        colVec.reserve(nrows);
        for (std::size_t i = 0; i < nrows; ++i) colVec.push_back(m[i][j]);
        if (ech.absorb(std::move(colVec))) chosen.push_back(j);
    }
    if (chosen.size() < want) chosen.clear();
    return chosen;
}

ScalarMatrix submatrix(const ScalarMatrix& m, const std::vector<std::size_t>& rows,
                       const std::vector<std::size_t>& cols) {
    ScalarMatrix out;
    out.reserve(rows.size());
    for (std::size_t i : rows) {
        std::vector<Scalar> row;
        row.reserve(cols.size());
        for (std::size_t j : cols) row.push_back(m[i][j]);
        out.push_back(std::move(row));
    }
    return out;
}

} // namespace puiseux
