#ifndef PUISEUX_TRUNCATED_SERIES_HPP
#define PUISEUX_TRUNCATED_SERIES_HPP

#include <map>
#include <optional>
#include <string>

#include <puiseux/multi_index.hpp>
#include <puiseux/scalar.hpp>

namespace puiseux {

// Finitely many known coefficients of a series, together with an explicit
// grlex trust bound: indices <=_grlex bound are exact, indices beyond are
// unknown (which is never the same as zero). A disengaged bound means the
// series is known exactly (polynomial data).
//
// All ring operations propagate the tightest valid bound.
class TruncatedSeries {
public:
    using CoeffMap = std::map<MultiIndex, Scalar, GrlexLess>;

    TruncatedSeries(int r, ScalarMode mode, std::optional<MultiIndex> bound)
        : r_(r), mode_(mode), bound_(std::move(bound)) {}

    static TruncatedSeries zero(int r, ScalarMode mode) {
        return TruncatedSeries(r, mode, std::nullopt);
    }

    int r() const { return r_; }
    ScalarMode mode() const { return mode_; }
    const std::optional<MultiIndex>& bound() const { return bound_; }
    bool is_exact() const { return !bound_.has_value(); }
    const CoeffMap& coeffs() const { return c_; }
    bool is_stored_zero() const { return c_.empty(); }

    // True when n lies inside the trusted window.
    bool determined(const MultiIndex& n) const;
    // Coefficient at n; throws truncation_error beyond the bound.
    Scalar coeff(const MultiIndex& n) const;
    void set_coeff(const MultiIndex& n, const Scalar& v);

    // Smallest index that any (known or unknown) term can have.
    // Stored minimum if present, otherwise the bound itself.
    std::optional<MultiIndex> valuation_lower_bound() const;
    // Valuation of the known part (nullopt when no stored terms).
    std::optional<MultiIndex> known_valuation() const;

    TruncatedSeries operator+(const TruncatedSeries& o) const;
    TruncatedSeries operator-(const TruncatedSeries& o) const;
    TruncatedSeries operator*(const TruncatedSeries& o) const;
    TruncatedSeries scale(const Scalar& k) const;
    TruncatedSeries mul_monomial(const MultiIndex& shift) const;
    // j >= 1; bound propagated through the iterated products.
    TruncatedSeries power(unsigned j) const;

    // Restrict the trusted window (never extends it).
    TruncatedSeries truncate(const MultiIndex& newBound) const;
    // The polynomial prefix with indices <=_grlex k, as exact data.
    TruncatedSeries prefix(const MultiIndex& k) const;

    bool all_indices_positive_grlex() const;
    bool all_indices_nonnegative() const;

    std::string str() const;

private:
    int r_;
    ScalarMode mode_;
    CoeffMap c_;
    std::optional<MultiIndex> bound_;

    static std::optional<MultiIndex> min_bound(const std::optional<MultiIndex>& a,
                                               const std::optional<MultiIndex>& b);
};

// C_n^(j): coefficient of x^n in y^j, by multinomial expansion. Requires
// the series support to lie in N^r with every index of degree >= 1; for
// j = 0 returns 1 exactly when n = 0.
Scalar series_power_coeff(const TruncatedSeries& y, unsigned j, const MultiIndex& n);

} // namespace puiseux

#endif
