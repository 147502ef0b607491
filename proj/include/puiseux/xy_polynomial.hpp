#ifndef PUISEUX_XY_POLYNOMIAL_HPP
#define PUISEUX_XY_POLYNOMIAL_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <puiseux/multi_index.hpp>
#include <puiseux/scalar.hpp>
#include <puiseux/truncated_series.hpp>

namespace puiseux {

// Key of one term a * x^i * y^j. Laurent x-exponents are allowed.
struct XYKey {
    MultiIndex x;
    unsigned y = 0;

    bool operator==(const XYKey& o) const { return y == o.y && x == o.x; }
};

struct XYKeyLess {
    bool operator()(const XYKey& a, const XYKey& b) const {
        const auto c = grlex_cmp(a.x, b.x);
        if (c != std::strong_ordering::equal) return c == std::strong_ordering::less;
        return a.y < b.y;
    }
};

// Sparse polynomial in y over Laurent monomials in x: finite map
// (x-exponent, y-degree) -> Scalar with no stored zeros.
class XYPolynomial {
public:
    using TermMap = std::map<XYKey, Scalar, XYKeyLess>;

    XYPolynomial(int r, ScalarMode mode) : r_(r), mode_(mode) {}

    int r() const { return r_; }
    ScalarMode mode() const { return mode_; }
    const TermMap& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    std::size_t size() const { return t_.size(); }

    void add_term(const MultiIndex& x, unsigned y, const Scalar& c);
    Scalar coeff(const MultiIndex& x, unsigned y) const;

    XYPolynomial operator+(const XYPolynomial& o) const;
    XYPolynomial operator-(const XYPolynomial& o) const;
    XYPolynomial operator*(const XYPolynomial& o) const;
    XYPolynomial scale(const Scalar& k) const;
    XYPolynomial mul_monomial(const MultiIndex& xshift, unsigned yshift) const;

    unsigned deg_y() const;               // 0 for the zero polynomial
    std::int64_t deg_x_total() const;     // max total x-degree, 0 for zero
    // Smallest grlex x-exponent over all terms; nullopt for zero.
    std::optional<MultiIndex> w_valuation() const;
    bool has_negative_x_exponent() const;

    // pi_i(y): the x^i slice as a dense y-polynomial (low to high degree).
    std::vector<Scalar> y_slice(const MultiIndex& i) const;
    // Map i -> pi_i, keyed in grlex order.
    std::map<MultiIndex, std::vector<Scalar>, GrlexLess> pi_map() const;

    XYPolynomial derivative_y() const;

    // P(x, c + x^delta * y), exact.
    XYPolynomial subst_y_affine(const Scalar& c, const MultiIndex& delta) const;
    // P(x, z) for an exact polynomial z given by its coefficient map.
    XYPolynomial subst_y_exact_series(const TruncatedSeries& z) const;
    // Evaluation P(x, z) as a truncated series (bound propagated).
    TruncatedSeries eval_at_series(const TruncatedSeries& z) const;

    bool operator==(const XYPolynomial& o) const { return r_ == o.r_ && t_ == o.t_; }

    std::string str() const;

private:
    int r_;
    ScalarMode mode_;
    TermMap t_;
};

struct SubstitutionResult {
    XYPolynomial poly;
    // Trust bound on the x-exponents of the result; disengaged when exact.
    std::optional<MultiIndex> bound;
};

// P(x, z + x^s * y) with the truncation window of z propagated onto the
// result: every kept term has its x-exponent inside the returned bound.
SubstitutionResult xy_substitute(const XYPolynomial& p, const TruncatedSeries& z,
                                 const MultiIndex& s);

// Dense evaluation of a y-slice polynomial at a scalar.
Scalar eval_y_poly(const std::vector<Scalar>& pi, const Scalar& at, ScalarMode mode);
// Derivative of a y-slice polynomial evaluated at a scalar.
Scalar eval_y_poly_derivative(const std::vector<Scalar>& pi, const Scalar& at, ScalarMode mode);

} // namespace puiseux

#endif
