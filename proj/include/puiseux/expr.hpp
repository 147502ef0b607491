#ifndef PUISEUX_EXPR_HPP
#define PUISEUX_EXPR_HPP

#include <string>

#include <puiseux/xy_polynomial.hpp>

namespace puiseux {

// Expression grammar over symbols, integers, rationals p/q, x[i], y,
// +, -, *, /, ^ and parentheses. Division is restricted to scalar-valued
// divisors. The scalar mode is deduced: any symbol makes the whole
// expression symbolic.
XYPolynomial parse_polynomial(const std::string& text, int r);

// Same grammar with x[i] and y rejected.
Scalar parse_scalar(const std::string& text, int r, std::optional<ScalarMode> mode = {});

// Deduced mode of an expression without evaluating it.
ScalarMode deduce_mode(const std::string& text);

} // namespace puiseux

#endif
