#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>

#include "rittkit/bivar.hpp"
#include "rittkit/errors.hpp"

namespace rittkit {

class ParseError : public InputError {
  public:
    ParseError(const std::string& msg, std::size_t position)
        : InputError("syntax error at position " + std::to_string(position) + ": " + msg), position_(position) {}
    std::size_t position() const noexcept { return position_; }

  private:
    std::size_t position_;
};

/// Accepts "Q", "Q(zeta N)" and the same with a leading "field " keyword.
Field parse_field(std::string_view text);

/// Parses an expression in x (and optionally y) with coefficients in `field`.
/// The text may start with a header "field ...;" or "field ...\n" that overrides `field`.
/// Grammar: integers, fractions p/q, variables x y and the cyclotomic generator z,
/// operators + - * / ^ (division only by nonzero constants, exponents nonnegative integers),
/// parentheses, and implicit multiplication by juxtaposition.
BivarPoly parse_expression(std::string_view text, const Field& field);

/// Univariate polynomial in x; rejects y.
Poly parse_poly(std::string_view text, const Field& field = Field());

/// A curve G(x, y) = 0.
BivarCurve parse_curve(std::string_view text, const Field& field = Field());

/// A field element (no variables).
Scalar parse_scalar(std::string_view text, const Field& field = Field());

/// Either a univariate polynomial (no y present) or a curve.
std::variant<Poly, BivarCurve> parse_poly_or_curve(std::string_view text, const Field& field = Field());

}  // namespace rittkit
