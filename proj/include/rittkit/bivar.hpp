#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rittkit/poly.hpp"

namespace rittkit {

enum class Var { X, Y };

/// Polynomial in K[x][y], stored as coefficients of y^j that are polynomials in x.
class BivarPoly {
  public:
    explicit BivarPoly(Field field = Field()) : field_(std::move(field)) {}
    BivarPoly(Field field, std::vector<Poly> y_coeffs);

    /// G(x, y) = p(x).
    static BivarPoly from_x(const Poly& p);
    /// G(x, y) = p(y).
    static BivarPoly from_y(const Poly& p);
    /// y - h(x).
    static BivarPoly graph(const Poly& h);
    /// c * x^i * y^j.
    static BivarPoly term(const Scalar& c, std::size_t i, std::size_t j);

    const Field& field() const noexcept { return field_; }
    bool is_zero() const noexcept { return rows_.empty(); }
    int degree_y() const noexcept { return static_cast<int>(rows_.size()) - 1; }
    int degree_x() const noexcept;
    int degree(Var v) const noexcept { return v == Var::X ? degree_x() : degree_y(); }
    /// Coefficient of y^j, a polynomial in x.
    Poly y_coeff(std::size_t j) const;
    const std::vector<Poly>& rows() const noexcept { return rows_; }
    Scalar coeff(std::size_t i, std::size_t j) const { return y_coeff(j).coeff(i); }

    Scalar operator()(const Scalar& x, const Scalar& y) const;
    /// Substitute x = x0, leaving a polynomial in y.
    Poly at_x(const Scalar& x0) const;
    /// Substitute y = y0, leaving a polynomial in x.
    Poly at_y(const Scalar& y0) const;
    /// Exchange the roles of x and y.
    BivarPoly swapped() const;
    BivarPoly derivative_y() const;

    BivarPoly operator-() const;
    BivarPoly& operator+=(const BivarPoly& o);
    BivarPoly& operator-=(const BivarPoly& o);
    friend BivarPoly operator+(BivarPoly a, const BivarPoly& b) { return a += b; }
    friend BivarPoly operator-(BivarPoly a, const BivarPoly& b) { return a -= b; }
    friend BivarPoly operator*(const BivarPoly& a, const BivarPoly& b);
    friend BivarPoly operator*(BivarPoly a, const Scalar& s);

    friend bool operator==(const BivarPoly&, const BivarPoly&) = default;

    std::string to_string() const;

  private:
    void trim();

    Field field_;
    std::vector<Poly> rows_;
};

/// Resultant of two univariate polynomials via the Sylvester determinant.
/// `formal_a` / `formal_b` override the degrees used to build the matrix.
Scalar resultant(const Poly& a, const Poly& b, std::optional<std::size_t> formal_a = std::nullopt,
                 std::optional<std::size_t> formal_b = std::nullopt);

/// Resultant with respect to `var` of two bivariate polynomials; a polynomial in the
/// other variable, computed by fraction-free (Bareiss) elimination of the Sylvester matrix.
Poly resultant_elim(const BivarPoly& g, const BivarPoly& h, Var var);

/// Content with respect to y: monic gcd in K[x] of the y-coefficients.
Poly content_y(const BivarPoly& p);
/// Exact quotient a / b in K[x][y]; nullopt when b does not divide a.
std::optional<BivarPoly> exact_div(const BivarPoly& a, const BivarPoly& b);
/// gcd in K[x][y], up to a scalar.
BivarPoly gcd(const BivarPoly& a, const BivarPoly& b);
/// Product of the distinct irreducible factors, up to a scalar.
BivarPoly squarefree_part(const BivarPoly& p);

/// A plane curve G(x, y) = 0, with G scaled so its leading term (highest x-degree, then
/// highest y-degree) has coefficient 1. Equality is equality of curves up to scalars.
class BivarCurve {
  public:
    explicit BivarCurve(const BivarPoly& g);

    const BivarPoly& poly() const noexcept { return g_; }
    const Field& field() const noexcept { return g_.field(); }
    int degree_x() const noexcept { return g_.degree_x(); }
    int degree_y() const noexcept { return g_.degree_y(); }
    bool contains(const Scalar& x, const Scalar& y) const { return g_(x, y).is_zero(); }

    friend bool operator==(const BivarCurve&, const BivarCurve&) = default;
    std::string to_string() const { return g_.to_string(); }

  private:
    BivarPoly g_;
};

}  // namespace rittkit
