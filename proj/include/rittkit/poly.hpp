#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rittkit/field.hpp"

namespace rittkit {

inline constexpr std::size_t kDefaultDegreeCap = 10000;

/// Dense univariate polynomial over a Field; coefficients ascending, leading one nonzero.
class Poly {
  public:
    explicit Poly(Field field = Field()) : field_(std::move(field)) {}
    Poly(Field field, std::vector<Scalar> coeffs);
    /// Rational coefficients, ascending: Poly(Q, {0, 1, 0, 1}) is x^3 + x.
    Poly(Field field, std::initializer_list<mpq_class> coeffs);

    static Poly x(const Field& field);
    static Poly constant(const Scalar& c);
    static Poly monomial(const Scalar& c, std::size_t degree);

    const Field& field() const noexcept { return field_; }
    /// -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    bool is_constant() const noexcept { return c_.size() <= 1; }
    const std::vector<Scalar>& coeffs() const noexcept { return c_; }
    /// Coefficient of x^k (zero beyond the degree).
    Scalar coeff(std::size_t k) const;
    const Scalar& lc() const;
    bool has_rational_coeffs() const;

    Scalar operator()(const Scalar& t) const;
    Poly derivative() const;
    /// The monic associate (zero stays zero).
    Poly monic() const;

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o);
    Poly& operator*=(const Scalar& s);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(Poly a, const Scalar& s) { return a *= s; }
    friend Poly operator*(const Scalar& s, Poly a) { return a *= s; }

    Poly pow(std::size_t e) const;

    friend bool operator==(const Poly& a, const Poly& b) = default;

    /// Human-readable form in the given variable, highest degree first.
    std::string to_string(const std::string& var = "x") const;

  private:
    void trim();

    Field field_;
    std::vector<Scalar> c_;
};

/// Canonical listing order: higher degree first, then larger coefficients from the top down.
bool canonical_before(const Poly& a, const Poly& b);

/// Invertible affine map a*x + b.
class LinearPoly {
  public:
    LinearPoly(Scalar a, Scalar b);
    static LinearPoly identity(const Field& field);
    static LinearPoly from_poly(const Poly& p);

    const Scalar& a() const noexcept { return a_; }
    const Scalar& b() const noexcept { return b_; }
    const Field& field() const noexcept { return a_.field(); }
    bool is_identity() const { return a_.is_one() && b_.is_zero(); }

    Poly to_poly() const;
    LinearPoly inverse() const;
    Scalar operator()(const Scalar& t) const { return a_ * t + b_; }
    /// (*this) o other.
    LinearPoly then_after(const LinearPoly& inner) const;

    friend bool operator==(const LinearPoly&, const LinearPoly&) = default;
    std::string to_string() const { return to_poly().to_string(); }

  private:
    Scalar a_, b_;
};

/// this(inner(x)) for linear maps.
inline LinearPoly compose(const LinearPoly& outer, const LinearPoly& inner) { return outer.then_after(inner); }

/// f o g, throwing ResourceError when the degree would exceed `degree_cap`.
Poly compose(const Poly& f, const Poly& g, std::size_t degree_cap = kDefaultDegreeCap);
Poly compose(const LinearPoly& l, const Poly& f);
Poly compose(const Poly& f, const LinearPoly& l);

/// m-fold iterate, iterate(f, 0) = x.
Poly iterate(const Poly& f, std::size_t m, std::size_t degree_cap = kDefaultDegreeCap);

/// Normalized Chebyshev polynomial: T(x + 1/x) = x^d + x^-d.
Poly chebyshev(std::size_t degree, const Field& field = Field());

/// l o f o l^-1.
Poly conjugate(const LinearPoly& l, const Poly& f);

/// Euclidean division over the field; divisor nonzero.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
/// a / b when b divides a exactly, nullopt otherwise.
std::optional<Poly> exact_div(const Poly& a, const Poly& b);
/// Monic gcd (zero if both are zero).
Poly gcd(const Poly& a, const Poly& b);

/// Yun decomposition: factors[i] is the squarefree product of roots of multiplicity i + 1.
/// The leading coefficient is not part of the factors.
std::vector<Poly> squarefree_decomposition(const Poly& f);
Poly squarefree_part(const Poly& f);

/// Rational roots of a polynomial with rational coefficients, ascending and distinct.
/// Throws ResourceError when the constant / leading coefficient are too large to factor.
std::vector<Scalar> rational_roots(const Poly& f);

/// Number of times (x - r) divides f.
std::size_t root_multiplicity(const Poly& f, const Scalar& r);

/// Coefficient-wise lift into a larger cyclotomic field.
Poly lift(const Poly& f, const Field& target);

/// f(x + s).
Poly taylor_shift(const Poly& f, const Scalar& s);

}  // namespace rittkit
