#pragma once

#include <gmpxx.h>

#include <compare>
#include <memory>
#include <string>
#include <vector>

namespace rittkit {

/// Coefficient field: either Q or the cyclotomic field Q(zeta_m) = Q[z]/Phi_m(z).
class Field {
  public:
    Field();  // Q
    static Field rationals() { return Field(); }
    /// Q(zeta_m); orders 1 and 2 are rejected since they describe Q itself.
    static Field cyclotomic(unsigned order);

    bool is_rational() const noexcept { return order_ == 1; }
    unsigned order() const noexcept { return order_; }
    /// Degree over Q, i.e. Euler phi of the order.
    std::size_t dimension() const noexcept { return phi_->size() - 1; }
    /// Ascending integer coefficients of the monic cyclotomic polynomial (x - 1 for Q).
    const std::vector<mpz_class>& modulus() const noexcept { return *phi_; }
    /// Number of roots of unity in the field: 2 for Q, lcm(2, m) otherwise.
    unsigned unit_roots_order() const noexcept;

    std::string to_string() const;

    friend bool operator==(const Field& a, const Field& b) noexcept { return a.order_ == b.order_; }

  private:
    explicit Field(unsigned order, std::shared_ptr<const std::vector<mpz_class>> phi)
        : order_(order), phi_(std::move(phi)) {}

    unsigned order_;
    std::shared_ptr<const std::vector<mpz_class>> phi_;
};

/// Integer coefficients of the m-th cyclotomic polynomial, ascending.
std::vector<mpz_class> cyclotomic_polynomial(unsigned m);

/// Exact element of a Field, held in its unique reduced representation.
class Scalar {
  public:
    explicit Scalar(Field field = Field());
    Scalar(Field field, const mpq_class& q);
    Scalar(Field field, long v) : Scalar(std::move(field), mpq_class(v)) {}
    /// From a coefficient vector in powers of z; reduced modulo Phi_m.
    Scalar(Field field, std::vector<mpq_class> coeffs);

    static Scalar zeta(const Field& field);

    const Field& field() const noexcept { return field_; }
    const std::vector<mpq_class>& coeffs() const noexcept { return c_; }

    bool is_zero() const noexcept;
    bool is_one() const noexcept;
    bool is_rational() const noexcept;
    /// Requires is_rational().
    const mpq_class& rational() const;
    /// Maximal bit size over numerators and denominators.
    std::size_t height_bits() const;

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);
    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    Scalar inverse() const;
    Scalar pow(long e) const;

    friend bool operator==(const Scalar& a, const Scalar& b);
    /// Total order used for canonical sorting: lexicographic on coefficients.
    friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b);

    std::string to_string() const;

  private:
    void reduce();
    void check_same(const Scalar& o) const;

    Field field_;
    std::vector<mpq_class> c_;
};

/// All roots of unity contained in the field, starting with 1.
std::vector<Scalar> roots_of_unity(const Field& field);

/// All y in the field with y^n = c that the solver can find, sorted canonically.
/// Complete over Q; over Q(zeta_m) it finds roots of the form (root of unity) * (rational).
std::vector<Scalar> nth_roots(const Scalar& c, unsigned n);

/// Image of s under the embedding Q(zeta_m) -> Q(zeta_M), zeta_m = zeta_M^(M/m); m must divide M.
Scalar lift(const Scalar& s, const Field& target);

/// Canonical descending order used for listing solutions (larger coefficients first).
bool canonical_before(const Scalar& a, const Scalar& b);

}  // namespace rittkit
