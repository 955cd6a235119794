#pragma once

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace rittkit {

inline constexpr std::size_t kExactBitThreshold = 1000000;

/// A nonnegative integer constant: an exact value when it fits under the bit threshold,
/// otherwise an expression tree.
class ConstantExpr {
  public:
    enum class Kind { Exact, Symbolic };
    enum class Op { Literal, Add, Mul, Pow, Max, Half };

    static ConstantExpr literal(const mpz_class& v);
    static ConstantExpr add(const ConstantExpr& a, const ConstantExpr& b, std::size_t threshold = kExactBitThreshold);
    static ConstantExpr mul(const ConstantExpr& a, const ConstantExpr& b, std::size_t threshold = kExactBitThreshold);
    static ConstantExpr pow(const ConstantExpr& base, const ConstantExpr& exponent, std::size_t threshold = kExactBitThreshold);
    static ConstantExpr max(const ConstantExpr& a, const ConstantExpr& b, std::size_t threshold = kExactBitThreshold);
    /// Floor of half; `exact_half()` reports whether the child is provably even.
    static ConstantExpr half(const ConstantExpr& a, std::size_t threshold = kExactBitThreshold);

    Kind kind() const noexcept { return op_ == Op::Literal ? Kind::Exact : Kind::Symbolic; }
    Op op() const noexcept { return op_; }
    /// Exact only.
    const mpz_class& value() const;
    const std::vector<ConstantExpr>& children() const noexcept { return *kids_; }
    bool exact_half() const noexcept { return even_child_; }

    /// Estimate of log2 of the value (may be +inf for towers).
    double log2_estimate() const;
    /// Estimate of log2 log2 of the value, finite for a further level of towers.
    double log2_log2_estimate() const;
    /// Evaluate the tree exactly when every intermediate fits under `bit_limit`.
    std::optional<mpz_class> evaluate(std::size_t bit_limit = kExactBitThreshold) const;
    bool provably_even() const;

    std::string to_string() const;
    friend bool operator==(const ConstantExpr& a, const ConstantExpr& b);

  private:
    ConstantExpr() = default;
    static ConstantExpr node(Op op, std::vector<ConstantExpr> kids);
    static ConstantExpr fold(Op op, std::vector<ConstantExpr> kids, std::size_t threshold);

    Op op_ = Op::Literal;
    mpz_class value_;
    std::shared_ptr<const std::vector<ConstantExpr>> kids_ = std::make_shared<const std::vector<ConstantExpr>>();
    bool even_child_ = true;
};

/// c1(d, 2) = 2 d^4, c1(d, n) = c1(d, n - 1) * 2 * d^(4 c1(d, n - 1)).
ConstantExpr bound_c1(long d, long n, std::size_t threshold = kExactBitThreshold);

/// c(d, 1) = 1, c(d, n) = max{c(d, n - 1)^(n - 1), d^c1(d, n) / 2}.
ConstantExpr bound_c(long d, long n, std::size_t threshold = kExactBitThreshold);

/// The closed form d^(2 d^4) / 2 for the two-factor bound.
ConstantExpr bound_c_closed_form_n2(long d, std::size_t threshold = kExactBitThreshold);

}  // namespace rittkit
