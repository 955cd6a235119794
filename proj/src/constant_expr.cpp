#include "rittkit/constant_expr.hpp"

#include <cmath>
#include <limits>

#include "rittkit/errors.hpp"

namespace rittkit {

namespace {

double log2_mpz(const mpz_class& v) {
    if (v <= 0) return -std::numeric_limits<double>::infinity();
    long exp = 0;
    const double mant = mpz_get_d_2exp(&exp, v.get_mpz_t());
    return std::log2(mant) + static_cast<double>(exp);
}

std::size_t bits(const mpz_class& v) { return v == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2); }

// log2(2^a + 2^b).
double log2_sum(double a, double b) {
    if (std::isinf(a) && a < 0) return b;
    if (std::isinf(b) && b < 0) return a;
    const double hi = std::max(a, b), lo = std::min(a, b);
    if (std::isinf(hi)) return hi;
    return hi + std::log2(1.0 + std::exp2(lo - hi));
}

}  // namespace

ConstantExpr ConstantExpr::literal(const mpz_class& v) {
    if (v < 0) throw InputError("constants are nonnegative");
    ConstantExpr e;
    e.value_ = v;
    return e;
}

ConstantExpr ConstantExpr::node(Op op, std::vector<ConstantExpr> kids) {
    ConstantExpr e;
    e.op_ = op;
    e.kids_ = std::make_shared<const std::vector<ConstantExpr>>(std::move(kids));
    if (op == Op::Half) e.even_child_ = e.kids_->front().provably_even();
    return e;
}

ConstantExpr ConstantExpr::fold(Op op, std::vector<ConstantExpr> kids, std::size_t threshold) {
    bool all_exact = true;
    for (const auto& k : kids) all_exact = all_exact && k.kind() == Kind::Exact;
    if (all_exact) {
        const mpz_class& a = kids[0].value();
        switch (op) {
            case Op::Add: {
                const mpz_class r = a + kids[1].value();
                if (bits(r) <= threshold) return literal(r);
                break;
            }
            case Op::Mul:
                if (bits(a) + bits(kids[1].value()) <= threshold + 1) {
                    const mpz_class r = a * kids[1].value();
                    if (bits(r) <= threshold) return literal(r);
                }
                break;
            case Op::Pow: {
                const mpz_class& e = kids[1].value();
                if (a <= 1 || e == 0) return literal(e == 0 ? mpz_class(1) : a);
                const double est = log2_mpz(a) * e.get_d();
                if (e.fits_ulong_p() && est <= static_cast<double>(threshold) + 1) {
                    mpz_class r;
                    mpz_pow_ui(r.get_mpz_t(), a.get_mpz_t(), e.get_ui());
                    if (bits(r) <= threshold) return literal(r);
                }
                break;
            }
            case Op::Max:
                return literal(a >= kids[1].value() ? a : kids[1].value());
            case Op::Half: {
                mpz_class r;
                mpz_fdiv_q_2exp(r.get_mpz_t(), a.get_mpz_t(), 1);
                ConstantExpr out = literal(r);
                return out;
            }
            case Op::Literal:
                break;
        }
    }
    return node(op, std::move(kids));
}

ConstantExpr ConstantExpr::add(const ConstantExpr& a, const ConstantExpr& b, std::size_t t) { return fold(Op::Add, {a, b}, t); }
ConstantExpr ConstantExpr::mul(const ConstantExpr& a, const ConstantExpr& b, std::size_t t) { return fold(Op::Mul, {a, b}, t); }
ConstantExpr ConstantExpr::pow(const ConstantExpr& a, const ConstantExpr& b, std::size_t t) { return fold(Op::Pow, {a, b}, t); }
ConstantExpr ConstantExpr::max(const ConstantExpr& a, const ConstantExpr& b, std::size_t t) { return fold(Op::Max, {a, b}, t); }
ConstantExpr ConstantExpr::half(const ConstantExpr& a, std::size_t t) { return fold(Op::Half, {a}, t); }

const mpz_class& ConstantExpr::value() const {
    if (kind() != Kind::Exact) throw Error("symbolic constant has no exact value");
    return value_;
}

bool ConstantExpr::provably_even() const {
    const auto& k = children();
    switch (op_) {
        case Op::Literal:
            return mpz_even_p(value_.get_mpz_t()) != 0;
        case Op::Add:
            return k[0].provably_even() && k[1].provably_even();
        case Op::Mul:
            return k[0].provably_even() || k[1].provably_even();
        case Op::Pow:
            return k[0].provably_even() && !(k[1].kind() == Kind::Exact && k[1].value() == 0);
        case Op::Max:
            return k[0].provably_even() && k[1].provably_even();
        case Op::Half:
            return false;
    }
    return false;
}

double ConstantExpr::log2_estimate() const {
    const auto& k = children();
    switch (op_) {
        case Op::Literal:
            return log2_mpz(value_);
        case Op::Add:
            return log2_sum(k[0].log2_estimate(), k[1].log2_estimate());
        case Op::Mul:
            return k[0].log2_estimate() + k[1].log2_estimate();
        case Op::Pow:
            return k[0].log2_estimate() * std::exp2(k[1].log2_estimate());
        case Op::Max:
            return std::max(k[0].log2_estimate(), k[1].log2_estimate());
        case Op::Half:
            return k[0].log2_estimate() - 1.0;
    }
    return 0;
}

double ConstantExpr::log2_log2_estimate() const {
    const auto& k = children();
    switch (op_) {
        case Op::Pow:
            return std::log2(k[0].log2_estimate()) + k[1].log2_estimate();
        case Op::Mul: {
            const double la = k[0].log2_estimate(), lb = k[1].log2_estimate();
            if (std::isfinite(la) && std::isfinite(lb)) return std::log2(la + lb);
            return log2_sum(k[0].log2_log2_estimate(), k[1].log2_log2_estimate());
        }
        case Op::Max:
            return std::max(k[0].log2_log2_estimate(), k[1].log2_log2_estimate());
        case Op::Half:
        case Op::Add:
        case Op::Literal:
            break;
    }
    const double l = log2_estimate();
    if (std::isinf(l) && l > 0) {
        // Only reached for sums and halves of towers; dominated by the largest child.
        double best = -std::numeric_limits<double>::infinity();
        for (const auto& c : k) best = std::max(best, c.log2_log2_estimate());
        return best;
    }
    return std::log2(l);
}

std::optional<mpz_class> ConstantExpr::evaluate(std::size_t bit_limit) const {
    if (op_ == Op::Literal) return value_;
    std::vector<ConstantExpr> vals;
    for (const auto& c : children()) {
        auto v = c.evaluate(bit_limit);
        if (!v) return std::nullopt;
        vals.push_back(literal(*v));
    }
    const ConstantExpr r = fold(op_, std::move(vals), bit_limit);
    if (r.kind() != Kind::Exact) return std::nullopt;
    return r.value();
}

std::string ConstantExpr::to_string() const {
    const auto& k = children();
    switch (op_) {
        case Op::Literal:
            return value_.get_str();
        case Op::Add:
            return "(" + k[0].to_string() + " + " + k[1].to_string() + ")";
        case Op::Mul:
            return "(" + k[0].to_string() + " * " + k[1].to_string() + ")";
        case Op::Pow:
            return "(" + k[0].to_string() + ")^(" + k[1].to_string() + ")";
        case Op::Max:
            return "max{" + k[0].to_string() + ", " + k[1].to_string() + "}";
        case Op::Half:
            return (even_child_ ? "(" : "floor(") + k[0].to_string() + " / 2)";
    }
    return {};
}

bool operator==(const ConstantExpr& a, const ConstantExpr& b) {
    if (a.op_ != b.op_) return false;
    if (a.op_ == ConstantExpr::Op::Literal) return a.value_ == b.value_;
    return *a.kids_ == *b.kids_;
}

ConstantExpr bound_c1(long d, long n, std::size_t threshold) {
    if (d < 2 || n < 2) throw InputError("bound_c1 needs d >= 2 and n >= 2");
    const ConstantExpr D = ConstantExpr::literal(d), two = ConstantExpr::literal(2), four = ConstantExpr::literal(4);
    ConstantExpr c = ConstantExpr::mul(two, ConstantExpr::pow(D, four, threshold), threshold);
    for (long k = 3; k <= n; ++k) {
        const ConstantExpr e = ConstantExpr::mul(four, c, threshold);
        c = ConstantExpr::mul(ConstantExpr::mul(c, two, threshold), ConstantExpr::pow(D, e, threshold), threshold);
    }
    return c;
}

ConstantExpr bound_c(long d, long n, std::size_t threshold) {
    if (d < 2 || n < 1) throw InputError("bound_c needs d >= 2 and n >= 1");
    ConstantExpr c = ConstantExpr::literal(1);
    for (long k = 2; k <= n; ++k) {
        const ConstantExpr left = ConstantExpr::pow(c, ConstantExpr::literal(k - 1), threshold);
        const ConstantExpr right = ConstantExpr::half(ConstantExpr::pow(ConstantExpr::literal(d), bound_c1(d, k, threshold), threshold), threshold);
        c = ConstantExpr::max(left, right, threshold);
    }
    return c;
}

ConstantExpr bound_c_closed_form_n2(long d, std::size_t threshold) {
    const ConstantExpr D = ConstantExpr::literal(d);
    const ConstantExpr e = ConstantExpr::mul(ConstantExpr::literal(2), ConstantExpr::pow(D, ConstantExpr::literal(4), threshold), threshold);
    return ConstantExpr::half(ConstantExpr::pow(D, e, threshold), threshold);
}

}  // namespace rittkit
