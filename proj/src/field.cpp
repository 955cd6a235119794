#include "rittkit/field.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <sstream>

#include "rittkit/errors.hpp"

namespace rittkit {

namespace {

using ZVec = std::vector<mpz_class>;
using QVec = std::vector<mpq_class>;

void trim(QVec& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
}

// Exact division of integer polynomials (divisor monic).
ZVec zdiv_monic(ZVec num, const ZVec& den) {
    const std::size_t dn = den.size() - 1;
    if (num.size() < den.size()) return {};
    ZVec q(num.size() - dn, 0);
    for (std::size_t k = num.size(); k-- > dn;) {
        mpz_class t = num[k];
        q[k - dn] = t;
        if (t == 0) continue;
        for (std::size_t i = 0; i <= dn; ++i) num[k - dn + i] -= t * den[i];
    }
    return q;
}

QVec qmul(const QVec& a, const QVec& b) {
    if (a.empty() || b.empty()) return {};
    QVec r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    trim(r);
    return r;
}

QVec qsub(QVec a, const QVec& b) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    trim(a);
    return a;
}

void qdivmod(QVec a, const QVec& b, QVec& q, QVec& r) {
    trim(a);
    q.clear();
    if (a.size() < b.size()) {
        r = std::move(a);
        return;
    }
    q.assign(a.size() - b.size() + 1, 0);
    const mpq_class& lb = b.back();
    for (std::size_t k = a.size(); k-- >= b.size();) {
        if (a[k] == 0) continue;
        mpq_class t = a[k] / lb;
        q[k - (b.size() - 1)] = t;
        for (std::size_t i = 0; i < b.size(); ++i) a[k - (b.size() - 1) + i] -= t * b[i];
        if (k == b.size() - 1) break;
    }
    trim(a);
    r = std::move(a);
}

bool exact_integer_root(const mpz_class& v, unsigned n, mpz_class& out) {
    if (v < 0) return false;
    mpz_class r;
    int exact = mpz_root(r.get_mpz_t(), v.get_mpz_t(), n);
    if (!exact) return false;
    out = r;
    return true;
}

// Real n-th roots of a rational.
std::vector<mpq_class> rational_nth_roots(const mpq_class& c, unsigned n) {
    if (c == 0) return {mpq_class(0)};
    mpq_class a = abs(c);
    mpz_class rn, rd;
    if (!exact_integer_root(a.get_num(), n, rn) || !exact_integer_root(a.get_den(), n, rd)) return {};
    mpq_class r(rn, rd);
    r.canonicalize();
    if (c > 0) {
        if (n % 2 == 0) return {r, -r};
        return {r};
    }
    if (n % 2 == 1) return {-r};
    return {};
}

}  // namespace

std::vector<mpz_class> cyclotomic_polynomial(unsigned m) {
    if (m == 0) throw InputError("cyclotomic order must be positive");
    ZVec num(m + 1, 0);
    num[0] = -1;
    num[m] = 1;
    for (unsigned d = 1; d < m; ++d) {
        if (m % d == 0) num = zdiv_monic(num, cyclotomic_polynomial(d));
    }
    return num;
}

Field::Field() : order_(1), phi_(std::make_shared<const ZVec>(ZVec{-1, 1})) {}

Field Field::cyclotomic(unsigned order) {
    if (order == 1 || order == 2) return Field();
    if (order == 0) throw InputError("cyclotomic order must be positive");
    return Field(order, std::make_shared<const ZVec>(cyclotomic_polynomial(order)));
}

unsigned Field::unit_roots_order() const noexcept {
    if (order_ == 1) return 2;
    return order_ % 2 == 0 ? order_ : 2 * order_;
}

std::string Field::to_string() const {
    if (order_ == 1) return "Q";
    return "Q(zeta " + std::to_string(order_) + ")";
}

Scalar::Scalar(Field field) : field_(std::move(field)), c_(field_.dimension(), 0) {}

Scalar::Scalar(Field field, const mpq_class& q) : Scalar(std::move(field)) {
    c_[0] = q;
    c_[0].canonicalize();
}

Scalar::Scalar(Field field, std::vector<mpq_class> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) {
    reduce();
}

Scalar Scalar::zeta(const Field& field) {
    if (field.is_rational()) throw InputError("the generator z requires a cyclotomic field");
    return Scalar(field, QVec{0, 1});
}

void Scalar::reduce() {
    const auto& phi = field_.modulus();
    const std::size_t dim = phi.size() - 1;
    if (field_.is_rational()) {
        // Q is Q[x]/(x - 1): collapse by evaluation at 1.
        mpq_class s = 0;
        for (auto& v : c_) s += v;
        s.canonicalize();
        c_.assign(1, s);
        return;
    }
    for (std::size_t k = c_.size(); k-- > dim;) {
        if (c_[k] == 0) continue;
        mpq_class t = c_[k];
        for (std::size_t i = 0; i <= dim; ++i) c_[k - dim + i] -= t * phi[i];
    }
    c_.resize(dim, 0);
    for (auto& v : c_) v.canonicalize();
}

void Scalar::check_same(const Scalar& o) const {
    if (!(field_ == o.field_))
        throw InputError("field mismatch: " + field_.to_string() + " vs " + o.field_.to_string());
}

bool Scalar::is_zero() const noexcept {
    return std::all_of(c_.begin(), c_.end(), [](const mpq_class& v) { return v == 0; });
}

bool Scalar::is_one() const noexcept {
    if (c_[0] != 1) return false;
    return std::all_of(c_.begin() + 1, c_.end(), [](const mpq_class& v) { return v == 0; });
}

bool Scalar::is_rational() const noexcept {
    return std::all_of(c_.begin() + 1, c_.end(), [](const mpq_class& v) { return v == 0; });
}

const mpq_class& Scalar::rational() const {
    if (!is_rational()) throw InputError("scalar " + to_string() + " is not rational");
    return c_[0];
}

std::size_t Scalar::height_bits() const {
    std::size_t h = 0;
    for (const auto& v : c_) {
        h = std::max(h, mpz_sizeinbase(v.get_num_mpz_t(), 2));
        h = std::max(h, mpz_sizeinbase(v.get_den_mpz_t(), 2));
    }
    return h;
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    check_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    check_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    check_same(o);
    if (c_.size() == 1) {
        c_[0] *= o.c_[0];
        return *this;
    }
    QVec r(2 * c_.size() - 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) {
            if (o.c_[j] != 0) r[i + j] += c_[i] * o.c_[j];
        }
    }
    c_ = std::move(r);
    reduce();
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

Scalar Scalar::inverse() const {
    if (is_zero()) throw InputError("division by zero");
    if (c_.size() == 1) return Scalar(field_, 1 / c_[0]);
    // Extended Euclid in Q[z] against Phi_m.
    QVec phi(field_.modulus().begin(), field_.modulus().end());
    QVec r0 = phi, r1 = c_;
    trim(r1);
    QVec s0, s1{1};  // coefficients of the element (s * a == r mod phi)
    while (!(r1.size() == 1)) {
        QVec q, r;
        qdivmod(r0, r1, q, r);
        QVec s = qsub(s0, qmul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    for (auto& v : s1) v /= r1[0];
    return Scalar(field_, std::move(s1));
}

Scalar Scalar::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Scalar result(field_, 1L), base = *this;
    while (e > 0) {
        if (e & 1) result *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return result;
}

bool operator==(const Scalar& a, const Scalar& b) {
    return a.field_ == b.field_ && a.c_ == b.c_;
}

std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
    for (std::size_t i = 0; i < std::min(a.c_.size(), b.c_.size()); ++i) {
        int c = cmp(a.c_[i], b.c_[i]);
        if (c < 0) return std::strong_ordering::less;
        if (c > 0) return std::strong_ordering::greater;
    }
    return a.c_.size() <=> b.c_.size();
}

bool canonical_before(const Scalar& a, const Scalar& b) { return b < a; }

std::string Scalar::to_string() const {
    if (c_.size() == 1) return c_[0].get_str();
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = c_.size(); k-- > 0;) {
        const mpq_class& v = c_[k];
        if (v == 0) continue;
        mpq_class av = abs(v);
        if (first) {
            if (v < 0) os << "-";
        } else {
            os << (v < 0 ? " - " : " + ");
        }
        first = false;
        if (k == 0) {
            os << av.get_str();
            continue;
        }
        if (av != 1) os << av.get_str() << "*";
        os << "z";
        if (k > 1) os << "^" << k;
    }
    if (first) return "0";
    return os.str();
}

std::vector<Scalar> roots_of_unity(const Field& field) {
    if (field.is_rational()) return {Scalar(field, 1L), Scalar(field, -1L)};
    const unsigned w = field.unit_roots_order();
    const Scalar z = Scalar::zeta(field);
    // A primitive w-th root: z when m is even, -z when m is odd.
    const Scalar gen = field.order() % 2 == 0 ? z : -z;
    std::vector<Scalar> out;
    out.reserve(w);
    Scalar cur(field, 1L);
    for (unsigned i = 0; i < w; ++i) {
        out.push_back(cur);
        cur *= gen;
    }
    return out;
}

namespace {

// A primitive k-th root of unity in the field, if the field has one.
std::optional<Scalar> primitive_root(const Field& field, unsigned k) {
    const unsigned w = field.unit_roots_order();
    if (w % k != 0) return std::nullopt;
    if (field.is_rational()) return Scalar(field, k == 1 ? 1L : -1L);
    const Scalar z = Scalar::zeta(field);
    const Scalar gen = field.order() % 2 == 0 ? z : -z;
    return gen.pow(w / k);
}

// sqrt(q) for rational q via quadratic Gauss sums, when the field contains it.
std::optional<Scalar> gauss_sqrt(const mpq_class& q, const Field& field) {
    if (field.is_rational() || q == 0) return std::nullopt;
    mpz_class n = q.get_num() * q.get_den();
    const int sign = n < 0 ? -1 : 1;
    n = abs(n);
    mpz_class square = 1, core = 1;
    for (unsigned long p = 2; p < 1000000 && p * p <= n; ++p) {
        if (!mpz_divisible_ui_p(n.get_mpz_t(), p)) continue;
        unsigned e = 0;
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            n /= p;
            ++e;
        }
        if (e % 2) core *= p;
        for (unsigned i = 0; i < e / 2; ++i) square *= p;
    }
    if (n > 1) {
        if (mpz_perfect_square_p(n.get_mpz_t())) {
            mpz_class r;
            mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
            square *= r;
        } else if (mpz_probab_prime_p(n.get_mpz_t(), 25) && n < mpz_class(1000000) * 1000000) {
            core *= n;
        } else {
            return std::nullopt;
        }
    }
    Scalar y(field, 1L);
    mpz_class produced = 1;
    mpz_class rest = core;
    if (mpz_divisible_ui_p(rest.get_mpz_t(), 2)) {
        auto z8 = primitive_root(field, 8);
        if (!z8) return std::nullopt;
        y *= *z8 + z8->inverse();
        produced *= 2;
        rest /= 2;
    }
    for (unsigned long p = 3; rest > 1; p += 2) {
        if (!mpz_divisible_ui_p(rest.get_mpz_t(), p)) continue;
        rest /= p;
        auto zp = primitive_root(field, static_cast<unsigned>(p));
        if (!zp) return std::nullopt;
        Scalar g(field);
        for (unsigned long a = 1; a < p; ++a) {
            const int leg = mpz_kronecker_ui(mpz_class(a).get_mpz_t(), p);
            if (leg == 1) g += zp->pow(static_cast<long>(a));
            else if (leg == -1) g -= zp->pow(static_cast<long>(a));
        }
        y *= g;
        produced *= (p % 4 == 1) ? mpz_class(p) : mpz_class(-static_cast<long>(p));
    }
    if ((produced < 0) != (sign < 0)) {
        auto i4 = primitive_root(field, 4);
        if (!i4) return std::nullopt;
        y *= *i4;
    }
    y *= Scalar(field, mpq_class(square, q.get_den()));
    if (!(y * y == Scalar(field, q))) return std::nullopt;
    return y;
}

std::vector<Scalar> nth_roots_basic(const Scalar& c, unsigned n);

}  // namespace

std::vector<Scalar> nth_roots(const Scalar& c, unsigned n) {
    if (n == 1) return {c};
    std::vector<Scalar> out = nth_roots_basic(c, n);
    if (n % 2 == 0 && !c.field().is_rational() && !c.is_zero()) {
        const auto units = roots_of_unity(c.field());
        std::vector<Scalar> squares;
        for (const auto& omega : units) {
            const Scalar qq = c / omega;
            if (!qq.is_rational()) continue;
            const auto so = nth_roots_basic(omega, 2);
            if (so.empty()) continue;
            if (auto g = gauss_sqrt(qq.rational(), c.field())) {
                const Scalar y = so.front() * *g;
                for (const auto& u : {Scalar(c.field(), 1L), Scalar(c.field(), -1L)})
                    for (const auto& r : nth_roots(y * u, n / 2))
                        if (std::find(out.begin(), out.end(), r) == out.end() && r.pow(n) == c) out.push_back(r);
            }
        }
        std::sort(out.begin(), out.end(), canonical_before);
    }
    return out;
}

namespace {

std::vector<Scalar> nth_roots_basic(const Scalar& c, unsigned n) {
    const Field& field = c.field();
    if (n == 0) throw InputError("root index must be positive");
    if (c.is_zero()) return {Scalar(field)};
    std::vector<Scalar> out;
    auto push_unique = [&](const Scalar& s) {
        if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
    };
    const auto units = roots_of_unity(field);
    // Write c = omega * q with omega a root of unity and q rational; then y = r * u with
    // r^n = |q| (or q) and u^n = omega * sign.
    for (const auto& omega : units) {
        Scalar q = c / omega;
        if (!q.is_rational()) continue;
        for (const auto& r : rational_nth_roots(q.rational(), n)) {
            Scalar rs(field, r);
            for (const auto& u : units) {
                Scalar y = rs * u;
                if (y.pow(n) == c) push_unique(y);
            }
        }
    }
    std::sort(out.begin(), out.end(), canonical_before);
    return out;
}

}  // namespace

}  // namespace rittkit

namespace rittkit {

Scalar lift(const Scalar& s, const Field& target) {
    const Field& src = s.field();
    if (src == target) return s;
    if (!src.is_rational() && target.order() % src.order() != 0)
        throw InputError("cannot embed " + src.to_string() + " into " + target.to_string());
    if (src.is_rational()) return Scalar(target, s.rational());
    const Scalar w = Scalar::zeta(target).pow(target.order() / src.order());
    Scalar acc(target), p(target, 1L);
    for (const auto& c : s.coeffs()) {
        acc += Scalar(target, c) * p;
        p *= w;
    }
    return acc;
}

}  // namespace rittkit
