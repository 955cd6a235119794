#include "rittkit/poly.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <sstream>

#include "rittkit/errors.hpp"

namespace rittkit {

namespace {

void require_same(const Field& a, const Field& b) {
    if (!(a == b)) throw InputError("field mismatch: " + a.to_string() + " vs " + b.to_string());
}

}  // namespace

Poly::Poly(Field field, std::vector<Scalar> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) {
    for (const auto& s : c_) require_same(field_, s.field());
    trim();
}

Poly::Poly(Field field, std::initializer_list<mpq_class> coeffs) : field_(std::move(field)) {
    c_.reserve(coeffs.size());
    for (const auto& q : coeffs) c_.emplace_back(field_, q);
    trim();
}

Poly Poly::x(const Field& field) { return Poly(field, {0, 1}); }

Poly Poly::constant(const Scalar& c) { return Poly(c.field(), std::vector<Scalar>{c}); }

Poly Poly::monomial(const Scalar& c, std::size_t degree) {
    std::vector<Scalar> v(degree + 1, Scalar(c.field()));
    v[degree] = c;
    return Poly(c.field(), std::move(v));
}

void Poly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Scalar Poly::coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Scalar(field_); }

const Scalar& Poly::lc() const {
    if (c_.empty()) throw InputError("leading coefficient of the zero polynomial");
    return c_.back();
}

bool Poly::has_rational_coeffs() const {
    return std::all_of(c_.begin(), c_.end(), [](const Scalar& s) { return s.is_rational(); });
}

Scalar Poly::operator()(const Scalar& t) const {
    require_same(field_, t.field());
    Scalar acc(field_);
    for (std::size_t k = c_.size(); k-- > 0;) {
        acc *= t;
        acc += c_[k];
    }
    return acc;
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return Poly(field_);
    std::vector<Scalar> d;
    d.reserve(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * Scalar(field_, static_cast<long>(k)));
    return Poly(field_, std::move(d));
}

Poly Poly::monic() const {
    if (c_.empty()) return *this;
    return *this * lc().inverse();
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& s : r.c_) s = -s;
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    require_same(field_, o.field_);
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), Scalar(field_));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    require_same(field_, o.field_);
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), Scalar(field_));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    require_same(a.field_, b.field_);
    if (a.is_zero() || b.is_zero()) return Poly(a.field_);
    std::vector<Scalar> r(a.c_.size() + b.c_.size() - 1, Scalar(a.field_));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) {
            if (!b.c_[j].is_zero()) r[i + j] += a.c_[i] * b.c_[j];
        }
    }
    return Poly(a.field_, std::move(r));
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly& Poly::operator*=(const Scalar& s) {
    require_same(field_, s.field());
    for (auto& v : c_) v *= s;
    trim();
    return *this;
}

Poly Poly::pow(std::size_t e) const {
    Poly result = Poly::constant(Scalar(field_, 1L));
    Poly base = *this;
    while (e > 0) {
        if (e & 1) result *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return result;
}

std::string Poly::to_string(const std::string& var) const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = c_.size(); k-- > 0;) {
        const Scalar& s = c_[k];
        if (s.is_zero()) continue;
        std::string mono = k == 0 ? "" : (k == 1 ? var : var + "^" + std::to_string(k));
        bool negative = false;
        std::string coef;
        if (s.is_rational()) {
            mpq_class q = s.rational();
            negative = q < 0;
            mpq_class aq = abs(q);
            if (!(aq == 1 && k > 0)) coef = aq.get_str();
        } else {
            coef = "(" + s.to_string() + ")";
        }
        if (first) {
            if (negative) os << "-";
        } else {
            os << (negative ? " - " : " + ");
        }
        first = false;
        os << coef;
        if (!coef.empty() && !mono.empty()) os << "*";
        os << mono;
    }
    return os.str();
}

bool canonical_before(const Poly& a, const Poly& b) {
    if (a.degree() != b.degree()) return a.degree() > b.degree();
    for (std::size_t k = a.coeffs().size(); k-- > 0;) {
        auto c = a.coeffs()[k] <=> b.coeffs()[k];
        if (c != 0) return c > 0;
    }
    return false;
}

LinearPoly::LinearPoly(Scalar a, Scalar b) : a_(std::move(a)), b_(std::move(b)) {
    require_same(a_.field(), b_.field());
    if (a_.is_zero()) throw InputError("linear polynomial needs a nonzero slope");
}

LinearPoly LinearPoly::identity(const Field& field) { return LinearPoly(Scalar(field, 1L), Scalar(field)); }

LinearPoly LinearPoly::from_poly(const Poly& p) {
    if (p.degree() != 1) throw InputError("not a linear polynomial: " + p.to_string());
    return LinearPoly(p.coeff(1), p.coeff(0));
}

Poly LinearPoly::to_poly() const { return Poly(a_.field(), std::vector<Scalar>{b_, a_}); }

LinearPoly LinearPoly::inverse() const {
    Scalar ia = a_.inverse();
    return LinearPoly(ia, -(b_ * ia));
}

LinearPoly LinearPoly::then_after(const LinearPoly& inner) const {
    return LinearPoly(a_ * inner.a_, a_ * inner.b_ + b_);
}

Poly compose(const Poly& f, const Poly& g, std::size_t degree_cap) {
    require_same(f.field(), g.field());
    if (f.degree() > 0 && g.degree() > 0) {
        const std::size_t out = static_cast<std::size_t>(f.degree()) * static_cast<std::size_t>(g.degree());
        if (out > degree_cap)
            throw ResourceError("composition degree " + std::to_string(out) + " exceeds cap " +
                                std::to_string(degree_cap));
    }
    if (f.is_constant() || g.degree() <= 0) {
        if (g.degree() <= 0 && !f.is_zero()) return Poly::constant(f(g.coeff(0)));
        return f;
    }
    Poly acc(f.field());
    const auto& c = f.coeffs();
    for (std::size_t k = c.size(); k-- > 0;) {
        acc = acc * g;
        acc += Poly::constant(c[k]);
    }
#ifndef NDEBUG
    assert(acc.degree() == f.degree() * g.degree());
#endif
    return acc;
}

Poly compose(const LinearPoly& l, const Poly& f) { return f * l.a() + Poly::constant(l.b()); }

Poly compose(const Poly& f, const LinearPoly& l) {
    require_same(f.field(), l.field());
    // f(a x + b) is f(x + b) with x scaled by a.
    std::vector<Scalar> c = taylor_shift(f, l.b()).coeffs();
    Scalar p(f.field(), 1L);
    for (auto& v : c) {
        v *= p;
        p *= l.a();
    }
    return Poly(f.field(), std::move(c));
}

Poly iterate(const Poly& f, std::size_t m, std::size_t degree_cap) {
    if (f.degree() < 1) throw InputError("iterate needs a nonconstant polynomial");
    Poly acc = Poly::x(f.field());
    for (std::size_t i = 0; i < m; ++i) acc = compose(f, acc, degree_cap);
    return acc;
}

Poly chebyshev(std::size_t degree, const Field& field) {
    if (degree == 0) return Poly(field, {2});
    Poly prev(field, {2});
    Poly cur = Poly::x(field);
    const Poly x = Poly::x(field);
    for (std::size_t k = 1; k < degree; ++k) {
        Poly next = x * cur - prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

Poly conjugate(const LinearPoly& l, const Poly& f) { return compose(l, compose(f, l.inverse())); }

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    require_same(a.field(), b.field());
    if (b.is_zero()) throw InputError("polynomial division by zero");
    const Field& F = a.field();
    if (a.degree() < b.degree()) return {Poly(F), a};
    std::vector<Scalar> r = a.coeffs();
    const std::size_t db = static_cast<std::size_t>(b.degree());
    std::vector<Scalar> q(r.size() - db, Scalar(F));
    const Scalar inv = b.lc().inverse();
    for (std::size_t k = r.size(); k-- > db;) {
        if (r[k].is_zero()) continue;
        Scalar t = r[k] * inv;
        for (std::size_t i = 0; i <= db; ++i) {
            if (!b.coeffs()[i].is_zero()) r[k - db + i] -= t * b.coeffs()[i];
        }
        q[k - db] = std::move(t);
    }
    r.resize(db, Scalar(F));
    return {Poly(F, std::move(q)), Poly(F, std::move(r))};
}

std::optional<Poly> exact_div(const Poly& a, const Poly& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) return std::nullopt;
    return q;
}

Poly gcd(const Poly& a, const Poly& b) {
    Poly r0 = a, r1 = b;
    while (!r1.is_zero()) {
        Poly r = divmod(r0, r1).second;
        r0 = std::move(r1);
        r1 = std::move(r);
    }
    return r0.monic();
}

std::vector<Poly> squarefree_decomposition(const Poly& f) {
    if (f.degree() < 1) return {};
    std::vector<Poly> out;
    Poly fm = f.monic();
    Poly d = fm.derivative();
    Poly a = gcd(fm, d);
    Poly b = *exact_div(fm, a);
    Poly c = *exact_div(d, a);
    Poly db = c - b.derivative();
    while (b.degree() > 0) {
        Poly g = gcd(b, db);
        out.push_back(g);
        b = *exact_div(b, g);
        c = *exact_div(db, g);
        db = c - b.derivative();
    }
    while (!out.empty() && out.back().degree() == 0) out.pop_back();
    return out;
}

Poly squarefree_part(const Poly& f) {
    if (f.degree() < 1) return f.monic();
    Poly out = Poly::constant(Scalar(f.field(), 1L));
    for (const auto& p : squarefree_decomposition(f)) out *= p;
    return out;
}

namespace {

std::vector<mpz_class> divisors_of(mpz_class n) {
    n = abs(n);
    if (n == 0) return {};
    std::map<mpz_class, unsigned> fac;
    for (mpz_class p = 2; p * p <= n; ++p) {
        if (p > 1000000) {
            if (n > mpz_class("1000000000000"))
                throw ResourceError("rational root search: integer too large to factor by trial division");
            break;
        }
        while (n % p == 0) {
            ++fac[p];
            n /= p;
        }
    }
    if (n > 1) ++fac[n];
    std::vector<mpz_class> divs{1};
    for (const auto& [p, e] : fac) {
        const std::size_t base = divs.size();
        mpz_class pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

}  // namespace

std::vector<Scalar> rational_roots(const Poly& f) {
    if (!f.has_rational_coeffs()) throw InputError("rational_roots needs rational coefficients");
    const Field& F = f.field();
    if (f.degree() < 1) return {};
    std::vector<Scalar> roots;
    // Strip x^k.
    std::size_t low = 0;
    while (f.coeffs()[low].is_zero()) ++low;
    if (low > 0) roots.emplace_back(F, 0L);
    Poly g = squarefree_part(f);
    if (low > 0) g = *exact_div(g, Poly::x(F));
    if (g.degree() >= 1) {
        mpz_class den = 1;
        for (const auto& s : g.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), s.rational().get_den_mpz_t());
        std::vector<mpz_class> ic;
        for (const auto& s : g.coeffs()) {
            mpq_class v = s.rational() * den;
            ic.push_back(v.get_num());
        }
        const auto ps = divisors_of(ic.front());
        const auto qs = divisors_of(ic.back());
        for (const auto& p : ps) {
            for (const auto& q : qs) {
                for (int sgn : {1, -1}) {
                    mpq_class r(sgn * p, q);
                    r.canonicalize();
                    Scalar rs(F, r);
                    if (g(rs).is_zero() && std::find(roots.begin(), roots.end(), rs) == roots.end())
                        roots.push_back(rs);
                }
            }
        }
    }
    std::sort(roots.begin(), roots.end(), [](const Scalar& a, const Scalar& b) { return a.rational() < b.rational(); });
    return roots;
}

std::size_t root_multiplicity(const Poly& f, const Scalar& r) {
    if (f.is_zero()) throw InputError("multiplicity of a root of the zero polynomial");
    Poly lin(f.field(), std::vector<Scalar>{-r, Scalar(f.field(), 1L)});
    std::size_t m = 0;
    Poly cur = f;
    while (true) {
        auto q = exact_div(cur, lin);
        if (!q) return m;
        ++m;
        cur = std::move(*q);
    }
}

Poly taylor_shift(const Poly& f, const Scalar& s) {
    if (f.is_zero() || s.is_zero()) return f;
    // Horner with (x + s).
    const Field& F = f.field();
    Poly xs(F, std::vector<Scalar>{s, Scalar(F, 1L)});
    Poly acc(F);
    for (std::size_t k = f.coeffs().size(); k-- > 0;) {
        acc = acc * xs;
        acc += Poly::constant(f.coeffs()[k]);
    }
    return acc;
}

}  // namespace rittkit

namespace rittkit {

Poly lift(const Poly& f, const Field& target) {
    std::vector<Scalar> c;
    c.reserve(f.coeffs().size());
    for (const auto& v : f.coeffs()) c.push_back(lift(v, target));
    return Poly(target, std::move(c));
}

}  // namespace rittkit
