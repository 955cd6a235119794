#include "rittkit/bivar.hpp"

#include <algorithm>
#include <sstream>

#include "rittkit/errors.hpp"

namespace rittkit {

BivarPoly::BivarPoly(Field field, std::vector<Poly> y_coeffs) : field_(std::move(field)), rows_(std::move(y_coeffs)) {
    for (const auto& r : rows_) {
        if (!(r.field() == field_)) throw InputError("field mismatch in bivariate polynomial");
    }
    trim();
}

void BivarPoly::trim() {
    while (!rows_.empty() && rows_.back().is_zero()) rows_.pop_back();
}

BivarPoly BivarPoly::from_x(const Poly& p) { return BivarPoly(p.field(), {p}); }

BivarPoly BivarPoly::from_y(const Poly& p) {
    std::vector<Poly> rows;
    for (const auto& c : p.coeffs()) rows.push_back(Poly::constant(c));
    return BivarPoly(p.field(), std::move(rows));
}

BivarPoly BivarPoly::graph(const Poly& h) {
    const Field& F = h.field();
    return BivarPoly(F, {-h, Poly::constant(Scalar(F, 1L))});
}

BivarPoly BivarPoly::term(const Scalar& c, std::size_t i, std::size_t j) {
    std::vector<Poly> rows(j + 1, Poly(c.field()));
    rows[j] = Poly::monomial(c, i);
    return BivarPoly(c.field(), std::move(rows));
}

int BivarPoly::degree_x() const noexcept {
    int d = -1;
    for (const auto& r : rows_) d = std::max(d, r.degree());
    return d;
}

Poly BivarPoly::y_coeff(std::size_t j) const { return j < rows_.size() ? rows_[j] : Poly(field_); }

Scalar BivarPoly::operator()(const Scalar& x, const Scalar& y) const {
    Scalar acc(field_);
    for (std::size_t j = rows_.size(); j-- > 0;) {
        acc *= y;
        acc += rows_[j](x);
    }
    return acc;
}

Poly BivarPoly::at_x(const Scalar& x0) const {
    std::vector<Scalar> c;
    c.reserve(rows_.size());
    for (const auto& r : rows_) c.push_back(r(x0));
    return Poly(field_, std::move(c));
}

Poly BivarPoly::at_y(const Scalar& y0) const {
    Poly acc(field_);
    for (std::size_t j = rows_.size(); j-- > 0;) {
        acc *= y0;
        acc += rows_[j];
    }
    return acc;
}

BivarPoly BivarPoly::swapped() const {
    const int dx = degree_x();
    std::vector<Poly> rows;
    for (int i = 0; i <= dx; ++i) {
        std::vector<Scalar> c;
        for (const auto& r : rows_) c.push_back(r.coeff(static_cast<std::size_t>(i)));
        rows.emplace_back(field_, std::move(c));
    }
    return BivarPoly(field_, std::move(rows));
}

BivarPoly BivarPoly::derivative_y() const {
    std::vector<Poly> rows;
    for (std::size_t j = 1; j < rows_.size(); ++j) rows.push_back(rows_[j] * Scalar(field_, static_cast<long>(j)));
    return BivarPoly(field_, std::move(rows));
}

BivarPoly BivarPoly::operator-() const {
    BivarPoly r = *this;
    for (auto& p : r.rows_) p = -p;
    return r;
}

BivarPoly& BivarPoly::operator+=(const BivarPoly& o) {
    if (!(field_ == o.field_)) throw InputError("field mismatch in bivariate polynomial");
    if (rows_.size() < o.rows_.size()) rows_.resize(o.rows_.size(), Poly(field_));
    for (std::size_t j = 0; j < o.rows_.size(); ++j) rows_[j] += o.rows_[j];
    trim();
    return *this;
}

BivarPoly& BivarPoly::operator-=(const BivarPoly& o) { return *this += -o; }

BivarPoly operator*(const BivarPoly& a, const BivarPoly& b) {
    if (!(a.field_ == b.field_)) throw InputError("field mismatch in bivariate polynomial");
    if (a.is_zero() || b.is_zero()) return BivarPoly(a.field_);
    std::vector<Poly> rows(a.rows_.size() + b.rows_.size() - 1, Poly(a.field_));
    for (std::size_t i = 0; i < a.rows_.size(); ++i) {
        if (a.rows_[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.rows_.size(); ++j) rows[i + j] += a.rows_[i] * b.rows_[j];
    }
    return BivarPoly(a.field_, std::move(rows));
}

BivarPoly operator*(BivarPoly a, const Scalar& s) {
    for (auto& r : a.rows_) r *= s;
    a.trim();
    return a;
}

std::string BivarPoly::to_string() const {
    if (rows_.empty()) return "0";
    // Terms ordered by x-degree then y-degree, both descending.
    std::ostringstream os;
    bool first = true;
    for (int i = degree_x(); i >= 0; --i) {
        for (std::size_t j = rows_.size(); j-- > 0;) {
            Scalar s = rows_[j].coeff(static_cast<std::size_t>(i));
            if (s.is_zero()) continue;
            std::string mono;
            if (i > 0) mono += i == 1 ? "x" : "x^" + std::to_string(i);
            if (j > 0) {
                if (!mono.empty()) mono += "*";
                mono += j == 1 ? "y" : "y^" + std::to_string(j);
            }
            bool negative = false;
            std::string coef;
            if (s.is_rational()) {
                negative = s.rational() < 0;
                mpq_class a = abs(s.rational());
                if (!(a == 1 && !mono.empty())) coef = a.get_str();
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
    }
    return os.str();
}

Scalar resultant(const Poly& a, const Poly& b, std::optional<std::size_t> formal_a, std::optional<std::size_t> formal_b) {
    if (!(a.field() == b.field())) throw InputError("field mismatch in resultant");
    const Field& F = a.field();
    const std::size_t m = formal_a.value_or(static_cast<std::size_t>(std::max(a.degree(), 0)));
    const std::size_t n = formal_b.value_or(static_cast<std::size_t>(std::max(b.degree(), 0)));
    if (a.degree() > static_cast<int>(m) || b.degree() > static_cast<int>(n))
        throw InputError("formal degree below actual degree in resultant");
    const std::size_t size = m + n;
    if (size == 0) return Scalar(F, 1L);
    std::vector<std::vector<Scalar>> M(size, std::vector<Scalar>(size, Scalar(F)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k <= m; ++k) M[i][i + k] = a.coeff(m - k);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k <= n; ++k) M[n + i][i + k] = b.coeff(n - k);
    Scalar det(F, 1L);
    for (std::size_t c = 0; c < size; ++c) {
        std::size_t piv = c;
        while (piv < size && M[piv][c].is_zero()) ++piv;
        if (piv == size) return Scalar(F);
        if (piv != c) {
            std::swap(M[piv], M[c]);
            det = -det;
        }
        det *= M[c][c];
        const Scalar inv = M[c][c].inverse();
        for (std::size_t r = c + 1; r < size; ++r) {
            if (M[r][c].is_zero()) continue;
            Scalar t = M[r][c] * inv;
            for (std::size_t k = c; k < size; ++k) M[r][k] -= t * M[c][k];
        }
    }
    return det;
}

namespace {

// Sylvester determinant over K[t] by Bareiss fraction-free elimination.
Poly bareiss_det(std::vector<std::vector<Poly>> M, const Field& F) {
    const std::size_t n = M.size();
    if (n == 0) return Poly::constant(Scalar(F, 1L));
    bool negate = false;
    Poly prev = Poly::constant(Scalar(F, 1L));
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t piv = k;
        while (piv < n && M[piv][k].is_zero()) ++piv;
        if (piv == n) return Poly(F);
        if (piv != k) {
            std::swap(M[piv], M[k]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Poly num = M[k][k] * M[i][j] - M[i][k] * M[k][j];
                auto q = exact_div(num, prev);
                if (!q) throw Error("Bareiss elimination: inexact division");
                M[i][j] = std::move(*q);
            }
            M[i][k] = Poly(F);
        }
        prev = M[k][k];
    }
    Poly det = M[n - 1][n - 1];
    return negate ? -det : det;
}

}  // namespace

Poly resultant_elim(const BivarPoly& g, const BivarPoly& h, Var var) {
    if (!(g.field() == h.field())) throw InputError("field mismatch in resultant");
    if (g.is_zero() || h.is_zero()) throw InputError("resultant of a zero polynomial");
    const BivarPoly a = var == Var::Y ? g : g.swapped();
    const BivarPoly b = var == Var::Y ? h : h.swapped();
    const Field& F = g.field();
    const int m = a.degree_y();
    const int n = b.degree_y();
    if (m <= 0 && n <= 0) throw InputError("both inputs are constant in the elimination variable");
    const std::size_t size = static_cast<std::size_t>(m + n);
    std::vector<std::vector<Poly>> M(size, std::vector<Poly>(size, Poly(F)));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k <= m; ++k) M[i][i + k] = a.y_coeff(static_cast<std::size_t>(m - k));
    for (int i = 0; i < m; ++i)
        for (int k = 0; k <= n; ++k) M[n + i][i + k] = b.y_coeff(static_cast<std::size_t>(n - k));
    return bareiss_det(std::move(M), F);
}

Poly content_y(const BivarPoly& p) {
    Poly c(p.field());
    for (const auto& r : p.rows()) c = gcd(c, r);
    return c;
}

namespace {

BivarPoly divide_rows(const BivarPoly& p, const Poly& c) {
    std::vector<Poly> rows;
    for (const auto& r : p.rows()) rows.push_back(*exact_div(r, c));
    return BivarPoly(p.field(), std::move(rows));
}

BivarPoly primitive_part(const BivarPoly& p) {
    if (p.is_zero()) return p;
    return divide_rows(p, content_y(p));
}

BivarPoly shift_y(const BivarPoly& p, std::size_t k) {
    std::vector<Poly> rows(k, Poly(p.field()));
    rows.insert(rows.end(), p.rows().begin(), p.rows().end());
    return BivarPoly(p.field(), std::move(rows));
}

BivarPoly times_x(const BivarPoly& p, const Poly& c) {
    std::vector<Poly> rows;
    for (const auto& r : p.rows()) rows.push_back(r * c);
    return BivarPoly(p.field(), std::move(rows));
}

BivarPoly pseudo_rem(BivarPoly a, const BivarPoly& b) {
    const int db = b.degree_y();
    const Poly lb = b.rows().back();
    while (!a.is_zero() && a.degree_y() >= db) {
        const Poly la = a.rows().back();
        const std::size_t shift = static_cast<std::size_t>(a.degree_y() - db);
        a = times_x(a, lb) - times_x(shift_y(b, shift), la);
    }
    return a;
}

}  // namespace

std::optional<BivarPoly> exact_div(const BivarPoly& a, const BivarPoly& b) {
    if (b.is_zero()) throw InputError("bivariate division by zero");
    const Field& F = a.field();
    BivarPoly rem = a;
    std::vector<Poly> q;
    const int db = b.degree_y();
    if (a.degree_y() >= db) q.assign(static_cast<std::size_t>(a.degree_y() - db + 1), Poly(F));
    const Poly& lb = b.rows().back();
    while (!rem.is_zero() && rem.degree_y() >= db) {
        auto c = exact_div(rem.rows().back(), lb);
        if (!c) return std::nullopt;
        const std::size_t shift = static_cast<std::size_t>(rem.degree_y() - db);
        q[shift] = *c;
        rem -= times_x(shift_y(b, shift), *c);
    }
    if (!rem.is_zero()) return std::nullopt;
    return BivarPoly(F, std::move(q));
}

BivarPoly gcd(const BivarPoly& a, const BivarPoly& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const Poly c = gcd(content_y(a), content_y(b));
    BivarPoly r0 = primitive_part(a), r1 = primitive_part(b);
    if (r0.degree_y() < r1.degree_y()) std::swap(r0, r1);
    while (!r1.is_zero() && r1.degree_y() > 0) {
        BivarPoly r = pseudo_rem(r0, r1);
        r0 = std::move(r1);
        r1 = r.is_zero() ? r : primitive_part(r);
    }
    // A nonzero remainder of y-degree 0 means the primitive parts are coprime.
    BivarPoly g = r1.is_zero() ? r0 : BivarPoly::from_x(Poly::constant(Scalar(a.field(), 1L)));
    return times_x(g, c);
}

BivarPoly squarefree_part(const BivarPoly& p) {
    if (p.is_zero()) return p;
    const Poly c = content_y(p);
    BivarPoly pp = divide_rows(p, c);
    BivarPoly out = BivarPoly::from_x(squarefree_part(c));
    if (pp.degree_y() > 0) {
        BivarPoly g = gcd(pp, pp.derivative_y());
        out = out * *exact_div(pp, g);
    }
    return out;
}

BivarCurve::BivarCurve(const BivarPoly& g) : g_(g) {
    if (g_.is_zero()) throw InputError("a curve needs a nonzero defining polynomial");
    if (g_.degree_x() <= 0 && g_.degree_y() <= 0) throw InputError("constant defining polynomial is not a curve");
    const int dx = g_.degree_x();
    for (std::size_t j = g_.rows().size(); j-- > 0;) {
        Scalar s = g_.coeff(static_cast<std::size_t>(dx), j);
        if (!s.is_zero()) {
            g_ = g_ * s.inverse();
            return;
        }
    }
}

}  // namespace rittkit
