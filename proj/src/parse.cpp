#include "rittkit/parse.hpp"

#include <cctype>

namespace rittkit {

namespace {

std::string_view strip(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

class Parser {
  public:
    Parser(std::string_view text, std::size_t offset, Field field) : s_(text), offset_(offset), field_(std::move(field)) {}

    BivarPoly parse() {
        skip();
        if (pos_ >= s_.size()) fail("empty expression");
        BivarPoly e = expr();
        skip();
        if (pos_ < s_.size()) fail(std::string("unexpected '") + s_[pos_] + "'");
        return e;
    }

  private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, offset_ + pos_); }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool peek(char c) {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }

    bool starts_primary() {
        skip();
        if (pos_ >= s_.size()) return false;
        char c = s_[pos_];
        return std::isdigit(static_cast<unsigned char>(c)) || c == 'x' || c == 'y' || c == 'z' || c == '(';
    }

    BivarPoly one() const { return BivarPoly::from_x(Poly::constant(Scalar(field_, 1L))); }

    BivarPoly expr() {
        BivarPoly acc = term();
        while (true) {
            if (peek('+')) {
                ++pos_;
                acc += term();
            } else if (peek('-')) {
                ++pos_;
                acc -= term();
            } else {
                return acc;
            }
        }
    }

    BivarPoly term() {
        BivarPoly acc = unary();
        while (true) {
            if (peek('*')) {
                ++pos_;
                acc = acc * unary();
            } else if (peek('/')) {
                ++pos_;
                const std::size_t at = pos_;
                BivarPoly d = unary();
                if (d.degree_x() > 0 || d.degree_y() > 0) {
                    pos_ = at;
                    fail("division by a non-constant");
                }
                if (d.is_zero()) {
                    pos_ = at;
                    fail("division by zero");
                }
                acc = acc * d.coeff(0, 0).inverse();
            } else if (starts_primary()) {
                acc = acc * power();
            } else {
                return acc;
            }
        }
    }

    BivarPoly unary() {
        if (peek('-')) {
            ++pos_;
            return -unary();
        }
        if (peek('+')) {
            ++pos_;
            return unary();
        }
        return power();
    }

    BivarPoly power() {
        BivarPoly base = primary();
        if (peek('^')) {
            ++pos_;
            skip();
            const std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) fail("expected a nonnegative integer exponent");
            const auto digits = s_.substr(start, pos_ - start);
            if (digits.size() > 6) fail("exponent too large");
            unsigned long e = std::stoul(std::string(digits));
            BivarPoly r = one();
            for (unsigned long i = 0; i < e; ++i) r = r * base;
            return r;
        }
        return base;
    }

    BivarPoly primary() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        const char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            mpz_class v(std::string(s_.substr(start, pos_ - start)));
            return BivarPoly::from_x(Poly::constant(Scalar(field_, mpq_class(v))));
        }
        if (c == 'x') {
            ++pos_;
            return BivarPoly::from_x(Poly::x(field_));
        }
        if (c == 'y') {
            ++pos_;
            return BivarPoly::term(Scalar(field_, 1L), 0, 1);
        }
        if (c == 'z') {
            if (field_.is_rational()) fail("the generator z needs a cyclotomic field header");
            ++pos_;
            return BivarPoly::from_x(Poly::constant(Scalar::zeta(field_)));
        }
        if (c == '(') {
            ++pos_;
            BivarPoly e = expr();
            if (!peek(')')) fail("expected ')'");
            ++pos_;
            return e;
        }
        fail(std::string("unexpected '") + c + "'");
    }

    std::string_view s_;
    std::size_t offset_;
    std::size_t pos_ = 0;
    Field field_;
};

}  // namespace

Field parse_field(std::string_view text) {
    std::string_view t = strip(text);
    if (t.substr(0, 5) == "field") t = strip(t.substr(5));
    if (t == "Q") return Field::rationals();
    const std::string_view prefix = "Q(zeta";
    if (t.substr(0, prefix.size()) == prefix && !t.empty() && t.back() == ')') {
        std::string_view num = strip(t.substr(prefix.size(), t.size() - prefix.size() - 1));
        if (num.empty() || num.size() > 6) throw ParseError("bad cyclotomic order", 0);
        for (char c : num)
            if (!std::isdigit(static_cast<unsigned char>(c))) throw ParseError("bad cyclotomic order", 0);
        const unsigned m = static_cast<unsigned>(std::stoul(std::string(num)));
        if (m <= 2) throw InputError("Q(zeta " + std::to_string(m) + ") is Q; write field Q");
        return Field::cyclotomic(m);
    }
    throw ParseError("unknown field '" + std::string(t) + "'", 0);
}

BivarPoly parse_expression(std::string_view text, const Field& field) {
    Field f = field;
    std::size_t offset = 0;
    std::string_view body = text;
    std::string_view head = strip(text);
    if (head.substr(0, 5) == "field") {
        const std::size_t lead = static_cast<std::size_t>(head.data() - text.data());
        std::size_t end = head.find_first_of(";\n");
        if (end == std::string_view::npos) throw ParseError("field header must end with ';' or a newline", lead);
        f = parse_field(head.substr(0, end));
        offset = lead + end + 1;
        body = text.substr(offset);
    }
    return Parser(body, offset, f).parse();
}

Poly parse_poly(std::string_view text, const Field& field) {
    BivarPoly b = parse_expression(text, field);
    if (b.degree_y() > 0) throw InputError("expected a polynomial in x only, found y");
    return b.is_zero() ? Poly(b.field()) : b.rows().front();
}

BivarCurve parse_curve(std::string_view text, const Field& field) { return BivarCurve(parse_expression(text, field)); }

Scalar parse_scalar(std::string_view text, const Field& field) {
    BivarPoly b = parse_expression(text, field);
    if (b.degree_x() > 0 || b.degree_y() > 0) throw InputError("expected a constant");
    return b.is_zero() ? Scalar(b.field()) : b.coeff(0, 0);
}

std::variant<Poly, BivarCurve> parse_poly_or_curve(std::string_view text, const Field& field) {
    BivarPoly b = parse_expression(text, field);
    if (b.degree_y() > 0) return BivarCurve(b);
    return b.is_zero() ? Poly(b.field()) : b.rows().front();
}

}  // namespace rittkit
