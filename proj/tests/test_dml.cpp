#include "doctest.h"

#include <algorithm>
#include <random>

#include "rittkit/dml.hpp"
#include "rittkit/errors.hpp"
#include "rittkit/kernels.hpp"
#include "rittkit/msclass.hpp"
#include "rittkit/parse.hpp"

using namespace rittkit;

namespace {

Poly P(const char* s) { return parse_poly(s); }
BivarCurve C(const char* s, const Field& K = Field()) { return parse_curve(s, K); }
Scalar q(long n, long d = 1) { return Scalar(Field(), mpq_class(n, d)); }
Point pt(long a, long b) { return {q(a), q(b)}; }

mpz_class ipow(unsigned long b, unsigned long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), b, e);
    return r;
}

std::vector<int> iota_to(int n) {
    std::vector<int> v(static_cast<std::size_t>(n) + 1);
    std::iota(v.begin(), v.end(), 0);
    return v;
}

// n with p | numerator of G'(x_n, y_n), where G' is the primitive integer multiple of G.
std::vector<int> reduce_exact_orbit(const Orbit& o, const BivarCurve& C, unsigned long p) {
    mpz_class den = 1;
    for (const auto& row : C.poly().rows())
        for (const auto& c : row.coeffs()) den = lcm(den, mpz_class(c.rational().get_den()));
    mpz_class num = 0;
    for (const auto& row : C.poly().rows())
        for (const auto& c : row.coeffs()) num = gcd(num, mpz_class(c.rational().get_num() * (den / c.rational().get_den())));
    const BivarPoly G = C.poly() * Scalar(Field(), mpq_class(den, num));
    std::vector<int> out;
    for (const auto& op : o.points) {
        const mpq_class v = G(op.point.first, op.point.second).rational();
        if (mpz_divisible_ui_p(v.get_num_mpz_t(), p)) out.push_back(op.index);
    }
    return out;
}

bool subset(const std::vector<int>& a, const std::vector<int>& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

}  // namespace

TEST_CASE("orbit by repeated squaring") {
    const Orbit o = orbit(P("x^2"), P("x^2"), pt(2, 4), 3);
    REQUIRE(o.points.size() == 4);
    CHECK_FALSE(o.truncated_at);
    for (int n = 0; n <= 3; ++n) {
        CHECK(o.points[n].index == n);
        CHECK(o.points[n].point.first == Scalar(Field(), mpq_class(ipow(2, 1UL << n))));
        CHECK(o.points[n].point.second == Scalar(Field(), mpq_class(ipow(4, 1UL << n))));
    }
    CHECK(o.points[3].point.first == q(256));
    CHECK(o.points[3].point.second == q(65536));

    const Orbit zero = orbit(P("x^3 + 1/2"), P("x - 7"), pt(5, -1), 0);
    REQUIRE(zero.points.size() == 1);
    CHECK(zero.points[0].point == pt(5, -1));

    const Orbit cyc = orbit(P("x^2 - 1"), P("x"), pt(0, 5), 4);
    const std::vector<long> want{0, -1, 0, -1, 0};
    for (int n = 0; n <= 4; ++n) CHECK(cyc.points[n].point.first == q(want[n]));
}

TEST_CASE("orbit truncation at the height cap") {
    // 2^(2^n) has 2^n + 1 bits.
    const Orbit o = orbit(P("x^2"), P("x"), pt(2, 1), 20, 100);
    REQUIRE(o.truncated_at);
    CHECK(*o.truncated_at == 7);
    CHECK(o.points.size() == 7);
    const ReturnSet r = return_set_exact(P("x^2"), P("x"), pt(2, 1), C("y - 1"), 20, 100);
    CHECK(r.horizon == 6);
    CHECK(r.indices == iota_to(6));
    CHECK(r.truncated_at == 7);
}

TEST_CASE("exact return sets") {
    const Poly sq = P("x^2");
    auto r = return_set_exact(sq, sq, pt(2, 4), C("y - x^2"), 12, 1 << 14);
    CHECK(r.indices == iota_to(12));
    CHECK_FALSE(r.truncated_at);

    r = return_set_exact(sq, sq, pt(2, 3), C("y - x"), 10);
    CHECK(r.indices.empty());
    CHECK(r.horizon == 10);

    // Point on a curve of period 1.
    r = return_set_exact(P("x^3 + x"), P("x^3 + x"), pt(1, 1), C("y - x"), 3);
    CHECK(r.indices.front() == 0);
}

TEST_CASE("mod p return sets") {
    const Poly sq = P("x^2");
    const auto r = return_set_modp(sq, sq, pt(2, 3), C("y - x"), 5, 3);
    CHECK(std::find(r.indices.begin(), r.indices.end(), 1) != r.indices.end());
    CHECK(r.cycle);

    CHECK_THROWS_AS(return_set_modp(P("x^2 + 1/5"), sq, pt(2, 3), C("y - x"), 5, 3), BadReduction);
    CHECK_THROWS_AS(return_set_modp(sq, sq, {q(1, 5), q(1)}, C("y - x"), 5, 3), BadReduction);
    CHECK_THROWS_AS(return_set_modp(P("5x^2 + x"), sq, pt(2, 3), C("y - x"), 5, 3), BadReduction);
    try {
        return_set_modp(P("7x^3 + x"), sq, pt(1, 1), C("y - x"), 7, 3);
        FAIL("expected a bad-reduction rejection");
    } catch (const BadReduction& e) {
        CHECK(e.condition().find("F1") != std::string::npos);
        CHECK(e.condition().find("degree") != std::string::npos);
    }
    // A curve with denominators is rescaled, not rejected.
    CHECK_NOTHROW(return_set_modp(sq, sq, pt(2, 3), C("y/5 - x"), 5, 3));

    CHECK_THROWS_AS(return_set_modp(sq, sq, pt(2, 3), C("y - x"), 9, 3), InputError);
    CHECK_THROWS_AS(return_set_modp(sq, sq, pt(2, 3), C("y - x"), 2, 3), InputError);
    const Field K = Field::cyclotomic(7);
    const Poly sqK(K, {0, 0, 1});
    CHECK_THROWS_AS(return_set_modp(sqK, sqK, {Scalar(K, 1L), Scalar::zeta(K)}, C("x - z y", K), 29, 3), InputError);
}

TEST_CASE("mod p sets agree with the reduced exact orbit") {
    std::mt19937 rng(77);
    std::uniform_int_distribution<int> c(-3, 3), lead(1, 3), deg(2, 3), start(-2, 2), idx(0, 3);
    const auto primes = kernels::odd_primes(3, 50);
    for (int inst = 0; inst < 20; ++inst) {
        auto rand_poly = [&] {
            const int d = deg(rng);
            std::vector<Scalar> cs;
            for (int i = 0; i < d; ++i) cs.push_back(q(c(rng)));
            cs.push_back(q(lead(rng) * (c(rng) < 0 ? -1 : 1)));
            return Poly(Field(), cs);
        };
        const Poly F1 = rand_poly(), F2 = rand_poly();
        const Point alpha = pt(start(rng), start(rng));
        const int n0 = idx(rng);
        const Orbit o = orbit(F1, F2, alpha, 10, 1 << 16);
        REQUIRE(static_cast<int>(o.points.size()) > n0);
        const Point& hit = o.points[n0].point;
        const long s = c(rng);
        // Line through the n0-th orbit point.
        const BivarCurve curve(BivarPoly::from_y(Poly(Field(), {-hit.second, q(1)})) -
                               BivarPoly::from_x(Poly(Field(), {-hit.first, q(1)})) * q(s));
        const ReturnSet exact = return_set_exact(F1, F2, alpha, curve, 10, 1 << 16);
        CHECK(std::find(exact.indices.begin(), exact.indices.end(), n0) != exact.indices.end());
        const ModpSurvey survey = return_set_modp_survey(F1, F2, alpha, curve, primes, 10);
        CHECK(survey.good.size() + survey.rejected.size() == primes.size());
        for (const auto& r : survey.good) {
            std::vector<int> within;
            for (int n : r.indices)
                if (n <= exact.horizon) within.push_back(n);
            CHECK(within == reduce_exact_orbit(o, curve, r.prime));
            CHECK(subset(exact.indices, r.indices));
        }
        for (std::size_t i = 0; i < survey.running_intersection.size(); ++i) {
            CHECK(subset(exact.indices, survey.running_intersection[i]));
            if (i > 0) CHECK(subset(survey.running_intersection[i], survey.running_intersection[i - 1]));
        }
    }
}

TEST_CASE("survey rejects bad primes by name") {
    const ModpSurvey s = return_set_modp_survey(P("3x^2 + 1/5"), P("x^2"), pt(2, 3), C("y - x"), {3, 5, 7, 11}, 5);
    REQUIRE(s.rejected.size() == 2);
    CHECK(s.rejected[0].first == 3);
    CHECK(s.rejected[1].first == 5);
    CHECK(s.good.size() == 2);
}

TEST_CASE("progression examples") {
    std::vector<int> odd;
    for (int n = 1; n < 100; n += 2) odd.push_back(n);
    auto ps = progression_decompose(odd, 100);
    REQUIRE(ps);
    CHECK(*ps == std::vector<Progression>{{1, 2}});

    ps = progression_decompose({2}, 100);
    REQUIRE(ps);
    CHECK(*ps == std::vector<Progression>{{2, 0}});

    std::vector<int> primes;
    for (int n = 2; n <= 50; ++n) {
        bool prime = true;
        for (int d = 2; d * d <= n; ++d) prime = prime && n % d != 0;
        if (prime) primes.push_back(n);
    }
    CHECK_FALSE(progression_decompose(primes, 50));

    ps = progression_decompose({}, 30);
    REQUIRE(ps);
    CHECK(ps->empty());

    // Two interleaved classes beat a run of singletons.
    std::vector<int> mixed{0, 2};
    for (int n = 4; n <= 60; ++n) mixed.push_back(n);
    ps = progression_decompose(mixed, 60);
    REQUIRE(ps);
    CHECK(*ps == std::vector<Progression>{{0, 2}, {5, 2}});
}

TEST_CASE("progression decomposition reproduces synthetic sets") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const int horizon = 30 + static_cast<int>(rng() % 90);
        const int period = 1 + static_cast<int>(rng() % 8);
        const int tail = static_cast<int>(rng() % 10);
        std::vector<char> head(tail), pattern(period);
        for (auto& h : head) h = rng() % 3 == 0;
        for (auto& p : pattern) p = rng() % 2;
        std::vector<int> S;
        for (int n = 0; n <= horizon; ++n)
            if (n < tail ? head[n] : pattern[(n - tail) % period]) S.push_back(n);
        const auto ps = progression_decompose(S, horizon);
        REQUIRE(ps);
        CHECK(expand_progressions(*ps, horizon) == S);
        int singletons = 0;
        for (const auto& p : *ps) {
            CHECK(p.a >= 0);
            if (p.b == 0) ++singletons;
            else CHECK(period % p.b == 0);
        }
        // Never worse than listing the head and one class per residue.
        CHECK(ps->size() <= static_cast<std::size_t>(tail + period));
        CHECK(std::is_sorted(ps->begin(), ps->end()));
    }
}

TEST_CASE("preperiodic examples") {
    auto r = preperiodic_check(P("x^2 - 1"), q(0), 10);
    CHECK(r.kind == PreperiodicResult::Kind::Preperiodic);
    CHECK(r.tail == 0);
    CHECK(r.period == 2);

    r = preperiodic_check(P("x^2 + 1"), q(0), 10);
    REQUIRE(r.kind == PreperiodicResult::Kind::Escape);
    REQUIRE(r.escape);
    CHECK(r.escape->point == q(2));
    CHECK(r.escape->index == 2);
    CHECK(verify_escape(P("x^2 + 1"), *r.escape));

    r = preperiodic_check(P("x^2"), q(1), 10);
    CHECK(r.kind == PreperiodicResult::Kind::Preperiodic);
    CHECK(r.tail == 0);
    CHECK(r.period == 1);

    r = preperiodic_check(P("x^2 - 2"), q(1), 10);
    CHECK(r.kind == PreperiodicResult::Kind::Preperiodic);
    CHECK(r.tail == 1);
    CHECK(r.period == 1);

    // Slow orbits stay unknown at small N.
    r = preperiodic_check(P("x^2/4 + 1"), q(0), 2);
    CHECK(r.kind == PreperiodicResult::Kind::Unknown);
}

TEST_CASE("preperiodic classification against direct orbits") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> c(-3, 3);
    for (int trial = 0; trial < 60; ++trial) {
        const Poly f(Field(), {mpq_class(c(rng)), mpq_class(c(rng)), mpq_class(c(rng) == 0 ? 1 : c(rng) > 0 ? 1 : -1)});
        if (f.degree() < 2) continue;
        const Scalar a = q(c(rng), 1 + static_cast<long>(rng() % 2));
        const auto r = preperiodic_check(f, a, 12);
        if (r.kind == PreperiodicResult::Kind::Preperiodic) {
            Scalar x = a;
            for (int i = 0; i < r.tail; ++i) x = f(x);
            Scalar y = x;
            for (int i = 0; i < r.period; ++i) y = f(y);
            CHECK(y == x);
        } else if (r.kind == PreperiodicResult::Kind::Escape) {
            CHECK(verify_escape(f, *r.escape));
            CHECK(verify_escape(f, *r.escape, 8));
        }
    }
}

TEST_CASE("return sets on a periodic curve follow its period") {
    const Poly F1 = P("x^3"), F2 = P("-x^3");
    const BivarCurve curve = C("y - x");
    const auto cert = curve_period(curve, F1, F2, 4);
    REQUIRE(cert);
    CHECK(cert->period == 2);
    const ReturnSet r = return_set_exact(F1, F2, pt(2, 2), curve, 7);
    CHECK_FALSE(r.truncated_at);
    const auto ps = progression_decompose(r.indices, r.horizon);
    REQUIRE(ps);
    REQUIRE(ps->size() == 1);
    CHECK(ps->front() == Progression{0, 2});
    CHECK(cert->period % ps->front().b == 0);

    // Starting off the curve, returns begin one step later with the same modulus.
    const ReturnSet s = return_set_exact(F1, F2, pt(2, -2), curve, 7);
    const auto ps2 = progression_decompose(s.indices, s.horizon);
    REQUIRE(ps2);
    CHECK(*ps2 == std::vector<Progression>{{1, 2}});
}
