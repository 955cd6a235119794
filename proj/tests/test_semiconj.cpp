#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "rittkit/conjugacy.hpp"
#include "rittkit/errors.hpp"
#include "rittkit/parse.hpp"
#include "rittkit/semiconj.hpp"

using namespace rittkit;

namespace {

Poly P(const char* s) { return parse_poly(s); }
Scalar q(long n, long d = 1) { return Scalar(Field(), mpq_class(n, d)); }
Poly xn(int n) { return Poly::monomial(q(1), n); }

LinearPoly random_linear(std::mt19937& rng) {
    std::uniform_int_distribution<int> a(1, 4), b(-5, 5), sgn(0, 1), den(1, 2);
    return LinearPoly(q(sgn(rng) ? a(rng) : -a(rng), den(rng)), q(b(rng), den(rng)));
}

Poly random_nonzero_at_zero(std::mt19937& rng, int deg) {
    std::uniform_int_distribution<int> c(-3, 3);
    std::vector<Scalar> cs;
    for (int i = 0; i <= deg; ++i) cs.push_back(q(c(rng)));
    if (cs.front().is_zero()) cs.front() = q(1);
    if (cs.back().is_zero()) cs.back() = q(1);
    return Poly(Field(), cs);
}

bool contains(const std::vector<Poly>& v, const Poly& p) { return std::find(v.begin(), v.end(), p) != v.end(); }

// Exhaustive search over a small coefficient grid.
std::vector<Poly> brute_force_p(const Poly& f, const Poly& eta, int deg_bound) {
    const std::vector<Scalar> grid{q(-2), q(-1), q(-1, 2), q(0), q(1, 2), q(1), q(2)};
    std::vector<Poly> out;
    for (int b = 1; b <= deg_bound; ++b) {
        std::vector<std::size_t> idx(b + 1, 0);
        while (true) {
            std::vector<Scalar> cs;
            for (int i = 0; i <= b; ++i) cs.push_back(grid[idx[i]]);
            if (!cs.back().is_zero()) {
                const Poly p(Field(), cs);
                if (compose(f, p) == compose(p, eta)) out.push_back(p);
            }
            int k = 0;
            while (k <= b && ++idx[k] == grid.size()) idx[k++] = 0;
            if (k > b) break;
        }
    }
    return out;
}

bool on_grid(const Poly& p) {
    for (const auto& c : p.coeffs()) {
        const mpq_class v = c.rational();
        if (abs(v) > 2 || (v.get_den() != 1 && v.get_den() != 2)) return false;
    }
    return true;
}

struct Constructed {
    Poly f, p, eta;
};

// f = l1^-1 o x^c P(x)^b o l1, p = l1^-1 o x^b o l2, eta = l2^-1 o x^c P(x^b) o l2.
Constructed construct(std::mt19937& rng, int c, int b, const Poly& Pp) {
    const LinearPoly l1 = random_linear(rng), l2 = random_linear(rng);
    const Poly F = xn(c) * Pp.pow(b), E = xn(c) * compose(Pp, xn(b));
    return {conjugate(l1.inverse(), F), compose(l1.inverse(), compose(xn(b), l2)), conjugate(l2.inverse(), E)};
}

}  // namespace

TEST_CASE("semiconj_check examples") {
    CHECK(semiconj_check({P("x^3 (x + 1)^2"), P("x^2"), P("x^5 + x^3")}));
    const Poly f = P("x^4 - 2x + 3");
    CHECK(semiconj_check({f, P("x"), f}));
    CHECK_FALSE(semiconj_check({P("x^2"), P("x^2"), P("x^2 + 1")}));
}

TEST_CASE("the x^c P(x)^b family identity") {
    std::mt19937 rng(201);
    for (int i = 0; i < 50; ++i) {
        std::uniform_int_distribution<int> cd(1, 4), bd(1, 4), pd(1, 4);
        const int c = cd(rng), b = bd(rng);
        const Poly Pp = random_nonzero_at_zero(rng, pd(rng));
        CHECK(compose(xn(c) * Pp.pow(b), xn(b)) == compose(xn(b), xn(c) * compose(Pp, xn(b))));
    }
}

TEST_CASE("solve_eta examples") {
    auto eta = solve_eta(P("x^3 (x + 1)^2"), P("x^2"));
    REQUIRE(eta);
    CHECK(*eta == P("x^5 + x^3"));
    // -eta is a second solution since p is even.
    CHECK(solve_eta_all(P("x^3 (x + 1)^2"), P("x^2")).size() == 2);
    const Poly f = P("x^3 - x + 2");
    CHECK(solve_eta(f, P("x")) == f);
    CHECK_FALSE(solve_eta(P("x^2 + 1"), P("x^2")));
}

TEST_CASE("solve_p examples") {
    const auto sols = solve_p(P("x^3 (x + 1)^2"), P("x^5 + x^3"), 3);
    CHECK(contains(sols, P("x^2")));
    const Poly f = P("x^3 + x");
    const auto self = solve_p(f, f, 1);
    CHECK(contains(self, P("x")));
    CHECK(contains(self, P("-x")));
    CHECK(solve_p(P("x^2 + 1"), P("x^2 + 2"), 4).empty());
}

TEST_CASE("solve_eta and solve_p roundtrips") {
    std::mt19937 rng(203);
    int done = 0;
    while (done < 50) {
        std::uniform_int_distribution<int> cd(1, 3), bd(1, 3), pd(1, 2);
        const int c = cd(rng), b = bd(rng);
        const Poly Pp = random_nonzero_at_zero(rng, pd(rng));
        const auto w = construct(rng, c, b, Pp);
        if (w.f.degree() < 2) continue;
        CHECK(semiconj_check({w.f, w.p, w.eta}));
        CHECK(contains(solve_eta_all(w.f, w.p), w.eta));
        const auto ps = solve_p(w.f, w.eta, b);
        CHECK(contains(ps, w.p));
        for (const auto& p : ps) CHECK(semiconj_check({w.f, p, w.eta}));
        ++done;
    }
}

TEST_CASE("solve_p agrees with a brute-force grid search") {
    std::mt19937 rng(207);
    std::vector<std::pair<Poly, Poly>> pairs{{P("x^2 + 1"), P("x^2 + 2")}, {P("x^3 + x"), P("x^3 + x")}, {P("x^2 - 2"), P("x^2 - 2")},
                                             {P("x^2"), P("x^2")}, {P("x (x + 1)^2"), P("x (x^2 + 1)")}, {P("x^3"), P("x^3")}};
    for (int k : {-1, 1, 2}) {
        const LinearPoly l(q(1), q(k));
        // f = l^-1 o x (x + 1)^2 o l and p = l^-1 o x^2 stay on the grid.
        pairs.emplace_back(conjugate(l.inverse(), P("x (x + 1)^2")), P("x (x^2 + 1)"));
        pairs.emplace_back(P("x^3 - 3x"), conjugate(l, P("x^3 - 3x")));
    }
    std::size_t total = 0;
    for (const auto& [f, eta] : pairs) {
        for (int bound = 1; bound <= 2; ++bound) {
            const auto brute = brute_force_p(f, eta, bound);
            total += brute.size();
            auto fast = solve_p(f, eta, bound);
            std::erase_if(fast, [](const Poly& p) { return !on_grid(p); });
            CHECK(brute.size() == fast.size());
            for (const auto& p : brute) CHECK(contains(fast, p));
        }
    }
    CHECK(total > 10);
}

TEST_CASE("disintegration transports along semiconjugacies") {
    std::mt19937 rng(211);
    int done = 0;
    while (done < 30) {
        std::uniform_int_distribution<int> cd(1, 3), bd(2, 3);
        const auto w = construct(rng, cd(rng), bd(rng), random_nonzero_at_zero(rng, 1));
        if (w.f.degree() < 2) continue;
        CHECK(classify(w.eta).disintegrated == classify(w.f).disintegrated);
        ++done;
    }
}

TEST_CASE("inou normal form examples") {
    const SemiconjWitness w{P("x^3 (x + 1)^2"), P("x^2"), P("x^5 + x^3")};
    auto nf = inou_normal_form(w);
    CHECK(nf.l1.is_identity());
    CHECK(nf.l2.is_identity());
    CHECK(nf.b == 2);
    CHECK(nf.c == 3);
    CHECK(nf.P == P("x + 1"));
    // c = 3, b = 2, deg f = 5: c is congruent to deg f modulo b but not to b modulo deg f.
    CHECK_FALSE(nf.congruence_flag);
    CHECK(nf.degree_congruence_flag);

    const Poly f = P("x^3 + x^2 + 7");
    nf = inou_normal_form({f, P("x"), f});
    CHECK(nf.b == 1);
    CHECK(conjugate(nf.l1, f) == Poly::monomial(q(1), nf.c) * nf.P);

    std::mt19937 rng(213);
    for (int i = 0; i < 10; ++i) {
        const LinearPoly l = random_linear(rng);
        const SemiconjWitness v{conjugate(l, w.f), compose(l, w.p), w.eta};
        const auto m = inou_normal_form(v);
        CHECK(m.b == 2);
        CHECK(m.c == 3);
        CHECK(m.P.degree() == 1);
        CHECK(conjugate(m.l1, v.f) == Poly::monomial(q(1), m.c) * m.P.pow(m.b));
        CHECK(compose(m.l1, compose(v.p, m.l2.inverse())) == xn(2));
        CHECK(conjugate(m.l2, v.eta) == xn(m.c) * compose(m.P, xn(m.b)));
    }
    CHECK_THROWS_AS(inou_normal_form({P("x^2 + 1"), P("x^2"), P("x^2 + 1")}), HypothesisViolation);
}

TEST_CASE("inou normal form of constructed witnesses") {
    std::mt19937 rng(217);
    int done = 0;
    while (done < 25) {
        std::uniform_int_distribution<int> cd(1, 3), bd(2, 3);
        const int c = cd(rng), b = bd(rng);
        const auto w = construct(rng, c, b, random_nonzero_at_zero(rng, 1 + done % 2));
        if (std::gcd(w.f.degree(), b) != 1 || !is_disintegrated(w.f)) continue;
        const auto nf = inou_normal_form({w.f, w.p, w.eta});
        CHECK(nf.b == b);
        CHECK(nf.c == c);
        CHECK(nf.degree_congruence_flag);
        CHECK_FALSE(nf.P.coeff(0).is_zero());
        ++done;
    }
}

TEST_CASE("common semiconjugate examples") {
    const Poly f = P("x^3 + x^2 + 7");
    auto w = common_semiconjugate(f, f, 2, 4);
    REQUIRE(w);
    CHECK(w->N == 1);
    CHECK(w->eta == f);
    CHECK(w->p == P("x"));
    CHECK(w->q == P("x"));

    const LinearPoly l(q(2), q(-1));
    w = common_semiconjugate(conjugate(l, f), f, 2, 4);
    REQUIRE(w);
    CHECK(w->N == 1);
    CHECK(w->eta == f);
    CHECK(w->p == l.to_poly());
    CHECK(w->q == P("x"));

    w = common_semiconjugate(P("x^3 (x + 1)^2"), P("x^5 + x^3"), 2, 4);
    REQUIRE(w);
    CHECK(w->N == 1);
    CHECK(w->eta == P("x^5 + x^3"));
    CHECK(w->p == P("x^2"));
    CHECK(w->q == P("x"));
    CHECK(verify_common(P("x^3 (x + 1)^2"), P("x^5 + x^3"), *w));

    const auto s = common_semiconjugate_search(P("x^2 + 1"), P("x^2 + 2"), 2, 4);
    CHECK_FALSE(s.witness);
    CHECK(s.transcript.size() == 2);
}

TEST_CASE("common semiconjugate witnesses verify") {
    std::mt19937 rng(219);
    int found = 0;
    for (int i = 0; i < 20; ++i) {
        std::uniform_int_distribution<int> cd(1, 2);
        const auto w = construct(rng, cd(rng), 2, random_nonzero_at_zero(rng, 1));
        if (!is_disintegrated(w.f)) continue;
        const LinearPoly l = random_linear(rng);
        const Poly g = conjugate(l, w.eta);
        const auto cw = common_semiconjugate(w.f, g, 1, 4);
        REQUIRE(cw);
        CHECK(verify_common(w.f, g, *cw));
        ++found;
    }
    CHECK(found > 10);
}

TEST_CASE("approx classes") {
    const Poly f = P("x^3 + x^2 + 7");
    auto r = approx_classes({f, conjugate(LinearPoly(q(3), q(1)), f)}, 2, 4);
    CHECK(r.classes.size() == 1);

    r = approx_classes({P("x^3 (x + 1)^2"), P("x^5 + x^3")}, 2, 4);
    REQUIRE(r.classes.size() == 1);
    REQUIRE(r.witnesses[0]);
    CHECK(r.witnesses[0]->N == 1);
    CHECK(r.witnesses[0]->theta == P("x^5 + x^3"));

    r = approx_classes({P("x^2 + 1"), P("x^2 + 2")}, 2, 4);
    CHECK(r.classes.size() == 2);
    CHECK(r.at_caps);

    r = approx_classes({P("x^3 (x + 1)^2"), P("x^2 + 1"), P("x^5 + x^3"), conjugate(LinearPoly(q(1), q(2)), P("x^5 + x^3"))}, 1, 4);
    REQUIRE(r.classes.size() == 2);
    CHECK(r.classes[0] == std::vector<int>{0, 2, 3});
    REQUIRE(r.witnesses[0]);
}
