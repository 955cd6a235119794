// One pass/fail line per acceptance criterion; exit status 1 if any fails.
#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

#include "json.hpp"
#include "rittkit/cli.hpp"
#include "rittkit/constant_expr.hpp"
#include "rittkit/conjugacy.hpp"
#include "rittkit/decompose.hpp"
#include "rittkit/dml.hpp"
#include "rittkit/errors.hpp"
#include "rittkit/kernels.hpp"
#include "rittkit/msclass.hpp"
#include "rittkit/parse.hpp"
#include "rittkit/semiconj.hpp"
#include "rittkit/symmetry.hpp"

using namespace rittkit;

namespace {

struct Verdict {
    bool pass = true;
    std::vector<std::string> notes;
    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            notes.push_back("failed: " + what);
        }
    }
    void note(const std::string& s) { notes.push_back(s); }
};

Poly P(const char* s) { return parse_poly(s); }
Scalar q(long n, long d = 1) { return Scalar(Field(), mpq_class(n, d)); }
Poly xn(int n, const Field& K = Field()) { return Poly::monomial(Scalar(K, 1L), static_cast<std::size_t>(n)); }

mpz_class ipow(unsigned long b, unsigned long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), b, e);
    return r;
}

LinearPoly random_linear(std::mt19937& rng) {
    std::uniform_int_distribution<int> a(1, 4), b(-5, 5), sgn(0, 1), den(1, 2);
    return LinearPoly(q(sgn(rng) ? a(rng) : -a(rng), den(rng)), q(b(rng), den(rng)));
}

Poly random_poly(std::mt19937& rng, int lo, int hi) {
    std::uniform_int_distribution<int> deg(lo, hi), c(-4, 4);
    const int d = deg(rng);
    std::vector<Scalar> cs;
    for (int i = 0; i <= d; ++i) cs.push_back(q(c(rng)));
    if (cs.back().is_zero()) cs.back() = q(2);
    return Poly(Field(), cs);
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
bool subset(const std::vector<int>& a, const std::vector<int>& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

Verdict chebyshev_laws() {
    Verdict v;
    for (int m = 2; m <= 8; ++m)
        for (int n = 2; n <= 8; ++n) v.require(compose(chebyshev(m), chebyshev(n)) == chebyshev(m * n), "T_m o T_n = T_mn");
    for (const Scalar& t : {q(2), q(-3), q(1, 2), q(5, 7)})
        for (int d = 1; d <= 8; ++d) v.require(chebyshev(d)(t + t.inverse()) == t.pow(d) + t.pow(-d), "T_d(t + 1/t) = t^d + t^-d");
    v.note("49 compositions, 32 evaluations");
    return v;
}

Verdict torsion_period() {
    Verdict v;
    for (int N : {2, 3, 4}) {
        const Field K = Field::cyclotomic((1u << N) - 1);
        const Poly sq = xn(2, K);
        const auto cert = curve_period(parse_curve("x - z*y", K), sq, sq, N + 2);
        v.require(cert && cert->period == N && verify_period_certificate(*cert, sq, sq), "period " + std::to_string(N));
    }
    v.note("periods 2, 3, 4 over Q(zeta 3), Q(zeta 7), Q(zeta 15)");
    return v;
}

Verdict constants() {
    Verdict v;
    v.require(bound_c1(2, 2).value() == 32, "c1(2,2) = 32");
    v.require(bound_c1(3, 2).value() == 162, "c1(3,2) = 162");
    v.require(bound_c(2, 2).value() == mpz_class("2147483648"), "c(2,2) = 2^31");
    for (long d : {2L, 3L}) {
        v.require(bound_c(d, 2) == bound_c_closed_form_n2(d), "closed form, exact path");
        v.require(bound_c(d, 2, 64).evaluate() == bound_c_closed_form_n2(d, 64).evaluate(), "closed form, symbolic trees");
        v.require(bound_c(d, 2).value() == ipow(d, 2 * d * d * d * d) / 2, "closed form value");
    }
    v.require(bound_c1(2, 3).value() == ipow(2, 134), "c1(2,3) = 2^134");
    return v;
}

Verdict family_identity() {
    Verdict v;
    std::mt19937 rng(401);
    for (int i = 0; i < 50; ++i) {
        std::uniform_int_distribution<int> cd(1, 5), bd(1, 4), pd(0, 4);
        const int c = cd(rng), b = bd(rng);
        const Poly Pp = random_nonzero_at_zero(rng, pd(rng));
        v.require(compose(xn(c) * Pp.pow(static_cast<std::size_t>(b)), xn(b)) == compose(xn(b), xn(c) * compose(Pp, xn(b))), "identity");
    }
    v.note("50 random (c, b, P)");
    return v;
}

std::vector<Poly> brute_force_p(const Poly& f, const Poly& eta, int deg_bound) {
    const std::vector<Scalar> grid{q(-2), q(-1), q(-1, 2), q(0), q(1, 2), q(1), q(2)};
    std::vector<Poly> out;
    for (int b = 1; b <= deg_bound; ++b) {
        std::vector<std::size_t> idx(static_cast<std::size_t>(b) + 1, 0);
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
        const mpq_class x = c.rational();
        if (abs(x) > 2 || (x.get_den() != 1 && x.get_den() != 2)) return false;
    }
    return true;
}

Verdict solver_roundtrips() {
    Verdict v;
    std::mt19937 rng(403);
    int done = 0;
    while (done < 50) {
        std::uniform_int_distribution<int> cd(1, 3), bd(1, 3), pd(1, 2);
        const int c = cd(rng), b = bd(rng);
        const Poly Pp = random_nonzero_at_zero(rng, pd(rng));
        const LinearPoly l1 = random_linear(rng), l2 = random_linear(rng);
        const Poly f = conjugate(l1.inverse(), xn(c) * Pp.pow(static_cast<std::size_t>(b)));
        const Poly p = compose(l1.inverse(), compose(xn(b), l2));
        const Poly eta = conjugate(l2.inverse(), xn(c) * compose(Pp, xn(b)));
        if (f.degree() < 2) continue;
        v.require(contains(solve_eta_all(f, p), eta), "solve_eta recovers eta");
        v.require(contains(solve_p(f, eta, b), p), "solve_p recovers p");
        ++done;
    }
    std::vector<std::pair<Poly, Poly>> pairs{{P("x^2 + 1"), P("x^2 + 2")}, {P("x^3 + x"), P("x^3 + x")}, {P("x^2 - 2"), P("x^2 - 2")},
                                             {P("x^2"), P("x^2")}, {P("x (x + 1)^2"), P("x (x^2 + 1)")}, {P("x^3"), P("x^3")}};
    for (int k : {-1, 1, 2}) {
        const LinearPoly l(q(1), q(k));
        pairs.emplace_back(conjugate(l.inverse(), P("x (x + 1)^2")), P("x (x^2 + 1)"));
        pairs.emplace_back(P("x^3 - 3x"), conjugate(l, P("x^3 - 3x")));
    }
    int mismatches = 0, solutions = 0;
    for (const auto& [f, eta] : pairs)
        for (int bound = 1; bound <= 2; ++bound) {
            const auto brute = brute_force_p(f, eta, bound);
            auto fast = solve_p(f, eta, bound);
            std::erase_if(fast, [](const Poly& p) { return !on_grid(p); });
            solutions += static_cast<int>(brute.size());
            if (brute.size() != fast.size()) ++mismatches;
            for (const auto& p : brute)
                if (!contains(fast, p)) ++mismatches;
        }
    v.require(mismatches == 0, "grid oracle agreement");
    v.note("50 roundtrips, " + std::to_string(pairs.size()) + " oracle pairs, " + std::to_string(solutions) + " grid solutions, " +
           std::to_string(mismatches) + " mismatches");
    return v;
}

Verdict engstrom() {
    Verdict v;
    auto check = [&](const Poly& a, const Poly& b, const Poly& c, const Poly& d) {
        const EngstromCertificate e = engstrom_refine(a, b, c, d);
        v.require(compose(e.g, e.a_hat) == a && compose(e.g, e.c_hat) == c, "a = g o a_hat, c = g o c_hat");
        v.require(compose(e.b_hat, e.h) == b && compose(e.d_hat, e.h) == d, "b = b_hat o h, d = d_hat o h");
        v.require(compose(e.a_hat, e.b_hat) == compose(e.c_hat, e.d_hat), "a_hat o b_hat = c_hat o d_hat");
        v.require(e.g.degree() == std::gcd(a.degree(), c.degree()) && e.h.degree() == std::gcd(b.degree(), d.degree()), "degrees");
        return e;
    };
    std::mt19937 rng(405);
    for (int i = 0; i < 100; ++i) {
        const Poly G = random_poly(rng, 1, 2), H = random_poly(rng, 1, 2);
        Poly A1, B1, C1, D1;
        if (i % 3 == 0) {
            A1 = P("x^2");
            B1 = P("x^3");
            C1 = P("x^3");
            D1 = P("x^2");
        } else if (i % 3 == 1) {
            const Poly w = random_poly(rng, 1, 2);
            A1 = compose(w, P("x^2"));
            B1 = P("x^3 + x");
            C1 = compose(w, P("x*(x+1)^2"));
            D1 = P("x^2");
        } else {
            const Poly w = random_poly(rng, 2, 2);
            A1 = w;
            B1 = random_poly(rng, 1, 2);
            C1 = compose(w, LinearPoly(q(1), q(3)));
            D1 = B1 - Poly::constant(q(3));
        }
        check(compose(G, A1), compose(B1, H), compose(G, C1), compose(D1, H));
    }
    const Poly a = P("x^2"), b = P("x^2 + x"), c = P("(x - 1)^2"), d = P("x^2 + x + 1");
    const auto e = check(a, b, c, d);
    v.require(e.ell && *e.ell == LinearPoly(q(1), q(1)), "ell = x + 1");
    v.require(e.ell && compose(c, *e.ell) == a && compose(e.ell->inverse(), d) == b, "a = c o ell, b = ell^-1 o d");
    v.note("100 quadruples, ell = " + (e.ell ? e.ell->to_string() : std::string("none")));
    return v;
}

Verdict classification() {
    Verdict v;
    std::mt19937 rng(407);
    for (int d = 2; d <= 8; ++d) {
        const Poly T = chebyshev(d);
        for (const Poly& base : {xn(d), T, T * q(-1)}) {
            v.require(!classify(base).disintegrated, "x^d, +-T_d not disintegrated");
            v.require(!classify(conjugate(random_linear(rng), base)).disintegrated, "conjugates not disintegrated");
        }
    }
    for (const Poly& f : {P("x^2 + 1"), P("x^3 + x"), P("x^3 + x^2 + 7")}) {
        v.require(classify(f).disintegrated, "disintegrated sample");
        for (int i = 0; i < 20; ++i) {
            const Poly g = conjugate(random_linear(rng), f);
            v.require(classify(g).disintegrated, "invariance under conjugation");
            if (i < 3) {
                const Poly g4 = iterate(g, 4);
                v.require(!is_cyclic(g4) && !is_dihedral(g4), "f^4 neither cyclic nor dihedral");
            }
        }
        const Poly f4 = iterate(f, 4);
        v.require(!is_cyclic(f4) && !is_dihedral(f4), "f^4 neither cyclic nor dihedral");
    }
    return v;
}

Verdict symmetry() {
    Verdict v;
    const Poly f = P("x^3 + x");
    const LinearGroup G = gamma_group(f);
    const std::vector<LinearPoly> want{LinearPoly::identity(Field()), LinearPoly(q(-1), q(0))};
    v.require(G.kind == LinearGroup::Kind::Finite && G.elements == want && verify_finite_group(G), "Gamma(x^3 + x) = {x, -x}");
    const Poly g = P("x^2 + 1");
    v.require(gamma_group(g).kind == LinearGroup::Kind::Infinite && is_cyclic(g), "Gamma(x^2 + 1) infinite and x^2 + 1 cyclic");
    const LinearGroup M = m_infinity(g, 8);
    v.require(M.elements.size() == 1 && M.elements[0].is_identity(), "M(f^inf) trivial for x^2 + 1");
    const Poly mf = f * q(-1);
    const AlignResult r = align_iterates(mf, f, LinearPoly::identity(Field()), 2);
    const Poly conj = compose(compose(r.ell, f), r.ell.inverse());
    v.require(r.N == 2 && iterate(mf, 2) == iterate(conj, 2), "align N = 2 verified");
    v.note("align N = " + std::to_string(r.N) + ", ell = " + r.ell.to_string() + (r.within_half_degree ? "" : "; N exceeds deg/2 = 1.5 (recorded)"));
    return v;
}

Verdict ms_curves() {
    Verdict v;
    const Poly f = P("x^3 + x");
    const auto curves = ms_diagonal_curves(f, 3, 3);
    v.require(!curves.empty(), "curves emitted");
    for (const auto& d : curves) v.require(d.certificate.period == 1 && verify_period_certificate(d.certificate, f, f), "period-1 certificate");
    const Poly g = P("x^3");
    std::vector<BivarCurve> candidates;
    for (int a = -2; a <= 2; ++a)
        for (int b = -2; b <= 2; ++b) {
            if (a != 0) candidates.emplace_back(BivarPoly::graph(Poly(Field(), {mpq_class(b), mpq_class(a)})));
            candidates.emplace_back(BivarPoly::graph(Poly(Field(), {mpq_class(b), mpq_class(a), mpq_class(1)})));
            candidates.emplace_back(BivarPoly::graph(Poly(Field(), {mpq_class(b), mpq_class(a), mpq_class(1)})).swapped());
        }
    for (int a = -1; a <= 1; ++a) {
        candidates.push_back(parse_curve("x - " + std::to_string(a)));
        candidates.push_back(parse_curve("y - " + std::to_string(a)));
    }
    int mixed = 0, periodic = 0, capped = 0;
    for (const auto& c : candidates) {
        try {
            const auto cert = curve_period(c, f, g, 4);
            if (!cert) continue;
            ++periodic;
            const auto prof = projection_profile(c);
            if (!prof.x_constant && !prof.y_constant) ++mixed;
        } catch (const ResourceError&) {
            ++capped;
        }
    }
    v.require(periodic > 0, "periodic candidates found");
    v.require(mixed == 0, "no periodic curve with both projections non-constant");
    v.note(std::to_string(curves.size()) + " diagonal curves; mixed search: " + std::to_string(candidates.size()) + " candidates, " +
           std::to_string(periodic) + " periodic, " + std::to_string(capped) + " at the degree cap");
    return v;
}

Verdict dml() {
    Verdict v;
    const Poly sq = P("x^2");
    const Point a24{q(2), q(4)}, a23{q(2), q(3)};
    const auto r = return_set_exact(sq, sq, a24, parse_curve("y - x^2"), 12, 1 << 14);
    std::vector<int> all(13);
    std::iota(all.begin(), all.end(), 0);
    v.require(r.indices == all, "y = x^2: all n <= 12");
    const auto diag = return_set_exact(sq, sq, a23, parse_curve("y - x"), 10);
    v.require(diag.indices.empty() && diag.horizon == 10, "(2,3) on the diagonal: empty at horizon 10");
    const auto m5 = return_set_modp(sq, sq, a23, parse_curve("y - x"), 5, 10);
    v.require(std::find(m5.indices.begin(), m5.indices.end(), 1) != m5.indices.end(), "p = 5 false positive at n = 1");

    std::mt19937 rng(409);
    std::uniform_int_distribution<int> c(-3, 3), lead(1, 3), start(-2, 2), idx(0, 3);
    const auto primes = kernels::odd_primes(3, 50);
    int good = 0;
    for (int inst = 0; inst < 20; ++inst) {
        auto rp = [&] {
            std::vector<Scalar> cs{q(c(rng)), q(c(rng)), q(lead(rng))};
            return Poly(Field(), cs);
        };
        const Poly F1 = rp(), F2 = rp();
        const Point alpha{q(start(rng)), q(start(rng))};
        const auto o = orbit(F1, F2, alpha, 10, 1 << 14);
        const auto& hit = o.points[idx(rng)].point;
        const BivarCurve C(BivarPoly::from_y(Poly(Field(), {-hit.second, q(1)})) - BivarPoly::from_x(Poly(Field(), {-hit.first, q(c(rng))})));
        const auto exact = return_set_exact(F1, F2, alpha, C, 10, 1 << 14);
        const auto survey = return_set_modp_survey(F1, F2, alpha, C, primes, 10);
        for (const auto& m : survey.good) {
            v.require(subset(exact.indices, m.indices), "exact inside mod p");
            ++good;
        }
        for (std::size_t i = 1; i < survey.running_intersection.size(); ++i)
            v.require(subset(survey.running_intersection[i], survey.running_intersection[i - 1]), "intersection shrinks");
    }

    int synthetic = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const int horizon = 40 + static_cast<int>(rng() % 60), period = 1 + static_cast<int>(rng() % 6), tail = static_cast<int>(rng() % 8);
        std::vector<char> head(tail), pattern(period);
        for (auto& h : head) h = rng() % 3 == 0;
        for (auto& p : pattern) p = rng() % 2;
        std::vector<int> S;
        for (int n = 0; n <= horizon; ++n)
            if (n < tail ? head[n] : pattern[(n - tail) % period]) S.push_back(n);
        const auto ps = progression_decompose(S, horizon);
        v.require(ps && expand_progressions(*ps, horizon) == S, "synthetic set reproduced");
        ++synthetic;
    }
    const auto single = progression_decompose({2}, 100);
    v.require(single && *single == std::vector<Progression>{{2, 0}}, "singleton {2 + 0k}");
    v.note(std::to_string(good) + " (instance, good prime) pairs sound; " + std::to_string(synthetic) + " synthetic sets reproduced");
    return v;
}

Verdict cli_checks() {
    Verdict v;
    std::mt19937 rng(411);
    const std::vector<Field> fields{Field(), Field::cyclotomic(3), Field::cyclotomic(7)};
    for (int i = 0; i < 200; ++i) {
        const Field& K = fields[i % fields.size()];
        std::vector<Scalar> cs;
        const int deg = static_cast<int>(rng() % 7);
        for (int k = 0; k <= deg; ++k) {
            std::vector<mpq_class> e;
            for (std::size_t j = 0; j < K.dimension(); ++j) {
                mpq_class x(static_cast<long>(rng() % 21) - 10, 1 + static_cast<long>(rng() % 4));
                x.canonicalize();
                e.push_back(j == 0 || rng() % 2 ? x : mpq_class(0));
            }
            cs.emplace_back(K, e);
        }
        if (cs.back().is_zero()) cs.back() = Scalar(K, 1L);
        const Poly p(K, cs);
        v.require(parse_poly(p.to_string(), K) == p, "roundtrip " + p.to_string());
    }
    const std::vector<std::pair<std::string, std::vector<std::string>>> golden{
        {"bound-c", {"bound-c", "2", "2"}},
        {"curve-period", {"curve-period", "--field", "Q(zeta 7)", "--curve", "x - z*y", "--f", "x^2", "--g", "x^2", "--nmax", "5"}},
        {"classify", {"classify", "--f", "x^3 + x"}},
        {"extension", {"gamma", "--f", "x^4 + x"}},
    };
    for (const auto& [name, args] : golden) {
        const auto a = cli::run_command(args), b = cli::run_command(args);
        v.require(a.document == b.document, name + " identical across runs");
        std::ifstream in(std::string(RITTKIT_GOLDEN_DIR) + "/" + name + ".json");
        std::stringstream ss;
        ss << in.rdbuf();
        v.require(in.good() || !ss.str().empty(), name + " golden file present");
        v.require(ss.str() == a.document, name + " matches golden file");
    }
    const std::vector<std::pair<int, std::vector<std::string>>> statuses{
        {cli::kExitOk, {"classify", "--f", "x^2 + 1"}},
        {cli::kExitInput, {"classify", "--f", "x^^2"}},
        {cli::kExitResource, {"decompose", "--f", "x^8 + x", "--deg-cap", "4"}},
        {cli::kExitExtension, {"gamma", "--f", "x^4 + x"}},
    };
    for (const auto& [code, args] : statuses) v.require(cli::run_command(args).exit_code == code, "exit status " + std::to_string(code));
    v.note("200 roundtrips, 4 golden documents, exit statuses 0/2/3/4");
    return v;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"Chebyshev laws", chebyshev_laws},
        {"torsion-translate period", torsion_period},
        {"constants c1 and c", constants},
        {"semiconjugacy family identity", family_identity},
        {"solver roundtrips and grid oracle", solver_roundtrips},
        {"Engstrom certificates", engstrom},
        {"classification", classification},
        {"symmetry groups", symmetry},
        {"MS diagonal curves", ms_curves},
        {"DML harness", dml},
        {"CLI", cli_checks},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v.pass = false;
            v.notes.push_back(std::string("exception: ") + e.what());
        }
        if (!v.pass) ++failed;
        std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << " (" << criteria[i].first << ")";
        std::vector<std::string> shown;
        for (const auto& n : v.notes)
            if (std::find(shown.begin(), shown.end(), n) == shown.end()) shown.push_back(n);
        for (const auto& n : shown) std::cout << "; " << n;
        std::cout << "\n";
    }
    return failed == 0 ? 0 : 1;
}
