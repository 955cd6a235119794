#include "rittkit/decompose.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "rittkit/errors.hpp"

namespace rittkit {

namespace {

void require_same(const Poly& a, const Poly& b) {
    if (!(a.field() == b.field())) throw InputError("field mismatch: " + a.field().to_string() + " vs " + b.field().to_string());
}

// Leading terms b_0..b_{terms-1} of (F(x) / (lc F x^N))^(1/r) as a series in 1/x.
std::vector<Scalar> top_series_root(const Poly& F, int r, int terms) {
    const Field& K = F.field();
    const int N = F.degree();
    const Scalar inv_lc = F.lc().inverse();
    std::vector<Scalar> a(terms, Scalar(K)), b(terms, Scalar(K));
    for (int j = 0; j < terms && j <= N; ++j) a[j] = F.coeff(N - j) * inv_lc;
    b[0] = Scalar(K, 1L);
    const mpq_class alpha1 = mpq_class(1, r) + 1;
    for (int k = 1; k < terms; ++k) {
        Scalar acc(K);
        for (int j = 1; j <= k; ++j) {
            if (a[j].is_zero()) continue;
            mpq_class w = alpha1 * j - k;
            acc += Scalar(K, w) * a[j] * b[k - j];
        }
        b[k] = acc * Scalar(K, mpq_class(1, k));
    }
    return b;
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& m) { return divmod(a * b, m).second; }

bool chain_before(const DecompositionChain& a, const DecompositionChain& b) {
    const auto da = a.degrees(), db = b.degrees();
    if (da != db) return da < db;
    for (std::size_t i = 0; i < a.factors.size(); ++i) {
        if (canonical_before(a.factors[i], b.factors[i])) return true;
        if (canonical_before(b.factors[i], a.factors[i])) return false;
    }
    return false;
}

std::vector<int> proper_divisors(int n) {
    std::vector<int> out;
    for (int m = 2; m < n; ++m)
        if (n % m == 0) out.push_back(m);
    return out;
}

class ChainEnumerator {
  public:
    std::vector<DecompositionChain> run(const Poly& f) {
        const std::string key = f.to_string();
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        std::vector<DecompositionChain> out;
        for (int m : proper_divisors(f.degree())) {
            auto h = normalized_right_factor(f, m);
            if (!h || !is_indecomposable(*h)) continue;
            auto g = left_factor_solve(f, *h);
            for (auto chain : run(*g)) {
                chain.factors.push_back(*h);
                out.push_back(std::move(chain));
            }
        }
        if (out.empty()) out.push_back(DecompositionChain{{f}});
        memo_.emplace(key, out);
        return out;
    }

  private:
    std::map<std::string, std::vector<DecompositionChain>> memo_;
};

}  // namespace

Poly DecompositionChain::recompose() const {
    if (factors.empty()) throw InputError("empty chain");
    Poly acc = factors.back();
    for (std::size_t i = factors.size() - 1; i-- > 0;) acc = compose(factors[i], acc);
    return acc;
}

std::vector<int> DecompositionChain::degrees() const {
    std::vector<int> d;
    for (const auto& f : factors) d.push_back(f.degree());
    return d;
}

Poly normalized_right_factor_candidate(const Poly& F, int m) {
    const int N = F.degree();
    if (m < 1 || N < 1 || N % m != 0) throw InputError("right factor degree must divide deg F");
    const auto b = top_series_root(F, N / m, m);
    std::vector<Scalar> c(m + 1, Scalar(F.field()));
    for (int j = 0; j < m; ++j) c[m - j] = b[j];
    return Poly(F.field(), std::move(c));
}

std::optional<Poly> normalized_right_factor(const Poly& F, int m) {
    Poly h = normalized_right_factor_candidate(F, m);
    if (!left_factor_solve(F, h)) return std::nullopt;
    return h;
}

std::optional<Poly> left_factor_solve(const Poly& F, const Poly& h) {
    require_same(F, h);
    if (h.degree() < 1) throw InputError("left_factor_solve needs deg h >= 1");
    if (F.degree() < 0 || F.degree() % h.degree() != 0) return std::nullopt;
    std::vector<Scalar> g;
    Poly cur = F;
    while (!cur.is_zero()) {
        auto [q, r] = divmod(cur, h);
        if (r.degree() > 0) return std::nullopt;
        g.push_back(r.coeff(0));
        cur = std::move(q);
    }
    return Poly(F.field(), std::move(g));
}

std::optional<unsigned> cyclotomic_hint_nth_root(const Poly& equation, const Scalar& lambda, unsigned r) {
    const unsigned base = lambda.field().order();
    const unsigned limit = std::min(4u * r * std::max(base, 1u), 256u);
    for (unsigned M = 3; M <= limit; ++M) {
        if (M % base != 0 || M % 4 == 2 || M == base) continue;
        const Field target = Field::cyclotomic(M);
        const Poly eq = lift(equation, target);
        for (const auto& y : nth_roots(lift(lambda, target), r))
            if (eq(y).is_zero()) return M;
    }
    return std::nullopt;
}

std::vector<Poly> right_factor_solve(const Poly& F, const Poly& g) {
    require_same(F, g);
    const Field& K = F.field();
    const int r = g.degree();
    if (r < 1) throw InputError("right_factor_solve needs deg g >= 1");
    if (F.degree() < 1 || F.degree() % r != 0) throw InputError("deg g must divide deg F");
    const int m = F.degree() / r;

    const auto H = normalized_right_factor(F, m);
    if (!H) return {};
    const Poly G = *left_factor_solve(F, *H);

    // Remaining unknowns: h = u H + c with g(u x + c) = G. Solve over K[u] / (u^r - lambda).
    const Scalar lambda = G.lc() / g.lc();
    const Poly M = Poly::monomial(Scalar(K, 1L), r) - Poly::constant(lambda);
    const Poly u = Poly::x(K);
    const Poly uinv = divmod(Poly::monomial(lambda.inverse(), r - 1), M).second;
    Poly uinv_pow = Poly::constant(Scalar(K, 1L));
    for (int i = 0; i < r - 1; ++i) uinv_pow = mulmod(uinv_pow, uinv, M);
    const Poly c = (uinv_pow * G.coeff(r - 1) - Poly::constant(g.coeff(r - 1))) * (Scalar(K, static_cast<long>(r)) * g.lc()).inverse();

    std::vector<Poly> acc{Poly::constant(g.lc())};
    for (int i = r - 1; i >= 0; --i) {
        std::vector<Poly> next(acc.size() + 1, Poly(K));
        for (std::size_t k = 0; k < acc.size(); ++k) {
            next[k + 1] += mulmod(acc[k], u, M);
            next[k] += mulmod(acc[k], c, M);
        }
        next[0] += Poly::constant(g.coeff(i));
        acc = std::move(next);
    }
    Poly eq = M;
    for (std::size_t k = 0; k < acc.size(); ++k) eq = gcd(eq, acc[k] - Poly::constant(G.coeff(k)));
    if (eq.degree() < 1) return {};

    std::vector<Poly> out;
    for (const auto& uu : nth_roots(lambda, r)) {
        if (!eq(uu).is_zero()) continue;
        Poly h = *H * uu + Poly::constant(c(uu));
        if (compose(g, h) == F) out.push_back(std::move(h));
    }
    if (out.empty()) {
        const std::string text = eq.to_string("u") + " = 0";
        throw FieldExtensionRequired("right factor exists only over an extension of " + K.to_string(), text,
                                     cyclotomic_hint_nth_root(eq, lambda, r));
    }
    std::sort(out.begin(), out.end(), [](const Poly& a, const Poly& b) { return canonical_before(a, b); });
    return out;
}

bool is_indecomposable(const Poly& f) {
    for (int m : proper_divisors(f.degree()))
        if (normalized_right_factor(f, m)) return false;
    return true;
}

Decompositions complete_decompositions(const Poly& f, int degree_cap) {
    if (f.degree() < 2) throw InputError("complete_decompositions needs deg f >= 2");
    if (f.degree() > degree_cap)
        throw ResourceError("degree " + std::to_string(f.degree()) + " exceeds the decomposition cap " + std::to_string(degree_cap));
    Decompositions out;
    out.chains = ChainEnumerator().run(f);
    std::sort(out.chains.begin(), out.chains.end(), chain_before);
    out.chains.erase(std::unique(out.chains.begin(), out.chains.end()), out.chains.end());
    for (const auto& c : out.chains) {
        auto d = c.degrees();
        if (std::find(out.degree_sequences.begin(), out.degree_sequences.end(), d) == out.degree_sequences.end())
            out.degree_sequences.push_back(std::move(d));
    }
    return out;
}

EngstromCertificate engstrom_refine(const Poly& a, const Poly& b, const Poly& c, const Poly& d) {
    for (const Poly* p : {&b, &c, &d}) require_same(a, *p);
    for (const Poly* p : {&a, &b, &c, &d})
        if (p->degree() < 1) throw InputError("engstrom_refine needs nonconstant polynomials");
    const Poly F = compose(a, b);
    if (!(F == compose(c, d))) throw HypothesisViolation("a o b differs from c o d");

    const int N = F.degree();
    const int gh = std::gcd(b.degree(), d.degree());
    const int gg = std::gcd(a.degree(), c.degree());

    auto fail = [] { return Error("internal: Engstrom refinement did not close"); };
    EngstromCertificate cert;
    const auto h = normalized_right_factor(b, gh);
    if (!h) throw fail();
    cert.h = *h;
    const auto bh = left_factor_solve(b, cert.h), dh = left_factor_solve(d, cert.h);
    const auto R = normalized_right_factor(F, N / gg);
    if (!bh || !dh || !R) throw fail();
    cert.b_hat = *bh;
    cert.d_hat = *dh;
    const auto g = left_factor_solve(F, *R), ah = left_factor_solve(*R, b), ch = left_factor_solve(*R, d);
    if (!g || !ah || !ch) throw fail();
    cert.g = *g;
    cert.a_hat = *ah;
    cert.c_hat = *ch;
    if (!(compose(cert.g, cert.a_hat) == a && compose(cert.g, cert.c_hat) == c && compose(cert.b_hat, cert.h) == b &&
          compose(cert.d_hat, cert.h) == d && compose(cert.a_hat, cert.b_hat) == compose(cert.c_hat, cert.d_hat)))
        throw fail();
    if (a.degree() == c.degree()) {
        const LinearPoly ell = LinearPoly::from_poly(cert.c_hat).inverse().then_after(LinearPoly::from_poly(cert.a_hat));
        if (!(compose(c, ell) == a && compose(ell.inverse(), d) == b)) throw fail();
        cert.ell = ell;
    }
    return cert;
}

int x_valuation(const Poly& f) {
    if (f.is_zero()) throw InputError("valuation of zero");
    int k = 0;
    while (f.coeff(k).is_zero()) ++k;
    return k;
}

std::optional<Poly> monic_nth_root(const Poly& f, int n) {
    if (n < 1 || f.is_zero() || f.degree() % n != 0) return std::nullopt;
    const int m = f.degree() / n;
    const auto b = top_series_root(f, n, m + 1);
    std::vector<Scalar> c(m + 1, Scalar(f.field()));
    for (int j = 0; j <= m; ++j) c[m - j] = b[j];
    Poly R(f.field(), std::move(c));
    if (!(R.pow(n) == f * f.lc().inverse())) return std::nullopt;
    return R;
}

namespace {

// x1, x2 with a x1 + b x2 = 1 and 0 <= x1 < b (b > 0).
std::pair<long, long> bezout(long a, long b) {
    long old_r = a, r = b, old_s = 1, s = 0;
    while (r != 0) {
        long q = old_r / r;
        std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
        std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
    }
    long x1 = ((old_s % b) + b) % b;
    if (b == 1) x1 = 0;
    const long x2 = (1 - a * x1) / b;
    return {x1, x2};
}

}  // namespace

PowerFormSplit decompose_power_form(const Poly& A, const Poly& B, int s, int n) {
    require_same(A, B);
    const Field& K = A.field();
    if (s < 1 || n < 1 || std::gcd(s, n) != 1) throw HypothesisViolation("decompose_power_form needs gcd(s, n) = 1");
    if (A.degree() < 1 || B.degree() < 1) throw InputError("decompose_power_form needs nonconstant A and B");
    const Poly T = compose(A, B);
    if (x_valuation(T) != s) throw HypothesisViolation("A o B is not x^s P(x)^n with P(0) != 0");
    const Poly Q = *exact_div(T, Poly::monomial(Scalar(K, 1L), s));
    if (!monic_nth_root(Q, n)) throw HypothesisViolation("A o B / x^s is not an n-th power");

    // The single root of A whose multiplicity is prime to n.
    const auto sq = squarefree_decomposition(A);
    Poly odd(K, {1});
    int j = 0;
    for (std::size_t i = 0; i < sq.size(); ++i) {
        if ((i + 1) % static_cast<std::size_t>(n) == 0 || sq[i].degree() < 1) continue;
        if (sq[i].degree() != 1 || odd.degree() >= 1) throw HypothesisViolation("A has several roots of multiplicity prime to n");
        odd = sq[i];
        j = static_cast<int>(i) + 1;
    }
    if (odd.degree() != 1) throw HypothesisViolation("A has no root of multiplicity prime to n");
    const Scalar r = -odd.coeff(0) / odd.coeff(1);

    const Poly shifted = taylor_shift(A, r);
    const Poly Qa = *exact_div(shifted, Poly::monomial(Scalar(K, 1L), j));
    const Scalar c = Qa.lc();
    const auto R = monic_nth_root(Qa, n);
    if (!R) throw HypothesisViolation("A is not of the form x^j P(x)^n after a shift");
    const auto [x1, x2] = bezout(j, n);
    const Scalar a = c.pow(x1), kappa = c.pow(x2);

    PowerFormSplit out{j, 0, compose(*R, LinearPoly(a.inverse(), Scalar(K))) * kappa, Poly(K), LinearPoly(a, -a * r)};

    const Poly Bp = compose(out.ell, B);
    out.k = x_valuation(Bp);
    if (std::gcd(out.k, n) != 1) throw HypothesisViolation("B has x-valuation sharing a factor with n");
    const Poly Q2 = *exact_div(Bp, Poly::monomial(Scalar(K, 1L), out.k));
    if (Q2.degree() == 0) {
        const auto roots = nth_roots(Q2.lc(), n);
        if (roots.empty()) {
            const Poly eq = Poly::monomial(Scalar(K, 1L), n) - Poly::constant(Q2.lc());
            throw FieldExtensionRequired("P2 needs an n-th root outside " + K.to_string(), eq.to_string("u") + " = 0",
                                         cyclotomic_hint_nth_root(eq, Q2.lc(), n));
        }
        out.P2 = Poly::constant(roots.front());
    } else {
        const auto roots = right_factor_solve(Q2, Poly::monomial(Scalar(K, 1L), n));
        if (roots.empty()) throw HypothesisViolation("B is not of the form ell^-1 o x^k P2(x)^n");
        out.P2 = roots.front();
    }

    const Poly xn = Poly::monomial(Scalar(K, 1L), n);
    const Poly left = Poly::monomial(Scalar(K, 1L), out.j) * compose(xn, out.P1);
    const Poly right = Poly::monomial(Scalar(K, 1L), out.k) * compose(xn, out.P2);
    if (!(compose(left, out.ell) == A && compose(out.ell.inverse(), right) == B)) throw Error("internal: power-form split failed");
    return out;
}

}  // namespace rittkit
