#include "rittkit/semiconj.hpp"

#include <algorithm>
#include <numeric>

#include "rittkit/bivar.hpp"
#include "rittkit/decompose.hpp"
#include "rittkit/errors.hpp"

namespace rittkit {

namespace {

using Series = std::vector<Scalar>;

Series series_mul(const Series& a, const Series& b, std::size_t n) {
    const Field& K = a.front().field();
    Series out(n, Scalar(K));
    for (std::size_t i = 0; i < a.size() && i < n; ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size() && i + j < n; ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

// Coefficients of f reversed: f_deg, f_deg-1, ..., f_0, padded to n terms.
Series reversed(const Poly& f, std::size_t n) {
    Series out(n, Scalar(f.field()));
    const int d = f.degree();
    for (int k = 0; k <= d && static_cast<std::size_t>(k) < n; ++k) out[k] = f.coeff(d - k);
    return out;
}

bool agrees_at_points(const Poly& f, const Poly& p, const Poly& eta) {
    for (long t : {1L, -2L, 3L}) {
        const Scalar x(f.field(), t);
        if (!(f(p(x)) == p(eta(x)))) return false;
    }
    return true;
}

// The p of degree b with leading coefficient s0 determined by the top b + 1 coefficients of
// f o p = p o eta; E[j] holds the reversed series of eta^j.
Poly recurse_coefficients(const Poly& f, const std::vector<Series>& E, int b, const Scalar& s0) {
    const Field& K = f.field();
    const int d = f.degree();
    const std::size_t n = static_cast<std::size_t>(b) + 1;
    Series s(n, Scalar(K)), w(n, Scalar(K));
    s[0] = s0;
    w[0] = s0.pow(d);
    const Scalar s0_dm1 = s0.pow(d - 1);
    const Scalar pivot = Scalar(K, static_cast<long>(d)) * f.lc() * s0_dm1;
    const Scalar inv_s0 = s0.inverse();
    for (int m = 1; m <= b; ++m) {
        // Miller recurrence for w = s^d with s_m still unknown.
        Scalar rest(K);
        for (int k = 1; k < m; ++k) rest += Scalar(K, static_cast<long>((d + 1) * k - m)) * s[k] * w[m - k];
        rest *= inv_s0 / Scalar(K, static_cast<long>(m));
        Scalar lhs = f.lc() * rest;
        if (m == b) lhs += f.coeff(d - 1) * s0_dm1;
        Scalar rhs(K);
        for (int u = 0; d * u <= m; ++u) rhs += s[u] * E[b - u][m - d * u];
        s[m] = (rhs - lhs) / pivot;
        w[m] = rest + Scalar(K, static_cast<long>(d)) * s0_dm1 * s[m];
    }
    std::vector<Scalar> pc(n, Scalar(K));
    for (int i = 0; i <= b; ++i) pc[i] = s[b - i];
    return Poly(K, std::move(pc));
}

std::vector<Scalar> in_field_roots(const Poly& G) {
    if (G.degree() < 1) return {};
    if (G.degree() == 1) return {-G.coeff(0) / G.lc()};
    const Poly m = G * G.lc().inverse();
    if (m.has_rational_coeffs()) return rational_roots(m);
    return {};
}

long long_gcd(long a, long b) { return std::gcd(a, b); }

}  // namespace

bool semiconj_check(const SemiconjWitness& w) {
    if (!(w.f.field() == w.p.field()) || !(w.f.field() == w.eta.field())) return false;
    return compose(w.f, w.p) == compose(w.p, w.eta);
}

std::vector<Poly> solve_eta_all(const Poly& f, const Poly& p) {
    if (f.degree() < 2 || p.degree() < 1) throw InputError("solve_eta needs deg f >= 2 and deg p >= 1");
    if (!(f.field() == p.field())) throw InputError("field mismatch");
    auto sols = right_factor_solve(compose(f, p), p);
    std::erase_if(sols, [&](const Poly& h) { return h.degree() != f.degree(); });
    return sols;
}

std::optional<Poly> solve_eta(const Poly& f, const Poly& p) {
    auto sols = solve_eta_all(f, p);
    if (sols.empty()) return std::nullopt;
    return sols.front();
}

std::vector<Poly> solve_p(const Poly& f, const Poly& eta, int deg_bound, std::vector<ExtensionNote>* skipped) {
    const int d = f.degree();
    if (d < 2 || eta.degree() != d) throw InputError("solve_p needs deg f = deg eta >= 2");
    if (!(f.field() == eta.field())) throw InputError("field mismatch");
    if (deg_bound < 1) return {};
    if (static_cast<std::size_t>(deg_bound) * static_cast<std::size_t>(d) > kDefaultDegreeCap)
        throw ResourceError("solve_p: deg_bound * deg f exceeds the degree cap");
    const Field& K = f.field();
    const std::size_t n = static_cast<std::size_t>(deg_bound) + 1;
    std::vector<Series> E{Series(n, Scalar(K))};
    E[0][0] = Scalar(K, 1L);
    const Series e = reversed(eta, n);
    for (int j = 1; j <= deg_bound; ++j) E.push_back(series_mul(E.back(), e, n));

    std::vector<Poly> out;
    for (int b = 1; b <= deg_bound; ++b) {
        const Scalar target = eta.lc().pow(b) / f.lc();
        const auto roots = nth_roots(target, static_cast<unsigned>(d - 1));
        if (roots.empty() && skipped) {
            const Poly eq = Poly::monomial(Scalar(K, 1L), d - 1) - Poly::constant(target);
            skipped->push_back({"leading coefficient of p for degree " + std::to_string(b), eq.to_string("u") + " = 0",
                                cyclotomic_hint_nth_root(eq, target, static_cast<unsigned>(d - 1))});
        }
        for (const auto& s0 : roots) {
            const Poly p = recurse_coefficients(f, E, b, s0);
            if (!agrees_at_points(f, p, eta)) continue;
            if (compose(f, p) == compose(p, eta)) out.push_back(p);
        }
    }
    return out;
}

InouNormalForm inou_normal_form(const SemiconjWitness& w) {
    const Poly& f = w.f;
    const int delta = f.degree();
    const int b = w.p.degree();
    if (!semiconj_check(w)) throw HypothesisViolation("f o p differs from p o eta");
    if (b < 1 || w.eta.degree() != delta) throw HypothesisViolation("degenerate witness");
    if (std::gcd(delta, b) != 1) throw HypothesisViolation("gcd(deg f, deg p) != 1");
    if (!is_disintegrated(f)) throw HypothesisViolation("f is not disintegrated");
    const Field& K = f.field();
    LinearPoly l1 = LinearPoly::identity(K), l2 = LinearPoly::identity(K);
    if (b == 1) {
        l1 = LinearPoly::from_poly(w.p).inverse();
    } else {
        const auto norm = normalize_for_equivalence(w.p);
        if (!is_cyclic(w.p)) throw HypothesisViolation("p is not equivalent to x^b");
        l1 = norm.outer.inverse();
        l2 = norm.inner;
    }
    const Poly E = conjugate(l2, w.eta);
    const Poly F = conjugate(l1, f);
    const int c = x_valuation(E);
    const Poly Q = *exact_div(E, Poly::monomial(Scalar(K, 1L), c));
    std::vector<Scalar> pc;
    for (int k = 0; k <= Q.degree(); ++k) {
        if (k % b == 0) pc.push_back(Q.coeff(k));
        else if (!Q.coeff(k).is_zero()) throw HypothesisViolation("eta is not of the form x^c P(x^b)");
    }
    InouNormalForm out{l1, l2, b, c, Poly(K, std::move(pc))};
    if (!(compose(out.l1, compose(w.p, out.l2.inverse())) == Poly::monomial(Scalar(K, 1L), b)) ||
        !(F == Poly::monomial(Scalar(K, 1L), c) * out.P.pow(b)))
        throw HypothesisViolation("normal form identities fail");
    out.congruence_flag = ((c - b) % delta + delta) % delta == 0;
    out.degree_congruence_flag = ((c - delta) % b + b) % b == 0;
    return out;
}

std::vector<Lift> lifts(const Poly& f) {
    const Field& K = f.field();
    const int d = f.degree();
    std::vector<Lift> out{{f, Poly::x(K)}};
    // Fixed points that are critical values.
    const Poly crit_values = resultant_elim(BivarPoly::from_x(f.derivative()), BivarPoly::graph(f), Var::X);
    const Poly G = gcd(crit_values, f - Poly::x(K));
    for (const auto& x0 : in_field_roots(G)) {
        const Poly h = taylor_shift(f, x0) - Poly::constant(x0);
        const int j = x_valuation(h);
        const Poly rest = *exact_div(h, Poly::monomial(Scalar(K, 1L), j));
        const int r = rest.degree();
        for (int b = 2; b <= r; ++b) {
            if (r % b != 0 || long_gcd(j, b) != 1) continue;
            const auto R = monic_nth_root(rest, b);
            if (!R) continue;
            const auto kappa = nth_roots(rest.lc(), static_cast<unsigned>(b));
            if (kappa.empty()) continue;
            const Poly P1 = *R * kappa.front();
            const Poly W = Poly::monomial(Scalar(K, 1L), j) * compose(P1, Poly::monomial(Scalar(K, 1L), b));
            const Poly p = Poly::monomial(Scalar(K, 1L), b) + Poly::constant(x0);
            if (W.degree() == d && compose(f, p) == compose(p, W)) out.push_back({W, p});
        }
    }
    return out;
}

bool verify_common(const Poly& f, const Poly& g, const CommonWitness& w) {
    return compose(iterate(f, w.N), w.p) == compose(w.p, w.eta) && compose(iterate(g, w.N), w.q) == compose(w.q, w.eta);
}

CommonSearch common_semiconjugate_search(const Poly& f, const Poly& g, int N_max, int deg_cap) {
    if (N_max < 1 || deg_cap < 1) throw InputError("N_max and deg_cap must be positive");
    if (!(f.field() == g.field())) throw InputError("field mismatch");
    if (f.degree() != g.degree()) throw HypothesisViolation("common_semiconjugate needs deg f = deg g");
    if (!is_disintegrated(f) || !is_disintegrated(g)) throw HypothesisViolation("common_semiconjugate needs disintegrated inputs");
    CommonSearch out;
    Poly F = Poly::x(f.field()), G = Poly::x(f.field());
    for (int N = 1; N <= N_max; ++N) {
        try {
            F = compose(f, F);
            G = compose(g, G);
        } catch (const ResourceError&) {
            std::string t;
            for (const auto& line : out.transcript) t += "\n  " + line;
            throw ResourceError("common_semiconjugate: iterate " + std::to_string(N) + " exceeds the degree cap; searched:" + t);
        }
        const auto lf = lifts(F), lg = lifts(G);
        std::optional<CommonWitness> best;
        int best_sum = 0;
        auto offer = [&](CommonWitness w) {
            const int sum = w.p.degree() + w.q.degree();
            if (w.p.degree() > deg_cap || w.q.degree() > deg_cap) return;
            if (!best || sum < best_sum) {
                best = std::move(w);
                best_sum = sum;
            }
        };
        const int top = F.degree();
        for (const auto& [W, pW] : lf) {
            for (const auto& [V, qV] : lg) {
                const int bound_p = std::min(deg_cap / pW.degree(), static_cast<int>(kDefaultDegreeCap) / top);
                for (const auto& r : solve_p(W, V, bound_p)) offer({N, V, compose(pW, r), qV});
                const int bound_q = std::min(deg_cap / qV.degree(), static_cast<int>(kDefaultDegreeCap) / top);
                for (const auto& r : solve_p(V, W, bound_q)) offer({N, W, pW, compose(qV, r)});
            }
        }
        out.transcript.push_back("N = " + std::to_string(N) + ": " + std::to_string(lf.size()) + " x " + std::to_string(lg.size()) +
                                 " lifts, " + (best ? "found" : "none"));
        if (best) {
            if (!(compose(F, best->p) == compose(best->p, best->eta)) || !(compose(G, best->q) == compose(best->q, best->eta)))
                throw Error("internal: common witness failed");
            out.witness = best;
            return out;
        }
    }
    return out;
}

std::optional<CommonWitness> common_semiconjugate(const Poly& f, const Poly& g, int N_max, int deg_cap) {
    return common_semiconjugate_search(f, g, N_max, deg_cap).witness;
}

ApproxClasses approx_classes(const std::vector<Poly>& fs, int N_max, int deg_cap) {
    const int n = static_cast<int>(fs.size());
    for (const auto& f : fs)
        if (!is_disintegrated(f)) throw HypothesisViolation("approx_classes needs disintegrated inputs");
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (find(i) == find(j) || fs[i].degree() != fs[j].degree() || !(fs[i].field() == fs[j].field())) continue;
            if (common_semiconjugate(fs[i], fs[j], N_max, deg_cap)) parent[find(j)] = find(i);
        }
    ApproxClasses out;
    std::vector<int> slot(n, -1);
    for (int i = 0; i < n; ++i) {
        const int r = find(i);
        if (slot[r] < 0) {
            slot[r] = static_cast<int>(out.classes.size());
            out.classes.emplace_back();
        }
        out.classes[slot[r]].push_back(i);
    }
    out.at_caps = out.classes.size() > 1;
    for (const auto& cls : out.classes) {
        // Chain: f_k^N o ps[k] = ps[k] o theta for the members handled so far.
        ClassWitness cw{1, fs[cls[0]], {Poly::x(fs[cls[0]].field())}};
        bool ok = true;
        for (std::size_t m = 1; m < cls.size() && ok; ++m) {
            const auto w = common_semiconjugate(cw.theta, iterate(fs[cls[m]], cw.N), N_max, deg_cap);
            if (!w) {
                ok = false;
                break;
            }
            for (auto& p : cw.ps) p = compose(p, w->p);
            cw.ps.push_back(w->q);
            cw.N *= w->N;
            cw.theta = w->eta;
        }
        if (ok)
            for (std::size_t m = 0; m < cls.size(); ++m)
                if (!(compose(iterate(fs[cls[m]], cw.N), cw.ps[m]) == compose(cw.ps[m], cw.theta))) throw Error("internal: class witness failed");
        out.witnesses.push_back(ok ? std::optional<ClassWitness>(cw) : std::nullopt);
    }
    return out;
}

}  // namespace rittkit
