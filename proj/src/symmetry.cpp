#include "rittkit/symmetry.hpp"

#include <algorithm>
#include <numeric>

#include "rittkit/conjugacy.hpp"
#include "rittkit/decompose.hpp"
#include "rittkit/errors.hpp"

namespace rittkit {

namespace {

int multiplicative_order(const Scalar& a, int limit) {
    Scalar p = a;
    for (int k = 1; k <= limit; ++k) {
        if (p.is_one()) return k;
        p *= a;
    }
    return 0;
}

// Elements of Gamma(A) lying in the field, in generator order; throws when some lie outside.
struct GammaData {
    int e = 0;
    std::vector<Scalar> rotations;
    EquivalenceNormalization norm;
};

GammaData gamma_data(const Poly& A, bool allow_partial) {
    if (A.degree() < 2) throw InputError("Gamma(A) needs deg A >= 2");
    GammaData out{0, {}, normalize_for_equivalence(A)};
    out.e = rotation_order(out.norm.hat);
    if (out.e == 0) return out;
    std::vector<Scalar> mu;
    for (const auto& w : roots_of_unity(A.field()))
        if (w.pow(out.e).is_one()) mu.push_back(w);
    if (static_cast<int>(mu.size()) < out.e && !allow_partial) {
        const Poly eq = Poly::monomial(Scalar(A.field(), 1L), out.e) - Poly::constant(Scalar(A.field(), 1L));
        throw FieldExtensionRequired("Gamma(A) has elements outside " + A.field().to_string(), eq.to_string("u") + " = 0",
                                     static_cast<unsigned>(out.e));
    }
    const int n = static_cast<int>(mu.size());
    const auto gen = std::find_if(mu.begin(), mu.end(), [&](const Scalar& w) { return multiplicative_order(w, n) == n; });
    Scalar p(A.field(), 1L);
    for (int i = 0; i < n; ++i) {
        out.rotations.push_back(p);
        p *= *gen;
    }
    return out;
}

LinearPoly rotation_element(const GammaData& d, const Scalar& a) {
    return d.norm.inner.inverse().then_after(LinearPoly(a, Scalar(a.field()))).then_after(d.norm.inner);
}

// ell_{i+1} with f o ell_i = ell_{i+1} o f, when it is linear.
std::optional<LinearPoly> push_through(const Poly& f, const LinearPoly& ell) {
    auto next = left_factor_solve(compose(f, ell), f);
    if (!next || next->degree() != 1) return std::nullopt;
    return LinearPoly::from_poly(*next);
}

// Smallest k <= bound with ell_k = ell_0.
std::optional<int> commuting_period(const Poly& f, const LinearPoly& ell, int bound) {
    LinearPoly cur = ell;
    for (int k = 1; k <= bound; ++k) {
        auto next = push_through(f, cur);
        if (!next) return std::nullopt;
        cur = *next;
        if (cur == ell) return k;
    }
    return std::nullopt;
}

void fill_generator(LinearGroup& g) {
    const std::size_t n = g.elements.size();
    for (const auto& cand : g.elements) {
        LinearPoly p = LinearPoly::identity(cand.field());
        std::size_t k = 0;
        do {
            p = cand.then_after(p);
            ++k;
        } while (!p.is_identity() && k <= n);
        if (k == n) {
            g.generator = cand;
            break;
        }
    }
    if (!g.generator) return;
    std::vector<LinearPoly> ordered;
    LinearPoly p = LinearPoly::identity(g.generator->field());
    for (std::size_t i = 0; i < n; ++i) {
        ordered.push_back(p);
        p = g.generator->then_after(p);
    }
    std::vector<int> idx;
    for (const auto& e : ordered) idx.push_back(static_cast<int>(std::find(g.elements.begin(), g.elements.end(), e) - g.elements.begin()));
    auto permute = [&](auto& v) {
        if (v.size() != n) return;
        auto copy = v;
        for (std::size_t i = 0; i < n; ++i) v[i] = copy[idx[i]];
    };
    permute(g.companions);
    permute(g.commuting_index);
    g.elements = std::move(ordered);
}

std::vector<std::pair<LinearPoly, int>> m_infinity_members(const Poly& f, int bound) {
    const Poly base = is_cyclic(f) ? compose(f, f) : f;
    const auto data = gamma_data(base, true);
    std::vector<std::pair<LinearPoly, int>> out;
    for (const auto& a : data.rotations) {
        const LinearPoly ell = rotation_element(data, a);
        if (auto k = commuting_period(f, ell, bound)) out.emplace_back(ell, *k);
    }
    return out;
}

}  // namespace

LinearGroup gamma_group(const Poly& A) {
    const auto d = gamma_data(A, false);
    LinearGroup g;
    if (d.e == 0) {
        g.kind = LinearGroup::Kind::Infinite;
        return g;
    }
    g.closure_order = d.e;
    const int deg = A.degree();
    for (const auto& a : d.rotations) {
        const LinearPoly ell = rotation_element(d, a);
        const LinearPoly L = d.norm.outer.then_after(LinearPoly(a.pow(deg), Scalar(A.field()))).then_after(d.norm.outer.inverse());
        if (!(compose(A, ell) == compose(L, A))) throw Error("internal: Gamma element failed");
        g.elements.push_back(ell);
        g.companions.push_back(L);
    }
    g.generator = g.elements.size() > 1 ? g.elements[1] : g.elements[0];
    return g;
}

LinearGroup m_infinity(const Poly& f, int iter_bound) {
    if (iter_bound < 1) throw InputError("iter_bound must be positive");
    if (!is_disintegrated(f)) throw HypothesisViolation("m_infinity needs a disintegrated polynomial");
    LinearGroup g;
    const auto members = m_infinity_members(f, iter_bound);
    for (const auto& [ell, k] : members) {
        g.elements.push_back(ell);
        g.commuting_index.push_back(k);
    }
    g.stable = m_infinity_members(f, 2 * iter_bound).size() == members.size();
    fill_generator(g);
    return g;
}

std::optional<int> commutes_with_iterate(const Poly& f, const Poly& g, int bound) {
    if (f.degree() < 2 || g.degree() < 1) throw InputError("commutes_with_iterate needs deg f >= 2 and deg g >= 1");
    if (g.degree() == 1) return commuting_period(f, LinearPoly::from_poly(g), bound);
    Poly fn = Poly::x(f.field());
    for (int n = 1; n <= bound; ++n) {
        fn = compose(f, fn);
        if (compose(g, fn) == compose(fn, g)) return n;
    }
    return std::nullopt;
}

std::optional<int> common_commuting_iterate(const Poly& f, int bound) {
    const auto M = m_infinity(f, bound);
    int n = 1;
    for (int k : M.commuting_index) n = std::lcm(n, k);
    if (n > bound) return std::nullopt;
    for (const auto& ell : M.elements)
        if (commuting_period(f, ell, n) == std::nullopt) return std::nullopt;
    return n;
}

AlignResult align_iterates(const Poly& f, const Poly& g, const LinearPoly& L, int n) {
    const int d = f.degree();
    if (d < 2 || g.degree() != d) throw HypothesisViolation("align_iterates needs equal degrees >= 2");
    if (n < 1 || 2 * n < d + 1) throw HypothesisViolation("align_iterates needs n >= (deg + 1) / 2");
    if (is_cyclic(f) || is_cyclic(g)) throw HypothesisViolation("align_iterates needs non-cyclic f and g");
    if (!(iterate(f, n) == compose(L, iterate(g, n)))) throw HypothesisViolation("f^n differs from L o g^n");

    AlignResult out{LinearPoly::identity(f.field()), 0, 0, 0, {}, false};
    out.chain.push_back(LinearPoly::identity(f.field()));
    for (int i = 0; i < n; ++i) {
        auto next = left_factor_solve(compose(f, out.chain.back()), g);
        if (!next || next->degree() != 1) throw Error("internal: iterate peeling failed");
        out.chain.push_back(LinearPoly::from_poly(*next));
    }
    if (!(out.chain.back() == L)) throw Error("internal: peeling did not reach L");
    int best = 0;
    for (int N = 1; N <= n && best == 0; ++N)
        for (int i = 0; i + N <= n; ++i)
            if (out.chain[i] == out.chain[i + N]) {
                best = N;
                out.collision_i = i;
                out.collision_j = i + N;
                break;
            }
    if (best == 0) throw HypothesisViolation("no collision among L_0..L_n");
    out.N = best;
    out.ell = out.chain[out.collision_i];
    out.within_half_degree = 2 * out.N <= d;
    if (!(iterate(f, best) == iterate(conjugate(out.ell, g), best))) throw Error("internal: alignment certificate failed");
    return out;
}

std::optional<CommutingCandidate> lowest_commuting_candidate(const Poly& f, int deg_cap, int iter_bound) {
    const int delta = f.degree();
    if (delta < 2 || iter_bound < 1) throw InputError("lowest_commuting_candidate needs deg f >= 2 and iter_bound >= 1");
    std::vector<Poly> its{Poly::x(f.field())};
    for (int k = 1; k <= iter_bound; ++k) its.push_back(compose(f, its.back()));
    for (int d = 2; d <= deg_cap; ++d) {
        for (int k = 1; k <= iter_bound; ++k) {
            const int Dk = its[k].degree();
            if (Dk % d != 0 || d > Dk) continue;
            const auto H = normalized_right_factor(its[k], d);
            if (!H) continue;
            for (int j = 1; j <= iter_bound; ++j) {
                const Poly& F = its[j];
                const int D = F.degree();
                // Leading coefficients force a^(D-1) = F_D^(d-1) / H_d^(D-1).
                const Scalar rhs = F.lc().pow(d - 1) / H->lc().pow(D - 1);
                for (const auto& a : nth_roots(rhs, static_cast<unsigned>(D - 1))) {
                    // The x^(d(D-1)) coefficient of F o (a H + b) is affine in b.
                    const Poly aH = *H * a;
                    const std::size_t pos = static_cast<std::size_t>(d * (D - 1));
                    const Poly P0 = compose(F, aH), P1 = compose(F, aH + Poly::constant(Scalar(f.field(), 1L)));
                    const Scalar slope = P1.coeff(pos) - P0.coeff(pos);
                    if (slope.is_zero()) continue;
                    const Scalar b = (compose(aH, F).coeff(pos) - P0.coeff(pos)) / slope;
                    const Poly g = aH + Poly::constant(b);
                    if (compose(g, F) == compose(F, g)) return CommutingCandidate{g, k, j};
                }
            }
        }
    }
    return std::nullopt;
}

bool verify_finite_group(const LinearGroup& g) {
    if (g.kind != LinearGroup::Kind::Finite || g.elements.empty()) return false;
    auto has = [&](const LinearPoly& x) { return std::find(g.elements.begin(), g.elements.end(), x) != g.elements.end(); };
    if (!has(LinearPoly::identity(g.elements.front().field()))) return false;
    for (const auto& a : g.elements) {
        if (!has(a.inverse())) return false;
        for (const auto& b : g.elements)
            if (!has(a.then_after(b))) return false;
    }
    if (!g.generator) return false;
    std::vector<LinearPoly> seen;
    LinearPoly p = LinearPoly::identity(g.generator->field());
    for (std::size_t i = 0; i < g.elements.size(); ++i) {
        if (std::find(seen.begin(), seen.end(), p) != seen.end()) return false;
        seen.push_back(p);
        p = g.generator->then_after(p);
    }
    return p.is_identity();
}

}  // namespace rittkit
