#include "rittkit/conjugacy.hpp"

#include <numeric>

#include "rittkit/decompose.hpp"
#include "rittkit/errors.hpp"

namespace rittkit {

namespace {

Poly xpow(const Field& K, int d) { return Poly::monomial(Scalar(K, 1L), static_cast<std::size_t>(d)); }

// x0 with f(x + x0) free of x^(deg - 1).
Scalar center(const Poly& f) {
    const int d = f.degree();
    return -f.coeff(d - 1) / (Scalar(f.field(), static_cast<long>(d)) * f.lc());
}

std::pair<long, long> bezout(long a, long b) {
    long old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        const long q = old_r / r;
        std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
        std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
        std::tie(old_t, t) = std::make_pair(t, old_t - q * t);
    }
    return {old_s, old_t};
}

struct PowerConjugacy {
    bool over_closure = false;
    std::optional<LinearPoly> witness;
    std::optional<ExtensionNote> note;
};

PowerConjugacy power_conjugacy(const Poly& f) {
    const Field& K = f.field();
    const int d = f.degree();
    const Scalar x0 = center(f);
    const Poly h = taylor_shift(f, x0) - Poly::constant(x0);
    PowerConjugacy out;
    if (!(h == xpow(K, d) * f.lc())) return out;
    out.over_closure = true;
    const auto roots = nth_roots(f.lc(), static_cast<unsigned>(d - 1));
    if (roots.empty()) {
        const Poly eq = xpow(K, d - 1) - Poly::constant(f.lc());
        out.note = ExtensionNote{"conjugacy to the power map", eq.to_string("u") + " = 0",
                                 cyclotomic_hint_nth_root(eq, f.lc(), static_cast<unsigned>(d - 1))};
        return out;
    }
    const LinearPoly ell(roots.front(), -roots.front() * x0);
    if (!(conjugate(ell, f) == xpow(K, d))) throw Error("internal: power conjugacy witness failed");
    out.witness = ell;
    return out;
}

struct ChebyshevConjugacy {
    bool over_closure = false;
    std::optional<std::pair<int, LinearPoly>> witness;
    std::optional<ExtensionNote> note;
};

ChebyshevConjugacy chebyshev_conjugacy(const Poly& f) {
    const Field& K = f.field();
    const int d = f.degree();
    ChebyshevConjugacy out;
    const Scalar x0 = center(f);
    const Poly h = taylor_shift(f, x0) - Poly::constant(x0);
    const Poly T = chebyshev(static_cast<std::size_t>(d), K);
    if (h.coeff(d - 2).is_zero()) return out;
    const Scalar A2 = -Scalar(K, static_cast<long>(d)) * h.lc() / h.coeff(d - 2);
    if (d % 2 == 1) {
        const Scalar S = h.lc() / A2.pow((d - 1) / 2);
        if (!(S.is_one() || (-S).is_one())) return out;
        for (int k = 0; k < d; ++k) {
            const Scalar want = k % 2 == 1 ? S * T.coeff(k) * A2.pow((k - 1) / 2) : Scalar(K);
            if (!(h.coeff(k) == want)) return out;
        }
    } else {
        const Scalar S = h.lc() / A2.pow((d - 2) / 2);
        if (!(S * S == A2)) return out;
        for (int k = 0; k < d; ++k) {
            Scalar want(K);
            if (k == 0) want = T.coeff(0) * S / A2;
            else if (k % 2 == 0) want = T.coeff(k) * S * A2.pow((k - 2) / 2);
            if (!(h.coeff(k) == want)) return out;
        }
    }
    out.over_closure = true;
    Scalar sigma(K);
    if (d % 2 == 0) {
        sigma = h.lc() / A2.pow((d - 2) / 2);
    } else {
        const auto roots = nth_roots(A2, 2);
        if (roots.empty()) {
            const Poly eq = xpow(K, 2) - Poly::constant(A2);
            out.note = ExtensionNote{"conjugacy to a Chebyshev polynomial", eq.to_string("u") + " = 0",
                                     cyclotomic_hint_nth_root(eq, A2, 2)};
            return out;
        }
        sigma = roots.front();
    }
    const Scalar s = h.lc() / sigma.pow(d - 1);
    const int sign = s.is_one() ? 1 : -1;
    const LinearPoly ell(sigma, -sigma * x0);
    if (!(conjugate(ell, f) == T * Scalar(K, static_cast<long>(sign)))) throw Error("internal: Chebyshev witness failed");
    out.witness = std::make_pair(sign, ell);
    return out;
}

}  // namespace

Scalar require_nth_root(const Scalar& c, unsigned n, const std::string& context) {
    auto roots = nth_roots(c, n);
    if (!roots.empty()) return roots.front();
    const Field& K = c.field();
    const Poly eq = xpow(K, static_cast<int>(n)) - Poly::constant(c);
    throw FieldExtensionRequired(context + " needs a root outside " + K.to_string(), eq.to_string("u") + " = 0",
                                 cyclotomic_hint_nth_root(eq, c, n));
}

EquivalenceNormalization normalize_for_equivalence(const Poly& f) {
    const Field& K = f.field();
    if (f.degree() < 1) throw InputError("normalization needs a nonconstant polynomial");
    const Scalar x0 = center(f);
    const Poly h = taylor_shift(f, x0);
    const Scalar h0 = h.coeff(0);
    const Poly hat = (h - Poly::constant(h0)) * h.lc().inverse();
    return {hat, LinearPoly(h.lc(), h0), LinearPoly(Scalar(K, 1L), -x0)};
}

int rotation_order(const Poly& hat) {
    const int d = hat.degree();
    int e = 0;
    for (int k = 0; k < d; ++k)
        if (!hat.coeff(k).is_zero()) e = std::gcd(e, d - k);
    return e;
}

std::optional<ScalingEquation> scaling_between(const Poly& hat_f, const Poly& hat_g) {
    const Field& K = hat_f.field();
    const int d = hat_f.degree();
    if (hat_g.degree() != d) return std::nullopt;
    ScalingEquation eq{0, Scalar(K, 1L)};
    std::vector<std::pair<int, Scalar>> rel;
    for (int k = 0; k < d; ++k) {
        const bool zf = hat_f.coeff(k).is_zero(), zg = hat_g.coeff(k).is_zero();
        if (zf != zg) return std::nullopt;
        if (zf) continue;
        rel.emplace_back(d - k, hat_f.coeff(k) / hat_g.coeff(k));
    }
    for (const auto& [dk, ck] : rel) {
        if (eq.e == 0) {
            eq = {dk, ck};
            continue;
        }
        const auto [x, y] = bezout(eq.e, dk);
        eq = {std::gcd(eq.e, dk), eq.C.pow(x) * ck.pow(y)};
    }
    for (const auto& [dk, ck] : rel)
        if (!(eq.C.pow(dk / eq.e) == ck)) return std::nullopt;
    return eq;
}

ShapeReport classify(const Poly& f) {
    const int d = f.degree();
    if (d < 2) throw InputError("classify needs deg f >= 2");
    ShapeReport r;
    r.degree = d;
    const auto norm = normalize_for_equivalence(f);
    r.is_cyclic = norm.hat == xpow(f.field(), d);
    if (d >= 3) {
        const auto T = normalize_for_equivalence(chebyshev(static_cast<std::size_t>(d), f.field()));
        r.is_dihedral = scaling_between(norm.hat, T.hat).has_value();
    }
    const auto pc = power_conjugacy(f);
    r.conjugate_to_power = pc.over_closure;
    r.conj_to_power = pc.witness;
    if (pc.note) r.extensions.push_back(*pc.note);
    const auto cc = chebyshev_conjugacy(f);
    r.conjugate_to_chebyshev = cc.over_closure;
    r.conj_to_pm_chebyshev = cc.witness;
    if (cc.note) r.extensions.push_back(*cc.note);
    r.disintegrated = !r.conjugate_to_power && !r.conjugate_to_chebyshev;
    return r;
}

bool is_cyclic(const Poly& f) {
    if (f.degree() < 2) return false;
    return normalize_for_equivalence(f).hat == xpow(f.field(), f.degree());
}

bool is_dihedral(const Poly& f) {
    if (f.degree() < 3) return false;
    const auto T = normalize_for_equivalence(chebyshev(static_cast<std::size_t>(f.degree()), f.field()));
    return scaling_between(normalize_for_equivalence(f).hat, T.hat).has_value();
}

bool is_disintegrated(const Poly& f) {
    return f.degree() >= 2 && !power_conjugacy(f).over_closure && !chebyshev_conjugacy(f).over_closure;
}

std::optional<EquivalenceWitness> equivalence_witness(const Poly& f, const Poly& g) {
    if (!(f.field() == g.field())) throw InputError("field mismatch");
    const Field& K = f.field();
    const int d = f.degree();
    if (d < 1 || g.degree() != d) throw InputError("equivalence_witness needs equal positive degrees");
    if (d == 1) {
        const LinearPoly L2 = LinearPoly::from_poly(g).then_after(LinearPoly::from_poly(f).inverse());
        return EquivalenceWitness{LinearPoly::identity(K), L2};
    }
    const auto nf = normalize_for_equivalence(f), ng = normalize_for_equivalence(g);
    const auto sc = scaling_between(nf.hat, ng.hat);
    if (!sc) return std::nullopt;
    const Scalar lambda = sc->e == 0 ? Scalar(K, 1L) : require_nth_root(sc->C, static_cast<unsigned>(sc->e), "equivalence witness");
    const LinearPoly M(lambda.pow(-d), Scalar(K));
    const LinearPoly L2 = ng.outer.then_after(M).then_after(nf.outer.inverse());
    const LinearPoly L1 = nf.inner.inverse().then_after(LinearPoly(lambda, Scalar(K))).then_after(ng.inner);
    if (!(compose(L2, compose(f, L1)) == g)) throw Error("internal: equivalence witness failed");
    return EquivalenceWitness{L1, L2};
}

Poly power_form_poly(int s, int n, const Poly& P) {
    const Field& K = P.field();
    return xpow(K, s) * compose(P, xpow(K, n));
}

std::optional<PowerNormalForm> power_normal_form(const Poly& A) {
    if (A.degree() < 2) throw InputError("power_normal_form needs deg A >= 2");
    const auto norm = normalize_for_equivalence(A);
    const int e = rotation_order(norm.hat);
    if (e == 0) return std::nullopt;
    int s = 0;
    while (norm.hat.coeff(s).is_zero()) ++s;
    std::vector<Scalar> pc((A.degree() - s) / e + 1, Scalar(A.field()));
    for (int k = s; k <= A.degree(); ++k)
        if (!norm.hat.coeff(k).is_zero()) pc[(k - s) / e] = norm.hat.coeff(k);
    PowerNormalForm out{norm.outer.inverse(), norm.inner.inverse(), s, e, Poly(A.field(), std::move(pc))};
    if (!(compose(out.l1, compose(A, out.l2)) == power_form_poly(s, e, out.P))) throw Error("internal: power normal form failed");
    return out;
}

}  // namespace rittkit
