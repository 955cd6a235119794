#include "rittkit/msclass.hpp"

#include <algorithm>

#include "rittkit/errors.hpp"
#include "rittkit/symmetry.hpp"

namespace rittkit {

namespace {

// Res_x(A(x, y), B(x)) as a polynomial in y, with the degree-zero cases spelled out.
Poly eliminate_x(const BivarPoly& A, const Poly& B) {
    if (A.degree_x() == 0) return A.at_x(Scalar(A.field())).pow(static_cast<std::size_t>(B.degree()));
    return resultant_elim(A, BivarPoly::from_x(B), Var::X);
}

// Res_y(H(y), g(y) - v) as a polynomial in v.
Poly eliminate_y(const Poly& H, const Poly& g) {
    if (H.degree() <= 0) return H.pow(static_cast<std::size_t>(g.degree()));
    return resultant_elim(BivarPoly::from_x(H), BivarPoly::graph(g), Var::X);
}

Poly lagrange(const std::vector<Scalar>& xs, const std::vector<Scalar>& ys) {
    const Field& K = xs.front().field();
    Poly out(K);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (ys[i].is_zero()) continue;
        Poly basis = Poly::constant(Scalar(K, 1L));
        Scalar denom(K, 1L);
        for (std::size_t k = 0; k < xs.size(); ++k) {
            if (k == i) continue;
            basis = basis * (Poly::x(K) - Poly::constant(xs[k]));
            denom *= xs[i] - xs[k];
        }
        out += basis * (ys[i] / denom);
    }
    return out;
}

// Arithmetic in K[x, y] / (G) for G with constant leading coefficient in y.
class QuotientRing {
  public:
    explicit QuotientRing(const BivarPoly& G) : G_(G * G.y_coeff(G.degree_y()).lc().inverse()) {}

    BivarPoly reduce(BivarPoly P) const {
        const int m = G_.degree_y();
        while (P.degree_y() >= m) {
            const int d = P.degree_y();
            const BivarPoly lead(P.field(), std::vector<Poly>{P.y_coeff(d)});
            P -= lead * BivarPoly::term(Scalar(P.field(), 1L), 0, static_cast<std::size_t>(d - m)) * G_;
        }
        return P;
    }

    BivarPoly mul(const BivarPoly& a, const BivarPoly& b) const { return reduce(a * b); }

    // h(P) in the quotient, by Horner.
    BivarPoly apply(const Poly& h, const BivarPoly& P) const {
        BivarPoly acc(P.field());
        for (int k = h.degree(); k >= 0; --k) acc = mul(acc, P) + BivarPoly::term(h.coeff(k), 0, 0);
        return acc;
    }

  private:
    BivarPoly G_;
};

// Whether G(X, Y) vanishes in K[x, y] / (G), where X, Y are given in the quotient.
bool vanishes(const QuotientRing& R, const BivarPoly& G, const BivarPoly& X, const BivarPoly& Y) {
    BivarPoly acc(G.field());
    for (int j = G.degree_y(); j >= 0; --j) acc = R.mul(acc, Y) + R.apply(G.y_coeff(j), X);
    return acc.is_zero();
}

// Filter for phi^k(C) inside C, k = 1, 2, ... in turn; next() is false when containment fails
// and true when it holds or cannot be decided cheaply.
class ContainmentFilter {
  public:
    ContainmentFilter(const BivarCurve& C, const Poly& f, const Poly& g) : G_(C.poly()), a_(f), b_(g) {
        const Field& K = G_.field();
        if (G_.degree_y() == 0) {
            mode_ = Mode::Univariate;
            Gx_ = G_.at_y(Scalar(K));
            fk_ = Poly::x(K);
            return;
        }
        if (G_.y_coeff(G_.degree_y()).degree() > 0) {
            if (G_.degree_x() < 1) return;
            const BivarPoly S = G_.swapped();
            if (S.y_coeff(S.degree_y()).degree() > 0) return;
            G_ = S;
            std::swap(a_, b_);
        }
        mode_ = Mode::Quotient;
        R_.emplace(G_);
        X_ = BivarPoly::from_x(Poly::x(K));
        Y_ = R_->reduce(BivarPoly::from_y(Poly::x(K)));
    }

    bool next() {
        switch (mode_) {
            case Mode::Univariate:
                fk_ = compose(a_, fk_);
                return divmod(compose(Gx_, fk_), Gx_).second.is_zero();
            case Mode::Quotient:
                X_ = R_->apply(a_, X_);
                Y_ = R_->apply(b_, Y_);
                return vanishes(*R_, G_, X_, Y_);
            case Mode::Pass:
                break;
        }
        return true;
    }

  private:
    enum class Mode { Pass, Univariate, Quotient };
    Mode mode_ = Mode::Pass;
    BivarPoly G_;
    Poly a_, b_, Gx_, fk_;
    std::optional<QuotientRing> R_;
    BivarPoly X_, Y_;
};

}  // namespace

BivarCurve curve_image(const BivarCurve& C, const Poly& f, const Poly& g) {
    const BivarPoly& G = C.poly();
    const Field& K = G.field();
    if (f.degree() < 1 || g.degree() < 1) throw InputError("curve_image needs nonconstant f and g");
    if (G.degree_x() <= 0 && G.degree_y() <= 0) throw InputError("curve_image needs a nonconstant curve");
    if (!(f.field() == K) || !(g.field() == K)) throw InputError("field mismatch");
    const int du = G.degree_x() * g.degree();
    const int samples = du + 1 + G.degree_x();
    std::vector<Scalar> us;
    std::vector<Poly> Hs;
    int generic = -1;
    for (int i = 0; i < samples; ++i) {
        const Scalar u(K, static_cast<long>(i % 2 == 0 ? i / 2 : -(i + 1) / 2));
        Poly H = eliminate_x(G, f - Poly::constant(u));
        generic = std::max(generic, H.degree());
        us.push_back(u);
        Hs.push_back(std::move(H));
    }
    std::vector<Scalar> xs;
    std::vector<Poly> Ks;
    for (std::size_t i = 0; i < us.size() && static_cast<int>(xs.size()) < du + 1; ++i) {
        if (Hs[i].degree() != generic) continue;
        xs.push_back(us[i]);
        Ks.push_back(eliminate_y(Hs[i], g));
    }
    int dv = 0;
    for (const auto& k : Ks) dv = std::max(dv, k.degree());
    std::vector<Poly> rows;
    for (int j = 0; j <= dv; ++j) {
        std::vector<Scalar> ys;
        for (const auto& k : Ks) ys.push_back(k.coeff(j));
        rows.push_back(lagrange(xs, ys));
    }
    const BivarPoly image(K, std::move(rows));
    if (image.is_zero() || (image.degree_x() <= 0 && image.degree_y() <= 0)) throw InputError("collapsed: the image is not a curve");
    return BivarCurve(squarefree_part(image));
}

std::optional<PeriodCertificate> curve_period(const BivarCurve& C, const Poly& f, const Poly& g, int N_max, int degree_cap) {
    if (N_max < 1) throw InputError("N_max must be positive");
    ContainmentFilter filter(C, f, g);
    PeriodCertificate cert{C, 0, {C}};
    for (int k = 1; k <= N_max; ++k) {
        if (!filter.next()) continue;
        // Extend the chain up to k images.
        while (static_cast<int>(cert.image_chain.size()) <= k) {
            const BivarCurve& last = cert.image_chain.back();
            if (last.degree_x() * g.degree() > degree_cap || last.degree_y() * f.degree() > degree_cap)
                throw ResourceError("curve_period: curve degree exceeds the cap at step " + std::to_string(cert.image_chain.size()));
            cert.image_chain.push_back(curve_image(last, f, g));
        }
        if (cert.image_chain[k] == C) {
            cert.period = k;
            cert.image_chain.erase(cert.image_chain.begin() + k + 1, cert.image_chain.end());
            return cert;
        }
    }
    return std::nullopt;
}

bool verify_period_certificate(const PeriodCertificate& cert, const Poly& f, const Poly& g) {
    if (cert.period < 1 || cert.image_chain.size() != static_cast<std::size_t>(cert.period) + 1) return false;
    if (!(cert.image_chain.front() == cert.curve) || !(cert.image_chain.back() == cert.curve)) return false;
    for (int k = 1; k <= cert.period; ++k) {
        if (!(curve_image(cert.image_chain[k - 1], f, g) == cert.image_chain[k])) return false;
        if (k < cert.period && cert.image_chain[k] == cert.curve) return false;
    }
    return true;
}

std::vector<DiagonalCurve> ms_diagonal_curves(const Poly& f, int deg_cap, int iter_bound) {
    const auto M = m_infinity(f, iter_bound);
    const Field& K = f.field();
    std::vector<Poly> its{Poly::x(K)};
    while (its.back().degree() * f.degree() <= deg_cap) its.push_back(compose(f, its.back()));
    std::vector<Poly> candidates;
    auto add = [&](const Poly& g) {
        if (g.degree() <= deg_cap && std::find(candidates.begin(), candidates.end(), g) == candidates.end()) candidates.push_back(g);
    };
    for (const auto& fm : its)
        for (const auto& ell : M.elements) {
            add(compose(ell, fm));
            add(compose(fm, ell));
        }
    std::stable_sort(candidates.begin(), candidates.end(), [](const Poly& a, const Poly& b) { return a.degree() < b.degree(); });
    std::vector<DiagonalCurve> out;
    for (const auto& g : candidates) {
        const auto k = commutes_with_iterate(f, g, iter_bound);
        if (!k) continue;
        for (bool mirrored : {false, true}) {
            const BivarPoly graph = BivarPoly::graph(g);
            const BivarCurve curve(mirrored ? graph.swapped() : graph);
            if (std::any_of(out.begin(), out.end(), [&](const DiagonalCurve& d) { return d.curve == curve; })) continue;
            auto cert = curve_period(curve, f, f, *k);
            if (!cert) throw Error("internal: commuting curve is not periodic");
            out.push_back({g, mirrored, *k, curve, std::move(*cert)});
        }
    }
    return out;
}

ProjectionProfile projection_profile(const BivarCurve& C) {
    if (C.poly().is_zero()) throw InputError("projection_profile needs a nonzero curve");
    return {C.degree_y() == 0, C.degree_x() == 0};
}

}  // namespace rittkit
