#pragma once

#include <optional>
#include <vector>

#include "rittkit/poly.hpp"

namespace rittkit {

inline constexpr int kDecomposeDegreeCap = 64;

/// f = factors[0] o factors[1] o ... ; every factor has degree >= 2.
struct DecompositionChain {
    std::vector<Poly> factors;

    Poly recompose() const;
    std::vector<int> degrees() const;
    friend bool operator==(const DecompositionChain&, const DecompositionChain&) = default;
};

struct Decompositions {
    /// One chain per class modulo linear shuffles: every inner factor is monic with zero
    /// constant term, so the outermost factor absorbs the linear parts.
    std::vector<DecompositionChain> chains;
    /// Distinct degree sequences occurring among the chains.
    std::vector<std::vector<int>> degree_sequences;
};

struct EngstromCertificate {
    Poly g, h, a_hat, b_hat, c_hat, d_hat;
    /// Present when deg a = deg c: a = c o ell and b = ell^-1 o d.
    std::optional<LinearPoly> ell;
};

struct PowerFormSplit {
    int j = 0, k = 0;
    Poly P1, P2;
    LinearPoly ell;
};

/// The monic degree-m polynomial with zero constant term whose r-th power agrees with
/// F / lc(F) in the top m coefficients (r = deg F / m). It is the only candidate right factor
/// of degree m up to a linear map on the left.
Poly normalized_right_factor_candidate(const Poly& F, int m);

/// The normalized right factor of degree m when one exists.
std::optional<Poly> normalized_right_factor(const Poly& F, int m);

/// The unique g with F = g o h, if any.
std::optional<Poly> left_factor_solve(const Poly& F, const Poly& h);

/// All h in the working field with F = g o h, canonically ordered. Throws
/// FieldExtensionRequired when solutions exist only over an extension.
std::vector<Poly> right_factor_solve(const Poly& F, const Poly& g);

Decompositions complete_decompositions(const Poly& f, int degree_cap = kDecomposeDegreeCap);

/// True when f has no decomposition into two factors of degree >= 2.
bool is_indecomposable(const Poly& f);

EngstromCertificate engstrom_refine(const Poly& a, const Poly& b, const Poly& c, const Poly& d);

/// For A o B = x^s P(x)^n with gcd(s, n) = 1: A = x^j P1(x)^n o ell, B = ell^-1 o x^k P2(x)^n.
PowerFormSplit decompose_power_form(const Poly& A, const Poly& B, int s, int n);

/// Monic R with R^n = f / lc(f), if it exists.
std::optional<Poly> monic_nth_root(const Poly& f, int n);

/// Largest k with x^k dividing f (f nonzero).
int x_valuation(const Poly& f);

/// Smallest cyclotomic field (as an order) containing an r-th root of lambda that is also a
/// root of `equation`; nullopt if none is found among orders up to 4 r m.
std::optional<unsigned> cyclotomic_hint_nth_root(const Poly& equation, const Scalar& lambda, unsigned r);

}  // namespace rittkit
