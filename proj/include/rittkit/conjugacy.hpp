#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rittkit/poly.hpp"

namespace rittkit {

/// A witness that exists over an extension of the working field but not in it.
struct ExtensionNote {
    std::string what;
    std::string equation;
    std::optional<unsigned> cyclotomic_hint;
};

/// Shape of f. is_cyclic / is_dihedral and the closure flags are decided over the algebraic
/// closure; the witnesses are filled only when they lie in the working field.
struct ShapeReport {
    int degree = 0;
    bool is_cyclic = false;
    bool is_dihedral = false;
    bool conjugate_to_power = false;
    bool conjugate_to_chebyshev = false;
    /// ell with ell o f o ell^-1 = x^deg.
    std::optional<LinearPoly> conj_to_power;
    /// (sign, ell) with ell o f o ell^-1 = sign * T_deg.
    std::optional<std::pair<int, LinearPoly>> conj_to_pm_chebyshev;
    bool disintegrated = false;
    std::vector<ExtensionNote> extensions;
};

/// L2 o f o L1 = g.
struct EquivalenceWitness {
    LinearPoly L1, L2;
};

/// f = outer o hat o inner, hat monic with zero constant and zero x^(deg-1) coefficient.
struct EquivalenceNormalization {
    Poly hat;
    LinearPoly outer, inner;
};

/// l1 o A o l2 = x^s P(x^n), P not a polynomial in x^j for j >= 2.
struct PowerNormalForm {
    LinearPoly l1, l2;
    int s = 0, n = 0;
    Poly P;
};

EquivalenceNormalization normalize_for_equivalence(const Poly& f);

/// gcd of deg - k over the nonzero coefficients of hat below the top; 0 when hat = x^deg.
int rotation_order(const Poly& hat);

/// Solutions lambda of hat_g(x) = hat_f(lambda x) / lambda^deg, described by lambda^e = C
/// (e = 0: every lambda works). nullopt when no lambda exists over the closure.
struct ScalingEquation {
    int e = 0;
    Scalar C;
};
std::optional<ScalingEquation> scaling_between(const Poly& hat_f, const Poly& hat_g);

ShapeReport classify(const Poly& f);

bool is_cyclic(const Poly& f);
bool is_dihedral(const Poly& f);
bool is_disintegrated(const Poly& f);

/// Throws FieldExtensionRequired when a witness exists only over an extension.
std::optional<EquivalenceWitness> equivalence_witness(const Poly& f, const Poly& g);

/// nullopt when A is cyclic.
std::optional<PowerNormalForm> power_normal_form(const Poly& A);

/// Rebuild x^s P(x^n).
Poly power_form_poly(int s, int n, const Poly& P);

/// A canonical n-th root of c in the field, or FieldExtensionRequired naming u^n - c.
Scalar require_nth_root(const Scalar& c, unsigned n, const std::string& context);

}  // namespace rittkit
