#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rittkit/conjugacy.hpp"
#include "rittkit/poly.hpp"

namespace rittkit {

/// f o p = p o eta.
struct SemiconjWitness {
    Poly f, p, eta;
};

/// l1 o f o l1^-1 = x^c P(x)^b, l1 o p o l2^-1 = x^b, l2 o eta o l2^-1 = x^c P(x^b), P(0) != 0.
struct InouNormalForm {
    LinearPoly l1, l2;
    int b = 0, c = 0;
    Poly P;
    /// c = b mod deg f.
    bool congruence_flag = false;
    /// c = deg f mod b.
    bool degree_congruence_flag = false;
};

/// f^N o p = p o eta and g^N o q = q o eta.
struct CommonWitness {
    int N = 0;
    Poly eta, p, q;
};

/// A polynomial semiconjugate onto f: f o p = p o W.
struct Lift {
    Poly W, p;
};

bool semiconj_check(const SemiconjWitness& w);

/// The first eta (in canonical order) with f o p = p o eta, if any.
std::optional<Poly> solve_eta(const Poly& f, const Poly& p);
/// Every eta in the field with f o p = p o eta.
std::vector<Poly> solve_eta_all(const Poly& f, const Poly& p);

/// Every p with 1 <= deg p <= deg_bound and f o p = p o eta, ordered by degree. Leading
/// coefficient roots outside the field are skipped and described in `skipped` when given.
std::vector<Poly> solve_p(const Poly& f, const Poly& eta, int deg_bound, std::vector<ExtensionNote>* skipped = nullptr);

InouNormalForm inou_normal_form(const SemiconjWitness& w);

/// Lifts x^j P1(x^b) of f found at fixed points that are critical values, plus f itself.
std::vector<Lift> lifts(const Poly& f);

struct CommonSearch {
    std::optional<CommonWitness> witness;
    /// One line per iterate searched.
    std::vector<std::string> transcript;
};

/// Bounded search for a common polynomial semiconjugate to f^N and g^N, N <= N_max,
/// with deg p, deg q <= deg_cap. Minimal N first, then minimal deg p + deg q.
CommonSearch common_semiconjugate_search(const Poly& f, const Poly& g, int N_max, int deg_cap);
std::optional<CommonWitness> common_semiconjugate(const Poly& f, const Poly& g, int N_max, int deg_cap);

bool verify_common(const Poly& f, const Poly& g, const CommonWitness& w);

struct ClassWitness {
    int N = 0;
    Poly theta;
    /// f_i^N o ps[k] = ps[k] o theta for the k-th member.
    std::vector<Poly> ps;
};

struct ApproxClasses {
    std::vector<std::vector<int>> classes;
    std::vector<std::optional<ClassWitness>> witnesses;
    /// True when separate classes were only separated by a bounded search.
    bool at_caps = false;
};

ApproxClasses approx_classes(const std::vector<Poly>& fs, int N_max, int deg_cap);

}  // namespace rittkit
