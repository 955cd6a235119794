#pragma once

#include <optional>
#include <vector>

#include "rittkit/poly.hpp"

namespace rittkit {

/// A group of linear polynomials under composition.
struct LinearGroup {
    enum class Kind { Infinite, Finite };
    Kind kind = Kind::Finite;
    /// Finite case: generator^0, generator^1, ... in that order.
    std::vector<LinearPoly> elements;
    std::optional<LinearPoly> generator;
    /// Gamma(A): the companion L with A o ell = L o A, index-aligned with elements.
    std::vector<LinearPoly> companions;
    /// M(f^inf): smallest k with ell o f^k = f^k o ell, index-aligned with elements.
    std::vector<int> commuting_index;
    /// M(f^inf): the result at iter_bound agrees with the result at 2 iter_bound.
    bool stable = false;
    /// Gamma(A): order over the algebraic closure (0 when infinite).
    int closure_order = 0;
};

LinearGroup gamma_group(const Poly& A);

LinearGroup m_infinity(const Poly& f, int iter_bound);

/// Smallest n in [1, bound] with g o f^n = f^n o g.
std::optional<int> commutes_with_iterate(const Poly& f, const Poly& g, int bound);

/// Smallest n in [1, bound] such that f^n commutes with every element of m_infinity(f, bound).
std::optional<int> common_commuting_iterate(const Poly& f, int bound);

struct AlignResult {
    LinearPoly ell;
    int N = 0;
    int collision_i = 0, collision_j = 0;
    /// The chain L_0..L_n with f^i = L_i o g^i.
    std::vector<LinearPoly> chain;
    /// Whether N <= deg/2, the bound the construction is commonly quoted with.
    bool within_half_degree = false;
};

/// Given f^n = L o g^n, returns (ell, N) with f^N = (ell o g o ell^-1)^N and N <= n.
AlignResult align_iterates(const Poly& f, const Poly& g, const LinearPoly& L, int n);

/// g o f^j = f^j o g, with g = M o H and H a normalized right factor of f^k.
struct CommutingCandidate {
    Poly g;
    int source_iterate = 0;
    int commuting_iterate = 0;
};

/// Bounded search for a lowest-degree polynomial of degree >= 2 commuting with an iterate of f,
/// over degrees up to deg_cap and iterates up to iter_bound.
std::optional<CommutingCandidate> lowest_commuting_candidate(const Poly& f, int deg_cap, int iter_bound);

/// Check that a finite group is closed, has inverses and the identity, and is generated by
/// its generator.
bool verify_finite_group(const LinearGroup& g);

}  // namespace rittkit
