#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rittkit/dml.hpp"

namespace rittkit::kernels {

enum class Exec { Serial, Parallel };

/// Outcome for one prime: either a return set or the violated good-reduction condition.
struct ModpOutcome {
    std::uint64_t prime = 0;
    bool good = false;
    ModpReturnSet result;
    std::string rejection;
};

/// return_set_modp for each prime, one entry per input prime in the same order.
std::vector<ModpOutcome> modp_return_sets(const Poly& F1, const Poly& F2, const Point& alpha, const BivarCurve& C,
                                          const std::vector<std::uint64_t>& primes, int N, Exec exec);

/// preperiodic_check for each starting point, in input order.
std::vector<PreperiodicResult> preperiodic_scan(const Poly& f, const std::vector<Scalar>& starts, int N,
                                                std::size_t height_cap, Exec exec);

/// Odd primes in [lo, hi].
std::vector<std::uint64_t> odd_primes(std::uint64_t lo, std::uint64_t hi);

}  // namespace rittkit::kernels
