#include "rittkit/kernels.hpp"

#include <exception>

#include "rittkit/errors.hpp"

namespace rittkit::kernels {

namespace {

bool is_odd_prime(std::uint64_t n) {
    if (n < 3 || n % 2 == 0) return false;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

}  // namespace

std::vector<ModpOutcome> modp_return_sets(const Poly& F1, const Poly& F2, const Point& alpha, const BivarCurve& C,
                                          const std::vector<std::uint64_t>& primes, int N, Exec exec) {
    for (auto p : primes)
        if (p > kMaxPrime || !is_odd_prime(p)) throw InputError("not an odd prime below 2^32: " + std::to_string(p));
    const long n = static_cast<long>(primes.size());
    std::vector<ModpOutcome> out(primes.size());
    std::vector<std::exception_ptr> errors(primes.size());
#pragma omp parallel for schedule(dynamic) if (exec == Exec::Parallel)
    for (long i = 0; i < n; ++i) {
        ModpOutcome& o = out[i];
        o.prime = primes[i];
        try {
            o.result = return_set_modp(F1, F2, alpha, C, primes[i], N);
            o.good = true;
        } catch (const BadReduction& e) {
            o.rejection = e.condition();
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

std::vector<PreperiodicResult> preperiodic_scan(const Poly& f, const std::vector<Scalar>& starts, int N,
                                                std::size_t height_cap, Exec exec) {
    const long n = static_cast<long>(starts.size());
    std::vector<PreperiodicResult> out(starts.size());
    std::vector<std::exception_ptr> errors(starts.size());
#pragma omp parallel for schedule(dynamic) if (exec == Exec::Parallel)
    for (long i = 0; i < n; ++i) {
        try {
            out[i] = preperiodic_check(f, starts[i], N, height_cap);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

std::vector<std::uint64_t> odd_primes(std::uint64_t lo, std::uint64_t hi) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = std::max<std::uint64_t>(lo, 3); n <= hi; ++n)
        if (is_odd_prime(n)) out.push_back(n);
    return out;
}

}  // namespace rittkit::kernels
