#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rittkit/bivar.hpp"
#include "rittkit/errors.hpp"
#include "rittkit/poly.hpp"

namespace rittkit {

/// Bit-size cap for orbit points (numerators and denominators).
inline constexpr std::size_t kDefaultHeightCap = 4096;

using Point = std::pair<Scalar, Scalar>;

struct OrbitPoint {
    int index = 0;
    Point point;
};

struct Orbit {
    std::vector<OrbitPoint> points;
    /// First index whose point exceeded the height cap; it is not in `points`.
    std::optional<int> truncated_at;
};

/// Phi^n(alpha) for n = 0..N with Phi = F1 x F2.
Orbit orbit(const Poly& F1, const Poly& F2, const Point& alpha, int N, std::size_t height_cap = kDefaultHeightCap);

struct ReturnSet {
    std::vector<int> indices;
    /// Indices 0..horizon were decided.
    int horizon = 0;
    std::optional<int> truncated_at;
};

ReturnSet return_set_exact(const Poly& F1, const Poly& F2, const Point& alpha, const BivarCurve& C, int N,
                           std::size_t height_cap = kDefaultHeightCap);

/// Raised when p is not a prime of good reduction for the inputs.
class BadReduction : public InputError {
  public:
    BadReduction(std::uint64_t p, std::string condition)
        : InputError("bad reduction at p = " + std::to_string(p) + ": " + condition), condition_(std::move(condition)) {}
    const std::string& condition() const noexcept { return condition_; }

  private:
    std::string condition_;
};

struct ModpReturnSet {
    std::uint64_t prime = 0;
    std::vector<int> indices;
    /// First repeat of the reduced orbit within N steps: (tail, period).
    std::optional<std::pair<int, int>> cycle;
};

/// Largest accepted prime; residues then multiply inside 64 bits.
inline constexpr std::uint64_t kMaxPrime = 4294967291ULL;

/// {n <= N : G(Phi^n(alpha)) = 0 mod p}. Throws BadReduction naming the violated condition.
ModpReturnSet return_set_modp(const Poly& F1, const Poly& F2, const Point& alpha, const BivarCurve& C, std::uint64_t p, int N);

struct ModpSurvey {
    std::vector<ModpReturnSet> good;
    /// (prime, violated condition) for the rejected primes.
    std::vector<std::pair<std::uint64_t, std::string>> rejected;
    /// Running intersection after each good prime, in input order.
    std::vector<std::vector<int>> running_intersection;
};

/// return_set_modp over a list of primes, in parallel; the merge follows the input order.
ModpSurvey return_set_modp_survey(const Poly& F1, const Poly& F2, const Point& alpha, const BivarCurve& C,
                                  const std::vector<std::uint64_t>& primes, int N);

/// {a + b k : k >= 0}; b = 0 is the singleton {a}.
struct Progression {
    long a = 0;
    long b = 0;
    friend bool operator==(const Progression&, const Progression&) = default;
    friend auto operator<=>(const Progression&, const Progression&) = default;
};

/// Fewest progressions whose union meets [0, horizon] in S, from the eventual period of the
/// characteristic sequence (preperiod and period both at most horizon / 3).
std::optional<std::vector<Progression>> progression_decompose(const std::vector<int>& S, int horizon);

/// Members of the union inside [0, horizon], sorted.
std::vector<int> expand_progressions(const std::vector<Progression>& ps, int horizon);

struct EscapeCertificate {
    int index = 0;
    /// Orbit point at `index`, with |x| >= 1.
    Scalar point;
    /// Lower bound of |f(x)| / |x| on |x| >= |point|; exceeds 1.
    mpq_class growth;
};

struct PreperiodicResult {
    enum class Kind { Preperiodic, Escape, Unknown };
    Kind kind = Kind::Unknown;
    int tail = 0;
    int period = 0;
    std::optional<EscapeCertificate> escape;
    /// Orbit computed so far.
    std::vector<Scalar> orbit;
};

PreperiodicResult preperiodic_check(const Poly& f, const Scalar& a, int N, std::size_t height_cap = kDefaultHeightCap);

/// Recheck the bound and `steps` further exact iterations of strict growth in absolute value.
bool verify_escape(const Poly& f, const EscapeCertificate& cert, int steps = 5);

std::string to_string(PreperiodicResult::Kind k);

}  // namespace rittkit
