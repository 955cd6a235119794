#include "doctest.h"

#include <omp.h>

#include "rittkit/kernels.hpp"
#include "rittkit/parse.hpp"

using namespace rittkit;
using kernels::Exec;

namespace {

Scalar q(long n, long d = 1) { return Scalar(Field(), mpq_class(n, d)); }

bool same(const kernels::ModpOutcome& a, const kernels::ModpOutcome& b) {
    return a.prime == b.prime && a.good == b.good && a.rejection == b.rejection && a.result.indices == b.result.indices &&
           a.result.cycle == b.result.cycle;
}

bool same(const PreperiodicResult& a, const PreperiodicResult& b) {
    if (a.kind != b.kind || a.tail != b.tail || a.period != b.period || a.orbit != b.orbit) return false;
    if (a.escape.has_value() != b.escape.has_value()) return false;
    return !a.escape || (a.escape->index == b.escape->index && a.escape->point == b.escape->point && a.escape->growth == b.escape->growth);
}

}  // namespace

TEST_CASE("odd primes match trial division") {
    const auto ps = kernels::odd_primes(1, 200);
    std::vector<std::uint64_t> want;
    for (std::uint64_t n = 3; n <= 200; ++n) {
        bool prime = true;
        for (std::uint64_t d = 2; d < n; ++d) prime = prime && n % d != 0;
        if (prime) want.push_back(n);
    }
    CHECK(ps == want);
    CHECK(kernels::odd_primes(90, 96).empty());
}

TEST_CASE("parallel mod p sets equal the serial reference") {
    const Poly F1 = parse_poly("x^2 + 3/7"), F2 = parse_poly("2x^3 - x + 1");
    const BivarCurve C = parse_curve("y^2 - x^3 - x");
    const Point alpha{q(1, 3), q(2)};
    const auto primes = kernels::odd_primes(3, 3000);
    for (int threads : {1, 2, 4}) {
        omp_set_num_threads(threads);
        const auto serial = kernels::modp_return_sets(F1, F2, alpha, C, primes, 500, Exec::Serial);
        const auto parallel = kernels::modp_return_sets(F1, F2, alpha, C, primes, 500, Exec::Parallel);
        REQUIRE(serial.size() == primes.size());
        REQUIRE(parallel.size() == primes.size());
        for (std::size_t i = 0; i < primes.size(); ++i) CHECK(same(serial[i], parallel[i]));
        CHECK_FALSE(serial[0].good);  // p = 3 divides a denominator of the point
        CHECK_FALSE(serial[2].good);  // p = 7 divides a denominator of F1
        CHECK(serial[1].good);
    }
    CHECK_THROWS_AS(kernels::modp_return_sets(F1, F2, alpha, C, {3, 15}, 5, Exec::Parallel), InputError);
}

TEST_CASE("parallel preperiodic scan equals the serial reference") {
    const Poly f = parse_poly("x^2 - 3/4");
    std::vector<Scalar> starts;
    for (int a = -12; a <= 12; ++a)
        for (int b = 1; b <= 4; ++b) starts.push_back(q(a, b));
    for (int threads : {1, 3}) {
        omp_set_num_threads(threads);
        const auto serial = kernels::preperiodic_scan(f, starts, 30, 2048, Exec::Serial);
        const auto parallel = kernels::preperiodic_scan(f, starts, 30, 2048, Exec::Parallel);
        REQUIRE(serial.size() == starts.size());
        for (std::size_t i = 0; i < starts.size(); ++i) {
            CHECK(same(serial[i], parallel[i]));
            CHECK(same(serial[i], preperiodic_check(f, starts[i], 30, 2048)));
        }
    }
    // -1/2 and 3/2 are the fixed points of x^2 - 3/4.
    CHECK(kernels::preperiodic_scan(f, {q(-1, 2), q(3, 2)}, 5, 2048, Exec::Parallel)[1].period == 1);
}
