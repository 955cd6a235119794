#pragma once

#include <optional>
#include <vector>

#include "rittkit/bivar.hpp"
#include "rittkit/poly.hpp"

namespace rittkit {

/// Bidegree cap for intermediate curves in image chains.
inline constexpr int kCurveDegreeCap = 96;

/// Closure of (f x g)(C), as the squarefree part of the eliminant.
BivarCurve curve_image(const BivarCurve& C, const Poly& f, const Poly& g);

struct PeriodCertificate {
    BivarCurve curve;
    int period = 0;
    /// chain[0] = curve, chain[k] = image of chain[k - 1], chain[period] = chain[0].
    std::vector<BivarCurve> image_chain;
};

std::optional<PeriodCertificate> curve_period(const BivarCurve& C, const Poly& f, const Poly& g, int N_max,
                                              int degree_cap = kCurveDegreeCap);

/// Recompute every link of the chain and the minimality scan.
bool verify_period_certificate(const PeriodCertificate& cert, const Poly& f, const Poly& g);

struct DiagonalCurve {
    /// The curve is y = g(x), or x = g(y) when mirrored.
    Poly g;
    bool mirrored = false;
    int commuting_iterate = 0;
    BivarCurve curve;
    PeriodCertificate certificate;
};

std::vector<DiagonalCurve> ms_diagonal_curves(const Poly& f, int deg_cap, int iter_bound);

struct ProjectionProfile {
    bool x_constant = false;
    bool y_constant = false;
};

ProjectionProfile projection_profile(const BivarCurve& C);

}  // namespace rittkit
