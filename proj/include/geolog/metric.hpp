// Angle and inner-product primitives on geodesic metric spaces. The
// Alexandrov inner product
//
//     h(beta; x, mu) = d(mu,x) d(mu,beta) cos(angle_mu(x, beta))
//
// is the model's linear predictor: the projection of the geodesic from mu
// to x onto the geodesic from mu to beta. On charted spaces it equals the
// tangent inner product of the two log maps; the generic path evaluates the
// defining limit of comparison angles on a shrinking geometric ladder.

#pragma once

#include <array>
#include <vector>

#include "geolog/space.hpp"

namespace geolog {

[[nodiscard]] inline double distance(const Space& space, const Point& p, const Point& q) {
    return space.distance(p, q);
}

[[nodiscard]] inline Point geodesic_point(const Space& space, const GeodesicQuery& q) {
    return space.geodesic_point(q);
}

/// Euclidean angle at p of the comparison triangle with side lengths
/// d(p,q), d(p,r), d(q,r); the arccos argument is clamped to [-1,1] against
/// floating-point overshoot near collinear triples. Throws
/// DegenerateInputError when p coincides with q or r.
[[nodiscard]] double comparison_angle(const Space& space, const Point& p, const Point& q,
                                      const Point& r);

struct AngleLadderOptions {
    double initial_step_scale = 0.1;  // delta = scale * min(d(mu,x), d(mu,beta), step_cap)
    double step_cap = 0.1;
    int depth = 8;
    // Settle tolerance for successive Richardson extrapolants. Below ~1e-7
    // the comparison angle at the small ladder steps is dominated by acos
    // rounding noise, so a tighter value would never be certified.
    double angle_tol = 2e-7;
};

/// Alexandrov angle at mu between the geodesics toward x and beta,
/// evaluated by first-order Richardson extrapolation of comparison angles
/// at arclengths delta, delta/2, delta/4, ... along both geodesics. Throws
/// NumericalLimitError (reporting the last two iterates) when the
/// extrapolants fail to settle within the ladder depth.
[[nodiscard]] double alexandrov_angle_ladder(const Space& space, const Point& mu, const Point& x,
                                             const Point& beta,
                                             const AngleLadderOptions& opts = {});

/// h(beta; x, mu). Uses the chart (tangent inner product of log maps) when
/// the space has one, otherwise the comparison-angle ladder. Returns 0 when
/// x or beta coincides with mu.
[[nodiscard]] double alexandrov_inner_product(const Space& space, const Point& mu, const Point& x,
                                              const Point& beta);

/// Generic-path evaluation of h via the comparison-angle ladder, regardless
/// of chart availability. Serves as the independent second route for the
/// chart implementation.
[[nodiscard]] double alexandrov_inner_product_ladder(const Space& space, const Point& mu,
                                                     const Point& x, const Point& beta,
                                                     const AngleLadderOptions& opts = {});

struct LipschitzReport {
    double max_ratio = 0.0;
    int used = 0;
    int skipped = 0;
};

/// For quadruples (p,q,r,u), the largest observed ratio
/// |d(p,q) cos angle_p(u,q) - d(p,r) cos angle_p(u,r)| / d(q,r).
/// Degenerate quadruples (coinciding points) are skipped and counted.
[[nodiscard]] LipschitzReport check_lipschitz_projection(
    const Space& space, const std::vector<std::array<Point, 4>>& quadruples);

}  // namespace geolog
