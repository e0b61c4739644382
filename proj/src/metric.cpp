#include "geolog/metric.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace geolog {

double comparison_angle(const Space& space, const Point& p, const Point& q, const Point& r) {
    if (same_point(p, q) || same_point(p, r)) {
        throw DegenerateInputError(
            "comparison_angle: vertex coincides with one of the other points");
    }
    const double a = space.distance(p, q);
    const double b = space.distance(p, r);
    const double c = space.distance(q, r);
    const double cosine = std::clamp((a * a + b * b - c * c) / (2.0 * a * b), -1.0, 1.0);
    return std::acos(cosine);
}

double alexandrov_angle_ladder(const Space& space, const Point& mu, const Point& x,
                               const Point& beta, const AngleLadderOptions& opts) {
    const double dx = space.distance(mu, x);
    const double db = space.distance(mu, beta);
    if (dx < kPointEqualTol || db < kPointEqualTol) {
        throw DegenerateInputError("alexandrov_angle_ladder: ray endpoint coincides with vertex");
    }
    const double delta = opts.initial_step_scale * std::min({dx, db, opts.step_cap});

    double prev_angle = 0.0;
    double last_extrap = 0.0;
    double second_last_extrap = 0.0;
    int extrap_count = 0;
    double step = delta;
    for (int rung = 0; rung < opts.depth; ++rung, step *= 0.5) {
        const Point along_x = space.geodesic_point({mu, x, step / dx});
        const Point along_b = space.geodesic_point({mu, beta, step / db});
        const double angle = comparison_angle(space, mu, along_x, along_b);
        if (rung > 0) {
            const double extrap = 2.0 * angle - prev_angle;
            second_last_extrap = last_extrap;
            last_extrap = extrap;
            ++extrap_count;
            if (extrap_count >= 2 && std::abs(last_extrap - second_last_extrap) <= opts.angle_tol) {
                return last_extrap;
            }
        }
        prev_angle = angle;
    }
    std::ostringstream msg;
    msg << "alexandrov_angle_ladder: extrapolation did not converge within depth " << opts.depth
        << "; last two iterates " << second_last_extrap << " and " << last_extrap;
    throw NumericalLimitError(msg.str());
}

double alexandrov_inner_product(const Space& space, const Point& mu, const Point& x,
                                const Point& beta) {
    if (same_point(x, mu) || same_point(beta, mu)) return 0.0;
    if (space.has_chart()) {
        return space.log_map(mu, x).coeffs.dot(space.log_map(mu, beta).coeffs);
    }
    return alexandrov_inner_product_ladder(space, mu, x, beta);
}

double alexandrov_inner_product_ladder(const Space& space, const Point& mu, const Point& x,
                                       const Point& beta, const AngleLadderOptions& opts) {
    if (same_point(x, mu) || same_point(beta, mu)) return 0.0;
    const double angle = alexandrov_angle_ladder(space, mu, x, beta, opts);
    return space.distance(mu, x) * space.distance(mu, beta) * std::cos(angle);
}

LipschitzReport check_lipschitz_projection(const Space& space,
                                           const std::vector<std::array<Point, 4>>& quadruples) {
    if (quadruples.empty()) {
        throw std::invalid_argument("check_lipschitz_projection: at least one quadruple required");
    }
    LipschitzReport report;
    for (const auto& quad : quadruples) {
        const Point& p = quad[0];
        const Point& q = quad[1];
        const Point& r = quad[2];
        const Point& u = quad[3];
        if (same_point(q, r) || same_point(p, q) || same_point(p, r) || same_point(p, u)) {
            ++report.skipped;
            continue;
        }
        // d(p,q) cos angle_p(u,q) = h(q; u, p) / d(p,u).
        const double du = space.distance(p, u);
        const double proj_q = alexandrov_inner_product(space, p, u, q) / du;
        const double proj_r = alexandrov_inner_product(space, p, u, r) / du;
        const double ratio = std::abs(proj_q - proj_r) / space.distance(q, r);
        report.max_ratio = std::max(report.max_ratio, ratio);
        ++report.used;
    }
    return report;
}

}  // namespace geolog
