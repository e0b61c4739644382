#include "geolog/frechet.hpp"

#include <stdexcept>

namespace geolog {

namespace {

double mean_squared_distance(const Space& space, const std::vector<Point>& points,
                             const Point& mu) {
    double total = 0.0;
    for (const Point& p : points) {
        const double d = space.distance(mu, p);
        total += d * d;
    }
    return total / static_cast<double>(points.size());
}

Vector mean_log(const Space& space, const std::vector<Point>& points, const Point& mu) {
    Vector m = Vector::Zero(space.dim());
    for (const Point& p : points) m += space.log_map(mu, p).coeffs;
    return m / static_cast<double>(points.size());
}

}  // namespace

FrechetResult frechet_mean(const Space& space, const std::vector<Point>& points,
                           const FrechetSolveOptions& opts) {
    if (points.empty()) throw std::invalid_argument("frechet_mean: empty sample");
    if (!space.has_chart()) {
        throw std::invalid_argument("frechet_mean: space without exp/log chart");
    }
    if (opts.max_iters < 1 || opts.tol <= 0.0 || opts.step <= 0.0 || opts.step > 1.0) {
        throw std::invalid_argument("frechet_mean: invalid solver options");
    }
    for (const Point& p : points) space.require_point(p);

    // Initialize at the chart average through the first sample point: the
    // exact answer on flat spaces and a good start elsewhere.
    Point mu = space.exp_map(TangentVector{points.front(), mean_log(space, points, points.front())});

    FrechetResult result;
    if (opts.objective_trace) {
        opts.objective_trace->clear();
        opts.objective_trace->push_back(mean_squared_distance(space, points, mu));
    }

    for (int iter = 0; iter < opts.max_iters; ++iter) {
        const Vector grad = mean_log(space, points, mu);
        result.grad_norm = grad.norm();
        result.iters = iter;
        if (result.grad_norm <= opts.tol) {
            result.converged = true;
            break;
        }
        mu = space.exp_map(TangentVector{mu, opts.step * grad});
        if (opts.objective_trace) {
            opts.objective_trace->push_back(mean_squared_distance(space, points, mu));
        }
    }
    if (!result.converged) {
        const Vector grad = mean_log(space, points, mu);
        result.grad_norm = grad.norm();
        result.iters = opts.max_iters;
        result.converged = result.grad_norm <= opts.tol;
    }
    result.mean = std::move(mu);
    result.objective = mean_squared_distance(space, points, result.mean);
    return result;
}

}  // namespace geolog
