// Sample Frechet mean: the minimizer of the mean squared distance to the
// sample. Solved by the tangent-space fixed-point iteration
//
//     mu <- exp_mu(step * mean_i log_mu(x_i)),
//
// which is exact in one step on flat charted spaces and converges at step 1
// on Hadamard spaces.

#pragma once

#include <vector>

#include "geolog/space.hpp"

namespace geolog {

struct FrechetSolveOptions {
    int max_iters = 200;
    double tol = 1e-10;  // tangent-gradient norm threshold
    double step = 1.0;
    /// Optional trace of the objective value per iteration (for diagnostics).
    std::vector<double>* objective_trace = nullptr;
};

struct FrechetResult {
    Point mean;
    double objective = 0.0;  // final mean squared distance
    double grad_norm = 0.0;  // norm of the mean log-map at the solution
    int iters = 0;
    bool converged = false;
};

/// Frechet mean of a nonempty sample. Requires a charted space. A
/// non-converged iteration is reported through `converged`, never silently.
[[nodiscard]] FrechetResult frechet_mean(const Space& space, const std::vector<Point>& points,
                                         const FrechetSolveOptions& opts = {});

}  // namespace geolog
