// Permutation test of no covariate effect, H0: beta* = mu*. The default
// statistic is the geodesic effect size T = d(mu_hat, beta_hat) from a full
// fit; labels are shuffled with the covariates (and hence mu_hat) fixed,
// beta is refit per permutation, and the p-value uses the add-one formula
// so that the test is exact at any number of permutations.

#pragma once

#include <cstdint>
#include <vector>

#include "geolog/regression.hpp"
#include "geolog/space.hpp"

namespace geolog {

enum class PermStatistic {
    geodesic_distance,  // d(mu_hat, beta_hat)
    likelihood_ratio,   // mean loglik gain over the null beta = mu
};

struct PermTestOptions {
    PermStatistic statistic = PermStatistic::geodesic_distance;
    FitOptions fit{};
    int threads = 0;  // <= 0: GEOLOG_THREADS / hardware default
};

struct PermTestResult {
    double stat_obs = 0.0;
    std::vector<double> perm_stats;
    double p_value = 1.0;
    int n_perms = 0;
    std::uint64_t seed = 0;
    /// Permutation fits flagged as separated; their statistic is +infinity
    /// (conservative) and they still count in the p-value.
    int separated_count = 0;
};

/// Deterministic given (data, n_perms, seed): permutation k draws its
/// labels from substream (seed, k), so results are identical for any
/// thread count.
[[nodiscard]] PermTestResult permutation_test(const Space& space, const Dataset& data,
                                              int n_perms, std::uint64_t seed,
                                              const PermTestOptions& opts = {});

}  // namespace geolog
