#include "geolog/inference.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "geolog/parallel.hpp"
#include "geolog/rng.hpp"

namespace geolog {

PermTestResult permutation_test(const Space& space, const Dataset& data, int n_perms,
                                std::uint64_t seed, const PermTestOptions& opts) {
    if (data.size() == 0) throw std::invalid_argument("permutation_test: empty dataset");
    if (n_perms < 1) throw std::invalid_argument("permutation_test: n_perms must be >= 1");

    const FitResult observed = fit(space, data, opts.fit);

    // Shuffling y leaves the covariate sample unchanged, so mu_hat is
    // computed once and reused; likewise the tangent coordinates.
    Matrix z(static_cast<Eigen::Index>(data.size()), space.dim());
    for (std::size_t i = 0; i < data.size(); ++i) {
        z.row(static_cast<Eigen::Index>(i)) =
            space.log_map(observed.mu_hat, data.x[i]).coeffs.transpose();
    }

    const auto statistic_of = [&](const detail::TangentFit& tf) -> double {
        if (tf.separated) return std::numeric_limits<double>::infinity();
        switch (opts.statistic) {
            case PermStatistic::geodesic_distance:
                return space.distance(observed.mu_hat,
                                      space.exp_map(TangentVector{observed.mu_hat, tf.b}));
            case PermStatistic::likelihood_ratio: {
                // loglik at beta = mu is -log 2 for any data.
                return tf.loglik + std::log(2.0);
            }
        }
        return 0.0;
    };

    PermTestResult result;
    result.n_perms = n_perms;
    result.seed = seed;
    if (observed.separated) {
        result.stat_obs = std::numeric_limits<double>::infinity();
    } else {
        switch (opts.statistic) {
            case PermStatistic::geodesic_distance:
                result.stat_obs = space.distance(observed.mu_hat, observed.beta_hat);
                break;
            case PermStatistic::likelihood_ratio:
                result.stat_obs = observed.loglik + std::log(2.0);
                break;
        }
    }

    result.perm_stats.assign(static_cast<std::size_t>(n_perms), 0.0);
    std::vector<char> perm_separated(static_cast<std::size_t>(n_perms), 0);
    parallel_for(
        static_cast<std::size_t>(n_perms),
        [&](std::size_t k) {
            Rng rng = Rng::substream(seed, k);
            std::vector<int> labels = data.y;
            rng.shuffle(labels);
            const detail::TangentFit tf = detail::tangent_logistic_fit(z, labels, opts.fit);
            perm_separated[k] = tf.separated ? 1 : 0;
            result.perm_stats[k] = statistic_of(tf);
        },
        opts.threads);

    int exceed = 0;
    for (std::size_t k = 0; k < result.perm_stats.size(); ++k) {
        if (perm_separated[k]) ++result.separated_count;
        if (result.perm_stats[k] >= result.stat_obs) ++exceed;
    }
    result.p_value = (1.0 + exceed) / (static_cast<double>(n_perms) + 1.0);
    return result;
}

}  // namespace geolog
