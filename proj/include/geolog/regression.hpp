// Binary regression with metric-space covariates: the log odds of Y=1 given
// X is modeled as the Alexandrov inner product h(beta; X, mu) with mu the
// Frechet mean of X and beta a coefficient point of the same space. On a
// charted space the parameterization beta = exp_mu(b) turns the likelihood
// into a strictly concave Euclidean logistic problem in the tangent
// coefficients b, solved here by damped Newton ascent. The induced plug-in
// classifier assigns class 1 iff h(beta_hat; x, mu_hat) >= 0.

#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "geolog/frechet.hpp"
#include "geolog/space.hpp"

namespace geolog {

/// Paired (point, binary label) observations from one space.
struct Dataset {
    std::string space_id;
    std::vector<Point> x;
    std::vector<int> y;

    [[nodiscard]] std::size_t size() const { return x.size(); }
};

/// Validating constructor; labels must be 0/1 and all points members of
/// `space`.
[[nodiscard]] Dataset make_dataset(const Space& space, std::vector<Point> points,
                                   std::vector<int> labels);

struct FitOptions {
    int max_iters = 100;
    double grad_tol = 1e-10;
    /// Tangent-coefficient norm beyond which (with the gradient still above
    /// tolerance) the fit reports complete separation.
    double separation_threshold = 1e3;
    std::optional<Point> mu_override;
    FrechetSolveOptions frechet{};
    /// Test hook invoked once per Newton iterate with (b, loglik, grad_norm).
    std::function<void(const Vector&, double, double)> on_iterate{};
};

struct FitResult {
    Point mu_hat;
    Point beta_hat;
    TangentVector b_hat;
    double loglik = 0.0;     // mean log-likelihood at the solution, <= 0
    double grad_norm = 0.0;  // tangent-space gradient norm at the solution
    int iters = 0;
    bool converged = false;
    bool separated = false;
};

/// Mean empirical log-likelihood n^{-1} sum_i [y_i h_i - log(1 + e^{h_i})]
/// with h_i = h(beta; x_i, mu), computed in overflow-safe form.
[[nodiscard]] double empirical_loglik(const Space& space, const Dataset& data, const Point& mu,
                                      const Point& beta);

/// Maximum likelihood fit: mu_hat by Frechet mean (unless overridden), then
/// Newton ascent of the tangent-space likelihood, then beta_hat =
/// exp_{mu_hat}(b_hat). Complete separation is reported through
/// `separated`, never silently.
[[nodiscard]] FitResult fit(const Space& space, const Dataset& data, const FitOptions& opts = {});

/// h(beta_hat; x, mu_hat) for a fitted model.
[[nodiscard]] double predict_logit(const Space& space, const FitResult& fitted, const Point& x);

/// Estimated success probability {1 + exp(-h)}^{-1} in (0,1).
[[nodiscard]] double predict_prob(const Space& space, const FitResult& fitted, const Point& x);

/// Plug-in classifier: 1 iff h(beta_hat; x, mu_hat) >= 0 (ties to class 1).
[[nodiscard]] int classify(const Space& space, const FitResult& fitted, const Point& x);

/// Bayes classifier at the true parameters: 1 iff h(beta*; x, mu*) >= 0.
[[nodiscard]] int bayes_classify(const Space& space, const Point& mu_star,
                                 const Point& beta_star, const Point& x);

/// log(1 + e^h) without overflow.
[[nodiscard]] double log1p_exp(double h);

/// Numerically stable logistic function.
[[nodiscard]] double logistic(double h);

namespace detail {

/// Mean log-likelihood of the tangent-coordinate problem at coefficients b.
[[nodiscard]] double tangent_loglik(const Matrix& z, const std::vector<int>& y, const Vector& b);

/// Analytic gradient (1/n) Z^T (y - p) of the tangent-coordinate problem.
[[nodiscard]] Vector tangent_gradient(const Matrix& z, const std::vector<int>& y,
                                      const Vector& b);

/// No-intercept logistic Newton ascent in fixed tangent coordinates: rows
/// of z are the frame coordinates of log_mu(x_i). Exposed for reuse by the
/// permutation test, which refits many label vectors over one z matrix.
struct TangentFit {
    Vector b;
    double loglik = 0.0;
    double grad_norm = 0.0;
    int iters = 0;
    bool converged = false;
    bool separated = false;
};

[[nodiscard]] TangentFit tangent_logistic_fit(const Matrix& z, const std::vector<int>& y,
                                              const FitOptions& opts);

}  // namespace detail

}  // namespace geolog
