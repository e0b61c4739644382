#include "geolog/regression.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <stdexcept>

#include "geolog/metric.hpp"

namespace geolog {

double log1p_exp(double h) {
    if (h > 0.0) return h + std::log1p(std::exp(-h));
    return std::log1p(std::exp(h));
}

double logistic(double h) {
    if (h >= 0.0) return 1.0 / (1.0 + std::exp(-h));
    const double e = std::exp(h);
    return e / (1.0 + e);
}

Dataset make_dataset(const Space& space, std::vector<Point> points, std::vector<int> labels) {
    if (points.empty()) throw std::invalid_argument("make_dataset: empty sample");
    if (points.size() != labels.size()) {
        throw std::invalid_argument("make_dataset: points and labels differ in length");
    }
    for (const Point& p : points) space.require_point(p);
    for (int label : labels) {
        if (label != 0 && label != 1) {
            throw std::invalid_argument("make_dataset: labels must be 0 or 1");
        }
    }
    return Dataset{space.id(), std::move(points), std::move(labels)};
}

double empirical_loglik(const Space& space, const Dataset& data, const Point& mu,
                        const Point& beta) {
    if (data.size() == 0) throw std::invalid_argument("empirical_loglik: empty dataset");
    double total = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const double h = alexandrov_inner_product(space, mu, data.x[i], beta);
        total += data.y[i] * h - log1p_exp(h);
    }
    return total / static_cast<double>(data.size());
}

namespace detail {

double tangent_loglik(const Matrix& z, const std::vector<int>& y, const Vector& b) {
    const Vector h = z * b;
    double total = 0.0;
    for (Eigen::Index i = 0; i < h.size(); ++i) {
        total += y[static_cast<std::size_t>(i)] * h[i] - log1p_exp(h[i]);
    }
    return total / static_cast<double>(h.size());
}

Vector tangent_gradient(const Matrix& z, const std::vector<int>& y, const Vector& b) {
    const Vector h = z * b;
    Vector g = Vector::Zero(z.cols());
    for (Eigen::Index i = 0; i < h.size(); ++i) {
        g += (y[static_cast<std::size_t>(i)] - logistic(h[i])) * z.row(i).transpose();
    }
    return g / static_cast<double>(h.size());
}

TangentFit tangent_logistic_fit(const Matrix& z, const std::vector<int>& y,
                                const FitOptions& opts) {
    const Eigen::Index n = z.rows();
    const Eigen::Index d = z.cols();
    if (n == 0 || static_cast<std::size_t>(n) != y.size()) {
        throw std::invalid_argument("tangent_logistic_fit: shape mismatch");
    }
    if (opts.max_iters < 1 || opts.grad_tol <= 0.0 || opts.separation_threshold <= 0.0) {
        throw std::invalid_argument("tangent_logistic_fit: invalid options");
    }

    // At a finite stationary point the training margins cannot all be
    // strictly correct: the likelihood derivative along b itself would be
    // positive. A nonzero b that classifies every observation strictly
    // correctly therefore certifies complete separation.
    const auto certify_separation = [&](TangentFit r) {
        if (!r.separated && r.b.norm() > 0.0) {
            const Vector h = z * r.b;
            bool all_strict = true;
            for (Eigen::Index i = 0; i < n; ++i) {
                const double margin = (y[static_cast<std::size_t>(i)] == 1 ? h[i] : -h[i]);
                if (!(margin > 0.0)) {
                    all_strict = false;
                    break;
                }
            }
            if (all_strict) {
                r.separated = true;
                r.converged = false;
            }
        }
        return r;
    };

    TangentFit result;
    result.b = Vector::Zero(d);

    // The classical overlap condition fails outright when one class is
    // absent: report separation rather than returning the trivial
    // stationary point as a legitimate MLE.
    bool has_zero = false;
    bool has_one = false;
    for (int label : y) (label == 1 ? has_one : has_zero) = true;
    if (!has_zero || !has_one) {
        result.loglik = tangent_loglik(z, y, result.b);
        result.grad_norm = tangent_gradient(z, y, result.b).norm();
        result.separated = true;
        return result;
    }

    Vector y_vec(n);
    for (Eigen::Index i = 0; i < n; ++i) y_vec[i] = y[static_cast<std::size_t>(i)];
    const auto loglik_at = [&](const Vector& h) {
        double total = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) total += y_vec[i] * h[i] - log1p_exp(h[i]);
        return total / static_cast<double>(n);
    };

    Vector h = Vector::Zero(n);  // kept in sync with result.b
    double loglik = loglik_at(h);
    for (int iter = 0;; ++iter) {
        Vector probs(n);
        for (Eigen::Index i = 0; i < n; ++i) probs[i] = logistic(h[i]);
        const Vector g = z.transpose() * (y_vec - probs) / static_cast<double>(n);

        result.loglik = loglik;
        result.grad_norm = g.norm();
        result.iters = iter;
        if (opts.on_iterate) opts.on_iterate(result.b, loglik, result.grad_norm);

        if (result.grad_norm <= opts.grad_tol) {
            result.converged = true;
            return certify_separation(result);
        }
        if (result.b.norm() > opts.separation_threshold) {
            result.separated = true;
            return result;
        }
        if (iter >= opts.max_iters) return certify_separation(result);

        // Negative Hessian (1/n) Z^T W Z; positive semidefinite by
        // construction, so LDLT suffices. Fall back to a gradient step if
        // the curvature is numerically unusable.
        const Vector weights = probs.array() * (1.0 - probs.array());
        const Matrix neg_hessian =
            z.transpose() * weights.asDiagonal() * z / static_cast<double>(n);

        Vector direction = neg_hessian.ldlt().solve(g);
        if (!direction.allFinite() || direction.dot(g) <= 0.0) direction = g;

        // The predicted gain of the Newton step is ~ g.dir / 2. Once it
        // drops below the likelihood's floating-point resolution the
        // optimum is attained to machine precision and no line search can
        // certify further progress, even if the gradient tolerance is set
        // below what doubles can resolve.
        if (g.dot(direction) <= 4e-15 * (1.0 + std::abs(loglik))) {
            result.converged = true;
            return certify_separation(result);
        }

        // Backtracking: halve until the likelihood does not decrease.
        const Vector h_step = z * direction;
        double step = 1.0;
        Vector h_trial = h + h_step;
        double candidate = loglik_at(h_trial);
        int halvings = 0;
        while (candidate < loglik && halvings < 30) {
            step *= 0.5;
            h_trial = h + step * h_step;
            candidate = loglik_at(h_trial);
            ++halvings;
        }
        if (candidate < loglik) return certify_separation(result);  // stalled
        result.b += step * direction;
        h = std::move(h_trial);
        loglik = candidate;
    }
}

}  // namespace detail

FitResult fit(const Space& space, const Dataset& data, const FitOptions& opts) {
    if (data.size() == 0) throw std::invalid_argument("fit: empty dataset");
    if (data.space_id != space.id()) {
        throw DimensionError("fit: dataset belongs to space '" + data.space_id + "'");
    }
    if (!space.has_chart()) {
        throw std::invalid_argument(
            "fit: optimization requires a charted space (generic metric-space optimization is "
            "not supported)");
    }

    Point mu;
    if (opts.mu_override) {
        space.require_point(*opts.mu_override);
        mu = *opts.mu_override;
    } else {
        mu = frechet_mean(space, data.x, opts.frechet).mean;
    }

    Matrix z(static_cast<Eigen::Index>(data.size()), space.dim());
    for (std::size_t i = 0; i < data.size(); ++i) {
        z.row(static_cast<Eigen::Index>(i)) = space.log_map(mu, data.x[i]).coeffs.transpose();
    }

    detail::TangentFit tangent = detail::tangent_logistic_fit(z, data.y, opts);

    // A separated or quasi-separated fit can stop at a tangent norm whose
    // exponential overflows the chart or lands outside the numerically
    // representable part of the space. Such a coefficient is
    // operationally a separation: flag it and shrink toward mu until
    // representable, so that beta_hat = exp(b_hat) holds for the returned
    // coefficients and every downstream operation stays finite.
    Vector b = tangent.b;
    Point beta;
    bool shrunk = false;
    for (;;) {
        bool representable = true;
        try {
            beta = space.exp_map(TangentVector{mu, b});
            representable = space.contains(beta.coords);
        } catch (const OutOfDomainError&) {
            representable = false;
            if (b.norm() < 1.0) throw;
        }
        if (representable) break;
        if (b.norm() < 1.0) {
            throw OutOfDomainError(space.id() +
                                   ": fitted coefficient cannot be represented in the space");
        }
        b *= 0.5;
        shrunk = true;
    }
    if (shrunk) {
        tangent.loglik = detail::tangent_loglik(z, data.y, b);
        tangent.separated = true;
        tangent.converged = false;
    }

    FitResult result;
    result.mu_hat = mu;
    result.beta_hat = std::move(beta);
    result.b_hat = TangentVector{std::move(mu), std::move(b)};
    result.loglik = tangent.loglik;
    result.grad_norm = tangent.grad_norm;
    result.iters = tangent.iters;
    result.converged = tangent.converged;
    result.separated = tangent.separated;
    return result;
}

double predict_logit(const Space& space, const FitResult& fitted, const Point& x) {
    return alexandrov_inner_product(space, fitted.mu_hat, x, fitted.beta_hat);
}

double predict_prob(const Space& space, const FitResult& fitted, const Point& x) {
    return logistic(predict_logit(space, fitted, x));
}

int classify(const Space& space, const FitResult& fitted, const Point& x) {
    return predict_logit(space, fitted, x) >= 0.0 ? 1 : 0;
}

int bayes_classify(const Space& space, const Point& mu_star, const Point& beta_star,
                   const Point& x) {
    return alexandrov_inner_product(space, mu_star, x, beta_star) >= 0.0 ? 1 : 0;
}

}  // namespace geolog
