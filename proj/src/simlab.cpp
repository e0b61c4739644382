#include "geolog/simlab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "geolog/metric.hpp"
#include "geolog/parallel.hpp"

namespace geolog {

namespace {

constexpr double kSqrt3 = 1.7320508075688772;

Point identity_point(const SpdLogCholeskySpace& space) {
    return space.make_point(space.from_matrix(Matrix::Identity(space.order(), space.order())));
}

std::string format_g(double value, int digits = 9) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.*g", digits, value);
    return buffer;
}

}  // namespace

Matrix sigma_ar() {
    Matrix m(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = std::pow(0.5, std::abs(i - j));
    return m;
}

SimConfig default_sim_config(int case_id) {
    SpdLogCholeskySpace space(3);
    SimConfig config;
    config.case_id = case_id;
    config.mu_star = identity_point(space);
    config.beta_star = space.make_point(space.from_matrix(3.0 * sigma_ar()));
    return config;
}

void validate_sim_config(const SpdLogCholeskySpace& space, const SimConfig& config) {
    if (config.case_id < 1 || config.case_id > 3) {
        throw std::invalid_argument("sim config: case must be 1, 2 or 3");
    }
    if (config.n < 10) throw std::invalid_argument("sim config: n must be >= 10");
    if (config.r <= 0.0) throw std::invalid_argument("sim config: r must be positive");
    if (config.train_frac <= 0.0 || config.train_frac >= 1.0) {
        throw std::invalid_argument("sim config: train_frac must lie in (0,1)");
    }
    space.require_point(config.mu_star);
    space.require_point(config.beta_star);
    if (config.case_id != 1) {
        if (space.order() != 3) {
            throw std::invalid_argument("sim config: cases 2 and 3 are defined on SPD(3)");
        }
        const Point identity = identity_point(space);
        const Point three_ar = space.make_point(space.from_matrix(3.0 * sigma_ar()));
        if (!same_point(config.mu_star, identity) || !same_point(config.beta_star, three_ar)) {
            throw std::invalid_argument(
                "sim config: cases 2 and 3 fix mu* = I_3 and the beta role at 3 Sigma_AR");
        }
    }
}

Point draw_covariate(const SpdLogCholeskySpace& space, const Point& mu_star, double r,
                     Rng& rng) {
    if (r <= 0.0) throw std::invalid_argument("draw_covariate: r must be positive");
    const double sd = std::sqrt(r);
    // A draw deep in the tangent tail can land so close to the boundary of
    // the cone that the stored matrix entries round to a non-PD matrix; such
    // draws (probability ~1e-5 at r=4) are redrawn.
    for (int attempt = 0; attempt < 100; ++attempt) {
        Vector sym(space.ambient_size());
        for (int k = 0; k < sym.size(); ++k) sym[k] = rng.normal(0.0, sd);
        Point x = space.exp_map(space.tangent_from_ambient(mu_star, sym));
        if (space.contains(x.coords)) return x;
    }
    throw NumericalLimitError(
        "draw_covariate: could not produce a representable SPD draw in 100 attempts");
}

double logit_case(int case_id, const SpdLogCholeskySpace& space, const Point& x,
                  const Point& mu_star, const Point& beta_star) {
    switch (case_id) {
        case 1:
            return alexandrov_inner_product(space, mu_star, x, beta_star);
        case 2: {
            const double h = alexandrov_inner_product(space, mu_star, x, beta_star);
            return 2.0 * std::sin(M_PI * h) + h;
        }
        case 3: {
            if (space.order() != 3) {
                throw std::invalid_argument("logit_case: case 3 is defined on SPD(3)");
            }
            const Vector& v = x.coords;  // row-major lower-triangular stacking
            return std::log(3.0) * std::sin(M_PI * v[0]) + 0.5 * kSqrt3 * v[1] * v[1] +
                   0.25 * kSqrt3 * std::exp(v[2]) + 0.75 * v[4] +
                   2.0 * std::log(1.5) * (v[3] + v[5]);
        }
        default:
            throw std::invalid_argument("logit_case: unknown case id");
    }
}

Dataset generate_dataset(const SpdLogCholeskySpace& space, const SimConfig& config, Rng& rng) {
    validate_sim_config(space, config);
    std::vector<Point> points;
    std::vector<int> labels;
    points.reserve(static_cast<std::size_t>(config.n));
    labels.reserve(static_cast<std::size_t>(config.n));
    for (int i = 0; i < config.n; ++i) {
        Point x = draw_covariate(space, config.mu_star, config.r, rng);
        const double logit =
            logit_case(config.case_id, space, x, config.mu_star, config.beta_star);
        labels.push_back(rng.bernoulli(logistic(logit)) ? 1 : 0);
        points.push_back(std::move(x));
    }
    return Dataset{space.id(), std::move(points), std::move(labels)};
}

double rank_auc(const std::vector<double>& scores, const std::vector<int>& labels) {
    if (scores.size() != labels.size() || scores.empty()) {
        throw std::invalid_argument("rank_auc: shape mismatch");
    }
    const std::size_t n = scores.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    // Average ranks over ties, then the Mann-Whitney identity.
    std::vector<double> rank(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
        const double avg_rank = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) rank[order[k]] = avg_rank;
        i = j + 1;
    }

    double positive_rank_sum = 0.0;
    std::size_t n_pos = 0;
    for (std::size_t k = 0; k < n; ++k) {
        if (labels[k] == 1) {
            positive_rank_sum += rank[k];
            ++n_pos;
        }
    }
    const std::size_t n_neg = n - n_pos;
    if (n_pos == 0 || n_neg == 0) {
        throw std::invalid_argument("rank_auc: both classes must be present");
    }
    return (positive_rank_sum - 0.5 * static_cast<double>(n_pos) * (n_pos + 1)) /
           (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

double empirical_excess_risk(const std::vector<int>& predicted, const std::vector<int>& bayes,
                             const std::vector<int>& labels) {
    if (predicted.size() != labels.size() || bayes.size() != labels.size() || labels.empty()) {
        throw std::invalid_argument("empirical_excess_risk: shape mismatch");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        total += static_cast<double>(predicted[i] != labels[i]) -
                 static_cast<double>(bayes[i] != labels[i]);
    }
    return total / static_cast<double>(labels.size());
}

ReplicateMetrics eval_replicate(const SpdLogCholeskySpace& space, const SimConfig& config,
                                Rng& rng) {
    validate_sim_config(space, config);
    const Dataset data = generate_dataset(space, config, rng);

    ReplicateMetrics metrics;
    double sq_sum = 0.0;
    for (const Point& x : data.x) {
        const double d = space.distance(config.mu_star, x);
        sq_sum += d * d;
    }
    metrics.sigma2_sample = sq_sum / static_cast<double>(config.n);

    // Uniformly random train/test partition, re-drawn each replicate.
    std::vector<std::size_t> index(data.size());
    std::iota(index.begin(), index.end(), 0);
    rng.shuffle(index);
    std::size_t n_train =
        static_cast<std::size_t>(std::lround(config.train_frac * static_cast<double>(config.n)));
    n_train = std::clamp<std::size_t>(n_train, 1, data.size() - 1);

    std::vector<Point> train_x;
    std::vector<int> train_y;
    for (std::size_t k = 0; k < n_train; ++k) {
        train_x.push_back(data.x[index[k]]);
        train_y.push_back(data.y[index[k]]);
    }
    const Dataset train{space.id(), std::move(train_x), std::move(train_y)};
    const FitResult fitted = fit(space, train);
    metrics.fit_converged = fitted.converged;

    metrics.d_mu = space.distance(config.mu_star, fitted.mu_hat);
    if (config.case_id == 1) {
        metrics.d_beta = space.distance(config.beta_star, fitted.beta_hat);
    }

    std::vector<double> scores;
    std::vector<int> test_labels, predictions, bayes_labels;
    double rmse_sq_sum = 0.0;
    long correct = 0;
    long true_pos = 0, false_neg = 0, true_neg = 0, false_pos = 0;
    const std::size_t n_test = data.size() - n_train;
    for (std::size_t k = n_train; k < data.size(); ++k) {
        const Point& x = data.x[index[k]];
        const int y = data.y[index[k]];
        const double fitted_logit = predict_logit(space, fitted, x);
        const double true_logit =
            logit_case(config.case_id, space, x, config.mu_star, config.beta_star);
        if (config.case_id == 1) {
            const double err = fitted_logit - true_logit;
            rmse_sq_sum += err * err;
        }
        const int predicted = fitted_logit >= 0.0 ? 1 : 0;
        const int bayes = true_logit >= 0.0 ? 1 : 0;
        correct += predicted == y;
        if (y == 1) (predicted == 1 ? true_pos : false_neg)++;
        else (predicted == 0 ? true_neg : false_pos)++;
        scores.push_back(fitted_logit);
        test_labels.push_back(y);
        predictions.push_back(predicted);
        bayes_labels.push_back(bayes);
    }

    if (config.case_id == 1) {
        metrics.rmse = std::sqrt(rmse_sq_sum / static_cast<double>(n_test));
    }
    metrics.accuracy = static_cast<double>(correct) / static_cast<double>(n_test);
    metrics.eer = empirical_excess_risk(predictions, bayes_labels, test_labels);
    if (true_pos + false_neg > 0) {
        metrics.sensitivity =
            static_cast<double>(true_pos) / static_cast<double>(true_pos + false_neg);
    }
    if (true_neg + false_pos > 0) {
        metrics.specificity =
            static_cast<double>(true_neg) / static_cast<double>(true_neg + false_pos);
    }
    const bool both_classes = (true_pos + false_neg) > 0 && (true_neg + false_pos) > 0;
    if (both_classes) metrics.auc = rank_auc(scores, test_labels);
    return metrics;
}

namespace {

struct Accumulator {
    double sum = 0.0;
    double sum_sq = 0.0;
    int count = 0;

    void add(double value) {
        sum += value;
        sum_sq += value * value;
        ++count;
    }

    [[nodiscard]] MetricSummary summarize(const std::string& name) const {
        MetricSummary row;
        row.metric = name;
        row.count = count;
        if (count > 0) {
            row.mean = sum / count;
            if (count > 1) {
                const double var = (sum_sq - sum * sum / count) / (count - 1);
                row.std_dev = std::sqrt(std::max(var, 0.0));
            }
        }
        return row;
    }
};

}  // namespace

ExperimentSummary run_experiment(const SpdLogCholeskySpace& space, const SimConfig& config) {
    validate_sim_config(space, config);
    if (config.replicates < 2) {
        throw std::invalid_argument("run_experiment: at least 2 replicates required");
    }

    std::vector<ReplicateMetrics> all(static_cast<std::size_t>(config.replicates));
    parallel_for(
        all.size(),
        [&](std::size_t k) {
            Rng rng = Rng::substream(config.seed, k);
            all[k] = eval_replicate(space, config, rng);
        },
        config.threads);

    Accumulator d_mu, d_beta, rmse, accuracy, auc, sensitivity, specificity, eer, sigma2;
    for (const ReplicateMetrics& m : all) {
        d_mu.add(m.d_mu);
        if (m.d_beta) d_beta.add(*m.d_beta);
        if (m.rmse) rmse.add(*m.rmse);
        accuracy.add(m.accuracy);
        if (m.auc) auc.add(*m.auc);
        if (m.sensitivity) sensitivity.add(*m.sensitivity);
        if (m.specificity) specificity.add(*m.specificity);
        eer.add(m.eer);
        sigma2.add(m.sigma2_sample);
    }

    ExperimentSummary summary;
    summary.config = config;
    summary.rows.push_back(d_mu.summarize("d_mu"));
    if (config.case_id == 1) {
        summary.rows.push_back(d_beta.summarize("d_beta"));
        summary.rows.push_back(rmse.summarize("rmse"));
    }
    summary.rows.push_back(accuracy.summarize("accuracy"));
    summary.rows.push_back(auc.summarize("auc"));
    summary.rows.push_back(sensitivity.summarize("sensitivity"));
    summary.rows.push_back(specificity.summarize("specificity"));
    summary.rows.push_back(eer.summarize("eer"));
    summary.rows.push_back(sigma2.summarize("sigma2_x"));
    return summary;
}

std::string format_summary_table(const ExperimentSummary& summary) {
    std::ostringstream out;
    out << "metric\tmean\tstd\tn\tr\tcase\n";
    for (const MetricSummary& row : summary.rows) {
        out << row.metric << '\t' << format_g(row.mean) << '\t' << format_g(row.std_dev) << '\t'
            << summary.config.n << '\t' << format_g(summary.config.r) << '\t'
            << summary.config.case_id << '\n';
    }
    return out.str();
}

std::string format_summary_kv(const ExperimentSummary& summary) {
    std::ostringstream out;
    for (const MetricSummary& row : summary.rows) {
        out << "metric=" << row.metric << " mean=" << format_g(row.mean)
            << " std=" << format_g(row.std_dev) << " n=" << summary.config.n
            << " r=" << format_g(summary.config.r) << " case=" << summary.config.case_id << '\n';
    }
    return out.str();
}

}  // namespace geolog
