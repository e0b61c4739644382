#include "geolog/cli_app.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "geolog/inference.hpp"
#include "geolog/io.hpp"
#include "geolog/metric.hpp"
#include "geolog/regression.hpp"
#include "geolog/simlab.hpp"

namespace geolog {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitSeparation = 3;
constexpr int kExitConvergence = 4;

MatrixBundle load_bundle_checked(const std::string& path, const std::string& expected_space) {
    MatrixBundle bundle = read_bundle_file(path);
    if (!expected_space.empty() && bundle.space_name != expected_space) {
        throw ParseError("bundle space '" + bundle.space_name + "' does not match --space '" +
                         expected_space + "'");
    }
    return bundle;
}

int cmd_fit(const std::string& data_path, const std::string& space_name,
            const std::string& out_path, int max_iters, double tol) {
    const MatrixBundle bundle = load_bundle_checked(data_path, space_name);
    const Dataset data = bundle.to_dataset();

    FitOptions opts;
    opts.max_iters = max_iters;
    opts.grad_tol = tol;
    const FitResult fitted = fit(*bundle.space, data, opts);

    if (fitted.separated) {
        std::cerr << "error: complete separation detected; the maximum likelihood estimate "
                     "does not exist for this label configuration\n";
        return kExitSeparation;
    }
    if (!fitted.converged) {
        std::cerr << "error: fit did not converge within " << max_iters
                  << " iterations (grad_norm=" << fitted.grad_norm << ")\n";
        return kExitConvergence;
    }

    write_model_file(out_path, to_model_file(bundle.space_name, bundle.dim, fitted));
    std::cout << "d_mu_beta=" << format_double(bundle.space->distance(fitted.mu_hat,
                                                                      fitted.beta_hat))
              << "\n"
              << "loglik=" << format_double(fitted.loglik) << "\n"
              << "converged=" << (fitted.converged ? 1 : 0) << " iters=" << fitted.iters
              << " grad_norm=" << format_double(fitted.grad_norm) << "\n";
    return kExitOk;
}

int cmd_predict(const std::string& model_path, const std::string& data_path,
                const std::string& out_path) {
    const ModelFile model = read_model_file(model_path);
    auto [space, fitted] = from_model_file(model);

    const MatrixBundle bundle = read_bundle_file(data_path);
    if (bundle.space->id() != space->id()) {
        throw ParseError("data space '" + bundle.space->id() + "' does not match model space '" +
                         space->id() + "'");
    }

    std::ofstream out(out_path);
    if (!out) throw ParseError("cannot open '" + out_path + "' for writing");
    for (const BundleRow& row : bundle.rows) {
        const Point x{space->id(), row.coords};
        const double prob = predict_prob(*space, fitted, x);
        out << format_double(prob) << ',' << (prob >= 0.5 ? 1 : 0) << "\n";
    }
    return kExitOk;
}

int cmd_geodesic(const std::string& model_path, const std::string& t_list) {
    const ModelFile model = read_model_file(model_path);
    auto [space, fitted] = from_model_file(model);

    const Vector ts = parse_vector(t_list);
    const double b_norm = fitted.b_hat.coeffs.norm();

    std::cout << "t\todds\tcoords\n";
    for (Eigen::Index i = 0; i < ts.size(); ++i) {
        const double t = ts[i];
        Point gamma_t = fitted.mu_hat;
        if (std::abs(t) > 0.0) {
            if (b_norm < kPointEqualTol) {
                throw OutOfDomainError(
                    "geodesic direction undefined: beta_hat equals mu_hat, so only t=0 is "
                    "valid");
            }
            bool projected = false;
            gamma_t = space->exp_map(
                TangentVector{fitted.mu_hat, (t / b_norm) * fitted.b_hat.coeffs}, &projected);
            if (projected) {
                throw OutOfDomainError("t=" + format_double(t) +
                                       " leaves the space's valid domain (the quantile "
                                       "monotone cone); shrink |t|");
            }
        }
        const double h = alexandrov_inner_product(*space, fitted.mu_hat, gamma_t,
                                                  fitted.beta_hat);
        std::cout << format_double(t) << '\t' << format_double(std::exp(h)) << '\t'
                  << format_vector(gamma_t.coords) << "\n";
    }
    return kExitOk;
}

int cmd_permtest(const std::string& data_path, const std::string& space_name, int n_perms,
                 std::uint64_t seed, const std::string& stat_name) {
    const MatrixBundle bundle = load_bundle_checked(data_path, space_name);
    const Dataset data = bundle.to_dataset();

    PermTestOptions opts;
    if (stat_name == "distance") opts.statistic = PermStatistic::geodesic_distance;
    else if (stat_name == "lr") opts.statistic = PermStatistic::likelihood_ratio;
    else throw ParseError("unknown statistic '" + stat_name + "' (expected distance|lr)");

    const PermTestResult result = permutation_test(*bundle.space, data, n_perms, seed, opts);
    std::cout << "stat_obs=" << format_double(result.stat_obs) << "\n"
              << "p_value=" << format_double(result.p_value) << "\n"
              << "n_perms=" << result.n_perms << "\n"
              << "separated_perms=" << result.separated_count << "\n"
              << "seed=" << result.seed << "\n";
    return kExitOk;
}

int cmd_simulate(int case_id, int n, double r, int reps, std::uint64_t seed,
                 const std::string& mu_coords, const std::string& beta_coords,
                 double train_frac) {
    SpdLogCholeskySpace space(3);
    SimConfig config = default_sim_config(case_id);
    config.n = n;
    config.r = r;
    config.replicates = reps;
    config.seed = seed;
    config.train_frac = train_frac;
    if (!mu_coords.empty()) config.mu_star = space.make_point(parse_vector(mu_coords));
    if (!beta_coords.empty()) config.beta_star = space.make_point(parse_vector(beta_coords));
    validate_sim_config(space, config);

    const ExperimentSummary summary = run_experiment(space, config);
    std::cout << format_summary_table(summary) << "\n" << format_summary_kv(summary);
    return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"binary regression and classification with metric-space covariates"};
    app.require_subcommand(1);

    std::string data_path, space_name, out_path, model_path, t_list, stat_name = "distance";
    std::string mu_coords, beta_coords;
    int max_iters = 100;
    double tol = 1e-10;
    int n_perms = 199, case_id = 1, n = 100, reps = 500;
    double r = 1.0, train_frac = 0.8;
    std::uint64_t seed = 0;

    CLI::App* fit_cmd = app.add_subcommand("fit", "fit the regression model to a labeled bundle");
    fit_cmd->add_option("--data", data_path, "matrix bundle path")->required();
    fit_cmd->add_option("--space", space_name,
                        "expected space (euclidean|spd|sphere|wasserstein1d)");
    fit_cmd->add_option("--out", out_path, "model file to write")->required();
    fit_cmd->add_option("--max-iters", max_iters, "Newton iteration cap");
    fit_cmd->add_option("--tol", tol, "gradient norm tolerance");

    CLI::App* predict_cmd =
        app.add_subcommand("predict", "per-row success probability and class");
    predict_cmd->add_option("--model", model_path, "model file")->required();
    predict_cmd->add_option("--data", data_path, "matrix bundle path")->required();
    predict_cmd->add_option("--out", out_path, "output path (rows: prob,class)")->required();

    CLI::App* geodesic_cmd = app.add_subcommand(
        "geodesic", "points and odds along the fitted geodesic (t in arclength units)");
    geodesic_cmd->add_option("--model", model_path, "model file")->required();
    geodesic_cmd->add_option("--t-list", t_list, "comma-separated arclength values")->required();

    CLI::App* permtest_cmd =
        app.add_subcommand("permtest", "permutation test of no covariate effect");
    permtest_cmd->add_option("--data", data_path, "matrix bundle path")->required();
    permtest_cmd->add_option("--space", space_name, "expected space");
    permtest_cmd->add_option("--perms", n_perms, "number of permutations")->required();
    permtest_cmd->add_option("--seed", seed, "random seed")->required();
    permtest_cmd->add_option("--stat", stat_name, "test statistic: distance|lr");

    CLI::App* simulate_cmd =
        app.add_subcommand("simulate", "Monte Carlo study on SPD(3), Log-Cholesky metric");
    simulate_cmd->add_option("--case", case_id, "data model: 1, 2 or 3")->required();
    simulate_cmd->add_option("--n", n, "sample size per replicate")->required();
    simulate_cmd->add_option("--r", r, "tangent variance scale");
    simulate_cmd->add_option("--reps", reps, "Monte Carlo replicates")->required();
    simulate_cmd->add_option("--seed", seed, "random seed");
    simulate_cmd->add_option("--mu", mu_coords, "mu* coordinates (default I_3)");
    simulate_cmd->add_option("--beta", beta_coords, "beta* coordinates (default 3 Sigma_AR)");
    simulate_cmd->add_option("--train-frac", train_frac, "training fraction");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (fit_cmd->parsed()) return cmd_fit(data_path, space_name, out_path, max_iters, tol);
        if (predict_cmd->parsed()) return cmd_predict(model_path, data_path, out_path);
        if (geodesic_cmd->parsed()) return cmd_geodesic(model_path, t_list);
        if (permtest_cmd->parsed())
            return cmd_permtest(data_path, space_name, n_perms, seed, stat_name);
        if (simulate_cmd->parsed())
            return cmd_simulate(case_id, n, r, reps, seed, mu_coords, beta_coords, train_frac);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitInput;
}

}  // namespace geolog
