#include <doctest.h>

#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "geolog/cli_app.hpp"
#include "geolog/io.hpp"
#include "geolog/metric.hpp"
#include "geolog/parallel.hpp"
#include "geolog/regression.hpp"
#include "geolog/simlab.hpp"
#include "geolog/spaces/euclidean.hpp"
#include "test_support.hpp"

using namespace geolog;

namespace {

namespace fs = std::filesystem;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("geolog_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    [[nodiscard]] std::string file(const std::string& name) const {
        return (path / name).string();
    }
    static int& counter() {
        static int value = 0;
        return value;
    }
};

int run(const std::vector<std::string>& args, std::string* stdout_text = nullptr) {
    std::vector<const char*> argv;
    argv.push_back("geolog");
    for (const std::string& a : args) argv.push_back(a.c_str());
    std::ostringstream captured;
    std::streambuf* old = std::cout.rdbuf(captured.rdbuf());
    const int code = run_cli(static_cast<int>(argv.size()), argv.data());
    std::cout.rdbuf(old);
    if (stdout_text) *stdout_text = captured.str();
    return code;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

/// Euclidean toy bundle with a mild signal along the first coordinate.
MatrixBundle toy_bundle(int n, std::uint64_t seed, bool all_ones = false) {
    MatrixBundle bundle;
    bundle.space_name = "euclidean";
    bundle.dim = 2;
    bundle.space = make_space("euclidean", 2);
    Rng rng(seed);
    for (int i = 0; i < n; ++i) {
        BundleRow row;
        Vector coords(2);
        coords << rng.normal(), rng.normal();
        row.coords = coords;
        row.label = all_ones ? 1 : (rng.bernoulli(logistic(1.5 * coords[0])) ? 1 : 0);
        bundle.rows.push_back(std::move(row));
    }
    return bundle;
}

}  // namespace

TEST_SUITE_BEGIN("io_cli");

TEST_CASE("bundle round-trip is byte-identical") {
    const MatrixBundle bundle = toy_bundle(10, 3);
    std::ostringstream first;
    write_bundle(first, bundle);
    std::istringstream back(first.str());
    const MatrixBundle reread = read_bundle(back);
    std::ostringstream second;
    write_bundle(second, reread);
    CHECK(first.str() == second.str());
    CHECK(reread.rows.size() == 10);
    CHECK(reread.space_name == "euclidean");
}

TEST_CASE("bundle parser reports malformed input") {
    const auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return read_bundle(in);
    };
    CHECK_THROWS_AS((void)parse(""), ParseError);
    CHECK_THROWS_AS((void)parse("space=euclidean dim=2 n=0\n"), ParseError);  // missing '#'
    CHECK_THROWS_AS((void)parse("#space=euclidean dim=2 n=2\n1,0,0\n"), ParseError);  // count
    CHECK_THROWS_AS((void)parse("#space=euclidean dim=2 n=1\n2,0,0\n"), ParseError);  // label
    CHECK_THROWS_AS((void)parse("#space=euclidean dim=2 n=1\n1,0\n"), ParseError);  // coords
    CHECK_THROWS_AS((void)parse("#space=euclidean dim=2 n=1\n1,0,zzz\n"), ParseError);
    CHECK_THROWS_AS((void)parse("#space=mystery dim=2 n=0\n"), ParseError);
    // Membership is validated on load.
    CHECK_THROWS_AS((void)parse("#space=spd dim=2 n=1\n1,1,0,-1\n"), ParseError);
    CHECK_THROWS_AS((void)parse("#space=sphere dim=2 n=1\n1,1,1,0\n"), ParseError);
    CHECK_THROWS_AS((void)parse("#space=wasserstein1d dim=3 n=1\n1,3,2,1\n"), ParseError);
}

TEST_CASE("unlabeled rows load but are rejected by to_dataset") {
    std::istringstream in("#space=euclidean dim=2 n=2\n?,0.5,1\n1,2,3\n");
    const MatrixBundle bundle = read_bundle(in);
    CHECK_FALSE(bundle.fully_labeled());
    CHECK_THROWS_AS((void)bundle.to_dataset(), ParseError);
}

TEST_CASE("model file round-trips reproduce predictions bit-exactly") {
    EuclideanSpace space(2);
    Rng rng(5);
    std::vector<Point> points;
    std::vector<int> labels;
    for (int i = 0; i < 40; ++i) {
        points.push_back(testsup::random_euclidean(space, rng));
        labels.push_back(rng.bernoulli(logistic(points.back().coords[0])) ? 1 : 0);
    }
    const FitResult fitted = fit(space, make_dataset(space, points, labels));
    const ModelFile model = to_model_file("euclidean", 2, fitted);

    std::ostringstream out;
    write_model(out, model);
    std::istringstream in(out.str());
    auto [space2, refit] = from_model_file(read_model(in));

    for (int k = 0; k < 25; ++k) {
        const Point x = testsup::random_euclidean(space, rng);
        const Point x2{space2->id(), x.coords};
        CHECK(predict_prob(space, fitted, x) == predict_prob(*space2, refit, x2));
    }
}

TEST_CASE("model file validation") {
    std::istringstream missing("space=euclidean\ndim=2\n");
    CHECK_THROWS_AS((void)read_model(missing), ParseError);

    // Inconsistent beta/b pair is rejected at reconstruction.
    ModelFile model;
    model.space_name = "euclidean";
    model.dim = 2;
    model.mu = Vector::Zero(2);
    model.beta = Vector::Ones(2);
    model.b = Vector::Zero(2);
    CHECK_THROWS_AS((void)from_model_file(model), ParseError);
}

TEST_CASE("cli fit writes a model and prints a summary") {
    TempDir dir;
    write_bundle_file(dir.file("data.bundle"), toy_bundle(60, 7));
    std::string text;
    const int code = run({"fit", "--data", dir.file("data.bundle"), "--space", "euclidean",
                          "--out", dir.file("model.txt")},
                         &text);
    CHECK(code == 0);
    CHECK(text.find("d_mu_beta=") != std::string::npos);
    CHECK(text.find("loglik=") != std::string::npos);
    CHECK(text.find("converged=1") != std::string::npos);

    const ModelFile model = read_model_file(dir.file("model.txt"));
    CHECK(model.space_name == "euclidean");
    CHECK(model.converged);
    // Round-trip: rewriting the parsed model is byte-identical.
    std::ostringstream rewritten;
    write_model(rewritten, model);
    CHECK(rewritten.str() == slurp(dir.file("model.txt")));
}

TEST_CASE("cli fit exit codes: parse, separation, convergence") {
    TempDir dir;
    SUBCASE("missing file is an input error") {
        CHECK(run({"fit", "--data", dir.file("absent.bundle"), "--out", dir.file("m.txt")}) ==
              2);
    }
    SUBCASE("space mismatch is an input error") {
        write_bundle_file(dir.file("data.bundle"), toy_bundle(20, 9));
        CHECK(run({"fit", "--data", dir.file("data.bundle"), "--space", "spd", "--out",
                   dir.file("m.txt")}) == 2);
    }
    SUBCASE("unlabeled rows are rejected for fitting") {
        std::ofstream out(dir.file("unlabeled.bundle"));
        out << "#space=euclidean dim=2 n=2\n?,0.5,1\n1,2,3\n";
        out.close();
        CHECK(run({"fit", "--data", dir.file("unlabeled.bundle"), "--out", dir.file("m.txt")}) ==
              2);
    }
    SUBCASE("all-ones labels exit with the separation code") {
        write_bundle_file(dir.file("ones.bundle"), toy_bundle(20, 11, /*all_ones=*/true));
        CHECK(run({"fit", "--data", dir.file("ones.bundle"), "--out", dir.file("m.txt")}) == 3);
    }
    SUBCASE("an iteration cap of one reports non-convergence") {
        write_bundle_file(dir.file("data.bundle"), toy_bundle(60, 13));
        CHECK(run({"fit", "--data", dir.file("data.bundle"), "--out", dir.file("m.txt"),
                   "--max-iters", "1"}) == 4);
    }
}

TEST_CASE("cli predict matches the library and flags space mismatches") {
    TempDir dir;
    write_bundle_file(dir.file("data.bundle"), toy_bundle(80, 17));
    REQUIRE(run({"fit", "--data", dir.file("data.bundle"), "--out", dir.file("model.txt")}) ==
            0);

    // Predictions for the training bundle, including an unlabeled row.
    MatrixBundle query = toy_bundle(10, 19);
    query.rows[0].label = kUnlabeled;
    write_bundle_file(dir.file("query.bundle"), query);
    REQUIRE(run({"predict", "--model", dir.file("model.txt"), "--data",
                 dir.file("query.bundle"), "--out", dir.file("pred.csv")}) == 0);

    auto [space, fitted] = from_model_file(read_model_file(dir.file("model.txt")));
    std::ifstream pred(dir.file("pred.csv"));
    std::string line;
    std::size_t row = 0;
    while (std::getline(pred, line)) {
        const auto comma = line.find(',');
        REQUIRE(comma != std::string::npos);
        const double prob = std::strtod(line.substr(0, comma).c_str(), nullptr);
        const int cls = std::stoi(line.substr(comma + 1));
        const Point x{space->id(), query.rows[row].coords};
        CHECK(prob == predict_prob(*space, fitted, x));
        CHECK(cls == (prob >= 0.5 ? 1 : 0));
        ++row;
    }
    CHECK(row == query.rows.size());

    // A bundle from another space is rejected.
    MatrixBundle wrong;
    wrong.space_name = "euclidean";
    wrong.dim = 3;
    wrong.space = make_space("euclidean", 3);
    BundleRow r;
    r.label = 1;
    r.coords = Vector::Zero(3);
    wrong.rows.push_back(r);
    write_bundle_file(dir.file("wrong.bundle"), wrong);
    CHECK(run({"predict", "--model", dir.file("model.txt"), "--data", dir.file("wrong.bundle"),
               "--out", dir.file("p2.csv")}) == 2);
}

TEST_CASE("cli geodesic prints odds that are log-linear in arclength") {
    TempDir dir;
    write_bundle_file(dir.file("data.bundle"), toy_bundle(100, 23));
    REQUIRE(run({"fit", "--data", dir.file("data.bundle"), "--out", dir.file("model.txt")}) ==
            0);
    auto [space, fitted] = from_model_file(read_model_file(dir.file("model.txt")));
    const double d = space->distance(fitted.mu_hat, fitted.beta_hat);

    std::string text;
    REQUIRE(run({"geodesic", "--model", dir.file("model.txt"), "--t-list",
                 "-0.2,0,0.1,0.2,0.4"},
                &text) == 0);
    std::istringstream lines(text);
    std::string line;
    std::getline(lines, line);  // header
    std::vector<double> ts{-0.2, 0.0, 0.1, 0.2, 0.4};
    std::size_t k = 0;
    while (std::getline(lines, line)) {
        std::istringstream fields(line);
        double t = 0.0, odds = 0.0;
        fields >> t >> odds;
        REQUIRE(k < ts.size());
        CHECK(t == doctest::Approx(ts[k]).epsilon(1e-12));
        // log odds along the geodesic grows linearly: t * d(mu, beta).
        CHECK(std::log(odds) == doctest::Approx(ts[k] * d).epsilon(1e-9));
        ++k;
    }
    CHECK(k == ts.size());
}

TEST_CASE("cli permtest is deterministic and reports separation counts") {
    TempDir dir;
    write_bundle_file(dir.file("data.bundle"), toy_bundle(50, 29));
    std::string a, b;
    REQUIRE(run({"permtest", "--data", dir.file("data.bundle"), "--perms", "49", "--seed",
                 "5"},
                &a) == 0);
    REQUIRE(run({"permtest", "--data", dir.file("data.bundle"), "--perms", "49", "--seed",
                 "5"},
                &b) == 0);
    CHECK(a == b);
    CHECK(a.find("stat_obs=") != std::string::npos);
    CHECK(a.find("p_value=") != std::string::npos);
    CHECK(a.find("separated_perms=") != std::string::npos);
    CHECK(run({"permtest", "--data", dir.file("data.bundle"), "--perms", "10", "--seed", "1",
               "--stat", "nonsense"}) == 2);
}

TEST_CASE("cli simulate smoke run and determinism") {
    std::string a, b;
    CHECK(run({"simulate", "--case", "1", "--n", "40", "--reps", "2", "--seed", "3"}, &a) == 0);
    CHECK(run({"simulate", "--case", "1", "--n", "40", "--reps", "2", "--seed", "3"}, &b) == 0);
    CHECK(a == b);
    CHECK(a.find("metric\tmean\tstd\tn\tr\tcase") != std::string::npos);
    CHECK(a.find("metric=d_beta") != std::string::npos);
    CHECK(run({"simulate", "--case", "7", "--n", "40", "--reps", "2", "--seed", "3"}) == 2);
    CHECK(run({"simulate", "--case", "1", "--n", "4", "--reps", "2", "--seed", "3"}) == 2);
}

TEST_CASE("cli usage errors map to the input exit code") {
    CHECK(run({"unknown-subcommand"}) == 2);
    CHECK(run({"fit"}) == 2);  // missing required flags
    CHECK(run({}) == 2);
}

TEST_CASE("GEOLOG_THREADS caps the worker count") {
    setenv("GEOLOG_THREADS", "2", 1);
    CHECK(worker_count() == 2);
    setenv("GEOLOG_THREADS", "0", 1);
    CHECK(worker_count() >= 1);  // 0 means automatic
    unsetenv("GEOLOG_THREADS");
    CHECK(worker_count() >= 1);
}

TEST_CASE("cli fit on a case-1 synthetic bundle recovers the effect size") {
    // d(mu_hat, beta_hat) printed by fit should sit within a few replicate
    // standard deviations of the true effect size d(I_3, 3 Sigma_AR).
    TempDir dir;
    SpdLogCholeskySpace spd(3);
    SimConfig config = default_sim_config(1);
    config.n = 500;
    Rng rng(20240817);
    const Dataset data = generate_dataset(spd, config, rng);
    MatrixBundle bundle;
    bundle.space_name = "spd";
    bundle.dim = 3;
    bundle.space = make_space("spd", 3);
    for (std::size_t i = 0; i < data.size(); ++i) {
        bundle.rows.push_back(BundleRow{data.y[i], data.x[i].coords});
    }
    write_bundle_file(dir.file("case1.bundle"), bundle);

    std::string text;
    REQUIRE(run({"fit", "--data", dir.file("case1.bundle"), "--space", "spd", "--out",
                 dir.file("model.txt")},
                &text) == 0);
    const auto pos = text.find("d_mu_beta=");
    REQUIRE(pos != std::string::npos);
    const double d_mu_beta = std::strtod(text.c_str() + pos + 10, nullptr);
    const double truth = spd.distance(config.mu_star, config.beta_star);
    // Replicate std of d(beta*, beta_hat) at n=500 is ~0.16.
    CHECK(std::abs(d_mu_beta - truth) < 3.0 * 0.17);
}

TEST_SUITE_END();
