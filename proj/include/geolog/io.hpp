// Text file formats. Everything is plain text for auditability; coordinates
// are printed with 17 significant digits so that values round-trip
// bit-exactly.
//
// Matrix bundle: a header line
//     #space=<euclidean|spd|sphere|wasserstein1d> dim=<k> n=<rows>
// followed by one record per line: label (0, 1, or ? for unlabeled), a
// comma, then the point's coordinates (SPD: row-major lower-triangular
// entries; sphere: D+1 unit-vector entries; wasserstein1d: G nondecreasing
// quantiles). Every row is validated against the space's membership
// predicate on load.
//
// Model file: key=value lines holding the space descriptor, mu_hat,
// beta_hat, the tangent coefficients b_hat, the log-likelihood, convergence
// flags, and the tool version.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "geolog/regression.hpp"
#include "geolog/space.hpp"
#include "geolog/spaces/registry.hpp"

namespace geolog {

inline constexpr const char* kToolVersion = "geolog 0.1.0";

/// Input problems recognizable from file content: bad headers, malformed
/// rows, membership failures.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Label value for unlabeled ('?') rows.
inline constexpr int kUnlabeled = -1;

struct BundleRow {
    int label = kUnlabeled;  // 0, 1, or kUnlabeled
    Vector coords;
};

struct MatrixBundle {
    std::string space_name;
    int dim = 0;
    SpacePtr space;
    std::vector<BundleRow> rows;

    [[nodiscard]] bool fully_labeled() const;
    /// Throws ParseError when any row is unlabeled.
    [[nodiscard]] Dataset to_dataset() const;
};

[[nodiscard]] MatrixBundle read_bundle(std::istream& in);
[[nodiscard]] MatrixBundle read_bundle_file(const std::string& path);
void write_bundle(std::ostream& out, const MatrixBundle& bundle);
void write_bundle_file(const std::string& path, const MatrixBundle& bundle);

struct ModelFile {
    std::string space_name;
    int dim = 0;
    Vector mu;
    Vector beta;
    Vector b;
    double loglik = 0.0;
    double grad_norm = 0.0;
    bool converged = false;
    bool separated = false;
    std::string version = kToolVersion;
};

[[nodiscard]] ModelFile to_model_file(const std::string& space_name, int dim,
                                      const FitResult& fitted);
/// Reconstructs the space and the fitted-model view; validates membership
/// and that beta = exp_mu(b) within tolerance.
[[nodiscard]] std::pair<SpacePtr, FitResult> from_model_file(const ModelFile& model);

[[nodiscard]] ModelFile read_model(std::istream& in);
[[nodiscard]] ModelFile read_model_file(const std::string& path);
void write_model(std::ostream& out, const ModelFile& model);
void write_model_file(const std::string& path, const ModelFile& model);

/// 17-significant-digit decimal rendering used by all formats.
[[nodiscard]] std::string format_double(double value);
[[nodiscard]] std::string format_vector(const Vector& v);
[[nodiscard]] Vector parse_vector(const std::string& text);

}  // namespace geolog
