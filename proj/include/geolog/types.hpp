// Core value types shared by every geolog module: points of a metric space,
// tangent vectors in an orthonormal frame, and the small error taxonomy.

#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace geolog {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Coordinate tolerance under which two points of the same space are
/// considered equal.
inline constexpr double kPointEqualTol = 1e-12;

enum class CurvatureClass { flat, nonpositive, positive_bounded };

struct SpaceCapabilities {
    int dim = 0;
    bool has_chart = false;
    CurvatureClass curvature_class = CurvatureClass::flat;
};

/// An element of a registered metric space. The coordinate layout is
/// space-specific (SPD: row-major lower-triangular entries; sphere: unit
/// vector in R^{D+1}; Wasserstein: nondecreasing quantile knots).
struct Point {
    std::string space_id;
    Vector coords;
};

/// A base point plus coefficients in a fixed orthonormal frame of the
/// tangent space at that point; coeffs.norm() equals the Riemannian norm.
struct TangentVector {
    Point base;
    Vector coeffs;
};

/// Evaluation request for the unique geodesic from `start` to `end` at
/// affine parameter fraction t in [0,1].
struct GeodesicQuery {
    Point start;
    Point end;
    double t = 0.0;
};

[[nodiscard]] inline bool same_point(const Point& a, const Point& b) {
    return a.space_id == b.space_id && a.coords.size() == b.coords.size() &&
           (a.coords - b.coords).norm() < kPointEqualTol;
}

// --- error taxonomy ---------------------------------------------------------

/// A coordinate vector has the wrong length for its space.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A coordinate vector fails the owning space's membership predicate.
class MembershipError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An operation received coinciding points where distinct ones are required
/// (e.g. the vertex of a comparison angle).
class DegenerateInputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A point left the valid domain of its space (sphere quadrant boundary,
/// monotone quantile cone, chart overflow).
class OutOfDomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The geodesic between the given points is not unique (antipodal pairs on
/// positively curved spaces).
class NonUniqueGeodesicError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An iterative numerical limit failed to converge within its budget.
class NumericalLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace geolog
