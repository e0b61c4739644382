#include "geolog/spaces/sphere_quadrant.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace geolog {

namespace {
constexpr double kUnitNormTol = 1e-10;
constexpr double kBoundarySnapTol = 1e-12;
constexpr double kAntipodalTol = 1e-9;
}  // namespace

SphereQuadrantSpace::SphereQuadrantSpace(int dim)
    : Space("sphere:" + std::to_string(dim)), dim_(dim) {
    if (dim < 1) throw std::invalid_argument("SphereQuadrantSpace: dim must be positive");
}

namespace {

// Angle between unit vectors; well conditioned at both ends, unlike
// acos(dot).
double angle_between(const Vector& p, const Vector& q) {
    return 2.0 * std::atan2((p - q).norm(), (p + q).norm());
}

}  // namespace

std::string SphereQuadrantSpace::membership_violation(const Vector& coords) const {
    if (!coords.allFinite()) return "coordinates must be finite";
    if (std::abs(coords.norm() - 1.0) > kUnitNormTol) {
        std::ostringstream msg;
        msg << "norm " << coords.norm() << " is not 1 within " << kUnitNormTol;
        return msg.str();
    }
    if (coords.minCoeff() < -kBoundarySnapTol) {
        std::ostringstream msg;
        msg << "coordinate " << coords.minCoeff() << " is negative; points must lie in the "
            << "nonnegative quadrant";
        return msg.str();
    }
    return {};
}

double SphereQuadrantSpace::distance(const Point& p, const Point& q) const {
    require_point(p);
    require_point(q);
    return angle_between(p.coords, q.coords);
}

Point SphereQuadrantSpace::geodesic_point(const GeodesicQuery& q) const {
    require_point(q.start);
    require_point(q.end);
    if (q.t < 0.0 || q.t > 1.0) {
        std::ostringstream msg;
        msg << "geodesic parameter t=" << q.t << " outside [0,1]";
        throw std::invalid_argument(msg.str());
    }
    const double theta = angle_between(q.start.coords, q.end.coords);
    if (theta < kBoundarySnapTol) return q.start;
    if (M_PI - theta < kAntipodalTol) {
        throw NonUniqueGeodesicError(id() + ": antipodal points have no unique geodesic");
    }
    const double s = std::sin(theta);
    Vector coords =
        (std::sin((1.0 - q.t) * theta) * q.start.coords + std::sin(q.t * theta) * q.end.coords) /
        s;
    coords.normalize();
    return Point{id(), std::move(coords)};
}

Matrix SphereQuadrantSpace::frame_matrix(const Vector& p) const {
    // Householder vector v = p + e_1 is bounded away from zero on the
    // quadrant (p_1 >= 0), so the construction never degenerates.
    Vector v = p;
    v[0] += 1.0;
    const double vtv = v.squaredNorm();
    Matrix frame(dim_ + 1, dim_);
    for (int k = 0; k < dim_; ++k) {
        Vector col = (2.0 * v[k + 1] / vtv) * v;
        col[k + 1] -= 1.0;
        frame.col(k) = col;
    }
    return frame;
}

TangentVector SphereQuadrantSpace::log_map(const Point& p, const Point& q) const {
    require_point(p);
    require_point(q);
    const double theta = angle_between(p.coords, q.coords);
    if (M_PI - theta < kAntipodalTol) {
        throw NonUniqueGeodesicError(id() + ": log map undefined for antipodal points");
    }
    if (theta < kBoundarySnapTol) return TangentVector{p, Vector::Zero(dim_)};
    Vector u = q.coords - std::cos(theta) * p.coords;
    u *= theta / u.norm();
    return TangentVector{p, frame_matrix(p.coords).transpose() * u};
}

Point SphereQuadrantSpace::exp_map(const TangentVector& v, bool* projected) const {
    require_point(v.base);
    if (projected) *projected = false;
    const double theta = v.coeffs.norm();
    if (theta < kBoundarySnapTol) return v.base;
    if (theta >= M_PI) {
        std::ostringstream msg;
        msg << id() << ": tangent norm " << theta << " is at or beyond the injectivity radius pi";
        throw OutOfDomainError(msg.str());
    }
    const Vector ambient = frame_matrix(v.base.coords) * v.coeffs;
    Vector coords = std::cos(theta) * v.base.coords + (std::sin(theta) / theta) * ambient;
    const double worst = coords.minCoeff();
    if (worst < -kBoundarySnapTol) {
        std::ostringstream msg;
        msg << id() << ": exponential leaves the nonnegative quadrant (coordinate " << worst
            << ")";
        throw OutOfDomainError(msg.str());
    }
    coords = coords.cwiseMax(0.0);
    coords.normalize();
    return Point{id(), std::move(coords)};
}

Vector SphereQuadrantSpace::tangent_to_ambient(const TangentVector& v) const {
    require_point(v.base);
    return frame_matrix(v.base.coords) * v.coeffs;
}

TangentVector SphereQuadrantSpace::tangent_from_ambient(const Point& base,
                                                        const Vector& ambient) const {
    require_point(base);
    // Project out any radial component before reading frame coordinates.
    const Vector tangential = ambient - base.coords.dot(ambient) * base.coords;
    return TangentVector{base, frame_matrix(base.coords).transpose() * tangential};
}

double SphereQuadrantSpace::metric_inner(const Point& p, const Vector& u,
                                         const Vector& v) const {
    require_point(p);
    return u.dot(v);
}

}  // namespace geolog
