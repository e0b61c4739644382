// The geodesic-metric-space abstraction. A Space owns a distance, geodesic
// evaluation and, where available, exp/log charts together with a fixed
// orthonormal frame per point. Space objects are immutable after
// construction and safe to share across threads; every operation is a pure
// function of its inputs.

#pragma once

#include <memory>
#include <string>
#include <vector>

#include "geolog/types.hpp"

namespace geolog {

class Space {
public:
    virtual ~Space() = default;

    Space(const Space&) = delete;
    Space& operator=(const Space&) = delete;

    [[nodiscard]] const std::string& id() const { return id_; }

    /// Intrinsic dimension (length of tangent coefficient vectors).
    [[nodiscard]] virtual int dim() const = 0;

    /// Length of the coordinate vector of a Point.
    [[nodiscard]] virtual int ambient_size() const = 0;

    [[nodiscard]] virtual bool has_chart() const { return true; }

    [[nodiscard]] virtual CurvatureClass curvature_class() const = 0;

    [[nodiscard]] SpaceCapabilities capabilities() const {
        return {dim(), has_chart(), curvature_class()};
    }

    /// Empty string when `coords` is a valid point of this space, otherwise
    /// a human-readable description of the violated predicate.
    [[nodiscard]] virtual std::string membership_violation(const Vector& coords) const = 0;

    [[nodiscard]] bool contains(const Vector& coords) const {
        return coords.size() == ambient_size() && membership_violation(coords).empty();
    }

    /// Validating constructor for points of this space.
    [[nodiscard]] Point make_point(Vector coords) const;

    /// Cheap ownership/shape guard used by every operation.
    void require_point(const Point& p) const;

    [[nodiscard]] virtual double distance(const Point& p, const Point& q) const = 0;

    /// Point at fraction q.t of the unique geodesic from q.start to q.end.
    /// Overridden by spaces with a native closed form; the base
    /// implementation evaluates exp(t * log).
    [[nodiscard]] virtual Point geodesic_point(const GeodesicQuery& q) const;

    [[nodiscard]] virtual TangentVector log_map(const Point& p, const Point& q) const = 0;

    /// Follows the geodesic from v.base with initial frame coefficients
    /// v.coeffs for arclength |v.coeffs|. Spaces whose chart can exit the
    /// valid domain set *projected when a projection was applied.
    [[nodiscard]] virtual Point exp_map(const TangentVector& v, bool* projected = nullptr) const = 0;

    /// The fixed orthonormal frame at p, returned as `dim()` tangent
    /// vectors. Deterministic given (space, p).
    [[nodiscard]] virtual std::vector<TangentVector> orthonormal_frame(const Point& p) const;

    /// Ambient-coordinate velocity of a tangent vector (d coords / dt).
    [[nodiscard]] virtual Vector tangent_to_ambient(const TangentVector& v) const = 0;

    [[nodiscard]] virtual TangentVector tangent_from_ambient(const Point& base,
                                                             const Vector& ambient) const = 0;

    /// Riemannian inner product of two ambient-coordinate velocities at p.
    [[nodiscard]] virtual double metric_inner(const Point& p, const Vector& u,
                                              const Vector& v) const = 0;

protected:
    explicit Space(std::string id) : id_(std::move(id)) {}

private:
    std::string id_;
};

using SpacePtr = std::shared_ptr<const Space>;

}  // namespace geolog
