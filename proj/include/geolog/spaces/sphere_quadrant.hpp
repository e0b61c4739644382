// The nonnegative quadrant of the unit sphere S^D in R^{D+1} with the
// angular distance, modeling compositional data. Positively curved; the
// closed quadrant is geodesically convex (any two member points subtend an
// angle of at most pi/2).

#pragma once

#include <string>

#include "geolog/space.hpp"

namespace geolog {

class SphereQuadrantSpace final : public Space {
public:
    explicit SphereQuadrantSpace(int dim);

    [[nodiscard]] int dim() const override { return dim_; }
    [[nodiscard]] int ambient_size() const override { return dim_ + 1; }
    [[nodiscard]] CurvatureClass curvature_class() const override {
        return CurvatureClass::positive_bounded;
    }

    [[nodiscard]] std::string membership_violation(const Vector& coords) const override;

    [[nodiscard]] double distance(const Point& p, const Point& q) const override;
    [[nodiscard]] Point geodesic_point(const GeodesicQuery& q) const override;
    [[nodiscard]] TangentVector log_map(const Point& p, const Point& q) const override;
    [[nodiscard]] Point exp_map(const TangentVector& v, bool* projected = nullptr) const override;

    [[nodiscard]] Vector tangent_to_ambient(const TangentVector& v) const override;
    [[nodiscard]] TangentVector tangent_from_ambient(const Point& base,
                                                     const Vector& ambient) const override;
    [[nodiscard]] double metric_inner(const Point& p, const Vector& u,
                                      const Vector& v) const override;

    /// Columns are the ambient representations of the frame vectors at p.
    /// Built from the Householder reflection taking e_1 to p, so the frame
    /// is deterministic and smooth away from -e_1 (unreachable here).
    [[nodiscard]] Matrix frame_matrix(const Vector& p) const;

private:
    int dim_;
};

}  // namespace geolog
