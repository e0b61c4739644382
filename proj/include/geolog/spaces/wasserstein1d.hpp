// Discretized 2-Wasserstein space of distributions on a compact interval,
// represented by quantile values on the midpoint grid {(k - 1/2)/G}. The
// distance is the root-mean-square difference of quantile vectors, so the
// space is a flat, geodesically convex cone: the monotone quantile vectors.

#pragma once

#include <string>

#include "geolog/space.hpp"

namespace geolog {

class Wasserstein1DSpace final : public Space {
public:
    /// Grid size G defaults to 100 so that discretization error sits well
    /// below the library's test tolerances.
    explicit Wasserstein1DSpace(int grid_size = 100);

    [[nodiscard]] int grid_size() const { return grid_; }
    [[nodiscard]] int dim() const override { return grid_; }
    [[nodiscard]] int ambient_size() const override { return grid_; }
    [[nodiscard]] CurvatureClass curvature_class() const override { return CurvatureClass::flat; }

    [[nodiscard]] std::string membership_violation(const Vector& coords) const override;

    [[nodiscard]] double distance(const Point& p, const Point& q) const override;
    [[nodiscard]] Point geodesic_point(const GeodesicQuery& q) const override;
    [[nodiscard]] TangentVector log_map(const Point& p, const Point& q) const override;

    /// Chart addition; quantile vectors that leave the monotone cone are
    /// pulled back by pool-adjacent-violators projection and flagged.
    [[nodiscard]] Point exp_map(const TangentVector& v, bool* projected = nullptr) const override;

    [[nodiscard]] Vector tangent_to_ambient(const TangentVector& v) const override;
    [[nodiscard]] TangentVector tangent_from_ambient(const Point& base,
                                                     const Vector& ambient) const override;
    [[nodiscard]] double metric_inner(const Point& p, const Vector& u,
                                      const Vector& v) const override;

    /// L2 projection onto the nondecreasing cone (uniform weights).
    [[nodiscard]] static Vector isotonic_projection(const Vector& values);

private:
    int grid_;
    double scale_;  // sqrt(G): frame vectors are sqrt(G) * e_k
};

}  // namespace geolog
