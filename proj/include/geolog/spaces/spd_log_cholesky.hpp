// Symmetric positive-definite matrices of a fixed order under the
// Log-Cholesky metric. Points are stored as the row-major lower-triangular
// entries of the SPD matrix. The chart
//
//     phi(P) = strict_lower(L) + log(diag(L)),   P = L L^T,
//
// maps the space isometrically onto R^{n(n+1)/2}; the distance is the
// Euclidean distance of chart images, so the space is flat and globally
// charted.

#pragma once

#include <string>

#include "geolog/space.hpp"

namespace geolog {

class SpdLogCholeskySpace final : public Space {
public:
    explicit SpdLogCholeskySpace(int order);

    [[nodiscard]] int order() const { return order_; }
    [[nodiscard]] int dim() const override { return coord_size_; }
    [[nodiscard]] int ambient_size() const override { return coord_size_; }
    [[nodiscard]] CurvatureClass curvature_class() const override { return CurvatureClass::flat; }

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

    // Coordinate plumbing, public because the simulation harness and the
    // tests work directly in the chart.

    /// Row-major position of lower-triangular entry (i,j), i >= j.
    [[nodiscard]] static int tri_index(int i, int j) { return i * (i + 1) / 2 + j; }

    [[nodiscard]] Matrix to_matrix(const Vector& coords) const;
    [[nodiscard]] Vector from_matrix(const Matrix& m) const;

    /// phi(P) for P given as stacked coordinates.
    [[nodiscard]] Vector chart(const Vector& coords) const;
    /// phi^{-1}; throws OutOfDomainError when the diagonal chart entries
    /// overflow the representable range.
    [[nodiscard]] Vector chart_inverse(const Vector& chart_coords) const;

    /// Differential of phi at the point with the given coordinates, applied
    /// to a symmetric ambient velocity (stacked lower-triangular).
    [[nodiscard]] Vector chart_differential(const Vector& at_coords,
                                            const Vector& sym_velocity) const;
    /// Inverse differential: chart velocity back to a symmetric ambient
    /// velocity at the given point.
    [[nodiscard]] Vector chart_differential_inverse(const Vector& at_coords,
                                                    const Vector& chart_velocity) const;

private:
    [[nodiscard]] Matrix cholesky_factor(const Vector& coords) const;

    int order_;
    int coord_size_;
};

}  // namespace geolog
