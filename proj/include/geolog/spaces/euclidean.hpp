// R^D with the standard distance. The chart is the global identity and the
// frame at every point is the standard basis.

#pragma once

#include <string>

#include "geolog/space.hpp"

namespace geolog {

class EuclideanSpace final : public Space {
public:
    explicit EuclideanSpace(int dim)
        : Space("euclidean:" + std::to_string(dim)), dim_(dim) {
        if (dim < 1) throw std::invalid_argument("EuclideanSpace: dim must be positive");
    }

    [[nodiscard]] int dim() const override { return dim_; }
    [[nodiscard]] int ambient_size() const override { return dim_; }
    [[nodiscard]] CurvatureClass curvature_class() const override { return CurvatureClass::flat; }

    [[nodiscard]] std::string membership_violation(const Vector& coords) const override {
        if (!coords.allFinite()) return "coordinates must be finite";
        return {};
    }

    [[nodiscard]] double distance(const Point& p, const Point& q) const override {
        require_point(p);
        require_point(q);
        return (p.coords - q.coords).norm();
    }

    [[nodiscard]] Point geodesic_point(const GeodesicQuery& q) const override {
        require_point(q.start);
        require_point(q.end);
        if (q.t < 0.0 || q.t > 1.0) throw std::invalid_argument("geodesic parameter outside [0,1]");
        return Point{id(), (1.0 - q.t) * q.start.coords + q.t * q.end.coords};
    }

    [[nodiscard]] TangentVector log_map(const Point& p, const Point& q) const override {
        require_point(p);
        require_point(q);
        return TangentVector{p, q.coords - p.coords};
    }

    [[nodiscard]] Point exp_map(const TangentVector& v, bool* projected = nullptr) const override {
        require_point(v.base);
        if (projected) *projected = false;
        return Point{id(), v.base.coords + v.coeffs};
    }

    [[nodiscard]] Vector tangent_to_ambient(const TangentVector& v) const override {
        return v.coeffs;
    }

    [[nodiscard]] TangentVector tangent_from_ambient(const Point& base,
                                                     const Vector& ambient) const override {
        require_point(base);
        return TangentVector{base, ambient};
    }

    [[nodiscard]] double metric_inner(const Point&, const Vector& u,
                                      const Vector& v) const override {
        return u.dot(v);
    }

private:
    int dim_;
};

}  // namespace geolog
