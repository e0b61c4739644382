// Product of metric spaces with the L2 product metric. Coordinates and
// tangent coefficients are the concatenations of the components'. Used to
// mix Euclidean and metric-space covariates, e.g. to add an intercept by
// pairing a constant Euclidean coordinate with a manifold covariate.

#pragma once

#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "geolog/space.hpp"

namespace geolog {

class ProductSpace final : public Space {
public:
    explicit ProductSpace(std::vector<SpacePtr> components);

    [[nodiscard]] const std::vector<SpacePtr>& components() const { return components_; }

    [[nodiscard]] int dim() const override { return dim_; }
    [[nodiscard]] int ambient_size() const override { return ambient_; }
    [[nodiscard]] bool has_chart() const override { return has_chart_; }
    [[nodiscard]] CurvatureClass curvature_class() const override { return curvature_; }

    [[nodiscard]] std::string membership_violation(const Vector& coords) const override;

    [[nodiscard]] double distance(const Point& p, const Point& q) const override;
    [[nodiscard]] TangentVector log_map(const Point& p, const Point& q) const override;
    [[nodiscard]] Point exp_map(const TangentVector& v, bool* projected = nullptr) const override;

    [[nodiscard]] Vector tangent_to_ambient(const TangentVector& v) const override;
    [[nodiscard]] TangentVector tangent_from_ambient(const Point& base,
                                                     const Vector& ambient) const override;
    [[nodiscard]] double metric_inner(const Point& p, const Vector& u,
                                      const Vector& v) const override;

private:
    template <typename Fn>
    void for_each_component(Fn&& fn) const {
        int coord_offset = 0;
        int tangent_offset = 0;
        for (const auto& c : components_) {
            fn(*c, coord_offset, tangent_offset);
            coord_offset += c->ambient_size();
            tangent_offset += c->dim();
        }
    }

    [[nodiscard]] Point component_point(const Space& c, const Point& p, int offset) const {
        return Point{c.id(), p.coords.segment(offset, c.ambient_size())};
    }

    std::vector<SpacePtr> components_;
    int dim_ = 0;
    int ambient_ = 0;
    bool has_chart_ = true;
    CurvatureClass curvature_ = CurvatureClass::flat;
};

}  // namespace geolog
