#include "geolog/spaces/product.hpp"

#include <cmath>
#include <sstream>

namespace geolog {

namespace {
std::string product_id(const std::vector<SpacePtr>& components) {
    std::ostringstream id;
    id << "product[";
    for (std::size_t i = 0; i < components.size(); ++i) {
        if (i > 0) id << ";";
        id << components[i]->id();
    }
    id << "]";
    return id.str();
}
}  // namespace

ProductSpace::ProductSpace(std::vector<SpacePtr> components)
    : Space(product_id(components)), components_(std::move(components)) {
    if (components_.empty()) {
        throw std::invalid_argument("ProductSpace: at least one component required");
    }
    for (const auto& c : components_) {
        dim_ += c->dim();
        ambient_ += c->ambient_size();
        has_chart_ = has_chart_ && c->has_chart();
        if (c->curvature_class() == CurvatureClass::positive_bounded) {
            curvature_ = CurvatureClass::positive_bounded;
        } else if (c->curvature_class() == CurvatureClass::nonpositive &&
                   curvature_ == CurvatureClass::flat) {
            curvature_ = CurvatureClass::nonpositive;
        }
    }
}

std::string ProductSpace::membership_violation(const Vector& coords) const {
    std::string why;
    int offset = 0;
    for (const auto& c : components_) {
        if (why.empty()) {
            why = c->membership_violation(coords.segment(offset, c->ambient_size()));
            if (!why.empty()) why = c->id() + ": " + why;
        }
        offset += c->ambient_size();
    }
    return why;
}

double ProductSpace::distance(const Point& p, const Point& q) const {
    require_point(p);
    require_point(q);
    double sq = 0.0;
    for_each_component([&](const Space& c, int off, int) {
        const double d = c.distance(component_point(c, p, off), component_point(c, q, off));
        sq += d * d;
    });
    return std::sqrt(sq);
}

TangentVector ProductSpace::log_map(const Point& p, const Point& q) const {
    require_point(p);
    require_point(q);
    Vector coeffs(dim_);
    for_each_component([&](const Space& c, int off, int toff) {
        coeffs.segment(toff, c.dim()) =
            c.log_map(component_point(c, p, off), component_point(c, q, off)).coeffs;
    });
    return TangentVector{p, std::move(coeffs)};
}

Point ProductSpace::exp_map(const TangentVector& v, bool* projected) const {
    require_point(v.base);
    Vector coords(ambient_);
    bool any_projected = false;
    for_each_component([&](const Space& c, int off, int toff) {
        bool part_projected = false;
        const Point part = c.exp_map(
            TangentVector{component_point(c, v.base, off), v.coeffs.segment(toff, c.dim())},
            &part_projected);
        coords.segment(off, c.ambient_size()) = part.coords;
        any_projected = any_projected || part_projected;
    });
    if (projected) *projected = any_projected;
    return Point{id(), std::move(coords)};
}

Vector ProductSpace::tangent_to_ambient(const TangentVector& v) const {
    require_point(v.base);
    Vector ambient(ambient_);
    for_each_component([&](const Space& c, int off, int toff) {
        ambient.segment(off, c.ambient_size()) = c.tangent_to_ambient(
            TangentVector{component_point(c, v.base, off), v.coeffs.segment(toff, c.dim())});
    });
    return ambient;
}

TangentVector ProductSpace::tangent_from_ambient(const Point& base,
                                                 const Vector& ambient) const {
    require_point(base);
    Vector coeffs(dim_);
    for_each_component([&](const Space& c, int off, int toff) {
        coeffs.segment(toff, c.dim()) =
            c.tangent_from_ambient(component_point(c, base, off),
                                   ambient.segment(off, c.ambient_size()))
                .coeffs;
    });
    return TangentVector{base, std::move(coeffs)};
}

double ProductSpace::metric_inner(const Point& p, const Vector& u, const Vector& v) const {
    require_point(p);
    double total = 0.0;
    for_each_component([&](const Space& c, int off, int) {
        total += c.metric_inner(component_point(c, p, off), u.segment(off, c.ambient_size()),
                                v.segment(off, c.ambient_size()));
    });
    return total;
}

}  // namespace geolog
