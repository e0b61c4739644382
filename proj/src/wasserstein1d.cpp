#include "geolog/spaces/wasserstein1d.hpp"

#include <cmath>
#include <sstream>
#include <vector>

namespace geolog {

namespace {
constexpr double kMonotoneTol = 1e-12;
}

Wasserstein1DSpace::Wasserstein1DSpace(int grid_size)
    : Space("wasserstein1d:" + std::to_string(grid_size)),
      grid_(grid_size),
      scale_(std::sqrt(static_cast<double>(grid_size))) {
    if (grid_size < 1) throw std::invalid_argument("Wasserstein1DSpace: grid size must be positive");
}

std::string Wasserstein1DSpace::membership_violation(const Vector& coords) const {
    if (!coords.allFinite()) return "coordinates must be finite";
    for (int i = 0; i + 1 < grid_; ++i) {
        if (coords[i + 1] < coords[i] - kMonotoneTol) {
            std::ostringstream msg;
            msg << "quantile vector decreases at knot " << i << " (" << coords[i] << " -> "
                << coords[i + 1] << ")";
            return msg.str();
        }
    }
    return {};
}

double Wasserstein1DSpace::distance(const Point& p, const Point& q) const {
    require_point(p);
    require_point(q);
    return (p.coords - q.coords).norm() / scale_;
}

Point Wasserstein1DSpace::geodesic_point(const GeodesicQuery& q) const {
    require_point(q.start);
    require_point(q.end);
    if (q.t < 0.0 || q.t > 1.0) {
        std::ostringstream msg;
        msg << "geodesic parameter t=" << q.t << " outside [0,1]";
        throw std::invalid_argument(msg.str());
    }
    // Convex combinations of monotone vectors stay monotone.
    return Point{id(), (1.0 - q.t) * q.start.coords + q.t * q.end.coords};
}

TangentVector Wasserstein1DSpace::log_map(const Point& p, const Point& q) const {
    require_point(p);
    require_point(q);
    return TangentVector{p, (q.coords - p.coords) / scale_};
}

Vector Wasserstein1DSpace::isotonic_projection(const Vector& values) {
    const int n = static_cast<int>(values.size());
    // Pool-adjacent-violators with uniform weights.
    std::vector<double> level(static_cast<std::size_t>(n));
    std::vector<int> weight(static_cast<std::size_t>(n));
    int blocks = 0;
    for (int i = 0; i < n; ++i) {
        level[blocks] = values[i];
        weight[blocks] = 1;
        ++blocks;
        while (blocks > 1 && level[blocks - 2] > level[blocks - 1]) {
            const double merged = (level[blocks - 2] * weight[blocks - 2] +
                                   level[blocks - 1] * weight[blocks - 1]) /
                                  (weight[blocks - 2] + weight[blocks - 1]);
            weight[blocks - 2] += weight[blocks - 1];
            level[blocks - 2] = merged;
            --blocks;
        }
    }
    Vector out(n);
    int pos = 0;
    for (int b = 0; b < blocks; ++b) {
        for (int k = 0; k < weight[b]; ++k) out[pos++] = level[b];
    }
    return out;
}

Point Wasserstein1DSpace::exp_map(const TangentVector& v, bool* projected) const {
    require_point(v.base);
    Vector coords = v.base.coords + scale_ * v.coeffs;
    bool needs_projection = false;
    for (int i = 0; i + 1 < grid_; ++i) {
        if (coords[i + 1] < coords[i] - kMonotoneTol) {
            needs_projection = true;
            break;
        }
    }
    if (needs_projection) coords = isotonic_projection(coords);
    if (projected) *projected = needs_projection;
    return Point{id(), std::move(coords)};
}

Vector Wasserstein1DSpace::tangent_to_ambient(const TangentVector& v) const {
    require_point(v.base);
    return scale_ * v.coeffs;
}

TangentVector Wasserstein1DSpace::tangent_from_ambient(const Point& base,
                                                       const Vector& ambient) const {
    require_point(base);
    return TangentVector{base, ambient / scale_};
}

double Wasserstein1DSpace::metric_inner(const Point& p, const Vector& u,
                                        const Vector& v) const {
    require_point(p);
    return u.dot(v) / static_cast<double>(grid_);
}

}  // namespace geolog
