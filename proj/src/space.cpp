#include "geolog/space.hpp"

#include <sstream>

namespace geolog {

Point Space::make_point(Vector coords) const {
    if (coords.size() != ambient_size()) {
        std::ostringstream msg;
        msg << id() << ": expected " << ambient_size() << " coordinates, got " << coords.size();
        throw DimensionError(msg.str());
    }
    if (std::string why = membership_violation(coords); !why.empty()) {
        throw MembershipError(id() + ": " + why);
    }
    return Point{id(), std::move(coords)};
}

void Space::require_point(const Point& p) const {
    if (p.space_id != id()) {
        throw DimensionError("point belongs to space '" + p.space_id + "', expected '" + id() +
                             "'");
    }
    if (p.coords.size() != ambient_size()) {
        std::ostringstream msg;
        msg << id() << ": point has " << p.coords.size() << " coordinates, expected "
            << ambient_size();
        throw DimensionError(msg.str());
    }
}

Point Space::geodesic_point(const GeodesicQuery& q) const {
    require_point(q.start);
    require_point(q.end);
    if (q.t < 0.0 || q.t > 1.0) {
        std::ostringstream msg;
        msg << "geodesic parameter t=" << q.t << " outside [0,1]";
        throw std::invalid_argument(msg.str());
    }
    if (same_point(q.start, q.end)) return q.start;
    TangentVector v = log_map(q.start, q.end);
    v.coeffs *= q.t;
    return exp_map(v);
}

std::vector<TangentVector> Space::orthonormal_frame(const Point& p) const {
    require_point(p);
    std::vector<TangentVector> frame;
    frame.reserve(static_cast<std::size_t>(dim()));
    for (int k = 0; k < dim(); ++k) {
        Vector e = Vector::Zero(dim());
        e[k] = 1.0;
        frame.push_back(TangentVector{p, std::move(e)});
    }
    return frame;
}

}  // namespace geolog
