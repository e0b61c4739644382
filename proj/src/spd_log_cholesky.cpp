#include "geolog/spaces/spd_log_cholesky.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <sstream>

namespace geolog {

SpdLogCholeskySpace::SpdLogCholeskySpace(int order)
    : Space("spd:" + std::to_string(order)),
      order_(order),
      coord_size_(order * (order + 1) / 2) {
    if (order < 1) throw std::invalid_argument("SpdLogCholeskySpace: order must be positive");
}

Matrix SpdLogCholeskySpace::to_matrix(const Vector& coords) const {
    Matrix m(order_, order_);
    for (int i = 0; i < order_; ++i) {
        for (int j = 0; j <= i; ++j) {
            m(i, j) = coords[tri_index(i, j)];
            m(j, i) = m(i, j);
        }
    }
    return m;
}

Vector SpdLogCholeskySpace::from_matrix(const Matrix& m) const {
    Vector coords(coord_size_);
    for (int i = 0; i < order_; ++i)
        for (int j = 0; j <= i; ++j) coords[tri_index(i, j)] = m(i, j);
    return coords;
}

namespace {

// Cholesky with extended-precision pivot accumulation. The simulation
// generator legitimately produces badly conditioned matrices whose pivots
// can round to zero in plain double arithmetic even though the matrix is
// positive-definite by construction.
bool try_cholesky(const Vector& coords, int order, Matrix& l) {
    l = Matrix::Zero(order, order);
    for (int j = 0; j < order; ++j) {
        long double pivot = coords[SpdLogCholeskySpace::tri_index(j, j)];
        for (int k = 0; k < j; ++k) {
            pivot -= static_cast<long double>(l(j, k)) * static_cast<long double>(l(j, k));
        }
        if (!(pivot > 0.0L)) return false;
        const long double root = sqrtl(pivot);
        l(j, j) = static_cast<double>(root);
        for (int i = j + 1; i < order; ++i) {
            long double sum = coords[SpdLogCholeskySpace::tri_index(i, j)];
            for (int k = 0; k < j; ++k) {
                sum -= static_cast<long double>(l(i, k)) * static_cast<long double>(l(j, k));
            }
            l(i, j) = static_cast<double>(sum / root);
        }
    }
    return true;
}

}  // namespace

Matrix SpdLogCholeskySpace::cholesky_factor(const Vector& coords) const {
    Matrix l;
    if (!try_cholesky(coords, order_, l)) {
        throw MembershipError(id() + ": matrix is not positive-definite");
    }
    return l;
}

std::string SpdLogCholeskySpace::membership_violation(const Vector& coords) const {
    if (!coords.allFinite()) return "coordinates must be finite";
    Matrix l;
    if (!try_cholesky(coords, order_, l)) return "matrix is not positive-definite";
    return {};
}

Vector SpdLogCholeskySpace::chart(const Vector& coords) const {
    const Matrix l = cholesky_factor(coords);
    Vector out(coord_size_);
    for (int i = 0; i < order_; ++i) {
        for (int j = 0; j < i; ++j) out[tri_index(i, j)] = l(i, j);
        out[tri_index(i, i)] = std::log(l(i, i));
    }
    return out;
}

Vector SpdLogCholeskySpace::chart_inverse(const Vector& chart_coords) const {
    Matrix l = Matrix::Zero(order_, order_);
    for (int i = 0; i < order_; ++i) {
        for (int j = 0; j < i; ++j) l(i, j) = chart_coords[tri_index(i, j)];
        l(i, i) = std::exp(chart_coords[tri_index(i, i)]);
    }
    const Matrix p = l * l.transpose();
    if (!p.allFinite()) {
        throw OutOfDomainError(id() + ": chart coordinates overflow the representable range");
    }
    return from_matrix(p);
}

Vector SpdLogCholeskySpace::chart_differential(const Vector& at_coords,
                                               const Vector& sym_velocity) const {
    const Matrix l = cholesky_factor(at_coords);
    const Matrix s = to_matrix(sym_velocity);
    // Solve P' = L' L^T + L L'^T for lower-triangular L':
    // L' = L * half_lower(L^{-1} S L^{-T}).
    Matrix a = l.triangularView<Eigen::Lower>().solve(s);
    a = l.triangularView<Eigen::Lower>().solve(a.transpose()).transpose();
    Matrix half_lower = Matrix::Zero(order_, order_);
    for (int i = 0; i < order_; ++i) {
        for (int j = 0; j < i; ++j) half_lower(i, j) = a(i, j);
        half_lower(i, i) = 0.5 * a(i, i);
    }
    const Matrix ldot = l * half_lower;
    Vector out(coord_size_);
    for (int i = 0; i < order_; ++i) {
        for (int j = 0; j < i; ++j) out[tri_index(i, j)] = ldot(i, j);
        out[tri_index(i, i)] = ldot(i, i) / l(i, i);
    }
    return out;
}

Vector SpdLogCholeskySpace::chart_differential_inverse(const Vector& at_coords,
                                                       const Vector& chart_velocity) const {
    const Matrix l = cholesky_factor(at_coords);
    Matrix ldot = Matrix::Zero(order_, order_);
    for (int i = 0; i < order_; ++i) {
        for (int j = 0; j < i; ++j) ldot(i, j) = chart_velocity[tri_index(i, j)];
        ldot(i, i) = chart_velocity[tri_index(i, i)] * l(i, i);
    }
    const Matrix pdot = ldot * l.transpose() + l * ldot.transpose();
    return from_matrix(pdot);
}

double SpdLogCholeskySpace::distance(const Point& p, const Point& q) const {
    require_point(p);
    require_point(q);
    return (chart(p.coords) - chart(q.coords)).norm();
}

Point SpdLogCholeskySpace::geodesic_point(const GeodesicQuery& q) const {
    require_point(q.start);
    require_point(q.end);
    if (q.t < 0.0 || q.t > 1.0) {
        std::ostringstream msg;
        msg << "geodesic parameter t=" << q.t << " outside [0,1]";
        throw std::invalid_argument(msg.str());
    }
    const Vector a = chart(q.start.coords);
    const Vector b = chart(q.end.coords);
    return Point{id(), chart_inverse((1.0 - q.t) * a + q.t * b)};
}

TangentVector SpdLogCholeskySpace::log_map(const Point& p, const Point& q) const {
    require_point(p);
    require_point(q);
    return TangentVector{p, chart(q.coords) - chart(p.coords)};
}

Point SpdLogCholeskySpace::exp_map(const TangentVector& v, bool* projected) const {
    require_point(v.base);
    if (projected) *projected = false;
    return Point{id(), chart_inverse(chart(v.base.coords) + v.coeffs)};
}

Vector SpdLogCholeskySpace::tangent_to_ambient(const TangentVector& v) const {
    require_point(v.base);
    return chart_differential_inverse(v.base.coords, v.coeffs);
}

TangentVector SpdLogCholeskySpace::tangent_from_ambient(const Point& base,
                                                        const Vector& ambient) const {
    require_point(base);
    return TangentVector{base, chart_differential(base.coords, ambient)};
}

double SpdLogCholeskySpace::metric_inner(const Point& p, const Vector& u,
                                         const Vector& v) const {
    require_point(p);
    return chart_differential(p.coords, u).dot(chart_differential(p.coords, v));
}

}  // namespace geolog
