#include <doctest.h>

#include <cmath>
#include <memory>

#include "geolog/metric.hpp"
#include "geolog/spaces/euclidean.hpp"
#include "geolog/spaces/product.hpp"
#include "geolog/spaces/registry.hpp"
#include "geolog/spaces/spd_log_cholesky.hpp"
#include "geolog/spaces/sphere_quadrant.hpp"
#include "geolog/spaces/wasserstein1d.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace geolog;

namespace {

Vector vecn(std::initializer_list<double> values) {
    Vector v(static_cast<Eigen::Index>(values.size()));
    Eigen::Index i = 0;
    for (double x : values) v[i++] = x;
    return v;
}

}  // namespace

TEST_SUITE_BEGIN("spaces");

TEST_CASE("membership predicates reject invalid coordinates") {
    SpdLogCholeskySpace spd(3);
    CHECK_THROWS_AS((void)spd.make_point(vecn({1, 0, -1, 0, 0, 1})), MembershipError);
    CHECK_THROWS_AS((void)spd.make_point(vecn({1, 0, 1})), DimensionError);

    SphereQuadrantSpace sph(2);
    CHECK_THROWS_AS((void)sph.make_point(vecn({1, 1, 0})), MembershipError);
    CHECK_THROWS_AS((void)sph.make_point(vecn({-0.6, 0.8, 0})), MembershipError);

    Wasserstein1DSpace was(4);
    CHECK_THROWS_AS((void)was.make_point(vecn({0, 1, 0.5, 2})), MembershipError);
    CHECK_NOTHROW((void)was.make_point(vecn({0, 0, 0.5, 2})));
}

TEST_CASE("registry builds every space and rejects unknown names") {
    CHECK(make_space("euclidean", 4)->id() == "euclidean:4");
    CHECK(make_space("spd", 3)->id() == "spd:3");
    CHECK(make_space("sphere", 2)->id() == "sphere:2");
    CHECK(make_space("wasserstein1d", 10)->id() == "wasserstein1d:10");
    CHECK_THROWS_AS((void)make_space("hyperbolic", 2), std::invalid_argument);
}

TEST_CASE("euclidean exp/log are translation") {
    EuclideanSpace space(2);
    const Point base = space.make_point(vecn({0, 0}));
    const Point target = space.make_point(vecn({1, 2}));
    CHECK((space.exp_map({base, vecn({1, 2})}).coords - target.coords).norm() == 0.0);
    const Point p = space.make_point(vecn({1, 1}));
    const Point q = space.make_point(vecn({3, 1}));
    CHECK((space.log_map(p, q).coeffs - vecn({2, 0})).norm() == 0.0);
}

TEST_CASE("sphere quarter-circle exponential reaches the pole") {
    SphereQuadrantSpace space(2);
    const Point e1 = space.make_point(vecn({1, 0, 0}));
    const Point e2 = space.make_point(vecn({0, 1, 0}));
    const TangentVector toward = space.log_map(e1, e2);
    CHECK(toward.coeffs.norm() == doctest::Approx(M_PI / 2).epsilon(1e-12));
    const Point reached = space.exp_map(toward);
    CHECK((reached.coords - e2.coords).norm() < 1e-12);
}

TEST_CASE("spd exponential of diagonal chart coefficients") {
    SpdLogCholeskySpace space(3);
    const Point id = space.make_point(space.from_matrix(Matrix::Identity(3, 3)));
    const double a = 0.7;
    Vector coeffs = Vector::Zero(6);
    for (int i = 0; i < 3; ++i) coeffs[SpdLogCholeskySpace::tri_index(i, i)] = a;
    const Point reached = space.exp_map({id, coeffs});
    const Matrix expected = Matrix::Identity(3, 3) * std::exp(2.0 * a);
    CHECK((space.to_matrix(reached.coords) - expected).norm() < 1e-10);
    // Chart oracle round-trip.
    CHECK((space.log_map(id, reached).coeffs - coeffs).norm() < 1e-10);
}

TEST_CASE("log of a point at itself is zero") {
    Rng rng(3);
    SpdLogCholeskySpace spd(3);
    const Point p = testsup::random_spd(spd, rng);
    CHECK(spd.log_map(p, p).coeffs.norm() < 1e-12);
    SphereQuadrantSpace sph(2);
    const Point s = testsup::random_sphere(sph, rng);
    CHECK(sph.log_map(s, s).coeffs.norm() < 1e-12);
}

TEST_CASE("wasserstein log is the scaled quantile difference") {
    Wasserstein1DSpace space(4);
    const Point p = space.make_point(vecn({0, 0.5, 1, 2}));
    const Point q = space.make_point(vecn({-1, 0.5, 1.5, 3}));
    const TangentVector v = space.log_map(p, q);
    CHECK((v.coeffs * 2.0 - (q.coords - p.coords)).norm() < 1e-15);  // sqrt(G) = 2
    CHECK((space.exp_map(v).coords - q.coords).norm() < 1e-15);
    CHECK(v.coeffs.norm() == doctest::Approx(space.distance(p, q)).epsilon(1e-12));
}

TEST_CASE("exp/log round-trips on random pairs per space") {
    Rng rng(41);
    const auto roundtrip = [&](const Space& space, auto make, int count) {
        for (int k = 0; k < count; ++k) {
            const Point p = make(rng);
            const Point q = make(rng);
            const TangentVector v = space.log_map(p, q);
            REQUIRE(std::abs(v.coeffs.norm() - space.distance(p, q)) <= 1e-8);
            const Point back = space.exp_map(v);
            REQUIRE((back.coords - q.coords).norm() <= 1e-8);
        }
    };
    const int n = 10000;
    EuclideanSpace euc(3);
    roundtrip(euc, [&](Rng& g) { return testsup::random_euclidean(euc, g); }, n);
    SpdLogCholeskySpace spd(3);
    roundtrip(spd, [&](Rng& g) { return testsup::random_spd(spd, g); }, n);
    SphereQuadrantSpace sph(2);
    roundtrip(sph, [&](Rng& g) { return testsup::random_sphere(sph, g); }, n);
    Wasserstein1DSpace was(25);
    roundtrip(was, [&](Rng& g) { return testsup::random_wasserstein(was, g); }, n);
}

TEST_CASE("log-cholesky chart matches the independent oracle and round-trips") {
    SpdLogCholeskySpace space(3);
    Rng rng(43);
    for (int k = 0; k < 10000; ++k) {
        const Point p = testsup::random_spd(space, rng);
        const Matrix m = space.to_matrix(p.coords);
        CHECK((space.chart(p.coords) - oracles::log_cholesky_chart(m)).norm() < 1e-10);
        // Cholesky round-trip P = L L^T.
        const Matrix rebuilt =
            oracles::log_cholesky_chart_inverse(space.chart(p.coords), 3);
        REQUIRE((rebuilt - m).norm() <= 1e-10 * std::max(1.0, m.norm()));
    }
}

TEST_CASE("orthonormal frames have identity gram matrices") {
    Rng rng(47);
    const auto check_frame = [&](const Space& space, const Point& p) {
        const auto frame = space.orthonormal_frame(p);
        REQUIRE(static_cast<int>(frame.size()) == space.dim());
        for (std::size_t a = 0; a < frame.size(); ++a) {
            const Vector ua = space.tangent_to_ambient(frame[a]);
            for (std::size_t b = 0; b <= a; ++b) {
                const Vector ub = space.tangent_to_ambient(frame[b]);
                const double inner = space.metric_inner(p, ua, ub);
                REQUIRE(std::abs(inner - (a == b ? 1.0 : 0.0)) <= 1e-10);
            }
        }
    };
    EuclideanSpace euc(3);
    check_frame(euc, testsup::random_euclidean(euc, rng));
    SpdLogCholeskySpace spd(3);
    check_frame(spd, spd.make_point(spd.from_matrix(Matrix::Identity(3, 3))));
    check_frame(spd, testsup::random_spd(spd, rng));
    SphereQuadrantSpace sph(2);
    check_frame(sph, sph.make_point(vecn({1, 0, 0})));
    check_frame(sph, testsup::random_sphere(sph, rng));
    Wasserstein1DSpace was(16);
    check_frame(was, testsup::random_wasserstein(was, rng));
}

TEST_CASE("sphere frame vectors are tangent to the base point") {
    SphereQuadrantSpace space(2);
    const Point e1 = space.make_point(vecn({1, 0, 0}));
    const auto frame = space.orthonormal_frame(e1);
    REQUIRE(frame.size() == 2);
    for (const TangentVector& v : frame) {
        CHECK(std::abs(space.tangent_to_ambient(v).dot(e1.coords)) < 1e-12);
    }
}

TEST_CASE("native geodesics agree with the chart path exp(t log)") {
    Rng rng(53);
    const auto check = [&](const Space& space, const Point& a, const Point& b) {
        for (double t : {0.2, 0.5, 0.8}) {
            const Point native = space.geodesic_point({a, b, t});
            TangentVector v = space.log_map(a, b);
            v.coeffs *= t;
            const Point chart_path = space.exp_map(v);
            REQUIRE((native.coords - chart_path.coords).norm() <= 1e-8);
        }
    };
    EuclideanSpace euc(3);
    SpdLogCholeskySpace spd(3);
    SphereQuadrantSpace sph(2);
    Wasserstein1DSpace was(25);
    for (int k = 0; k < 200; ++k) {
        check(euc, testsup::random_euclidean(euc, rng), testsup::random_euclidean(euc, rng));
        check(spd, testsup::random_spd(spd, rng), testsup::random_spd(spd, rng));
        check(sph, testsup::random_sphere(sph, rng), testsup::random_sphere(sph, rng));
        check(was, testsup::random_wasserstein(was, rng), testsup::random_wasserstein(was, rng));
    }
}

TEST_CASE("wasserstein points stay nondecreasing under every operation") {
    Wasserstein1DSpace space(25);
    Rng rng(59);
    const auto is_monotone = [&](const Vector& v) {
        for (int i = 0; i + 1 < v.size(); ++i) {
            if (v[i + 1] < v[i] - 1e-12) return false;
        }
        return true;
    };
    for (int k = 0; k < 2000; ++k) {
        const Point p = testsup::random_wasserstein(space, rng);
        const Point q = testsup::random_wasserstein(space, rng);
        CHECK(is_monotone(space.geodesic_point({p, q, rng.uniform01()}).coords));
        Vector coeffs(space.dim());
        for (int i = 0; i < coeffs.size(); ++i) coeffs[i] = rng.normal(0.0, 0.5);
        bool projected = false;
        const Point moved = space.exp_map({p, coeffs}, &projected);
        CHECK(is_monotone(moved.coords));
    }
}

TEST_CASE("wasserstein exp flags isotonic projection and projection is metric-optimal") {
    Wasserstein1DSpace space(4);
    const Point p = space.make_point(vecn({0, 1, 2, 3}));
    // Push the second knot far above the third: leaves the monotone cone.
    Vector coeffs = vecn({0, 2.0, 0, 0});
    bool projected = false;
    const Point moved = space.exp_map({p, coeffs}, &projected);
    CHECK(projected);
    for (int i = 0; i + 1 < 4; ++i) CHECK(moved.coords[i + 1] >= moved.coords[i] - 1e-12);

    // The projection is the closest monotone vector: no random monotone
    // vector may be closer to the raw chart target.
    const Vector target = p.coords + 2.0 * coeffs;  // sqrt(G) = 2
    const double proj_dist = (moved.coords - target).norm();
    Rng rng(61);
    for (int k = 0; k < 500; ++k) {
        const Point w = testsup::random_wasserstein(space, rng, 2.0);
        CHECK(proj_dist <= (w.coords - target).norm() + 1e-12);
    }

    bool untouched = true;
    (void)space.exp_map({p, vecn({0.1, 0.1, 0.1, 0.1})}, &untouched);
    CHECK_FALSE(untouched);
}

TEST_CASE("sphere exponential respects the quadrant boundary") {
    SphereQuadrantSpace space(2);
    const Point e1 = space.make_point(vecn({1, 0, 0}));
    const TangentVector toward_e2 = space.log_map(e1, space.make_point(vecn({0, 1, 0})));
    // Overshooting the pole leaves the quadrant.
    TangentVector overshoot = toward_e2;
    overshoot.coeffs *= 1.4;
    CHECK_THROWS_AS((void)space.exp_map(overshoot), OutOfDomainError);
    // Norms at or beyond the injectivity radius are rejected outright.
    TangentVector huge = toward_e2;
    huge.coeffs *= 2.5;
    CHECK_THROWS_AS((void)space.exp_map(huge), OutOfDomainError);
    // Exactly reaching the boundary snaps the -1e-16-ish coordinate to 0.
    const Point pole = space.exp_map(toward_e2);
    CHECK(pole.coords.minCoeff() >= 0.0);
}

TEST_CASE("product space concatenates charts and adds squared distances") {
    auto euc = std::make_shared<EuclideanSpace>(1);
    auto spd = std::make_shared<SpdLogCholeskySpace>(2);
    ProductSpace product({euc, spd});
    CHECK(product.dim() == 4);
    CHECK(product.ambient_size() == 4);

    Rng rng(67);
    for (int k = 0; k < 200; ++k) {
        const Point a1 = testsup::random_euclidean(*euc, rng);
        const Point a2 = testsup::random_spd(*spd, rng);
        const Point b1 = testsup::random_euclidean(*euc, rng);
        const Point b2 = testsup::random_spd(*spd, rng);
        Vector ac(4), bc(4);
        ac << a1.coords, a2.coords;
        bc << b1.coords, b2.coords;
        const Point a = product.make_point(ac);
        const Point b = product.make_point(bc);
        const double d1 = euc->distance(a1, b1);
        const double d2 = spd->distance(a2, b2);
        REQUIRE(product.distance(a, b) ==
                doctest::Approx(std::sqrt(d1 * d1 + d2 * d2)).epsilon(1e-12));
        const TangentVector v = product.log_map(a, b);
        REQUIRE((product.exp_map(v).coords - b.coords).norm() <= 1e-10);
    }

    const auto frame = product.orthonormal_frame(product.make_point(vecn({0.3, 1, 0, 1})));
    CHECK(frame.size() == 4);
}

TEST_SUITE_END();
