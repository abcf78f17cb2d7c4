#include "helpers.hpp"

#include "varimin/ambient.hpp"
#include "varimin/error.hpp"
#include "varimin/first_variation.hpp"
#include "varimin/shapes.hpp"

#include <doctest.h>

using namespace varimin;

TEST_CASE("first variation of the position field is m |V|") {
    for (auto mesh : {icosphere(2), torus(2.0, 0.5, 20, 10), ellipsoid(2, 1.0, 0.6, 0.3)}) {
        DiscreteVarifold V = varifold_from_mesh(mesh);
        auto X = TestVectorField::affine(Mat::Identity(3, 3), Vec::Zero(3));
        CHECK(first_variation(V, X) == doctest::Approx(2.0 * V.mass()).epsilon(1e-12));
    }
}

TEST_CASE("translations have zero first variation on closed surfaces") {
    DiscreteVarifold V = varifold_from_mesh(torus(2.0, 0.5, 20, 10));
    Vec b(3);
    b << 0.3, -1.0, 2.0;
    CHECK(std::abs(first_variation(V, TestVectorField::affine(Mat::Zero(3, 3), b))) < 1e-12);
}

TEST_CASE("mesh curvature on the sphere") {
    for (double r : {0.5, 1.0, 2.0}) {
        DiscreteVarifold V = varifold_from_mesh(icosphere(4, r));
        CurvatureField H = mean_curvature_mesh(V);
        for (int i = 0; i < V.size(); i += 97) {
            CHECK(H.H[i].norm() == doctest::Approx(2.0 / r).epsilon(0.02));
            // Points inward.
            CHECK(H.H[i].dot(V.atom(i).x) < 0.0);
        }
        CHECK(lp_norm(H, V, 3.0) == doctest::Approx(32 * testing::pi / r).epsilon(0.05));
    }
}

TEST_CASE("weak identity with mesh curvature") {
    DiscreteVarifold V = varifold_from_mesh(icosphere(4), QuadratureRule::Vertex);
    CurvatureField H = mean_curvature_mesh(V);
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        auto X = TestVectorField::random_polynomial(3, 2, seed);
        double dv = first_variation(V, X);
        double pair = curvature_pairing(V, H, X);
        CHECK(std::abs(dv + pair) <= 0.02 * (std::abs(dv) + 1e-3));
    }
}

TEST_CASE("kernel and mesh estimators agree on the sphere") {
    DiscreteVarifold V = varifold_from_mesh(icosphere(4));
    CurvatureField K = mean_curvature_kernel(V, 0.15);
    for (int i = 0; i < V.size(); i += 53) CHECK(K.H[i].norm() == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("circle curvature and polyline estimator") {
    DiscreteVarifold V = varifold_from_mesh(circle(200, 2.0));
    CurvatureField H = mean_curvature_mesh(V);
    for (int i = 0; i < V.size(); i += 17) CHECK(H.H[i].norm() == doctest::Approx(0.5).epsilon(1e-3));
}

TEST_CASE("flat patch is minimal away from the boundary") {
    DiscreteVarifold V = varifold_from_mesh(flat_patch(16));
    CurvatureField H = mean_curvature_mesh(V);
    int boundary = 0;
    for (int i = 0; i < V.size(); ++i) {
        if (H.flags[i] & kFlagBoundary) {
            ++boundary;
            continue;
        }
        CHECK(H.H[i].norm() < 1e-12);
    }
    CHECK(boundary > 0);
    CHECK_THROWS_AS(lp_norm(H, V, 3.0), PreconditionError);
    CHECK(lp_norm(H, V, 3.0, CurvatureComponent::H, true) < 1e-30);
}

TEST_CASE("relative curvature of a latitude circle on the unit sphere") {
    const double theta = 0.6;
    auto s = make_sphere(2);
    DiscreteVarifold V = conform_to_ambient(varifold_from_mesh(latitude_circle(400, theta)), s);
    CurvatureField H = relative_mean_curvature(V, mean_curvature_mesh(V));
    // Geodesic curvature of a latitude circle is tan(theta).
    for (int i = 0; i < V.size(); i += 37) {
        CHECK(H.H[i].norm() == doctest::Approx(1.0 / std::cos(theta)).epsilon(1e-3));
        CHECK(H.H_N[i].norm() == doctest::Approx(std::tan(theta)).epsilon(2e-3));
    }
}

TEST_CASE("curvature is invariant under rigid motion") {
    SimplicialMesh m = ellipsoid(3, 1.0, 0.7, 0.5);
    Mat R = testing::rotation(0.4, 0.1, -0.9);
    Vec t(3);
    t << -1, 0.5, 2;
    DiscreteVarifold V = varifold_from_mesh(m);
    CurvatureField a = mean_curvature_mesh(V), b = mean_curvature_mesh(varifold_from_mesh(rigid_motion(m, R, t)));
    for (int i = 0; i < V.size(); i += 41) CHECK((R * a.H[i] - b.H[i]).norm() < 1e-10);
}
