#include "helpers.hpp"

#include "varimin/error.hpp"
#include "varimin/mesh_io.hpp"
#include "varimin/shapes.hpp"
#include "varimin/varifold.hpp"

#include <doctest.h>

#include <sstream>

using namespace varimin;

TEST_CASE("plane projector validation") {
    Vec e(3);
    e << 1, 0, 0;
    CHECK_NOTHROW(PlaneProjector(e * e.transpose()));
    Mat bad = Mat::Identity(3, 3) * 0.5;
    CHECK_THROWS_AS(PlaneProjector{bad}, PreconditionError);
    Mat basis(3, 2);
    basis << 1, 1, 0, 1, 0, 0;
    PlaneProjector P = PlaneProjector::from_basis(basis);
    CHECK(P.rank() == 2);
    CHECK(P(2, 2) == doctest::Approx(0.0));
}

TEST_CASE("mesh varifold mass equals the triangle area") {
    SimplicialMesh m = icosphere(3);
    const double area = testing::triangle_area(m);
    for (auto rule : {QuadratureRule::Centroid, QuadratureRule::Gauss, QuadratureRule::Vertex}) {
        DiscreteVarifold V = varifold_from_mesh(m, rule);
        CHECK(V.mass() == doctest::Approx(area).epsilon(1e-12));
        CHECK(V.m() == 2);
    }
    DiscreteVarifold V2 = varifold_from_mesh(m, QuadratureRule::Centroid, std::vector<int>(m.num_simplices(), 2));
    CHECK(V2.mass() == doctest::Approx(2 * area));
}

TEST_CASE("icosphere mass converges to 4 pi") {
    double prev = 1.0;
    for (int level = 2; level <= 5; ++level) {
        double err = std::abs(varifold_from_mesh(icosphere(level)).mass() - 4 * testing::pi);
        CHECK(err < prev);
        prev = err;
    }
    CHECK(prev / (4 * testing::pi) < 2e-3);
}

TEST_CASE("rigid motion and dilation") {
    DiscreteVarifold V = varifold_from_mesh(torus(2.0, 0.5, 24, 12));
    Mat R = testing::rotation(0.3, -0.7, 1.1);
    Vec t(3);
    t << 1, 2, 3;
    DiscreteVarifold W = rigid_motion(V, R, t);
    CHECK(W.mass() == doctest::Approx(V.mass()));
    CHECK(support_diameter(W) == doctest::Approx(support_diameter(V)));
    DiscreteVarifold D = dilate(V, 3.0);
    CHECK(D.mass() == doctest::Approx(9 * V.mass()));
    CHECK(support_diameter(D) == doctest::Approx(3 * support_diameter(V)));
    CHECK(V.scaled_weights(0.5).mass() == doctest::Approx(0.5 * V.mass()));
}

TEST_CASE("ambient attachment") {
    DiscreteVarifold V = varifold_from_mesh(latitude_circle(64, 0.0));
    auto s = make_sphere(2);
    CHECK_THROWS_AS(V.with_ambient(s), OffManifoldError);
    DiscreteVarifold C = conform_to_ambient(V, s);
    for (const auto& a : C.atoms()) CHECK(a.x.norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(C.mesh() != nullptr);
    CHECK(C.size() == V.size());
}

TEST_CASE("ball mass and components") {
    DiscreteVarifold V = varifold_from_mesh(icosphere(3));
    Vec o = Vec::Zero(3);
    CHECK(ball_mass(V, o, 2.0) == doctest::Approx(V.mass()));
    CHECK(ball_mass(V, o, 0.5) == 0.0);
    Vec shift(3);
    shift << 5, 0, 0;
    DiscreteVarifold two = concatenate(V, varifold_from_mesh(transformed(icosphere(3), 1.0, shift)));
    CHECK(connected_components(two, 0.3).size() == 2);
    CHECK(support_diameter(two) == doctest::Approx(7.0).epsilon(0.01));
}

TEST_CASE("mesh file round trip") {
    SimplicialMesh m = ellipsoid(2, 1.0, 0.7, 0.4);
    std::stringstream off, obj;
    write_off(off, m);
    write_obj(obj, m);
    SimplicialMesh a = read_off(off), b = read_obj(obj);
    CHECK(a.vertices() == m.vertices());
    CHECK(b.vertices() == m.vertices());
    CHECK(a.simplices() == m.simplices());
    std::stringstream broken("OFF\n3 1 0\n0 0 0\n1 0 0\n");
    CHECK_THROWS_AS(read_off(broken), InputError);
}

TEST_CASE("mesh checks") {
    SimplicialMesh m = icosphere(2);
    CHECK_NOTHROW(require_manifold(m));
    CHECK(enclosed_volume(m) > 0.0);
    CHECK(sphericity(icosphere(4)) > 0.999);
    SimplicialMesh e = ellipsoid(4, 1.0, 1.0, 0.5);
    CHECK(sphericity(e) < 0.95);
    Mat V(3, 3);
    V << 0, 1, 2, 0, 0, 0, 0, 0, 0;
    Eigen::MatrixXi T(3, 1);
    T << 0, 1, 2;
    CHECK_THROWS_AS(SimplicialMesh(V, T).check_nondegenerate(), DegenerateSimplexError);
}
