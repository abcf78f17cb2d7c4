#include "helpers.hpp"

#include "varimin/error.hpp"
#include "varimin/mesh_energy.hpp"
#include "varimin/shapes.hpp"

#include <doctest.h>

using namespace varimin;
using testing::pi;

TEST_CASE("mesh energies approach the round-sphere values") {
    SimplicialMesh m = icosphere(4);
    EnergySpec h, a;
    a.form = EnergyForm::A;
    CHECK(MeshEnergy(m, h).value(m.vertices()) == doctest::Approx(32 * pi).epsilon(0.01));
    CHECK(MeshEnergy(m, a).value(m.vertices()) == doctest::Approx(std::pow(2.0, 1.5) * 4 * pi).epsilon(0.01));
}

TEST_CASE("gradient points outward on a small sphere") {
    SimplicialMesh m = icosphere(3, 0.8);
    MeshEnergy E(m, EnergySpec{});
    Mat G;
    double e = E.value_and_gradient(m.vertices(), G);
    CHECK(e == doctest::Approx(E.value(m.vertices())));
    double radial = 0.0;
    for (int v = 0; v < m.num_vertices(); ++v) {
        double g = G.col(v).dot(m.vertex(v).normalized());
        CHECK(g < 0.0);
        radial += G.col(v).dot(m.vertex(v));
    }
    // E(r) = c / r: sum_v <g_v, x_v> = r dE/dr = -E.
    CHECK(radial == doctest::Approx(-e).epsilon(1e-10));
}

TEST_CASE("gradient matches central differences") {
    for (EnergyForm f : {EnergyForm::H, EnergyForm::A})
        for (double p : {2.5, 3.0, 4.0}) {
            EnergySpec s;
            s.form = f;
            s.p = p;
            SimplicialMesh m = jitter(torus(2.0, 0.75, 20, 10), 0.1, 4);
            auto chk = MeshEnergy(m, s).check_gradient(m.vertices(), 10, 21);
            CHECK(chk.rel_error < 1e-4);
            CHECK(chk.vertices == 10);
        }
    EnergySpec hub;
    hub.integrand = IntegrandKind::HuberPower;
    SimplicialMesh m = jitter(icosphere(2), 0.1, 8);
    CHECK(MeshEnergy(m, hub).check_gradient(m.vertices(), 10, 3).rel_error < 1e-4);
}

TEST_CASE("pinned flat patch is critical") {
    SimplicialMesh m = flat_patch(10);
    EnergySpec s;
    s.p = 2.5;
    MeshEnergy E(m, s);
    Mat G;
    CHECK(E.value_and_gradient(m.vertices(), G) < 1e-20);
    CHECK(G.norm() < 1e-10);
    int pinned = 0;
    for (bool b : E.pinned()) pinned += b;
    CHECK(pinned == 40);
}

TEST_CASE("energy is invariant under rigid motion") {
    SimplicialMesh m = ellipsoid(3, 1.0, 0.8, 0.6);
    Mat R = testing::rotation(1.0, 0.2, -0.3);
    Vec t(3);
    t << 4, 5, 6;
    SimplicialMesh r = rigid_motion(m, R, t);
    for (EnergyForm f : {EnergyForm::H, EnergyForm::A}) {
        EnergySpec s;
        s.form = f;
        CHECK(MeshEnergy(r, s).value(r.vertices()) == doctest::Approx(MeshEnergy(m, s).value(m.vertices())));
    }
}

TEST_CASE("gradient check failure is a hard error") {
    CHECK_NOTHROW(require_gradient({1e-5, 8, 1e-6}));
    CHECK_THROWS_AS(require_gradient({2e-3, 8, 1e-6}), GradientCheckError);
}

TEST_CASE("mesh energy needs a manifold triangle surface") {
    CHECK_THROWS(MeshEnergy(circle(10), EnergySpec{}));
}
