#include "helpers.hpp"

#include "varimin/curvature_recovery.hpp"
#include "varimin/energy.hpp"
#include "varimin/error.hpp"
#include "varimin/mesh_energy.hpp"
#include "varimin/shapes.hpp"

#include <doctest.h>

using namespace varimin;
using testing::pi;

TEST_CASE("integrands") {
    EnergySpec s;
    CHECK(s.value(2.0) == doctest::Approx(8.0));
    CHECK(s.value(0.0) == 0.0);
    s.C = 0.5;
    s.p = 4.0;
    CHECK(s.F_sq(9.0) == doctest::Approx(0.5 * 81.0));
    s.integrand = IntegrandKind::HuberPower;
    s.delta = 0.1;
    CHECK(s.value(0.0) == 0.0);
    CHECK(s.value(1.0) == doctest::Approx(0.5 * (std::pow(1.01, 2.0) - 1e-4)));
    CHECK(check_integrand(s, 3).ok());
    CHECK(check_integrand(EnergySpec{}, 3).ok());
    CHECK(check_integrand(EnergySpec{EnergyForm::A, IntegrandKind::Power, 2.0, 2.5}, 27).ok());
}

TEST_CASE("validation") {
    EnergySpec s;
    s.p = 2.0;
    CHECK_THROWS_AS(s.validate(2), PreconditionError);
    CHECK_NOTHROW(s.validate(1));
    s.p = 3.0;
    s.C = 0.0;
    CHECK_THROWS_AS(s.validate(2), PreconditionError);
    CHECK(parse_form("A") == EnergyForm::A);
    CHECK(parse_integrand("huber-power") == IntegrandKind::HuberPower);
    CHECK_THROWS(parse_form("Q"));
}

TEST_CASE("varifold energies on the sphere") {
    DiscreteVarifold V = varifold_from_mesh(icosphere(4));
    CurvatureField H = mean_curvature_mesh(V);
    EnergySpec s;
    CHECK(energy(V, H, s) == doctest::Approx(32 * pi).epsilon(0.05));
    s.C = 2.5;
    CHECK(energy(V, H, s) == doctest::Approx(2.5 * lp_norm(H, V, 3.0)));
    // Linear in the weights.
    CHECK(energy(V.scaled_weights(3.0), H, s) == doctest::Approx(3.0 * energy(V, H, s)));
    CHECK(energy(V, make_curvature_field(V.size(), 3), s) == 0.0);

    // Recovered |A| is biased low by O(eps); a fine mesh keeps eps small.
    DiscreteVarifold F = varifold_from_mesh(icosphere(5));
    TestScalarDictionary d(3, 0.15);
    CurvatureTensorField tf = recover_B(F, 0.15, d);
    EnergySpec a;
    a.form = EnergyForm::A;
    CHECK(energy(F, tf, a) == doctest::Approx(std::pow(2.0, 1.5) * 4 * pi).epsilon(0.08));
    CHECK_THROWS_AS(energy(F, tf, s), PreconditionError);
    CHECK_THROWS_AS(energy(V, H, a), PreconditionError);
}

TEST_CASE("energy scaling lambda^(m-p)") {
    EnergySpec s;
    for (double p : {2.5, 3.0, 4.0}) {
        s.p = p;
        MeshEnergy E1(icosphere(3), s);
        SimplicialMesh big = icosphere(3, 1.7);
        MeshEnergy E2(big, s);
        double e1 = E1.value(icosphere(3).vertices()), e2 = E2.value(big.vertices());
        CHECK(e2 == doctest::Approx(std::pow(1.7, 2.0 - p) * e1).epsilon(0.01));
    }
    CHECK(isoperimetric_ratio(4 * pi, 32 * pi) == doctest::Approx(0.125));
}
