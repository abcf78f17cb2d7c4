#include "helpers.hpp"

#include "varimin/curvature_recovery.hpp"
#include "varimin/shapes.hpp"

#include <doctest.h>

#include <random>

using namespace varimin;

namespace {

Tensor3 random_tensor(int S, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Tensor3 T(S);
    for (double& v : T.data()) v = u(rng);
    return T;
}

}  // namespace

TEST_CASE("dictionary size and cutoff") {
    TestScalarDictionary d(3, 0.5);
    // 1 + 9 linear + 21 quadratic on the 6 upper-triangular entries.
    CHECK(d.size() == 1 + 9 + 21);
    Vec y = Vec::Zero(3);
    CHECK(d.eta(y) == doctest::Approx(1.0));
    y(0) = 0.5;
    CHECK(d.eta(y) == doctest::Approx(0.0));
    y(0) = 0.2;
    const double h = 1e-6;
    Vec e = Vec::Zero(3);
    e(0) = h;
    CHECK(d.grad_eta(y)(0) == doctest::Approx((d.eta(y + e) - d.eta(y - e)) / (2 * h)).epsilon(1e-6));
    CHECK(TestScalarDictionary(2, 1.0).size() * 2 >= 3 * 8);
}

TEST_CASE("A and B conversions are linear inverses on proper forms") {
    std::mt19937_64 rng(3);
    Vec t1(3), t2(3);
    t1 << 1, 0, 0;
    t2 << 0, 0.6, 0.8;
    Mat P = t1 * t1.transpose() + t2 * t2.transpose();
    Mat N = Mat::Identity(3, 3) - P;
    Tensor3 raw = random_tensor(3, rng), A(3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                for (int a = 0; a < 3; ++a)
                    for (int b = 0; b < 3; ++b)
                        for (int c = 0; c < 3; ++c)
                            A(i, j, k) += 0.5 * (P(i, a) * P(j, b) + P(j, a) * P(i, b)) * N(k, c) * raw(a, b, c);
    Tensor3 B = B_from_A_atom(A, P, nullptr);
    CHECK((A_from_B_atom(B, P, nullptr) - A).norm() < 1e-13);
    // Trace of B is the trace of A.
    for (int i = 0; i < 3; ++i) {
        double tb = 0, ta = 0;
        for (int j = 0; j < 3; ++j) tb += B(j, i, j), ta += A(j, j, i);
        CHECK(tb == doctest::Approx(ta));
    }
}

TEST_CASE("recovered B traces to H on the sphere") {
    DiscreteVarifold V = varifold_from_mesh(icosphere(4));
    TestScalarDictionary d(3, 0.3);
    CurvatureTensorField tf = recover_B(V, 0.3, d);
    CurvatureField tr = trace_field(tf);
    for (int i = 0; i < V.size(); i += 61) {
        REQUIRE(tf.valid(i));
        Vec n = V.atom(i).x.normalized();
        CHECK((tr.H[i] + 2.0 * n).norm() < 0.2);
        // |A| = sqrt(2) on the unit sphere.
        CHECK(tf.A[i].norm() == doctest::Approx(std::sqrt(2.0)).epsilon(0.1));
    }
}

TEST_CASE("sparse neighborhoods are flagged") {
    DiscreteVarifold V = varifold_from_mesh(icosphere(1));
    TestScalarDictionary d(3, 0.2);
    CurvatureTensorField tf = recover_B(V, 0.2, d);
    for (int i = 0; i < V.size(); ++i) CHECK((tf.flags[i] & kFlagEmptyNeighborhood) != 0);
}

TEST_CASE("weak-identity residual separates the analytic field from zero") {
    DiscreteVarifold V = varifold_from_mesh(icosphere(4));
    TestScalarDictionary d(3, 0.5);
    Mat centers = sample_centers(V, 24, 9);
    std::vector<Tensor3> B, Z(V.size(), Tensor3(3));
    for (const auto& a : V.atoms()) {
        Mat P = a.P.matrix();
        Vec n = a.x.normalized();
        Tensor3 A(3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) A(i, j, k) = -P(i, j) * n(k);
        B.push_back(B_from_A_atom(A, P, nullptr));
    }
    double good = vc_residual(V, B, d, centers), zero = vc_residual(V, Z, d, centers);
    CHECK(good < 0.01);
    CHECK(zero > 10 * good);
    CHECK(sample_centers(V, 24, 9) == centers);
}
