#include "varimin/test_fields.hpp"

#include "varimin/error.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace varimin {

namespace {

// psi(r): 1 on [0, a], 1 - 3s^2 + 2s^3 with s = (r - a)/(b - a) on [a, b].
void cubic_step(double r, double a, double b, double& psi, double& dpsi) {
    if (r <= a) {
        psi = 1.0;
        dpsi = 0.0;
    } else if (r >= b) {
        psi = 0.0;
        dpsi = 0.0;
    } else {
        double h = b - a;
        double s = (r - a) / h;
        psi = 1.0 - 3.0 * s * s + 2.0 * s * s * s;
        dpsi = (-6.0 * s + 6.0 * s * s) / h;
    }
}

void enumerate_exponents(int S, int degree, std::vector<int>& cur, int d, std::vector<std::vector<int>>& out) {
    if (d == S) {
        out.push_back(cur);
        return;
    }
    int used = 0;
    for (int i = 0; i < d; ++i) used += cur[i];
    for (int e = 0; e + used <= degree; ++e) {
        cur[d] = e;
        enumerate_exponents(S, degree, cur, d + 1, out);
    }
    cur[d] = 0;
}

}  // namespace

TestVectorField TestVectorField::affine(Mat A, Vec b) {
    if (A.rows() != A.cols() || A.rows() != b.size()) throw PreconditionError("affine field: shape mismatch");
    TestVectorField X;
    X.kind_ = Kind::Affine;
    X.S_ = static_cast<int>(b.size());
    X.A_ = std::move(A);
    X.b_ = std::move(b);
    return X;
}

TestVectorField TestVectorField::radial_bump(Vec center, double inner, double outer) {
    if (!(inner >= 0.0) || !(outer > inner)) throw PreconditionError("radial bump needs 0 <= inner < outer");
    TestVectorField X;
    X.kind_ = Kind::RadialBump;
    X.S_ = static_cast<int>(center.size());
    X.center_ = std::move(center);
    X.inner_ = inner;
    X.outer_ = outer;
    return X;
}

TestVectorField TestVectorField::polynomial(std::vector<std::vector<Monomial>> components) {
    TestVectorField X;
    X.kind_ = Kind::Polynomial;
    X.S_ = static_cast<int>(components.size());
    for (const auto& comp : components)
        for (const auto& mono : comp) {
            if (static_cast<int>(mono.exponents.size()) != X.S_) throw PreconditionError("polynomial field: exponent size mismatch");
            int deg = 0;
            for (int e : mono.exponents) {
                if (e < 0) throw PreconditionError("polynomial field: negative exponent");
                deg += e;
            }
            if (deg > 3) throw PreconditionError("polynomial field: degree above 3");
        }
    X.poly_ = std::move(components);
    return X;
}

TestVectorField TestVectorField::random_polynomial(int S, int degree, std::uint64_t seed) {
    if (degree < 0 || degree > 3) throw PreconditionError("polynomial degree must be in [0, 3]");
    std::vector<std::vector<int>> exps;
    std::vector<int> cur(static_cast<std::size_t>(S), 0);
    enumerate_exponents(S, degree, cur, 0, exps);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    std::vector<std::vector<Monomial>> comps(static_cast<std::size_t>(S));
    for (auto& comp : comps)
        for (const auto& e : exps) comp.push_back({U(rng), e});
    return polynomial(std::move(comps));
}

Vec TestVectorField::value(const Vec& x) const {
    switch (kind_) {
        case Kind::Affine:
            return A_ * x + b_;
        case Kind::RadialBump: {
            Vec y = x - center_;
            double psi, dpsi;
            cubic_step(y.norm(), inner_, outer_, psi, dpsi);
            return psi * y;
        }
        case Kind::Polynomial: {
            Vec v = Vec::Zero(S_);
            for (int i = 0; i < S_; ++i)
                for (const auto& mono : poly_[i]) {
                    double t = mono.coeff;
                    for (int d = 0; d < S_; ++d) t *= std::pow(x(d), mono.exponents[d]);
                    v(i) += t;
                }
            return v;
        }
    }
    return Vec();
}

Mat TestVectorField::jacobian(const Vec& x) const {
    switch (kind_) {
        case Kind::Affine:
            return A_;
        case Kind::RadialBump: {
            Vec y = x - center_;
            double r = y.norm();
            double psi, dpsi;
            cubic_step(r, inner_, outer_, psi, dpsi);
            Mat J = psi * Mat::Identity(S_, S_);
            if (r > 0.0 && dpsi != 0.0) J += (dpsi / r) * y * y.transpose();
            return J;
        }
        case Kind::Polynomial: {
            Mat J = Mat::Zero(S_, S_);
            for (int i = 0; i < S_; ++i)
                for (const auto& mono : poly_[i])
                    for (int j = 0; j < S_; ++j) {
                        int ej = mono.exponents[j];
                        if (ej == 0) continue;
                        double t = mono.coeff * ej;
                        for (int d = 0; d < S_; ++d) t *= std::pow(x(d), d == j ? ej - 1 : mono.exponents[d]);
                        J(i, j) += t;
                    }
            return J;
        }
    }
    return Mat();
}

double TestVectorField::support_radius() const {
    return kind_ == Kind::RadialBump ? outer_ : std::numeric_limits<double>::infinity();
}

}  // namespace varimin
