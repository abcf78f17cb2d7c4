#pragma once

#include "varimin/tensor.hpp"

#include <cstdint>
#include <vector>

namespace varimin {

struct Monomial {
    double coeff = 0.0;
    std::vector<int> exponents;  // one per coordinate
};

// Compactly supported or polynomial C^1 vector fields on R^S with closed-form
// Jacobian J(i, j) = dX^i/dx_j.
class TestVectorField {
public:
    enum class Kind { Affine, RadialBump, Polynomial };

    // X(x) = A x + b.
    static TestVectorField affine(Mat A, Vec b);
    // X(x) = (x - c) psi(|x - c|), psi = 1 on [0, inner], C^1 cubic decay to
    // 0 at outer, 0 beyond.
    static TestVectorField radial_bump(Vec center, double inner, double outer);
    // X^i = sum of monomials in components[i]; total degree <= 3.
    static TestVectorField polynomial(std::vector<std::vector<Monomial>> components);
    // Random coefficients in [-1, 1] for every monomial of degree <= degree.
    static TestVectorField random_polynomial(int S, int degree, std::uint64_t seed);

    Kind kind() const { return kind_; }
    int dim() const { return S_; }
    Vec value(const Vec& x) const;
    Mat jacobian(const Vec& x) const;
    // Support radius around center() for bump kinds; infinity otherwise.
    double support_radius() const;
    const Vec& center() const { return center_; }

private:
    Kind kind_ = Kind::Affine;
    int S_ = 0;
    Mat A_;
    Vec b_;
    Vec center_;
    double inner_ = 0.0;
    double outer_ = 0.0;
    std::vector<std::vector<Monomial>> poly_;
};

}  // namespace varimin
