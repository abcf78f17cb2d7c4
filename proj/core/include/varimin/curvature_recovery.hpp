#pragma once

#include "varimin/first_variation.hpp"
#include "varimin/tensor.hpp"
#include "varimin/varifold.hpp"

#include <utility>
#include <vector>

namespace varimin {

// phi(x, P) = eta_eps(x - x0) q(P) with eta_eps(y) = (1 - |y|^2/eps^2)^2 on
// |y| < eps and q a monomial in the entries of P: 1, P_ab for all ordered
// (a, b), and P_ab P_cd over upper-triangular pairs (a <= b, c <= d,
// (a, b) <= (c, d)). When that family gives fewer than 3 S^3 equations
// (S = 2), upper-triangular cubic monomials are appended.
class TestScalarDictionary {
public:
    TestScalarDictionary(int S, double eps);

    int S() const { return S_; }
    double eps() const { return eps_; }
    int size() const { return static_cast<int>(monomials_.size()); }
    const std::vector<std::pair<int, int>>& factors(int q) const { return monomials_[q]; }

    double eta(const Vec& y) const;
    Vec grad_eta(const Vec& y) const;
    double q_value(int q, const Mat& P) const;
    // dq/dP_jk, entries treated as independent variables.
    Mat q_derivative(int q, const Mat& P) const;

    // phi, D_j phi (x-gradient) and D*_jk phi at x = x0 + y.
    void evaluate(int q, const Vec& y, const Mat& P, double& phi, Vec& grad, Mat& dstar) const;

private:
    int S_;
    double eps_;
    std::vector<std::vector<std::pair<int, int>>> monomials_;
};

// Per-atom generalized curvature B(i,j,k) = B_ijk and second fundamental form
// A(i,j,k) = A^k_ij, residual of the local fit, rank/condition diagnostics.
struct CurvatureTensorField {
    std::vector<Tensor3> B;
    std::vector<Tensor3> A;
    std::vector<double> residual;
    std::vector<std::uint8_t> flags;
    std::vector<double> condition;

    int size() const { return static_cast<int>(B.size()); }
    bool valid(int i) const { return flags[i] == kFlagOk; }
};

CurvatureTensorField make_tensor_field(int n, int S);

// H_i = sum_j B_jij per atom (flags copied).
CurvatureField trace_field(const CurvatureTensorField& field);

// For each atom x0: B constant on the eps-ball, least squares over the
// dictionary centered at x0 of
//   sum_atoms w [P_ij D_j phi + B_ijk D*_jk phi + B_jij phi] = 0  (every i).
// Atoms with fewer than S^3 neighbors are flagged and left at zero.
// Rank-deficient systems get the minimum-norm solution and a flag.
CurvatureTensorField recover_B(const DiscreteVarifold& V, double eps, const TestScalarDictionary& dict);

// A^k_ij = P_lj B_ikl - P_lj P_iq dQ_kl/dx_q. Uses the attached ambient
// (euclidean when none).
CurvatureTensorField A_from_B(const CurvatureTensorField& field, const DiscreteVarifold& V);

// B_ijk = A^k_ij + A^j_ik + P_jl P_iq dQ_lk/dx_q + P_kl P_iq dQ_lj/dx_q.
CurvatureTensorField B_from_A(const CurvatureTensorField& field, const DiscreteVarifold& V);

Tensor3 A_from_B_atom(const Tensor3& B, const Mat& P, const Tensor3* dQ);
Tensor3 B_from_A_atom(const Tensor3& A, const Mat& P, const Tensor3* dQ);

// Global normalized residual ||r|| / ||sum w P D phi|| of the weak identity
// with the given per-atom B, over the dictionary centered at each of
// `centers` (S x k).
double vc_residual(const DiscreteVarifold& V, const std::vector<Tensor3>& B, const TestScalarDictionary& dict,
                   const Mat& centers);

// Deterministic pseudo-random subset of atom points to center the dictionary.
Mat sample_centers(const DiscreteVarifold& V, int count, std::uint64_t seed);

}  // namespace varimin
