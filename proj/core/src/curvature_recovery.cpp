#include "varimin/curvature_recovery.hpp"

#include "varimin/error.hpp"
#include "varimin/parallel.hpp"
#include "varimin/spatial_grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace varimin {

namespace {

int unknown(int S, int i, int j, int k) { return (i * S + j) * S + k; }

// Neighborhood moments of every dictionary function q: Phi_q = sum w phi_q,
// G_q = sum w P grad(phi_q), D_q = sum w D* phi_q.
struct Moments {
    std::vector<double> Phi;
    Mat G;               // S x nq
    std::vector<Mat> D;  // nq of S x S
};

Moments moments(const DiscreteVarifold& V, const std::vector<int>& nbr, const Vec& x0,
                const TestScalarDictionary& dict) {
    const int S = V.S();
    const int nq = dict.size();
    Moments mo;
    mo.Phi.assign(static_cast<std::size_t>(nq), 0.0);
    mo.G = Mat::Zero(S, nq);
    mo.D.assign(static_cast<std::size_t>(nq), Mat::Zero(S, S));
    Vec y(S), Pg(S);
    for (int j : nbr) {
        const auto& a = V.atom(j);
        const Mat& P = a.P.matrix();
        y = a.x - x0;
        const double e = dict.eta(y);
        if (e == 0.0) continue;
        Pg.noalias() = P * dict.grad_eta(y);
        for (int q = 0; q < nq; ++q) {
            const auto& f = dict.factors(q);
            double qv = 1.0;
            for (const auto& [r, c] : f) qv *= P(r, c);
            mo.Phi[q] += a.w * e * qv;
            mo.G.col(q).noalias() += (a.w * qv) * Pg;
            for (std::size_t t = 0; t < f.size(); ++t) {
                double rest = 1.0;
                for (std::size_t u = 0; u < f.size(); ++u)
                    if (u != t) rest *= P(f[u].first, f[u].second);
                mo.D[q](f[t].first, f[t].second) += a.w * e * rest;
            }
        }
    }
    return mo;
}

Tensor3 to_tensor(const Vec& b, int S) {
    Tensor3 T(S);
    std::copy(b.data(), b.data() + b.size(), T.data().begin());
    return T;
}

}  // namespace

CurvatureTensorField make_tensor_field(int n, int S) {
    CurvatureTensorField f;
    f.B.assign(static_cast<std::size_t>(n), Tensor3(S));
    f.A.assign(static_cast<std::size_t>(n), Tensor3(S));
    f.residual.assign(static_cast<std::size_t>(n), 0.0);
    f.flags.assign(static_cast<std::size_t>(n), kFlagOk);
    f.condition.assign(static_cast<std::size_t>(n), 1.0);
    return f;
}

CurvatureField trace_field(const CurvatureTensorField& field) {
    const int n = field.size();
    const int S = n ? field.B[0].dim() : 0;
    CurvatureField out = make_curvature_field(n, S);
    for (int a = 0; a < n; ++a) {
        Vec h = Vec::Zero(S);
        for (int i = 0; i < S; ++i)
            for (int j = 0; j < S; ++j) h(i) += field.B[a](j, i, j);
        out.H[a] = h;
        out.H_N[a] = h;
        out.residual[a] = field.residual[a];
        out.flags[a] = field.flags[a];
    }
    return out;
}

CurvatureTensorField recover_B(const DiscreteVarifold& V, double eps, const TestScalarDictionary& dict) {
    const int S = V.S();
    if (S > 6) throw PreconditionError("recover_B supports S <= 6 (S^3 unknowns per neighborhood)");
    if (dict.S() != S) throw PreconditionError("dictionary dimension does not match varifold");
    if (!(eps > 0.0)) throw PreconditionError("recover_B radius must be positive");
    const int nu = S * S * S;
    const int nq = dict.size();
    const int neq = nq * S;
    TestScalarDictionary local(S, eps);
    CurvatureTensorField out = make_tensor_field(V.size(), S);
    Mat X = V.points();
    SpatialGrid grid(X, eps);
    parallel_for(static_cast<std::size_t>(V.size()), [&](std::size_t aa) {
        const int a = static_cast<int>(aa);
        const Vec& x0 = V.atom(a).x;
        auto nbr = grid.within(x0, eps);
        if (static_cast<int>(nbr.size()) < nu) {
            out.flags[a] |= kFlagEmptyNeighborhood;
            out.residual[a] = std::numeric_limits<double>::quiet_NaN();
            return;
        }
        Mat M = Mat::Zero(neq, nu);
        Vec rhs(neq);
        Moments mo = moments(V, nbr, x0, local);
        for (int q = 0; q < nq; ++q) {
            for (int i = 0; i < S; ++i) {
                const int row = q * S + i;
                rhs(row) = -mo.G(i, q);
                for (int j = 0; j < S; ++j)
                    for (int k = 0; k < S; ++k) M(row, unknown(S, i, j, k)) += mo.D[q](j, k);
                for (int j = 0; j < S; ++j) M(row, unknown(S, j, i, j)) += mo.Phi[q];
            }
        }
        Eigen::CompleteOrthogonalDecomposition<Mat> cod(M);
        cod.setThreshold(1e-10);
        Vec b = cod.solve(rhs);
        // Condition from the Gram spectrum; a diagnostic only, rank comes from the decomposition.
        Eigen::SelfAdjointEigenSolver<Mat> gram(M.transpose() * M, Eigen::EigenvaluesOnly);
        const double lmin = gram.eigenvalues()(0), lmax = gram.eigenvalues()(nu - 1);
        out.condition[a] = lmin > 0.0 ? std::sqrt(lmax / lmin) : std::numeric_limits<double>::infinity();
        if (cod.rank() < nu) out.flags[a] |= kFlagRankDeficient;
        double rn = rhs.norm();
        out.residual[a] = rn > 0.0 ? (M * b - rhs).norm() / rn : (M * b - rhs).norm();
        out.B[a] = to_tensor(b, S);
    });
    return A_from_B(out, V);
}

Tensor3 A_from_B_atom(const Tensor3& B, const Mat& P, const Tensor3* dQ) {
    const int S = B.dim();
    Tensor3 A(S);
    for (int i = 0; i < S; ++i)
        for (int j = 0; j < S; ++j)
            for (int k = 0; k < S; ++k) {
                double v = 0.0;
                for (int l = 0; l < S; ++l) {
                    v += P(l, j) * B(i, k, l);
                    if (dQ)
                        for (int q = 0; q < S; ++q) v -= P(l, j) * P(i, q) * (*dQ)(k, l, q);
                }
                A(i, j, k) = v;
            }
    return A;
}

Tensor3 B_from_A_atom(const Tensor3& A, const Mat& P, const Tensor3* dQ) {
    const int S = A.dim();
    Tensor3 B(S);
    for (int i = 0; i < S; ++i)
        for (int j = 0; j < S; ++j)
            for (int k = 0; k < S; ++k) {
                double v = A(i, j, k) + A(i, k, j);
                if (dQ)
                    for (int l = 0; l < S; ++l)
                        for (int q = 0; q < S; ++q)
                            v += P(j, l) * P(i, q) * (*dQ)(l, k, q) + P(k, l) * P(i, q) * (*dQ)(l, j, q);
                B(i, j, k) = v;
            }
    return B;
}

CurvatureTensorField A_from_B(const CurvatureTensorField& field, const DiscreteVarifold& V) {
    if (field.size() != V.size()) throw PreconditionError("tensor field size does not match varifold");
    CurvatureTensorField out = field;
    const bool curved = V.ambient() && !V.ambient()->is_flat();
    for (int a = 0; a < V.size(); ++a) {
        const auto& atom = V.atom(a);
        Tensor3 dQ;
        if (curved) dQ = V.ambient()->dQ(atom.x);
        out.A[a] = A_from_B_atom(field.B[a], atom.P.matrix(), curved ? &dQ : nullptr);
    }
    return out;
}

CurvatureTensorField B_from_A(const CurvatureTensorField& field, const DiscreteVarifold& V) {
    if (field.size() != V.size()) throw PreconditionError("tensor field size does not match varifold");
    CurvatureTensorField out = field;
    const bool curved = V.ambient() && !V.ambient()->is_flat();
    for (int a = 0; a < V.size(); ++a) {
        const auto& atom = V.atom(a);
        Tensor3 dQ;
        if (curved) dQ = V.ambient()->dQ(atom.x);
        out.B[a] = B_from_A_atom(field.A[a], atom.P.matrix(), curved ? &dQ : nullptr);
    }
    return out;
}

double vc_residual(const DiscreteVarifold& V, const std::vector<Tensor3>& B, const TestScalarDictionary& dict,
                   const Mat& centers) {
    const int S = V.S();
    if (static_cast<int>(B.size()) != V.size()) throw PreconditionError("B field size does not match varifold");
    if (dict.S() != S || centers.rows() != S) throw PreconditionError("dictionary/centers dimension mismatch");
    Mat X = V.points();
    SpatialGrid grid(X, dict.eps());
    const int nc = static_cast<int>(centers.cols());
    std::vector<double> res2(static_cast<std::size_t>(nc), 0.0), ref2(static_cast<std::size_t>(nc), 0.0);
    parallel_for(static_cast<std::size_t>(nc), [&](std::size_t cc) {
        const Vec x0 = centers.col(static_cast<int>(cc));
        auto nbr = grid.within(x0, dict.eps());
        const int nq = dict.size();
        Mat first = Mat::Zero(S, nq), r = Mat::Zero(S, nq);
        Vec y(S), Pg(S), trB(S);
        for (int j : nbr) {
            const auto& a = V.atom(j);
            const Mat& P = a.P.matrix();
            y = a.x - x0;
            const double e = dict.eta(y);
            if (e == 0.0) continue;
            Pg.noalias() = P * dict.grad_eta(y);
            const Tensor3& b = B[j];
            for (int i = 0; i < S; ++i) {
                trB(i) = 0.0;
                for (int jj = 0; jj < S; ++jj) trB(i) += b(jj, i, jj);
            }
            for (int q = 0; q < nq; ++q) {
                const auto& f = dict.factors(q);
                double qv = 1.0;
                for (const auto& [rr, c] : f) qv *= P(rr, c);
                first.col(q).noalias() += (a.w * qv) * Pg;
                r.col(q).noalias() += (a.w * qv) * Pg + (a.w * e * qv) * trB;
                for (std::size_t t = 0; t < f.size(); ++t) {
                    double rest = 1.0;
                    for (std::size_t u = 0; u < f.size(); ++u)
                        if (u != t) rest *= P(f[u].first, f[u].second);
                    const int jj = f[t].first, k = f[t].second;
                    for (int i = 0; i < S; ++i) r(i, q) += a.w * e * rest * b(i, jj, k);
                }
            }
        }
        res2[cc] = r.squaredNorm();
        ref2[cc] = first.squaredNorm();
    });
    double num = std::accumulate(res2.begin(), res2.end(), 0.0);
    double den = std::accumulate(ref2.begin(), ref2.end(), 0.0);
    return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

Mat sample_centers(const DiscreteVarifold& V, int count, std::uint64_t seed) {
    if (V.empty()) throw PreconditionError("sample_centers on an empty varifold");
    std::vector<int> idx(static_cast<std::size_t>(V.size()));
    std::iota(idx.begin(), idx.end(), 0);
    std::mt19937_64 rng(seed);
    for (int i = static_cast<int>(idx.size()) - 1; i > 0; --i) {
        std::uniform_int_distribution<int> pick(0, i);
        std::swap(idx[i], idx[pick(rng)]);
    }
    count = std::min<int>(count, V.size());
    Mat C(V.S(), count);
    for (int c = 0; c < count; ++c) C.col(c) = V.atom(idx[c]).x;
    return C;
}

}  // namespace varimin
