#pragma once

#include "varimin/test_fields.hpp"
#include "varimin/varifold.hpp"

#include <cstdint>
#include <vector>

namespace varimin {

// Per-atom status bits shared by curvature estimators.
enum AtomFlag : std::uint8_t {
    kFlagOk = 0,
    kFlagBoundary = 1,           // touches an open mesh boundary
    kFlagEmptyNeighborhood = 2,  // no other atom within the kernel radius
    kFlagRankDeficient = 4,      // least-squares system lost rank
    kFlagJunction = 8,           // non-manifold junction
};

// Per-atom weak mean curvature H (R^S), relative curvature H_N and a
// nonnegative residual. H_N is filled by relative_mean_curvature; until then
// it equals H.
struct CurvatureField {
    std::vector<Vec> H;
    std::vector<Vec> H_N;
    std::vector<double> residual;
    std::vector<std::uint8_t> flags;
    // |(I - Q) H_N| per atom when an ambient is attached (diagnostic only).
    std::vector<double> normal_part;

    int size() const { return static_cast<int>(H.size()); }
    bool valid(int i) const { return flags[i] == kFlagOk; }
    int count_valid() const;
};

CurvatureField make_curvature_field(int n, int S);

// sum_atoms w tr(P JX(x)).
double first_variation(const DiscreteVarifold& V, const TestVectorField& X);

// sum_atoms w H . X(x); with first_variation, the weak identity defect is
// first_variation(V, X) + curvature_pairing(V, H, X).
double curvature_pairing(const DiscreteVarifold& V, const CurvatureField& field, const TestVectorField& X);

// Cotangent area-gradient mean curvature per vertex (mixed Voronoi areas for
// triangles, half incident length for polylines), interpolated to atoms by
// barycentric weights. Needs mesh provenance with m = 1 or m = 2.
CurvatureField mean_curvature_mesh(const DiscreteVarifold& V);

// Per-vertex H = -grad(area)/A_v on the provenance mesh (no interpolation).
// boundary[v] is set for open-boundary vertices.
std::vector<Vec> vertex_mean_curvature(const SimplicialMesh& mesh, std::vector<double>* vertex_area = nullptr,
                                       std::vector<bool>* boundary = nullptr);

// H(x0) = -sum w P grad rho_eps(x - x0) / sum w rho_eps(x - x0),
// rho_eps(y) = (1 - |y|^2/eps^2)^2 on |y| < eps.
CurvatureField mean_curvature_kernel(const DiscreteVarifold& V, double eps);

// H_N = H - curvature_correction(x, P) atomwise. Needs an ambient.
CurvatureField relative_mean_curvature(const DiscreteVarifold& V, const CurvatureField& field);

enum class CurvatureComponent { H, HN };

// Integral sum w |H|^p (not its p-th root). Throws on flagged atoms unless
// skip_flagged is set, in which case they contribute zero.
double lp_norm(const CurvatureField& field, const DiscreteVarifold& V, double p,
               CurvatureComponent which = CurvatureComponent::H, bool skip_flagged = false);

}  // namespace varimin
