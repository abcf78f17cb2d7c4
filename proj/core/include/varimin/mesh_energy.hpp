#pragma once

#include "varimin/energy.hpp"
#include "varimin/mesh.hpp"

#include <cstdint>
#include <vector>

namespace varimin {

// Discrete curvature energy of a closed or pinned triangle surface in R^3,
// summed over interior vertices with mixed Voronoi areas A_v:
//   H-form: A_v F(|g_v| / A_v), g_v the cotangent area gradient;
//   A-form: A_v F(|S_v|), S_v the edge-based shape operator
//           (1/A_v) sum_e beta_e |e| / 2 (e e^T)/|e|^2 rotated into the
//           tangent plane of the area-weighted vertex normal.
// Boundary vertices carry no energy and their gradient rows are zero.
class MeshEnergy {
public:
    MeshEnergy(const SimplicialMesh& mesh, EnergySpec spec);

    const EnergySpec& spec() const { return spec_; }
    int num_vertices() const { return static_cast<int>(stars_.size()); }
    const std::vector<bool>& pinned() const { return pinned_; }
    // Star vertices of v: v first, then its one-ring.
    const std::vector<int>& star(int v) const { return stars_[v].verts; }

    double value(const Mat& X) const;
    std::vector<double> vertex_energies(const Mat& X) const;
    // Energy and its gradient (3 x n) by forward-mode differentiation.
    double value_and_gradient(const Mat& X, Mat& gradient) const;
    // Per-vertex mixed area and |H| or |A| (zero on pinned vertices).
    void vertex_curvature(const Mat& X, std::vector<double>& area, std::vector<double>& magnitude) const;

    struct GradientCheck {
        double rel_error = 0.0;
        int vertices = 0;
        double step = 0.0;
    };
    // Central differences on `samples` random free vertices with step
    // step_rel x bounding-box diagonal. Relative error is
    // ||g - g_fd|| / ||g|| over the sampled coordinates.
    GradientCheck check_gradient(const Mat& X, int samples, std::uint64_t seed, double step_rel = 1e-6) const;

private:
    struct Star {
        std::vector<int> verts;
        std::vector<std::array<int, 3>> tris;  // local indices, orientation kept, corner 0 is the center
    };
    double vertex_energy(const Mat& X, int v) const;

    EnergySpec spec_;
    std::vector<Star> stars_;
    std::vector<bool> pinned_;
};

// Throws GradientCheckError when the check exceeds `hard_limit`.
void require_gradient(const MeshEnergy::GradientCheck& check, double hard_limit = 1e-3);

}  // namespace varimin
