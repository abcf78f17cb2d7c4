#pragma once

#include "varimin/mesh_energy.hpp"
#include "varimin/monitors.hpp"
#include "varimin/remesh.hpp"
#include "varimin/subset.hpp"

#include <functional>
#include <string>
#include <vector>

namespace varimin {

enum class Preconditioner {
    // d_v = -g_v / A_v
    Lumped,
    // d = -(M + tau L M^{-1} L)^{-1} g, M lumped mixed areas, L cotangent
    // Laplacian, tau = bilaplacian_scale x diam^4.
    Bilaplacian,
};

struct DescentOptions {
    int max_iter = 5000;
    // Stop when the projected gradient sup-norm drops below tol x E / diam.
    double tol = 1e-6;
    double initial_step = 1e-3;
    Preconditioner preconditioner = Preconditioner::Bilaplacian;
    double bilaplacian_scale = 1e-3;
    // Move vertices along their area-weighted normals only.
    bool normal_only = true;
    double armijo = 1e-4;
    int max_backtracks = 60;
    bool remesh = true;
    int remesh_every = 50;
    // Remesh early once the worst aspect ratio passes this value.
    double remesh_aspect = 4.0;
    // Abort when the aspect ratio passes this value and remeshing is off.
    double abort_aspect = 20.0;
    int gradient_check_samples = 8;
    std::uint64_t seed = 1;
    int monitor_centers = 16;
    // Dictionary radius as a fraction of the initial diameter.
    double monitor_eps = 0.25;
};

struct TraceRow {
    int iter = 0;
    double energy = 0.0;
    double step = 0.0;
    int projections = 0;
    int backtracks = 0;
    double grad_sup = 0.0;
    double aspect = 0.0;
    int flips = 0;
    int splits = 0;
    MonitorRecord monitor;
    ConvergenceRecord convergence;
};

struct DescentResult {
    SimplicialMesh mesh;
    std::vector<TraceRow> trace;
    std::string stop_reason;
    bool aborted = false;
    bool bounds_ok = true;
    bool monotone = true;
    int iterations = 0;
    double gradient_check = 0.0;
    double final_energy() const { return trace.empty() ? 0.0 : trace.back().energy; }
};

// Projected backtracking descent of the mesh energy inside `subset`
// (euclidean R^3 ambient). Preconditioned direction, trial points projected
// into the subset, Armijo acceptance against the projected displacement.
// Throws InputError when the initial mesh is not inside the subset.
DescentResult minimize(const SimplicialMesh& initial, const EnergySpec& spec, const CompactSubset& subset,
                       const DescentOptions& options = {},
                       const std::function<void(const TraceRow&)>& on_step = nullptr);

}  // namespace varimin
