#pragma once

#include "varimin/ambient.hpp"
#include "varimin/descent.hpp"
#include "varimin/energy.hpp"
#include "varimin/mesh.hpp"
#include "varimin/subset.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace varimin {

inline constexpr int kConfigSchema = 1;

// "euclidean<S>", "sphere<n>" (unit, centered), "sphere<n>:r=<radius>", and
// products "<base>xR<s>" such as "sphere1xR1".
AmbientPtr parse_ambient_spec(const std::string& spec);

// Run configuration for `minimize`:
// {"schema": 1,
//  "energy": {"form": "H", "p": 3.0, "C": 1.0, "integrand": "power", "delta": 0.01},
//  "ambient": "euclidean3" | {"kind": "sphere", "n": 2, "r": 1.0, "center": [...]},
//  "subset": {"kind": "ball", "R": 1.0, "center": [...]}
//          | {"kind": "shell", "R_in": ..., "R_out": ...} | {"kind": "tube", "radius": ...},
//  "mesh": "init.off" | {"shape": "ellipsoid", "level": 3, "axes": [1, 1, 0.5]}
//          | {"shape": "icosphere", "level": 3, "radius": 1.0},
//  "max_iter": 5000, "tol": 1e-6, "seed": 1,
//  "descent": {"initial_step", "armijo", "remesh", "remesh_every", "abort_aspect",
//              "preconditioner": "bilaplacian" | "lumped", "bilaplacian_scale",
//              "normal_only", "gradient_check_samples"}}
// Relative mesh paths resolve against the config file's directory.
struct RunConfig {
    int schema = kConfigSchema;
    EnergySpec energy;
    AmbientPtr ambient;
    std::optional<CompactSubset> subset;
    std::string mesh_source;
    SimplicialMesh mesh;
    DescentOptions descent;
};

RunConfig parse_run_config(const std::string& text, const std::filesystem::path& base_dir = {});
RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace varimin
