#pragma once

#include "varimin/mesh.hpp"

namespace varimin {

struct RemeshOptions {
    bool flips = true;
    bool splits = true;
    // Split edges longer than split_ratio x the reference length.
    double split_ratio = 1.7;
    // Reference edge length; <= 0 means the current mean edge length.
    double reference_length = 0.0;
    // Largest accepted change of total area per event, relative.
    double max_mass_change = 1e-3;
    int max_flip_passes = 5;
};

struct RemeshReport {
    int flips = 0;
    int splits = 0;
    double mass_before = 0.0;
    double mass_after = 0.0;
};

// Delaunay edge flips and midpoint splits on interior edges of an oriented
// triangle surface. Boundary edges are never touched.
RemeshReport remesh(SimplicialMesh& mesh, const RemeshOptions& options = {});

}  // namespace varimin
