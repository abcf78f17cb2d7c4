#pragma once

#include "varimin/mesh.hpp"

#include <filesystem>
#include <iosfwd>

namespace varimin {

// OFF ("OFF" for R^3, "nOFF" with explicit dimension otherwise). Faces with
// two indices are segments (m = 1); polygons with more than three are fanned.
SimplicialMesh read_off(std::istream& in);
// OBJ: "v" lines, "f" faces (1-based, negative relative indices and
// v/vt/vn forms accepted), "l" polylines for m = 1.
SimplicialMesh read_obj(std::istream& in);

// Dispatches on the file extension (.off / .obj). Throws InputError naming
// the path when the file cannot be read.
SimplicialMesh read_mesh(const std::filesystem::path& path);

// 17 significant digits.
void write_off(std::ostream& out, const SimplicialMesh& mesh);
void write_obj(std::ostream& out, const SimplicialMesh& mesh);
void write_mesh(const std::filesystem::path& path, const SimplicialMesh& mesh);

}  // namespace varimin
