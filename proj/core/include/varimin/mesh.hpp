#pragma once

#include "varimin/tensor.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace varimin {

// Pure simplicial complex of m-simplices with vertices in R^S.
// vertices: S x n (one column per vertex); simplices: (m+1) x k.
class SimplicialMesh {
public:
    SimplicialMesh() = default;
    SimplicialMesh(Mat vertices, Eigen::MatrixXi simplices, std::vector<std::int8_t> orientation = {});

    int ambient_dim() const { return static_cast<int>(vertices_.rows()); }
    int simplex_dim() const { return static_cast<int>(simplices_.rows()) - 1; }
    int num_vertices() const { return static_cast<int>(vertices_.cols()); }
    int num_simplices() const { return static_cast<int>(simplices_.cols()); }

    const Mat& vertices() const { return vertices_; }
    const Eigen::MatrixXi& simplices() const { return simplices_; }
    const std::vector<std::int8_t>& orientation() const { return orientation_; }

    Vec vertex(int i) const { return vertices_.col(i); }
    int index(int simplex, int corner) const { return simplices_(corner, simplex); }

    // Replaces vertex positions (same shape). Does not re-run degeneracy checks.
    void set_vertices(const Mat& v);

    // Bounding-box diagonal length.
    double scale() const;
    double simplex_volume(int k) const;
    double total_volume() const;
    // Orthogonal projector onto the affine tangent plane of simplex k.
    Mat simplex_projector(int k) const;

    // Throws DegenerateSimplexError on the first simplex with
    // m-volume <= 1e-14 * scale^m.
    void check_nondegenerate() const;

private:
    Mat vertices_;
    Eigen::MatrixXi simplices_;
    std::vector<std::int8_t> orientation_;
};

using EdgeKey = std::pair<int, int>;

inline EdgeKey make_edge(int a, int b) { return a < b ? EdgeKey{a, b} : EdgeKey{b, a}; }

// Triangle meshes: undirected edge -> incident faces.
std::map<EdgeKey, std::vector<int>> edge_faces(const SimplicialMesh& mesh);

// Edges with more than two incident faces (triangles) or vertices of degree
// above two (polylines).
std::vector<EdgeKey> non_manifold_edges(const SimplicialMesh& mesh);

// Throws NonManifoldError listing offending edges.
void require_manifold(const SimplicialMesh& mesh);

// Per-vertex flag: vertex lies on a boundary edge (triangles) or has a
// single incident segment (polylines).
std::vector<bool> boundary_vertices(const SimplicialMesh& mesh);

std::vector<std::vector<int>> vertex_simplices(const SimplicialMesh& mesh);

double max_edge_length(const SimplicialMesh& mesh);
double mean_edge_length(const SimplicialMesh& mesh);

// Largest circumradius / (2 inradius) over triangles; 1 for equilateral.
double max_aspect_ratio(const SimplicialMesh& mesh);

// Enclosed volume of a closed oriented triangle surface in R^3.
double enclosed_volume(const SimplicialMesh& mesh);

// 6 sqrt(pi) Vol / Area^{3/2}; 1 for a round sphere.
double sphericity(const SimplicialMesh& mesh);

// Disjoint union.
SimplicialMesh concatenate(const SimplicialMesh& a, const SimplicialMesh& b);

}  // namespace varimin
