#include "varimin/mesh.hpp"

#include "varimin/error.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace varimin {

namespace {

double factorial(int m) {
    double f = 1.0;
    for (int i = 2; i <= m; ++i) f *= i;
    return f;
}

Mat edge_matrix(const SimplicialMesh& mesh, int k) {
    const int m = mesh.simplex_dim();
    Mat E(mesh.ambient_dim(), m);
    Vec v0 = mesh.vertex(mesh.index(k, 0));
    for (int c = 1; c <= m; ++c) E.col(c - 1) = mesh.vertex(mesh.index(k, c)) - v0;
    return E;
}

}  // namespace

SimplicialMesh::SimplicialMesh(Mat vertices, Eigen::MatrixXi simplices, std::vector<std::int8_t> orientation)
    : vertices_(std::move(vertices)), simplices_(std::move(simplices)), orientation_(std::move(orientation)) {
    const int m = simplex_dim();
    if (m < 1) throw InputError("mesh simplices must have at least two vertices");
    if (m >= ambient_dim()) {
        std::ostringstream os;
        os << "simplex dimension " << m << " must be below ambient dimension " << ambient_dim();
        throw InputError(os.str());
    }
    if (orientation_.empty()) orientation_.assign(static_cast<std::size_t>(num_simplices()), 1);
    if (static_cast<int>(orientation_.size()) != num_simplices())
        throw InputError("orientation flag count does not match simplex count");
    for (int k = 0; k < num_simplices(); ++k) {
        for (int c = 0; c <= m; ++c) {
            int v = simplices_(c, k);
            if (v < 0 || v >= num_vertices()) {
                std::ostringstream os;
                os << "simplex " << k << " references vertex " << v << " out of range [0, " << num_vertices() << ")";
                throw InputError(os.str());
            }
        }
    }
    if (!vertices_.allFinite()) throw InputError("mesh has non-finite vertex coordinates");
}

void SimplicialMesh::set_vertices(const Mat& v) {
    if (v.rows() != vertices_.rows() || v.cols() != vertices_.cols())
        throw PreconditionError("set_vertices: shape mismatch");
    vertices_ = v;
}

double SimplicialMesh::scale() const {
    if (num_vertices() == 0) return 0.0;
    Vec lo = vertices_.rowwise().minCoeff();
    Vec hi = vertices_.rowwise().maxCoeff();
    return (hi - lo).norm();
}

double SimplicialMesh::simplex_volume(int k) const {
    Mat E = edge_matrix(*this, k);
    Mat G = E.transpose() * E;
    double det = G.determinant();
    return det > 0.0 ? std::sqrt(det) / factorial(simplex_dim()) : 0.0;
}

double SimplicialMesh::total_volume() const {
    double s = 0.0;
    for (int k = 0; k < num_simplices(); ++k) s += simplex_volume(k);
    return s;
}

Mat SimplicialMesh::simplex_projector(int k) const {
    Mat E = edge_matrix(*this, k);
    Eigen::HouseholderQR<Mat> qr(E);
    Mat U = qr.householderQ() * Mat::Identity(E.rows(), E.cols());
    Mat P = U * U.transpose();
    return 0.5 * (P + P.transpose());
}

void SimplicialMesh::check_nondegenerate() const {
    const double threshold = 1e-14 * std::pow(scale(), simplex_dim());
    for (int k = 0; k < num_simplices(); ++k) {
        double vol = simplex_volume(k);
        if (!(vol > threshold)) {
            std::ostringstream os;
            os << "degenerate simplex " << k << " (volume " << vol << ", threshold " << threshold << ")";
            throw DegenerateSimplexError(os.str(), k);
        }
    }
}

std::map<EdgeKey, std::vector<int>> edge_faces(const SimplicialMesh& mesh) {
    std::map<EdgeKey, std::vector<int>> out;
    if (mesh.simplex_dim() != 2) return out;
    for (int f = 0; f < mesh.num_simplices(); ++f) {
        for (int c = 0; c < 3; ++c) {
            out[make_edge(mesh.index(f, c), mesh.index(f, (c + 1) % 3))].push_back(f);
        }
    }
    return out;
}

std::vector<EdgeKey> non_manifold_edges(const SimplicialMesh& mesh) {
    std::vector<EdgeKey> bad;
    if (mesh.simplex_dim() == 2) {
        for (const auto& [e, faces] : edge_faces(mesh))
            if (faces.size() > 2) bad.push_back(e);
    } else if (mesh.simplex_dim() == 1) {
        auto inc = vertex_simplices(mesh);
        for (int v = 0; v < mesh.num_vertices(); ++v) {
            if (inc[v].size() > 2)
                for (int s : inc[v]) bad.push_back(make_edge(mesh.index(s, 0), mesh.index(s, 1)));
        }
    }
    return bad;
}

void require_manifold(const SimplicialMesh& mesh) {
    auto bad = non_manifold_edges(mesh);
    if (bad.empty()) return;
    std::ostringstream os;
    os << "non-manifold mesh: " << bad.size() << " offending edge(s):";
    for (std::size_t i = 0; i < bad.size() && i < 20; ++i) os << " (" << bad[i].first << "," << bad[i].second << ")";
    if (bad.size() > 20) os << " ...";
    throw NonManifoldError(os.str(), std::move(bad));
}

std::vector<bool> boundary_vertices(const SimplicialMesh& mesh) {
    std::vector<bool> out(static_cast<std::size_t>(mesh.num_vertices()), false);
    if (mesh.simplex_dim() == 2) {
        for (const auto& [e, faces] : edge_faces(mesh)) {
            if (faces.size() == 1) {
                out[e.first] = true;
                out[e.second] = true;
            }
        }
    } else if (mesh.simplex_dim() == 1) {
        auto inc = vertex_simplices(mesh);
        for (int v = 0; v < mesh.num_vertices(); ++v) out[v] = inc[v].size() == 1;
    }
    return out;
}

std::vector<std::vector<int>> vertex_simplices(const SimplicialMesh& mesh) {
    std::vector<std::vector<int>> out(static_cast<std::size_t>(mesh.num_vertices()));
    for (int k = 0; k < mesh.num_simplices(); ++k)
        for (int c = 0; c <= mesh.simplex_dim(); ++c) out[mesh.index(k, c)].push_back(k);
    return out;
}

double max_edge_length(const SimplicialMesh& mesh) {
    double best = 0.0;
    const int m = mesh.simplex_dim();
    for (int k = 0; k < mesh.num_simplices(); ++k)
        for (int a = 0; a <= m; ++a)
            for (int b = a + 1; b <= m; ++b)
                best = std::max(best, (mesh.vertex(mesh.index(k, a)) - mesh.vertex(mesh.index(k, b))).norm());
    return best;
}

double mean_edge_length(const SimplicialMesh& mesh) {
    double sum = 0.0;
    long count = 0;
    const int m = mesh.simplex_dim();
    for (int k = 0; k < mesh.num_simplices(); ++k)
        for (int a = 0; a <= m; ++a)
            for (int b = a + 1; b <= m; ++b) {
                sum += (mesh.vertex(mesh.index(k, a)) - mesh.vertex(mesh.index(k, b))).norm();
                ++count;
            }
    return count ? sum / static_cast<double>(count) : 0.0;
}

double max_aspect_ratio(const SimplicialMesh& mesh) {
    if (mesh.simplex_dim() != 2) return 1.0;
    double worst = 1.0;
    for (int f = 0; f < mesh.num_simplices(); ++f) {
        Vec p0 = mesh.vertex(mesh.index(f, 0));
        Vec p1 = mesh.vertex(mesh.index(f, 1));
        Vec p2 = mesh.vertex(mesh.index(f, 2));
        double a = (p1 - p2).norm(), b = (p2 - p0).norm(), c = (p0 - p1).norm();
        double area = mesh.simplex_volume(f);
        if (area <= 0.0) return std::numeric_limits<double>::infinity();
        double s = 0.5 * (a + b + c);
        worst = std::max(worst, a * b * c * s / (8.0 * area * area));
    }
    return worst;
}

double enclosed_volume(const SimplicialMesh& mesh) {
    if (mesh.simplex_dim() != 2 || mesh.ambient_dim() != 3)
        throw PreconditionError("enclosed_volume needs a triangle mesh in R^3");
    double vol = 0.0;
    for (int f = 0; f < mesh.num_simplices(); ++f) {
        Eigen::Vector3d a = mesh.vertex(mesh.index(f, 0));
        Eigen::Vector3d b = mesh.vertex(mesh.index(f, 1));
        Eigen::Vector3d c = mesh.vertex(mesh.index(f, 2));
        vol += mesh.orientation()[f] * a.dot(b.cross(c)) / 6.0;
    }
    return vol;
}

double sphericity(const SimplicialMesh& mesh) {
    double area = mesh.total_volume();
    return 6.0 * std::sqrt(std::numbers::pi) * std::abs(enclosed_volume(mesh)) / std::pow(area, 1.5);
}

SimplicialMesh concatenate(const SimplicialMesh& a, const SimplicialMesh& b) {
    if (a.ambient_dim() != b.ambient_dim() || a.simplex_dim() != b.simplex_dim())
        throw PreconditionError("concatenate: dimension mismatch");
    Mat V(a.ambient_dim(), a.num_vertices() + b.num_vertices());
    V << a.vertices(), b.vertices();
    Eigen::MatrixXi F(a.simplex_dim() + 1, a.num_simplices() + b.num_simplices());
    F << a.simplices(), (b.simplices().array() + a.num_vertices()).matrix();
    std::vector<std::int8_t> o = a.orientation();
    o.insert(o.end(), b.orientation().begin(), b.orientation().end());
    return SimplicialMesh(std::move(V), std::move(F), std::move(o));
}

}  // namespace varimin
