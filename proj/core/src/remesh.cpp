#include "varimin/remesh.hpp"

#include "varimin/error.hpp"

#include <cmath>
#include <numbers>
#include <map>
#include <set>

namespace varimin {

namespace {

using Tri = std::array<int, 3>;

double tri_area(const Mat& X, const Tri& t) {
    Eigen::Vector3d a = X.col(t[0]), b = X.col(t[1]), c = X.col(t[2]);
    return 0.5 * (b - a).cross(c - a).norm();
}

Eigen::Vector3d tri_normal(const Mat& X, const Tri& t) {
    Eigen::Vector3d a = X.col(t[0]), b = X.col(t[1]), c = X.col(t[2]);
    return (b - a).cross(c - a);
}

double angle_at(const Mat& X, int apex, int u, int w) {
    Eigen::Vector3d a = X.col(u) - X.col(apex), b = X.col(w) - X.col(apex);
    return std::atan2(a.cross(b).norm(), a.dot(b));
}

// Corner index c with t[c] == v.
int corner(const Tri& t, int v) { return t[0] == v ? 0 : (t[1] == v ? 1 : 2); }

// Vertex of t not on edge (a, b).
int apex(const Tri& t, int a, int b) {
    for (int v : t)
        if (v != a && v != b) return v;
    return -1;
}

std::map<EdgeKey, std::vector<int>> build_edges(const std::vector<Tri>& tris) {
    std::map<EdgeKey, std::vector<int>> e;
    for (int f = 0; f < static_cast<int>(tris.size()); ++f)
        for (int c = 0; c < 3; ++c) e[make_edge(tris[f][c], tris[f][(c + 1) % 3])].push_back(f);
    return e;
}

}  // namespace

RemeshReport remesh(SimplicialMesh& mesh, const RemeshOptions& options) {
    if (mesh.simplex_dim() != 2 || mesh.ambient_dim() != 3) throw PreconditionError("remesh needs a triangle surface in R^3");
    Mat X = mesh.vertices();
    std::vector<Tri> tris(static_cast<std::size_t>(mesh.num_simplices()));
    for (int f = 0; f < mesh.num_simplices(); ++f) tris[f] = {mesh.index(f, 0), mesh.index(f, 1), mesh.index(f, 2)};
    RemeshReport rep;
    rep.mass_before = mesh.total_volume();
    double mass = rep.mass_before;

    if (options.splits) {
        double ref = options.reference_length > 0.0 ? options.reference_length : mean_edge_length(mesh);
        auto edges = build_edges(tris);
        std::vector<bool> touched(tris.size(), false);
        std::vector<Eigen::Vector3d> added;
        int next = static_cast<int>(X.cols());
        for (const auto& [key, faces] : edges) {
            if (faces.size() != 2 || touched[faces[0]] || touched[faces[1]]) continue;
            auto [a, b] = key;
            if ((X.col(a) - X.col(b)).norm() <= options.split_ratio * ref) continue;
            Eigen::Vector3d mid = 0.5 * (X.col(a) + X.col(b));
            int mv = next++;
            added.push_back(mid);
            for (int f : faces) {
                Tri t = tris[f];
                int c = corner(t, a);
                // Rotate so the edge reads (u, w) in orientation order.
                int u, w;
                if (t[(c + 1) % 3] == b) {
                    u = a;
                    w = b;
                } else {
                    u = b;
                    w = a;
                }
                int o = apex(t, a, b);
                tris[f] = {u, mv, o};
                tris.push_back({mv, w, o});
                touched[f] = true;
                touched.push_back(true);
            }
            ++rep.splits;
        }
        if (!added.empty()) {
            Mat Y(3, next);
            Y.leftCols(X.cols()) = X;
            for (std::size_t i = 0; i < added.size(); ++i) Y.col(X.cols() + static_cast<Eigen::Index>(i)) = added[i];
            X = std::move(Y);
        }
    }

    if (options.flips) {
        for (int pass = 0; pass < options.max_flip_passes; ++pass) {
            auto edges = build_edges(tris);
            std::set<EdgeKey> present;
            for (const auto& kv : edges) present.insert(kv.first);
            std::vector<int> valence(static_cast<std::size_t>(X.cols()), 0);
            for (const auto& kv : edges) {
                ++valence[kv.first.first];
                ++valence[kv.first.second];
            }
            std::vector<bool> touched(tris.size(), false);
            int flips = 0;
            for (const auto& [key, faces] : edges) {
                if (faces.size() != 2 || touched[faces[0]] || touched[faces[1]]) continue;
                auto [a, b] = key;
                const Tri& t0 = tris[faces[0]];
                const Tri& t1 = tris[faces[1]];
                int c = apex(t0, a, b), d = apex(t1, a, b);
                if (c == d || present.count(make_edge(c, d)) || valence[a] <= 3 || valence[b] <= 3) continue;
                if (angle_at(X, c, a, b) + angle_at(X, d, a, b) <= std::numbers::pi + 1e-12) continue;
                // Orientation: t0 holds the directed edge (u, w) and apex c.
                int cu = corner(t0, a);
                int u = t0[(cu + 1) % 3] == b ? a : b;
                int w = u == a ? b : a;
                Tri n0 = {u, d, c}, n1 = {d, w, c};
                double old_area = tri_area(X, t0) + tri_area(X, t1);
                double new_area = tri_area(X, n0) + tri_area(X, n1);
                if (std::abs(new_area - old_area) > options.max_mass_change * mass) continue;
                Eigen::Vector3d m0 = tri_normal(X, t0) + tri_normal(X, t1);
                if (tri_normal(X, n0).dot(m0) <= 0.0 || tri_normal(X, n1).dot(m0) <= 0.0) continue;
                tris[faces[0]] = n0;
                tris[faces[1]] = n1;
                touched[faces[0]] = touched[faces[1]] = true;
                present.erase(key);
                present.insert(make_edge(c, d));
                --valence[a];
                --valence[b];
                ++valence[c];
                ++valence[d];
                mass += new_area - old_area;
                ++flips;
            }
            rep.flips += flips;
            if (flips == 0) break;
        }
    }

    Eigen::MatrixXi S(3, static_cast<Eigen::Index>(tris.size()));
    for (std::size_t f = 0; f < tris.size(); ++f)
        for (int c = 0; c < 3; ++c) S(c, static_cast<Eigen::Index>(f)) = tris[f][c];
    mesh = SimplicialMesh(X, S);
    rep.mass_after = mesh.total_volume();
    return rep;
}

}  // namespace varimin
