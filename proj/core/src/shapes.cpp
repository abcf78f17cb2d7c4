#include "varimin/shapes.hpp"

#include "varimin/error.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

namespace varimin {

namespace {

constexpr double kPi = std::numbers::pi;

SimplicialMesh from_lists(const std::vector<Eigen::Vector3d>& verts, const std::vector<std::array<int, 3>>& faces) {
    Mat V(3, static_cast<int>(verts.size()));
    for (std::size_t i = 0; i < verts.size(); ++i) V.col(static_cast<int>(i)) = verts[i];
    Eigen::MatrixXi F(3, static_cast<int>(faces.size()));
    for (std::size_t k = 0; k < faces.size(); ++k)
        for (int c = 0; c < 3; ++c) F(c, static_cast<int>(k)) = faces[k][c];
    return SimplicialMesh(std::move(V), std::move(F));
}

}  // namespace

SimplicialMesh icosphere(int level, double radius, const Eigen::Vector3d& center) {
    if (level < 0) throw PreconditionError("icosphere level must be >= 0");
    const double t = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<Eigen::Vector3d> verts = {
        {-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0},
        {0, -1, t}, {0, 1, t}, {0, -1, -t}, {0, 1, -t},
        {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1}};
    for (auto& v : verts) v.normalize();
    std::vector<std::array<int, 3>> faces = {
        {0, 11, 5}, {0, 5, 1}, {0, 1, 7}, {0, 7, 10}, {0, 10, 11},
        {1, 5, 9}, {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
        {3, 9, 4}, {3, 4, 2}, {3, 2, 6}, {3, 6, 8}, {3, 8, 9},
        {4, 9, 5}, {2, 4, 11}, {6, 2, 10}, {8, 6, 7}, {9, 8, 1}};
    for (int l = 0; l < level; ++l) {
        std::map<EdgeKey, int> midpoint;
        auto mid = [&](int a, int b) {
            EdgeKey e = make_edge(a, b);
            auto it = midpoint.find(e);
            if (it != midpoint.end()) return it->second;
            verts.push_back((verts[a] + verts[b]).normalized());
            int idx = static_cast<int>(verts.size()) - 1;
            midpoint.emplace(e, idx);
            return idx;
        };
        std::vector<std::array<int, 3>> next;
        next.reserve(faces.size() * 4);
        for (const auto& f : faces) {
            int ab = mid(f[0], f[1]), bc = mid(f[1], f[2]), ca = mid(f[2], f[0]);
            next.push_back({f[0], ab, ca});
            next.push_back({f[1], bc, ab});
            next.push_back({f[2], ca, bc});
            next.push_back({ab, bc, ca});
        }
        faces = std::move(next);
    }
    for (auto& v : verts) v = center + radius * v;
    return from_lists(verts, faces);
}

SimplicialMesh ellipsoid(int level, double a, double b, double c) {
    SimplicialMesh s = icosphere(level);
    Mat V = s.vertices();
    V.row(0) *= a;
    V.row(1) *= b;
    V.row(2) *= c;
    s.set_vertices(V);
    return s;
}

SimplicialMesh torus(double R, double r, int n_major, int n_minor) {
    if (n_major < 3 || n_minor < 3) throw PreconditionError("torus needs at least 3 samples per direction");
    if (n_major % 2) ++n_major;
    std::vector<Eigen::Vector3d> verts;
    verts.reserve(static_cast<std::size_t>(n_major) * n_minor);
    for (int i = 0; i < n_major; ++i) {
        double u = 2.0 * kPi * i / n_major;
        double shift = (i % 2) ? 0.5 : 0.0;
        for (int j = 0; j < n_minor; ++j) {
            double v = 2.0 * kPi * (j + shift) / n_minor;
            double rho = R + r * std::cos(v);
            verts.emplace_back(rho * std::cos(u), rho * std::sin(u), r * std::sin(v));
        }
    }
    auto id = [&](int i, int j) { return ((i + n_major) % n_major) * n_minor + (j + n_minor) % n_minor; };
    std::vector<std::array<int, 3>> faces;
    for (int i = 0; i < n_major; ++i) {
        for (int j = 0; j < n_minor; ++j) {
            if (i % 2 == 0) {
                faces.push_back({id(i, j), id(i + 1, j), id(i, j + 1)});
                faces.push_back({id(i, j + 1), id(i + 1, j), id(i + 1, j + 1)});
            } else {
                faces.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
                faces.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
            }
        }
    }
    return from_lists(verts, faces);
}

SimplicialMesh open_cylinder(double r, double length, int n_around, int n_along) {
    if (n_around < 3 || n_along < 1) throw PreconditionError("cylinder needs n_around >= 3 and n_along >= 1");
    std::vector<Eigen::Vector3d> verts;
    for (int i = 0; i <= n_along; ++i) {
        double z = -0.5 * length + length * i / n_along;
        double shift = (i % 2) ? 0.5 : 0.0;
        for (int j = 0; j < n_around; ++j) {
            double a = 2.0 * kPi * (j + shift) / n_around;
            verts.emplace_back(r * std::cos(a), r * std::sin(a), z);
        }
    }
    auto id = [&](int i, int j) { return i * n_around + (j + n_around) % n_around; };
    std::vector<std::array<int, 3>> faces;
    for (int i = 0; i < n_along; ++i) {
        for (int j = 0; j < n_around; ++j) {
            if (i % 2 == 0) {
                faces.push_back({id(i, j), id(i, j + 1), id(i + 1, j)});
                faces.push_back({id(i, j + 1), id(i + 1, j + 1), id(i + 1, j)});
            } else {
                faces.push_back({id(i, j), id(i + 1, j + 1), id(i + 1, j)});
                faces.push_back({id(i, j), id(i, j + 1), id(i + 1, j + 1)});
            }
        }
    }
    return from_lists(verts, faces);
}

SimplicialMesh flat_patch(int n, double size) {
    if (n < 1) throw PreconditionError("flat_patch needs n >= 1");
    std::vector<Eigen::Vector3d> verts;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j)
            verts.emplace_back(size * (static_cast<double>(j) / n - 0.5), size * (static_cast<double>(i) / n - 0.5), 0.0);
    auto id = [&](int i, int j) { return i * (n + 1) + j; };
    std::vector<std::array<int, 3>> faces;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if ((i + j) % 2 == 0) {
                faces.push_back({id(i, j), id(i, j + 1), id(i + 1, j + 1)});
                faces.push_back({id(i, j), id(i + 1, j + 1), id(i + 1, j)});
            } else {
                faces.push_back({id(i, j), id(i, j + 1), id(i + 1, j)});
                faces.push_back({id(i, j + 1), id(i + 1, j + 1), id(i + 1, j)});
            }
        }
    }
    return from_lists(verts, faces);
}

SimplicialMesh circle(int n, double r, int S) {
    if (n < 3) throw PreconditionError("circle needs at least 3 segments");
    if (S < 2) throw PreconditionError("circle needs S >= 2");
    Mat V = Mat::Zero(S, n);
    Eigen::MatrixXi F(2, n);
    for (int i = 0; i < n; ++i) {
        double a = 2.0 * kPi * i / n;
        V(0, i) = r * std::cos(a);
        V(1, i) = r * std::sin(a);
        F(0, i) = i;
        F(1, i) = (i + 1) % n;
    }
    return SimplicialMesh(std::move(V), std::move(F));
}

SimplicialMesh latitude_circle(int n, double theta) {
    SimplicialMesh c = circle(n, std::cos(theta), 3);
    Mat V = c.vertices();
    V.row(2).setConstant(std::sin(theta));
    c.set_vertices(V);
    return c;
}

SimplicialMesh embed(const SimplicialMesh& mesh, int S) {
    if (S < mesh.ambient_dim()) throw PreconditionError("embed: target dimension below current");
    Mat V = Mat::Zero(S, mesh.num_vertices());
    V.topRows(mesh.ambient_dim()) = mesh.vertices();
    return SimplicialMesh(std::move(V), mesh.simplices(), mesh.orientation());
}

SimplicialMesh transformed(const SimplicialMesh& mesh, double scale, const Vec& shift) {
    Mat V = (scale * mesh.vertices()).colwise() + shift;
    return SimplicialMesh(std::move(V), mesh.simplices(), mesh.orientation());
}

SimplicialMesh rigid_motion(const SimplicialMesh& mesh, const Mat& R, const Vec& t) {
    Mat V = (R * mesh.vertices()).colwise() + t;
    return SimplicialMesh(std::move(V), mesh.simplices(), mesh.orientation());
}

SimplicialMesh jitter(const SimplicialMesh& mesh, double amplitude, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    const double h = amplitude * mean_edge_length(mesh);
    Mat V = mesh.vertices();
    for (int i = 0; i < V.cols(); ++i)
        for (int d = 0; d < V.rows(); ++d) V(d, i) += h * U(rng);
    return SimplicialMesh(std::move(V), mesh.simplices(), mesh.orientation());
}

}  // namespace varimin
