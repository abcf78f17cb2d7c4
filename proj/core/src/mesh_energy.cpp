#include "varimin/mesh_energy.hpp"

#include "varimin/error.hpp"
#include "varimin/jet.hpp"
#include "varimin/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace varimin {

namespace {

template <class T>
struct P3 {
    T x, y, z;
};

template <class T> P3<T> operator-(const P3<T>& a, const P3<T>& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
template <class T> P3<T> operator+(const P3<T>& a, const P3<T>& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
template <class T> P3<T> operator*(const T& s, const P3<T>& a) { return {s * a.x, s * a.y, s * a.z}; }
template <class T> T dot(const P3<T>& a, const P3<T>& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
template <class T> P3<T> cross(const P3<T>& a, const P3<T>& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

using std::atan2;
using std::pow;
using std::sqrt;
using std::expm1;
using std::log1p;

template <class T>
T integrand_sq(const EnergySpec& spec, const T& s2) {
    if (spec.integrand == IntegrandKind::Power) return spec.C * pow(s2, 0.5 * spec.p);
    return spec.C * std::pow(spec.delta, spec.p) * expm1(0.5 * spec.p * log1p(s2 / (spec.delta * spec.delta)));
}

// Mixed area and cotangent area gradient at local vertex 0.
template <class T>
void area_gradient(const std::vector<P3<T>>& p, const std::vector<std::array<int, 3>>& tris, T& area, P3<T>& g) {
    area = T(0.0);
    g = {T(0.0), T(0.0), T(0.0)};
    for (const auto& t : tris) {
        P3<T> e1 = p[t[1]] - p[0], e2 = p[t[2]] - p[0], f = p[t[2]] - p[t[1]];
        T dbl = sqrt(dot(cross(e1, e2), cross(e1, e2)));
        T cv = dot(e1, e2) / dbl;
        T ca = (T(0.0) - dot(e1, f)) / dbl;
        T cb = dot(e2, f) / dbl;
        g = g - T(0.5) * (ca * e2 + cb * e1);
        if (cv < 0.0)
            area += dbl / 4.0;
        else if (ca < 0.0 || cb < 0.0)
            area += dbl / 8.0;
        else
            area += (dot(e1, e1) * cb + dot(e2, e2) * ca) / 8.0;
    }
}

template <class T>
P3<T> unit_normal(const P3<T>& a, const P3<T>& b, const P3<T>& c) {
    P3<T> n = cross(b - a, c - a);
    return (T(1.0) / sqrt(dot(n, n))) * n;
}

// |S|^2 for the edge-based shape operator at local vertex 0.
template <class T>
T shape_operator_sq(const std::vector<P3<T>>& p, const std::vector<std::array<int, 3>>& tris, const T& area) {
    P3<T> nsum{T(0.0), T(0.0), T(0.0)};
    for (const auto& t : tris) nsum = nsum + cross(p[t[1]] - p[0], p[t[2]] - p[0]);
    P3<T> n = (T(1.0) / sqrt(dot(nsum, nsum))) * nsum;
    T Tm[3][3] = {};
    const int k = static_cast<int>(p.size());
    for (int u = 1; u < k; ++u) {
        int f1 = -1, f2 = -1;
        for (int t = 0; t < static_cast<int>(tris.size()); ++t) {
            if (tris[t][1] == u) f1 = t;
            if (tris[t][2] == u) f2 = t;
        }
        if (f1 < 0 || f2 < 0) continue;
        P3<T> n1 = unit_normal(p[0], p[tris[f1][1]], p[tris[f1][2]]);
        P3<T> n2 = unit_normal(p[0], p[tris[f2][1]], p[tris[f2][2]]);
        P3<T> e = p[u] - p[0];
        T len = sqrt(dot(e, e));
        T beta = atan2(dot(cross(n1, n2), e) / len, dot(n1, n2));
        T c = T(0.5) * beta / len;
        T ev[3] = {e.x, e.y, e.z};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) Tm[i][j] += c * ev[i] * ev[j];
    }
    T nv[3] = {n.x, n.y, n.z};
    T P[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) P[i][j] = T(i == j ? 1.0 : 0.0) - nv[i] * nv[j];
    T PT[3][3], Tt[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            PT[i][j] = T(0.0);
            for (int l = 0; l < 3; ++l) PT[i][j] += P[i][l] * Tm[l][j];
        }
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Tt[i][j] = T(0.0);
            for (int l = 0; l < 3; ++l) Tt[i][j] += PT[i][l] * P[l][j];
            Tt[i][j] = Tt[i][j] / area;
        }
    T tr = Tt[0][0] + Tt[1][1] + Tt[2][2];
    T s2(0.0);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            T s = tr * P[i][j] - Tt[i][j];
            s2 += s * s;
        }
    return s2;
}

template <class T>
T star_energy(const EnergySpec& spec, const std::vector<P3<T>>& p, const std::vector<std::array<int, 3>>& tris) {
    T area;
    P3<T> g;
    area_gradient(p, tris, area, g);
    T s2 = spec.form == EnergyForm::H ? dot(g, g) / (area * area) : shape_operator_sq(p, tris, area);
    return area * integrand_sq(spec, s2);
}

}  // namespace

MeshEnergy::MeshEnergy(const SimplicialMesh& mesh, EnergySpec spec) : spec_(spec) {
    if (mesh.simplex_dim() != 2 || mesh.ambient_dim() != 3)
        throw PreconditionError("mesh energy needs a triangle surface in R^3");
    spec_.validate(2);
    require_manifold(mesh);
    pinned_ = boundary_vertices(mesh);
    auto incident = vertex_simplices(mesh);
    stars_.resize(static_cast<std::size_t>(mesh.num_vertices()));
    for (int v = 0; v < mesh.num_vertices(); ++v) {
        Star& s = stars_[v];
        s.verts.push_back(v);
        auto local = [&](int g) {
            auto it = std::find(s.verts.begin(), s.verts.end(), g);
            if (it != s.verts.end()) return static_cast<int>(it - s.verts.begin());
            s.verts.push_back(g);
            return static_cast<int>(s.verts.size()) - 1;
        };
        for (int f : incident[v]) {
            int c = 0;
            while (mesh.index(f, c) != v) ++c;
            int a = mesh.index(f, (c + 1) % 3), b = mesh.index(f, (c + 2) % 3);
            s.tris.push_back({0, local(a), local(b)});
        }
        if (s.tris.empty()) pinned_[v] = true;
    }
}

double MeshEnergy::vertex_energy(const Mat& X, int v) const {
    const Star& s = stars_[v];
    std::vector<P3<double>> p(s.verts.size());
    for (std::size_t i = 0; i < s.verts.size(); ++i) {
        auto c = X.col(s.verts[i]);
        p[i] = {c(0), c(1), c(2)};
    }
    return star_energy(spec_, p, s.tris);
}

std::vector<double> MeshEnergy::vertex_energies(const Mat& X) const {
    std::vector<double> e(stars_.size(), 0.0);
    parallel_for(stars_.size(), [&](std::size_t v) {
        if (!pinned_[v]) e[v] = vertex_energy(X, static_cast<int>(v));
    });
    return e;
}

double MeshEnergy::value(const Mat& X) const {
    double s = 0.0;
    for (double e : vertex_energies(X)) s += e;
    return s;
}

double MeshEnergy::value_and_gradient(const Mat& X, Mat& gradient) const {
    const std::size_t n = stars_.size();
    std::vector<double> e(n, 0.0);
    std::vector<std::vector<double>> local(n);
    constexpr int kChunk = 8;
    using J = Jet<3 * kChunk>;
    parallel_for(n, [&](std::size_t v) {
        if (pinned_[v]) return;
        const Star& s = stars_[v];
        const int k = static_cast<int>(s.verts.size());
        local[v].assign(static_cast<std::size_t>(3 * k), 0.0);
        std::vector<P3<J>> p(static_cast<std::size_t>(k));
        for (int first = 0; first < k; first += kChunk) {
            for (int i = 0; i < k; ++i) {
                auto c = X.col(s.verts[i]);
                if (i >= first && i < first + kChunk) {
                    const int o = 3 * (i - first);
                    p[i] = {J::variable(c(0), o), J::variable(c(1), o + 1), J::variable(c(2), o + 2)};
                } else {
                    p[i] = {J(c(0)), J(c(1)), J(c(2))};
                }
            }
            J E = star_energy(spec_, p, s.tris);
            e[v] = E.a;
            for (int i = first; i < std::min(k, first + kChunk); ++i)
                for (int c = 0; c < 3; ++c) local[v][3 * i + c] = E.v[3 * (i - first) + c];
        }
    });
    gradient = Mat::Zero(3, static_cast<Eigen::Index>(n));
    double total = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
        if (pinned_[v]) continue;
        total += e[v];
        const Star& s = stars_[v];
        for (std::size_t j = 0; j < s.verts.size(); ++j)
            for (int c = 0; c < 3; ++c) gradient(c, s.verts[j]) += local[v][3 * j + c];
    }
    for (std::size_t v = 0; v < n; ++v)
        if (pinned_[v]) gradient.col(static_cast<Eigen::Index>(v)).setZero();
    return total;
}

void MeshEnergy::vertex_curvature(const Mat& X, std::vector<double>& area, std::vector<double>& magnitude) const {
    const std::size_t n = stars_.size();
    area.assign(n, 0.0);
    magnitude.assign(n, 0.0);
    for (std::size_t v = 0; v < n; ++v) {
        if (pinned_[v]) continue;
        const Star& s = stars_[v];
        std::vector<P3<double>> p(s.verts.size());
        for (std::size_t i = 0; i < s.verts.size(); ++i) {
            auto c = X.col(s.verts[i]);
            p[i] = {c(0), c(1), c(2)};
        }
        double a;
        P3<double> g;
        area_gradient(p, s.tris, a, g);
        area[v] = a;
        magnitude[v] = spec_.form == EnergyForm::H ? std::sqrt(dot(g, g)) / a : std::sqrt(shape_operator_sq(p, s.tris, a));
    }
}

MeshEnergy::GradientCheck MeshEnergy::check_gradient(const Mat& X, int samples, std::uint64_t seed, double step_rel) const {
    std::vector<int> free;
    for (std::size_t v = 0; v < stars_.size(); ++v)
        if (!pinned_[v]) free.push_back(static_cast<int>(v));
    if (free.empty()) throw PreconditionError("gradient check needs at least one free vertex");
    std::mt19937_64 rng(seed);
    std::shuffle(free.begin(), free.end(), rng);
    free.resize(std::min<std::size_t>(free.size(), static_cast<std::size_t>(samples)));

    Vec lo = X.rowwise().minCoeff(), hi = X.rowwise().maxCoeff();
    const double h = step_rel * (hi - lo).norm();
    Mat G;
    value_and_gradient(X, G);
    // Vertices whose star contains v.
    std::vector<std::vector<int>> affected(stars_.size());
    for (std::size_t u = 0; u < stars_.size(); ++u)
        if (!pinned_[u])
            for (int w : stars_[u].verts) affected[w].push_back(static_cast<int>(u));

    double num = 0.0, den = 0.0;
    Mat Y = X;
    for (int v : free) {
        for (int c = 0; c < 3; ++c) {
            const double x0 = Y(c, v);
            auto local_sum = [&] {
                double s = 0.0;
                for (int u : affected[v]) s += vertex_energy(Y, u);
                return s;
            };
            Y(c, v) = x0 + h;
            double ep = local_sum();
            Y(c, v) = x0 - h;
            double em = local_sum();
            Y(c, v) = x0;
            double fd = (ep - em) / (2.0 * h);
            num += (fd - G(c, v)) * (fd - G(c, v));
            den += G(c, v) * G(c, v);
        }
    }
    GradientCheck out;
    out.vertices = static_cast<int>(free.size());
    out.step = h;
    out.rel_error = den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
    return out;
}

void require_gradient(const MeshEnergy::GradientCheck& check, double hard_limit) {
    if (!(check.rel_error <= hard_limit)) {
        std::ostringstream os;
        os << "shape gradient disagrees with finite differences: relative error " << check.rel_error << " > "
           << hard_limit;
        throw GradientCheckError(os.str(), check.rel_error);
    }
}

}  // namespace varimin
