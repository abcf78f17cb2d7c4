#include "varimin/first_variation.hpp"

#include "varimin/error.hpp"
#include "varimin/parallel.hpp"
#include "varimin/spatial_grid.hpp"

#include <cmath>
#include <sstream>

namespace varimin {

int CurvatureField::count_valid() const {
    int n = 0;
    for (auto f : flags) n += f == kFlagOk;
    return n;
}

CurvatureField make_curvature_field(int n, int S) {
    CurvatureField f;
    f.H.assign(static_cast<std::size_t>(n), Vec::Zero(S));
    f.H_N.assign(static_cast<std::size_t>(n), Vec::Zero(S));
    f.residual.assign(static_cast<std::size_t>(n), 0.0);
    f.flags.assign(static_cast<std::size_t>(n), kFlagOk);
    f.normal_part.assign(static_cast<std::size_t>(n), 0.0);
    return f;
}

double first_variation(const DiscreteVarifold& V, const TestVectorField& X) {
    if (X.dim() != V.S()) throw PreconditionError("test field dimension does not match varifold");
    double s = 0.0;
    const double R = X.support_radius();
    for (const auto& a : V.atoms()) {
        if (std::isfinite(R) && (a.x - X.center()).norm() >= R) continue;
        s += a.w * (a.P.matrix().cwiseProduct(X.jacobian(a.x).transpose())).sum();
    }
    return s;
}

double curvature_pairing(const DiscreteVarifold& V, const CurvatureField& field, const TestVectorField& X) {
    if (field.size() != V.size()) throw PreconditionError("curvature field size does not match varifold");
    double s = 0.0;
    for (int i = 0; i < V.size(); ++i) s += V.atom(i).w * field.H[i].dot(X.value(V.atom(i).x));
    return s;
}

std::vector<Vec> vertex_mean_curvature(const SimplicialMesh& mesh, std::vector<double>* vertex_area,
                                       std::vector<bool>* boundary) {
    const int m = mesh.simplex_dim();
    const int S = mesh.ambient_dim();
    if (m != 1 && m != 2) throw PreconditionError("mesh mean curvature needs segments or triangles");
    require_manifold(mesh);
    const int nv = mesh.num_vertices();
    std::vector<Vec> grad(static_cast<std::size_t>(nv), Vec::Zero(S));
    std::vector<double> area(static_cast<std::size_t>(nv), 0.0);
    if (m == 1) {
        for (int k = 0; k < mesh.num_simplices(); ++k) {
            int a = mesh.index(k, 0), b = mesh.index(k, 1);
            Vec e = mesh.vertex(a) - mesh.vertex(b);
            double len = e.norm();
            grad[a] += e / len;
            grad[b] -= e / len;
            area[a] += 0.5 * len;
            area[b] += 0.5 * len;
        }
    } else {
        for (int k = 0; k < mesh.num_simplices(); ++k) {
            int idx[3] = {mesh.index(k, 0), mesh.index(k, 1), mesh.index(k, 2)};
            Vec p[3] = {mesh.vertex(idx[0]), mesh.vertex(idx[1]), mesh.vertex(idx[2])};
            double cot[3], dots[3];
            double tri_area = 0.0;
            for (int c = 0; c < 3; ++c) {
                Vec u = p[(c + 1) % 3] - p[c];
                Vec v = p[(c + 2) % 3] - p[c];
                double uv = u.dot(v);
                double cross = std::sqrt(std::max(0.0, u.squaredNorm() * v.squaredNorm() - uv * uv));
                dots[c] = uv;
                cot[c] = uv / cross;
                tri_area = 0.5 * cross;
            }
            bool obtuse = dots[0] < 0.0 || dots[1] < 0.0 || dots[2] < 0.0;
            for (int c = 0; c < 3; ++c) {
                int j = (c + 1) % 3, l = (c + 2) % 3;
                // Edge c-j is opposite corner l, edge c-l opposite corner j.
                grad[idx[c]] += 0.5 * (cot[l] * (p[c] - p[j]) + cot[j] * (p[c] - p[l]));
                if (!obtuse) {
                    area[idx[c]] += 0.125 * (cot[l] * (p[c] - p[j]).squaredNorm() + cot[j] * (p[c] - p[l]).squaredNorm());
                } else if (dots[c] < 0.0) {
                    area[idx[c]] += 0.5 * tri_area;
                } else {
                    area[idx[c]] += 0.25 * tri_area;
                }
            }
        }
    }
    std::vector<bool> bnd = boundary_vertices(mesh);
    std::vector<Vec> H(static_cast<std::size_t>(nv));
    for (int v = 0; v < nv; ++v) H[v] = area[v] > 0.0 ? Vec(-grad[v] / area[v]) : Vec::Zero(S);
    if (vertex_area) *vertex_area = std::move(area);
    if (boundary) *boundary = std::move(bnd);
    return H;
}

CurvatureField mean_curvature_mesh(const DiscreteVarifold& V) {
    if (!V.mesh()) throw PreconditionError("mean_curvature_mesh needs a mesh-backed varifold");
    const SimplicialMesh& mesh = *V.mesh();
    std::vector<bool> boundary;
    std::vector<Vec> Hv = vertex_mean_curvature(mesh, nullptr, &boundary);
    CurvatureField f = make_curvature_field(V.size(), V.S());
    for (int i = 0; i < V.size(); ++i) {
        const AtomSource& src = V.sources()[i];
        Vec h = Vec::Zero(V.S());
        bool touches_boundary = false;
        for (int c = 0; c <= mesh.simplex_dim(); ++c) {
            int v = mesh.index(src.simplex, c);
            h += src.barycentric(c) * Hv[v];
            touches_boundary = touches_boundary || boundary[v];
        }
        f.H[i] = h;
        f.H_N[i] = h;
        f.residual[i] = (V.atom(i).P.matrix() * h).norm();
        if (touches_boundary) f.flags[i] |= kFlagBoundary;
    }
    return f;
}

CurvatureField mean_curvature_kernel(const DiscreteVarifold& V, double eps) {
    if (!(eps > 0.0)) throw PreconditionError("kernel radius must be positive");
    CurvatureField f = make_curvature_field(V.size(), V.S());
    Mat X = V.points();
    SpatialGrid grid(X, eps);
    const double inv_eps2 = 1.0 / (eps * eps);
    parallel_for(static_cast<std::size_t>(V.size()), [&](std::size_t ii) {
        const int i = static_cast<int>(ii);
        const Vec& x0 = V.atom(i).x;
        auto nbr = grid.within(x0, eps);
        Vec num = Vec::Zero(V.S());
        double den = 0.0;
        int others = 0;
        for (int j : nbr) {
            const auto& a = V.atom(j);
            Vec y = a.x - x0;
            double t = 1.0 - y.squaredNorm() * inv_eps2;
            den += a.w * t * t;
            // grad rho = -4 (1 - |y|^2/eps^2) y / eps^2
            num += a.w * (-4.0 * t * inv_eps2) * (a.P.matrix() * y);
            others += j != i;
        }
        if (others == 0 || !(den > 0.0)) {
            f.flags[i] |= kFlagEmptyNeighborhood;
            return;
        }
        f.H[i] = -num / den;
        f.H_N[i] = f.H[i];
        f.residual[i] = (V.atom(i).P.matrix() * f.H[i]).norm();
    });
    return f;
}

CurvatureField relative_mean_curvature(const DiscreteVarifold& V, const CurvatureField& field) {
    if (!V.ambient()) throw PreconditionError("relative_mean_curvature needs an attached ambient");
    if (field.size() != V.size()) throw PreconditionError("curvature field size does not match varifold");
    CurvatureField out = field;
    const AmbientManifold& amb = *V.ambient();
    for (int i = 0; i < V.size(); ++i) {
        const auto& a = V.atom(i);
        Vec c = curvature_correction(amb, a.x, a.P.matrix());
        out.H_N[i] = field.H[i] - c;
        Mat Q = amb.projector_at(a.x);
        out.normal_part[i] = (out.H_N[i] - Q * out.H_N[i]).norm();
    }
    return out;
}

double lp_norm(const CurvatureField& field, const DiscreteVarifold& V, double p, CurvatureComponent which, bool skip_flagged) {
    if (!(p >= 1.0)) throw PreconditionError("lp_norm needs p >= 1");
    if (field.size() != V.size()) throw PreconditionError("curvature field size does not match varifold");
    double s = 0.0;
    for (int i = 0; i < V.size(); ++i) {
        if (!field.valid(i)) {
            if (skip_flagged) continue;
            std::ostringstream os;
            os << "atom " << i << " has no curvature value (flags " << int(field.flags[i]) << ")";
            throw PreconditionError(os.str());
        }
        const Vec& h = which == CurvatureComponent::H ? field.H[i] : field.H_N[i];
        s += V.atom(i).w * std::pow(h.norm(), p);
    }
    return s;
}

}  // namespace varimin
