#include "varimin/descent.hpp"

#include "varimin/error.hpp"
#include "varimin/first_variation.hpp"
#include "varimin/parallel.hpp"

#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace varimin {

namespace {

double vertex_diameter(const Mat& X) {
    const Eigen::Index n = X.cols();
    std::vector<double> best(static_cast<std::size_t>(n), 0.0);
    parallel_for(best.size(), [&](std::size_t i) {
        double b = 0.0;
        for (Eigen::Index j = static_cast<Eigen::Index>(i) + 1; j < n; ++j)
            b = std::max(b, (X.col(j) - X.col(static_cast<Eigen::Index>(i))).squaredNorm());
        best[i] = b;
    });
    return std::sqrt(best.empty() ? 0.0 : *std::max_element(best.begin(), best.end()));
}

bool has_degenerate(const SimplicialMesh& mesh) {
    const double tol = 1e-14 * mesh.scale() * mesh.scale();
    for (int k = 0; k < mesh.num_simplices(); ++k)
        if (!(mesh.simplex_volume(k) > tol)) return true;
    return false;
}

Mat vertex_normals(const SimplicialMesh& mesh) {
    Mat N = Mat::Zero(3, mesh.num_vertices());
    for (int f = 0; f < mesh.num_simplices(); ++f) {
        Eigen::Vector3d a = mesh.vertex(mesh.index(f, 0)), b = mesh.vertex(mesh.index(f, 1)),
                        c = mesh.vertex(mesh.index(f, 2));
        Eigen::Vector3d n = (b - a).cross(c - a);
        for (int k = 0; k < 3; ++k) N.col(mesh.index(f, k)) += n;
    }
    for (Eigen::Index v = 0; v < N.cols(); ++v) {
        double len = N.col(v).norm();
        if (len > 0.0) N.col(v) /= len;
    }
    return N;
}

// Cotangent Laplacian (positive semidefinite convention).
Eigen::SparseMatrix<double> cotan_laplacian(const SimplicialMesh& mesh) {
    std::vector<Eigen::Triplet<double>> trip;
    for (int f = 0; f < mesh.num_simplices(); ++f)
        for (int c = 0; c < 3; ++c) {
            int i = mesh.index(f, c), j = mesh.index(f, (c + 1) % 3), k = mesh.index(f, (c + 2) % 3);
            Eigen::Vector3d u = mesh.vertex(i) - mesh.vertex(k), v = mesh.vertex(j) - mesh.vertex(k);
            double w = 0.5 * u.dot(v) / u.cross(v).norm();
            trip.emplace_back(i, j, -w);
            trip.emplace_back(j, i, -w);
            trip.emplace_back(i, i, w);
            trip.emplace_back(j, j, w);
        }
    Eigen::SparseMatrix<double> L(mesh.num_vertices(), mesh.num_vertices());
    L.setFromTriplets(trip.begin(), trip.end());
    return L;
}

// Orthonormal columns spanning the admissible motion of each vertex.
std::vector<Mat> motion_bases(const SimplicialMesh& mesh, const Mat& G, const CompactSubset& subset,
                              const std::vector<bool>& pinned, bool normal_only) {
    const int n = mesh.num_vertices();
    Mat N = normal_only ? vertex_normals(mesh) : Mat();
    std::vector<Mat> basis(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        Mat B = pinned[v] ? Mat(3, 0) : (normal_only ? Mat(N.col(v)) : Mat(Mat::Identity(3, 3)));
        Vec out = subset.outward_normal(mesh.vertex(v), 1e-9);
        // Active constraint points pushing outward lose their normal freedom.
        if (B.cols() && out.size() && out.squaredNorm() > 0.0 && G.col(v).dot(out) < 0.0) {
            if (normal_only) {
                basis[v] = Mat(3, 0);
                continue;
            }
            Mat R = B - out * (out.transpose() * B);
            Eigen::JacobiSVD<Mat> svd(R, Eigen::ComputeThinU);
            int rank = 0;
            for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
                if (svd.singularValues()(i) > 1e-6) ++rank;
            B = svd.matrixU().leftCols(rank);
        }
        basis[v] = B;
    }
    return basis;
}

double reduced_sup(const std::vector<Mat>& basis, const Mat& G) {
    double sup = 0.0;
    for (std::size_t v = 0; v < basis.size(); ++v)
        if (basis[v].cols()) sup = std::max(sup, (basis[v].transpose() * G.col(static_cast<Eigen::Index>(v))).norm());
    return sup;
}

// Minimizes d^T K d / 2 + g . d over d_v = B_v a_v, with K = M (lumped) or
// M + tau L M^{-1} L.
Mat preconditioned_direction(const SimplicialMesh& mesh, const Mat& G, const std::vector<double>& area,
                             const std::vector<bool>& pinned, const std::vector<Mat>& basis, Preconditioner kind,
                             double tau) {
    const int n = mesh.num_vertices();
    Vec mass(n), inv(n);
    for (int v = 0; v < n; ++v) {
        mass(v) = pinned[v] || !(area[v] > 0.0) ? 1.0 : area[v];
        inv(v) = 1.0 / mass(v);
    }
    Mat D = Mat::Zero(3, n);
    if (kind == Preconditioner::Lumped) {
        for (int v = 0; v < n; ++v)
            if (basis[v].cols()) D.col(v) = -basis[v] * (basis[v].transpose() * G.col(v)) * inv(v);
        return D;
    }
    Eigen::SparseMatrix<double> L = cotan_laplacian(mesh);
    Eigen::SparseMatrix<double> K = tau * (L * inv.asDiagonal() * L);
    K += Eigen::SparseMatrix<double>(mass.asDiagonal());

    std::vector<int> offset(static_cast<std::size_t>(n) + 1, 0);
    for (int v = 0; v < n; ++v) offset[v + 1] = offset[v] + static_cast<int>(basis[v].cols());
    const int k = offset[n];
    if (k == 0) return D;
    std::vector<Eigen::Triplet<double>> trip;
    for (int c = 0; c < K.outerSize(); ++c)
        for (Eigen::SparseMatrix<double>::InnerIterator it(K, c); it; ++it) {
            const int i = static_cast<int>(it.row()), j = static_cast<int>(it.col());
            if (!basis[i].cols() || !basis[j].cols()) continue;
            Mat blk = it.value() * basis[i].transpose() * basis[j];
            for (Eigen::Index r = 0; r < blk.rows(); ++r)
                for (Eigen::Index q = 0; q < blk.cols(); ++q)
                    trip.emplace_back(offset[i] + static_cast<int>(r), offset[j] + static_cast<int>(q), blk(r, q));
        }
    Eigen::SparseMatrix<double> R(k, k);
    R.setFromTriplets(trip.begin(), trip.end());
    Vec rhs(k);
    for (int v = 0; v < n; ++v)
        if (basis[v].cols()) rhs.segment(offset[v], basis[v].cols()) = -basis[v].transpose() * G.col(v);
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(R);
    if (solver.info() != Eigen::Success) throw RunAbort("preconditioner factorization failed");
    Vec a = solver.solve(rhs);
    for (int v = 0; v < n; ++v)
        if (basis[v].cols()) D.col(v) = basis[v] * a.segment(offset[v], basis[v].cols());
    return D;
}

struct Snapshot {
    DiscreteVarifold V;
    CurvatureField H;
};

Snapshot snapshot(const SimplicialMesh& mesh) {
    Snapshot s;
    s.V = varifold_from_mesh(mesh);
    s.H = mean_curvature_mesh(s.V);
    return s;
}

}  // namespace

DescentResult minimize(const SimplicialMesh& initial, const EnergySpec& spec, const CompactSubset& subset,
                       const DescentOptions& options, const std::function<void(const TraceRow&)>& on_step) {
    if (subset.ambient()->kind() != "euclidean" || subset.ambient()->embedding_dim() != 3)
        throw PreconditionError("minimize supports subsets of euclidean R^3 only");
    if (!subset.has_interior()) throw PreconditionError("constraint subset has empty interior");
    if (options.max_iter < 0) throw PreconditionError("max_iter must be nonnegative");
    for (int v = 0; v < initial.num_vertices(); ++v)
        if (!subset.contains(initial.vertex(v), 1e-9)) {
            std::ostringstream os;
            os << "initial mesh vertex " << v << " lies outside " << subset.describe();
            throw InputError(os.str());
        }
    initial.check_nondegenerate();

    DescentResult res;
    res.mesh = initial;
    auto energy = std::make_unique<MeshEnergy>(res.mesh, spec);
    Mat X = res.mesh.vertices();
    Mat G;
    double E = energy->value_and_gradient(X, G);
    {
        auto check = energy->check_gradient(X, options.gradient_check_samples, options.seed);
        res.gradient_check = check.rel_error;
        require_gradient(check);
    }

    const double diam0 = vertex_diameter(X);
    Snapshot prev = snapshot(res.mesh);
    const TestScalarDictionary dict(3, options.monitor_eps * diam0);
    const Mat centers = sample_centers(prev.V, options.monitor_centers, options.seed);
    const double corr = subset.ambient()->correction_bound(2);

    auto monitor = [&](const SimplicialMesh& mesh, double e) {
        double diam = vertex_diameter(mesh.vertices());
        return nondegeneracy_monitor(mesh.total_volume(), diam, e / spec.C, spec.form, spec.p, 2, 3, corr);
    };
    auto emit = [&](TraceRow row) {
        res.bounds_ok = res.bounds_ok && row.monitor.ok();
        if (!res.trace.empty() && row.energy > res.trace.back().energy) res.monotone = false;
        res.trace.push_back(row);
        if (on_step) on_step(res.trace.back());
    };

    std::vector<Mat> basis = motion_bases(res.mesh, G, subset, energy->pinned(), options.normal_only);
    TraceRow row0;
    row0.energy = E;
    row0.grad_sup = reduced_sup(basis, G);
    row0.aspect = max_aspect_ratio(res.mesh);
    row0.monitor = monitor(res.mesh, E);
    emit(row0);

    double step = options.initial_step;
    res.stop_reason = "max-iterations";
    for (int it = 1; it <= options.max_iter; ++it) {
        const double diam = res.trace.back().monitor.diameter;
        if (res.trace.back().grad_sup < options.tol * E / diam) {
            res.stop_reason = "converged";
            break;
        }
        std::vector<double> area, mag;
        energy->vertex_curvature(X, area, mag);
        const double tau = options.bilaplacian_scale * std::pow(diam, 4);
        const Mat D = preconditioned_direction(res.mesh, G, area, energy->pinned(), basis, options.preconditioner, tau);

        bool accepted = false;
        int backtracks = 0, projections = 0;
        Mat Xt;
        SimplicialMesh trial = res.mesh;
        for (; backtracks <= options.max_backtracks; ++backtracks) {
            Xt = X + step * D;
            projections = 0;
            for (Eigen::Index v = 0; v < Xt.cols(); ++v)
                if (!subset.contains(Xt.col(v), 0.0)) {
                    Xt.col(v) = subset.project(Xt.col(v));
                    ++projections;
                }
            trial.set_vertices(Xt);
            if (!has_degenerate(trial)) {
                double Et = energy->value(Xt);
                double decrease = (G.array() * (Xt - X).array()).sum();
                if (std::isfinite(Et) && Et <= E + options.armijo * decrease) {
                    accepted = true;
                    break;
                }
            }
            step *= 0.5;
        }
        if (!accepted) {
            res.stop_reason = "line-search-stalled";
            break;
        }
        if ((Xt - X).colwise().norm().maxCoeff() <= 1e-12 * diam) {
            res.stop_reason = "stalled";
            break;
        }
        const double used_step = step;
        step *= 2.0;
        res.mesh = trial;
        X = Xt;
        E = energy->value_and_gradient(X, G);

        TraceRow row;
        row.iter = it;
        row.step = used_step;
        row.projections = projections;
        row.backtracks = backtracks;
        row.aspect = max_aspect_ratio(res.mesh);

        if (options.remesh && (it % options.remesh_every == 0 || row.aspect > options.remesh_aspect)) {
            SimplicialMesh candidate = res.mesh;
            RemeshReport rr = remesh(candidate);
            if (rr.flips + rr.splits > 0) {
                auto cand_energy = std::make_unique<MeshEnergy>(candidate, spec);
                Mat Gc;
                double Ec = cand_energy->value_and_gradient(candidate.vertices(), Gc);
                if (Ec <= E) {
                    res.mesh = std::move(candidate);
                    energy = std::move(cand_energy);
                    X = res.mesh.vertices();
                    G = std::move(Gc);
                    E = Ec;
                    row.flips = rr.flips;
                    row.splits = rr.splits;
                    row.aspect = max_aspect_ratio(res.mesh);
                }
            }
        }

        basis = motion_bases(res.mesh, G, subset, energy->pinned(), options.normal_only);
        row.energy = E;
        row.grad_sup = reduced_sup(basis, G);
        row.monitor = monitor(res.mesh, E);
        Snapshot next = snapshot(res.mesh);
        row.convergence = convergence_monitor(prev.V, next.V, &prev.H, &next.H, dict, centers);
        prev = std::move(next);
        res.iterations = it;
        emit(row);

        if (!options.remesh && row.aspect > options.abort_aspect) {
            std::ostringstream os;
            os << "aborted: triangle aspect ratio " << row.aspect << " exceeds " << options.abort_aspect;
            res.stop_reason = os.str();
            res.aborted = true;
            break;
        }
    }
    return res;
}

}  // namespace varimin
