#include "varimin/varifold.hpp"

#include "varimin/error.hpp"
#include "varimin/parallel.hpp"
#include "varimin/spatial_grid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace varimin {

namespace {

std::vector<std::pair<Vec, double>> quadrature_nodes(QuadratureRule rule, int m) {
    std::vector<std::pair<Vec, double>> nodes;
    switch (rule) {
        case QuadratureRule::Centroid:
            nodes.emplace_back(Vec::Constant(m + 1, 1.0 / (m + 1)), 1.0);
            break;
        case QuadratureRule::Vertex:
            for (int c = 0; c <= m; ++c) nodes.emplace_back(Vec::Unit(m + 1, c), 1.0 / (m + 1));
            break;
        case QuadratureRule::Gauss:
            if (m == 1) {
                const double a = 0.5 * (1.0 - 1.0 / std::sqrt(3.0));
                Vec b0(2), b1(2);
                b0 << 1.0 - a, a;
                b1 << a, 1.0 - a;
                nodes.emplace_back(b0, 0.5);
                nodes.emplace_back(b1, 0.5);
            } else if (m == 2) {
                for (int c = 0; c < 3; ++c) {
                    Vec b = Vec::Constant(3, 1.0 / 6.0);
                    b(c) = 2.0 / 3.0;
                    nodes.emplace_back(b, 1.0 / 3.0);
                }
            } else {
                throw PreconditionError("Gauss quadrature is defined for m = 1, 2 only");
            }
            break;
    }
    return nodes;
}

}  // namespace

PlaneProjector::PlaneProjector(Mat entries) : P_(std::move(entries)) {
    if (P_.rows() != P_.cols() || P_.rows() == 0) throw PreconditionError("projector must be a nonempty square matrix");
    double asym = (P_ - P_.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12) {
        std::ostringstream os;
        os << "projector not symmetric (max |P - P^T| = " << asym << ")";
        throw PreconditionError(os.str());
    }
    double idem = (P_ * P_ - P_).cwiseAbs().maxCoeff();
    if (idem > 1e-10) {
        std::ostringstream os;
        os << "projector not idempotent (max |P^2 - P| = " << idem << ")";
        throw PreconditionError(os.str());
    }
    double tr = P_.trace();
    m_ = static_cast<int>(std::lround(tr));
    if (std::abs(tr - m_) > 1e-10 || m_ < 1) {
        std::ostringstream os;
        os << "projector trace " << tr << " is not a positive integer";
        throw PreconditionError(os.str());
    }
}

PlaneProjector PlaneProjector::from_basis(const Mat& basis) {
    Eigen::HouseholderQR<Mat> qr(basis);
    Mat U = qr.householderQ() * Mat::Identity(basis.rows(), basis.cols());
    Mat P = U * U.transpose();
    return PlaneProjector(0.5 * (P + P.transpose()));
}

DiscreteVarifold::DiscreteVarifold(int m, int S, std::vector<VarifoldAtom> atoms, AmbientPtr ambient)
    : m_(m), S_(S), atoms_(std::move(atoms)) {
    if (m < 1 || m >= S) {
        std::ostringstream os;
        os << "varifold needs 1 <= m < S (got m = " << m << ", S = " << S << ")";
        throw PreconditionError(os.str());
    }
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
        const auto& a = atoms_[i];
        if (a.x.size() != S || a.P.dim() != S) throw PreconditionError("atom " + std::to_string(i) + " has wrong dimension");
        if (a.P.rank() != m) throw PreconditionError("atom " + std::to_string(i) + " plane has wrong rank");
        if (!(a.w > 0.0) || !std::isfinite(a.w)) throw PreconditionError("atom " + std::to_string(i) + " has non-positive weight");
    }
    if (ambient) *this = with_ambient(std::move(ambient));
}

double DiscreteVarifold::mass() const {
    double s = 0.0;
    for (const auto& a : atoms_) s += a.w;
    return s;
}

Mat DiscreteVarifold::points() const {
    Mat X(S_, size());
    for (int i = 0; i < size(); ++i) X.col(i) = atoms_[i].x;
    return X;
}

DiscreteVarifold DiscreteVarifold::with_ambient(AmbientPtr ambient) const {
    if (ambient && ambient->embedding_dim() != S_) throw PreconditionError("ambient embedding dimension does not match varifold");
    if (ambient) {
        for (int i = 0; i < size(); ++i) {
            const auto& a = atoms_[i];
            Mat Q = ambient->tangent_projector(a.x);
            double defect = (a.P.matrix() * Q - a.P.matrix()).cwiseAbs().maxCoeff();
            if (defect > 1e-8) {
                std::ostringstream os;
                os << "atom " << i << " plane is not tangent to " << ambient->describe() << " (|PQ - P| = " << defect << ")";
                throw PreconditionError(os.str());
            }
        }
    }
    DiscreteVarifold out = *this;
    out.ambient_ = std::move(ambient);
    return out;
}

void DiscreteVarifold::set_provenance(std::shared_ptr<const SimplicialMesh> mesh, std::vector<AtomSource> sources) {
    if (mesh && static_cast<int>(sources.size()) != size()) throw PreconditionError("provenance size mismatch");
    mesh_ = std::move(mesh);
    sources_ = std::move(sources);
}

DiscreteVarifold DiscreteVarifold::scaled_weights(double s) const {
    if (!(s > 0.0)) throw PreconditionError("weight scale must be positive");
    DiscreteVarifold out = *this;
    for (auto& a : out.atoms_) a.w *= s;
    return out;
}

DiscreteVarifold varifold_from_mesh(const SimplicialMesh& mesh, QuadratureRule rule, const std::vector<int>& multiplicity) {
    if (!multiplicity.empty() && static_cast<int>(multiplicity.size()) != mesh.num_simplices())
        throw PreconditionError("multiplicity must have one entry per simplex");
    for (int k : multiplicity)
        if (k < 1) throw PreconditionError("multiplicity must be >= 1");
    mesh.check_nondegenerate();
    const int m = mesh.simplex_dim();
    const int S = mesh.ambient_dim();
    auto nodes = quadrature_nodes(rule, m);
    std::vector<VarifoldAtom> atoms;
    std::vector<AtomSource> sources;
    atoms.reserve(nodes.size() * mesh.num_simplices());
    sources.reserve(atoms.capacity());
    for (int k = 0; k < mesh.num_simplices(); ++k) {
        PlaneProjector P(mesh.simplex_projector(k));
        double theta = multiplicity.empty() ? 1.0 : multiplicity[k];
        double vol = mesh.simplex_volume(k);
        for (const auto& [bary, frac] : nodes) {
            Vec x = Vec::Zero(S);
            for (int c = 0; c <= m; ++c) x += bary(c) * mesh.vertex(mesh.index(k, c));
            atoms.push_back({x, P, theta * vol * frac});
            sources.push_back({k, bary});
        }
    }
    DiscreteVarifold V(m, S, std::move(atoms));
    V.set_provenance(std::make_shared<const SimplicialMesh>(mesh), std::move(sources));
    return V;
}

DiscreteVarifold conform_to_ambient(const DiscreteVarifold& V, AmbientPtr ambient) {
    if (!ambient) throw PreconditionError("conform_to_ambient needs an ambient");
    std::vector<VarifoldAtom> atoms = V.atoms();
    for (auto& a : atoms) {
        a.x = ambient->closest_point(a.x);
        a.P = PlaneProjector(tangentialize(*ambient, a.x, a.P.matrix()));
    }
    DiscreteVarifold out(V.m(), V.S(), std::move(atoms), std::move(ambient));
    out.set_provenance(V.mesh(), V.sources());
    return out;
}

double ball_mass(const DiscreteVarifold& V, const Vec& x0, double rho) {
    if (!(rho > 0.0)) throw PreconditionError("ball_mass radius must be positive");
    double s = 0.0;
    for (const auto& a : V.atoms())
        if ((a.x - x0).norm() < rho) s += a.w;
    return s;
}

double support_diameter(const DiscreteVarifold& V, DiameterMetric metric) {
    if (V.empty()) throw PreconditionError("support_diameter of an empty varifold");
    if (metric == DiameterMetric::AmbientGeodesic && !V.ambient())
        throw PreconditionError("geodesic diameter requested but no ambient is attached");
    const int n = V.size();
    std::vector<double> row_max(static_cast<std::size_t>(n), 0.0);
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
        double best = 0.0;
        const Vec& xi = V.atom(static_cast<int>(i)).x;
        for (int j = static_cast<int>(i) + 1; j < n; ++j) {
            double d = metric == DiameterMetric::Euclidean ? (xi - V.atom(j).x).norm()
                                                           : V.ambient()->geodesic_distance(xi, V.atom(j).x);
            best = std::max(best, d);
        }
        row_max[i] = best;
    });
    return *std::max_element(row_max.begin(), row_max.end());
}

std::vector<DiscreteVarifold> connected_components(const DiscreteVarifold& V, double link_radius) {
    if (!(link_radius > 0.0)) throw PreconditionError("link_radius must be positive");
    const int n = V.size();
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int a) {
        while (parent[a] != a) {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        return a;
    };
    Mat X = V.points();
    SpatialGrid grid(X, link_radius);
    for (int i = 0; i < n; ++i) {
        for (int j : grid.within(X.col(i), link_radius)) {
            int a = find(i), b = find(j);
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
    }
    std::vector<std::vector<VarifoldAtom>> groups;
    std::vector<int> root_label(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < n; ++i) {
        int r = find(i);
        if (root_label[r] < 0) {
            root_label[r] = static_cast<int>(groups.size());
            groups.emplace_back();
        }
        groups[root_label[r]].push_back(V.atom(i));
    }
    std::vector<DiscreteVarifold> out;
    out.reserve(groups.size());
    for (auto& g : groups) out.emplace_back(V.m(), V.S(), std::move(g), V.ambient());
    return out;
}

DiscreteVarifold concatenate(const DiscreteVarifold& a, const DiscreteVarifold& b) {
    if (a.m() != b.m() || a.S() != b.S()) throw PreconditionError("concatenate: dimension mismatch");
    std::vector<VarifoldAtom> atoms = a.atoms();
    atoms.insert(atoms.end(), b.atoms().begin(), b.atoms().end());
    return DiscreteVarifold(a.m(), a.S(), std::move(atoms), a.ambient());
}

DiscreteVarifold rigid_motion(const DiscreteVarifold& V, const Mat& R, const Vec& t) {
    std::vector<VarifoldAtom> atoms;
    atoms.reserve(V.atoms().size());
    for (const auto& a : V.atoms()) {
        Mat P = R * a.P.matrix() * R.transpose();
        atoms.push_back({R * a.x + t, PlaneProjector(0.5 * (P + P.transpose())), a.w});
    }
    return DiscreteVarifold(V.m(), V.S(), std::move(atoms));
}

DiscreteVarifold dilate(const DiscreteVarifold& V, double s) {
    if (!(s > 0.0)) throw PreconditionError("dilation factor must be positive");
    std::vector<VarifoldAtom> atoms = V.atoms();
    const double ws = std::pow(s, V.m());
    for (auto& a : atoms) {
        a.x *= s;
        a.w *= ws;
    }
    DiscreteVarifold out(V.m(), V.S(), std::move(atoms));
    if (V.mesh()) out.set_provenance(std::make_shared<const SimplicialMesh>(SimplicialMesh(s * V.mesh()->vertices(), V.mesh()->simplices(), V.mesh()->orientation())), V.sources());
    return out;
}

}  // namespace varimin
