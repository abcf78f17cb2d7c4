#pragma once

#include "varimin/ambient.hpp"
#include "varimin/mesh.hpp"

#include <memory>
#include <vector>

namespace varimin {

// Orthogonal projector onto an m-plane of R^S.
class PlaneProjector {
public:
    PlaneProjector() = default;
    // Validates symmetry (1e-12), idempotence (1e-10) and integer trace (1e-10).
    explicit PlaneProjector(Mat entries);
    // Projector onto the column span of `basis` (full column rank).
    static PlaneProjector from_basis(const Mat& basis);

    const Mat& matrix() const { return P_; }
    int rank() const { return m_; }
    int dim() const { return static_cast<int>(P_.rows()); }
    double operator()(int i, int j) const { return P_(i, j); }

private:
    Mat P_;
    int m_ = 0;
};

struct VarifoldAtom {
    Vec x;
    PlaneProjector P;
    double w = 0.0;
};

// Simplex of the source mesh and barycentric coordinates of an atom.
struct AtomSource {
    int simplex = -1;
    Vec barycentric;
};

enum class QuadratureRule {
    Centroid,  // one node per simplex
    Gauss,     // 2 nodes per segment, 3 interior nodes per triangle
    Vertex,    // one node per simplex corner, weight volume/(m+1)
};

class DiscreteVarifold {
public:
    DiscreteVarifold() = default;
    DiscreteVarifold(int m, int S, std::vector<VarifoldAtom> atoms, AmbientPtr ambient = nullptr);

    int m() const { return m_; }
    int S() const { return S_; }
    int size() const { return static_cast<int>(atoms_.size()); }
    bool empty() const { return atoms_.empty(); }
    const VarifoldAtom& atom(int i) const { return atoms_[i]; }
    const std::vector<VarifoldAtom>& atoms() const { return atoms_; }

    double mass() const;
    // S x n matrix of atom points.
    Mat points() const;

    const AmbientPtr& ambient() const { return ambient_; }
    // Attaches an ambient after checking every atom: |x - pi(x)| <= 1e-8 and
    // P Q(x) = P within 1e-8. Throws OffManifoldError / PreconditionError.
    DiscreteVarifold with_ambient(AmbientPtr ambient) const;

    const std::shared_ptr<const SimplicialMesh>& mesh() const { return mesh_; }
    const std::vector<AtomSource>& sources() const { return sources_; }
    void set_provenance(std::shared_ptr<const SimplicialMesh> mesh, std::vector<AtomSource> sources);

    // Multiplies all weights by s > 0.
    DiscreteVarifold scaled_weights(double s) const;

private:
    int m_ = 0;
    int S_ = 0;
    std::vector<VarifoldAtom> atoms_;
    AmbientPtr ambient_;
    std::shared_ptr<const SimplicialMesh> mesh_;
    std::vector<AtomSource> sources_;
};

// multiplicity: empty (all 1) or one positive integer per simplex.
DiscreteVarifold varifold_from_mesh(const SimplicialMesh& mesh, QuadratureRule rule = QuadratureRule::Centroid,
                                    const std::vector<int>& multiplicity = {});

// Moves atom points onto the ambient (closest point) and planes into
// T_x N, then attaches the ambient. Provenance is kept.
DiscreteVarifold conform_to_ambient(const DiscreteVarifold& V, AmbientPtr ambient);

// Open-ball mass sum of w over |x - x0| < rho.
double ball_mass(const DiscreteVarifold& V, const Vec& x0, double rho);

enum class DiameterMetric { Euclidean, AmbientGeodesic };
double support_diameter(const DiscreteVarifold& V, DiameterMetric metric = DiameterMetric::Euclidean);

// Components of the graph joining atoms closer than link_radius, ordered by
// their smallest atom index. Provenance is dropped.
std::vector<DiscreteVarifold> connected_components(const DiscreteVarifold& V, double link_radius);

// Atom-list concatenation (same m, S). The ambient of `a` is kept.
DiscreteVarifold concatenate(const DiscreteVarifold& a, const DiscreteVarifold& b);

// x -> R x + t, P -> R P R^T.
DiscreteVarifold rigid_motion(const DiscreteVarifold& V, const Mat& R, const Vec& t);
// x -> s x (weights scale by s^m).
DiscreteVarifold dilate(const DiscreteVarifold& V, double s);

}  // namespace varimin
