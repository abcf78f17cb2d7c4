#pragma once

#include "varimin/tensor.hpp"

#include <memory>
#include <string>

namespace varimin {

// Embedded ambient manifold N in R^S with its tangent projector field Q(x)
// and derivative dQ(i,j,k) = dQ_ij/dx_k.
class AmbientManifold {
public:
    static constexpr double kOnManifoldTol = 1e-8;

    virtual ~AmbientManifold() = default;

    virtual std::string kind() const = 0;
    virtual std::string describe() const = 0;
    virtual int dimension() const = 0;
    virtual int embedding_dim() const = 0;
    virtual bool is_flat() const { return false; }
    // Number of trailing euclidean factor coordinates (product ambients).
    virtual int flat_factor_dim() const { return 0; }

    virtual Vec closest_point(const Vec& x) const = 0;
    double distance(const Vec& x) const { return (x - closest_point(x)).norm(); }

    // Checked versions: throw OffManifoldError beyond kOnManifoldTol.
    Mat tangent_projector(const Vec& x) const;
    Tensor3 dQ(const Vec& x) const;

    // Unchecked smooth extensions to a neighborhood of the manifold.
    virtual Mat projector_at(const Vec& x) const = 0;
    virtual Tensor3 dQ_at(const Vec& x) const = 0;

    // Orthonormal basis of the normal space at an on-manifold point (S x (S-n)).
    virtual Mat normal_basis(const Vec& x) const = 0;

    virtual double geodesic_distance(const Vec& a, const Vec& b) const = 0;

    // Upper bound C_N for |sum_jk P_jk dQ_ijk| over tangent m-planes.
    virtual double correction_bound(int m) const = 0;

    void require_on_manifold(const Vec& x) const;
};

using AmbientPtr = std::shared_ptr<const AmbientManifold>;

AmbientPtr make_euclidean(int S);
// Round sphere of intrinsic dimension n and radius r in R^{n+1}.
AmbientPtr make_sphere(int n, double r = 1.0, const Vec& center = Vec());
// base x R^s, coordinates ordered (base, extra).
AmbientPtr make_product(AmbientPtr base, int s);

// c_i = sum_jk P_jk dQ_ij/dx_k. Requires P Q(x) = P within 1e-8.
Vec curvature_correction(const AmbientManifold& ambient, const Vec& x, const Mat& P);

// Projector onto Q(x) applied to the plane of P, re-orthonormalized.
// Used to conform mesh-derived planes to the ambient bundle.
Mat tangentialize(const AmbientManifold& ambient, const Vec& x, const Mat& P);

}  // namespace varimin
