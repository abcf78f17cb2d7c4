#include "varimin/ambient.hpp"

#include "varimin/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace varimin {

namespace {

class Euclidean final : public AmbientManifold {
public:
    explicit Euclidean(int S) : S_(S) {}
    std::string kind() const override { return "euclidean"; }
    std::string describe() const override { return "euclidean(" + std::to_string(S_) + ")"; }
    int dimension() const override { return S_; }
    int embedding_dim() const override { return S_; }
    bool is_flat() const override { return true; }
    Vec closest_point(const Vec& x) const override { return x; }
    Mat projector_at(const Vec&) const override { return Mat::Identity(S_, S_); }
    Tensor3 dQ_at(const Vec&) const override { return Tensor3(S_); }
    Mat normal_basis(const Vec&) const override { return Mat(S_, 0); }
    double geodesic_distance(const Vec& a, const Vec& b) const override { return (a - b).norm(); }
    double correction_bound(int) const override { return 0.0; }

private:
    int S_;
};

class Sphere final : public AmbientManifold {
public:
    Sphere(int n, double r, Vec c) : n_(n), r_(r), c_(std::move(c)) {}
    std::string kind() const override { return "sphere"; }
    std::string describe() const override {
        std::ostringstream os;
        os << "sphere(n=" << n_ << ", r=" << r_ << ")";
        return os.str();
    }
    int dimension() const override { return n_; }
    int embedding_dim() const override { return n_ + 1; }

    Vec closest_point(const Vec& x) const override {
        Vec y = x - c_;
        double ny = y.norm();
        if (ny == 0.0) {
            Vec e = Vec::Zero(n_ + 1);
            e(0) = r_;
            return c_ + e;
        }
        return c_ + (r_ / ny) * y;
    }

    Mat projector_at(const Vec& x) const override {
        Vec y = x - c_;
        return Mat::Identity(n_ + 1, n_ + 1) - y * y.transpose() / y.squaredNorm();
    }

    Tensor3 dQ_at(const Vec& x) const override {
        const int S = n_ + 1;
        Vec y = x - c_;
        double s = y.squaredNorm();
        Tensor3 T(S);
        for (int i = 0; i < S; ++i)
            for (int j = 0; j < S; ++j)
                for (int k = 0; k < S; ++k) {
                    double v = 2.0 * y(i) * y(j) * y(k) / (s * s);
                    if (i == k) v -= y(j) / s;
                    if (j == k) v -= y(i) / s;
                    T(i, j, k) = v;
                }
        return T;
    }

    Mat normal_basis(const Vec& x) const override { return (x - c_).normalized(); }

    double geodesic_distance(const Vec& a, const Vec& b) const override {
        Vec u = (a - c_).normalized(), v = (b - c_).normalized();
        // atan2 form stays accurate for nearly parallel and antipodal pairs.
        return r_ * 2.0 * std::atan2((u - v).norm(), (u + v).norm());
    }

    double correction_bound(int m) const override { return std::min(m, n_) / r_; }

private:
    int n_;
    double r_;
    Vec c_;
};

class Product final : public AmbientManifold {
public:
    Product(AmbientPtr base, int s) : base_(std::move(base)), s_(s) {}
    std::string kind() const override { return "product"; }
    std::string describe() const override { return base_->describe() + " x R^" + std::to_string(s_); }
    int dimension() const override { return base_->dimension() + s_; }
    int embedding_dim() const override { return base_->embedding_dim() + s_; }
    bool is_flat() const override { return base_->is_flat(); }
    int flat_factor_dim() const override { return s_; }

    Vec closest_point(const Vec& x) const override {
        Vec out = x;
        out.head(base_->embedding_dim()) = base_->closest_point(x.head(base_->embedding_dim()));
        return out;
    }

    Mat projector_at(const Vec& x) const override {
        const int Sb = base_->embedding_dim();
        Mat Q = Mat::Identity(Sb + s_, Sb + s_);
        Q.topLeftCorner(Sb, Sb) = base_->projector_at(x.head(Sb));
        return Q;
    }

    Tensor3 dQ_at(const Vec& x) const override {
        const int Sb = base_->embedding_dim();
        Tensor3 b = base_->dQ_at(x.head(Sb));
        Tensor3 T(Sb + s_);
        for (int i = 0; i < Sb; ++i)
            for (int j = 0; j < Sb; ++j)
                for (int k = 0; k < Sb; ++k) T(i, j, k) = b(i, j, k);
        return T;
    }

    Mat normal_basis(const Vec& x) const override {
        const int Sb = base_->embedding_dim();
        Mat nb = base_->normal_basis(x.head(Sb));
        Mat out = Mat::Zero(Sb + s_, nb.cols());
        out.topRows(Sb) = nb;
        return out;
    }

    double geodesic_distance(const Vec& a, const Vec& b) const override {
        const int Sb = base_->embedding_dim();
        double db = base_->geodesic_distance(a.head(Sb), b.head(Sb));
        double de = (a.tail(s_) - b.tail(s_)).norm();
        return std::sqrt(db * db + de * de);
    }

    double correction_bound(int m) const override {
        return base_->correction_bound(std::min(m, base_->dimension()));
    }

private:
    AmbientPtr base_;
    int s_;
};

}  // namespace

void AmbientManifold::require_on_manifold(const Vec& x) const {
    if (x.size() != embedding_dim()) {
        std::ostringstream os;
        os << "point has dimension " << x.size() << ", ambient " << describe() << " expects " << embedding_dim();
        throw PreconditionError(os.str());
    }
    double d = distance(x);
    if (d > kOnManifoldTol) {
        std::ostringstream os;
        os << "point is off the ambient manifold " << describe() << " by " << d;
        throw OffManifoldError(os.str(), d);
    }
}

Mat AmbientManifold::tangent_projector(const Vec& x) const {
    require_on_manifold(x);
    return projector_at(x);
}

Tensor3 AmbientManifold::dQ(const Vec& x) const {
    require_on_manifold(x);
    return dQ_at(x);
}

AmbientPtr make_euclidean(int S) {
    if (S < 1) throw PreconditionError("euclidean ambient needs S >= 1");
    return std::make_shared<Euclidean>(S);
}

AmbientPtr make_sphere(int n, double r, const Vec& center) {
    if (n < 1) throw PreconditionError("sphere ambient needs n >= 1");
    if (!(r > 0.0)) throw PreconditionError("sphere radius must be positive");
    Vec c = center.size() == 0 ? Vec::Zero(n + 1) : center;
    if (c.size() != n + 1) throw PreconditionError("sphere center has wrong dimension");
    return std::make_shared<Sphere>(n, r, std::move(c));
}

AmbientPtr make_product(AmbientPtr base, int s) {
    if (!base) throw PreconditionError("product ambient needs a base manifold");
    if (s < 1) throw PreconditionError("product ambient needs s >= 1");
    return std::make_shared<Product>(std::move(base), s);
}

Vec curvature_correction(const AmbientManifold& ambient, const Vec& x, const Mat& P) {
    Mat Q = ambient.tangent_projector(x);
    double defect = (P * Q - P).cwiseAbs().maxCoeff();
    if (defect > 1e-8) {
        std::ostringstream os;
        os << "plane is not tangent to " << ambient.describe() << " (|PQ - P| = " << defect << ")";
        throw PreconditionError(os.str());
    }
    Tensor3 dQ = ambient.dQ_at(x);
    const int S = ambient.embedding_dim();
    Vec c = Vec::Zero(S);
    for (int i = 0; i < S; ++i)
        for (int j = 0; j < S; ++j)
            for (int k = 0; k < S; ++k) c(i) += P(j, k) * dQ(i, j, k);
    return c;
}

Mat tangentialize(const AmbientManifold& ambient, const Vec& x, const Mat& P) {
    Mat Q = ambient.projector_at(x);
    Eigen::SelfAdjointEigenSolver<Mat> es(P);
    const int S = static_cast<int>(P.rows());
    const int m = static_cast<int>(std::lround(P.trace()));
    Mat U = es.eigenvectors().rightCols(m);
    Mat W = Q * U;
    Eigen::HouseholderQR<Mat> qr(W);
    Mat O = qr.householderQ() * Mat::Identity(S, m);
    Mat out = O * O.transpose();
    return 0.5 * (out + out.transpose());
}

}  // namespace varimin
