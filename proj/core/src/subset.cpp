#include "varimin/subset.hpp"

#include "varimin/error.hpp"

#include <cmath>
#include <sstream>

namespace varimin {

CompactSubset::CompactSubset(Kind kind, AmbientPtr ambient, double r_in, double r_out, Vec center, int extra_dim)
    : kind_(kind), ambient_(std::move(ambient)), r_in_(r_in), r_out_(r_out), center_(std::move(center)), extra_dim_(extra_dim) {}

CompactSubset CompactSubset::ball(AmbientPtr ambient, double R, Vec center) {
    if (!ambient) throw PreconditionError("subset needs an ambient");
    if (!(R > 0.0)) throw PreconditionError("ball radius must be positive");
    if (center.size() == 0) center = Vec::Zero(ambient->embedding_dim());
    if (center.size() != ambient->embedding_dim()) throw PreconditionError("ball center has wrong dimension");
    return CompactSubset(Kind::Ball, std::move(ambient), 0.0, R, std::move(center), 0);
}

CompactSubset CompactSubset::shell(AmbientPtr ambient, double R_in, double R_out, Vec center) {
    if (!ambient) throw PreconditionError("subset needs an ambient");
    if (!(R_in >= 0.0) || !(R_out > R_in)) throw PreconditionError("shell needs 0 <= R_in < R_out");
    if (center.size() == 0) center = Vec::Zero(ambient->embedding_dim());
    if (center.size() != ambient->embedding_dim()) throw PreconditionError("shell center has wrong dimension");
    return CompactSubset(Kind::Shell, std::move(ambient), R_in, R_out, std::move(center), 0);
}

CompactSubset CompactSubset::tube(AmbientPtr product_ambient, double radius) {
    if (!product_ambient || product_ambient->flat_factor_dim() == 0)
        throw PreconditionError("tube subset needs a product ambient N x R^s");
    if (!(radius > 0.0)) throw PreconditionError("tube radius must be positive");
    int s = product_ambient->flat_factor_dim();
    Vec c = Vec::Zero(product_ambient->embedding_dim());
    return CompactSubset(Kind::Tube, std::move(product_ambient), 0.0, radius, std::move(c), s);
}

std::string CompactSubset::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case Kind::Ball: os << "ball(R=" << r_out_ << ")"; break;
        case Kind::Shell: os << "shell(" << r_in_ << ", " << r_out_ << ")"; break;
        case Kind::Tube: os << "tube(r=" << r_out_ << ")"; break;
    }
    os << " in " << ambient_->describe();
    return os.str();
}

bool CompactSubset::has_interior() const {
    return r_out_ > r_in_ && r_out_ > 0.0;
}

bool CompactSubset::contains(const Vec& x, double tol) const {
    if (ambient_->distance(x) > AmbientManifold::kOnManifoldTol + tol) return false;
    if (kind_ == Kind::Tube) return x.tail(extra_dim_).norm() <= r_out_ + tol;
    double r = (x - center_).norm();
    return r <= r_out_ + tol && r >= r_in_ - tol;
}

Vec CompactSubset::project(const Vec& x) const {
    Vec p = ambient_->closest_point(x);
    if (kind_ == Kind::Tube) {
        auto y = p.tail(extra_dim_);
        double ny = y.norm();
        if (ny > r_out_) y *= r_out_ / ny;
        return p;
    }
    Vec d = p - center_;
    double r = d.norm();
    if (r <= r_out_ && r >= r_in_) return p;
    if (!ambient_->is_flat())
        throw PreconditionError("projection onto " + describe() + " leaves the ambient; only interior targets are supported on curved ambients");
    if (r == 0.0) {
        d = Vec::Zero(d.size());
        d(0) = 1.0;
        r = 1.0;
    }
    double target = r > r_out_ ? r_out_ : r_in_;
    return center_ + (target / r) * d;
}

Vec CompactSubset::project_to_boundary(const Vec& x) const {
    Vec p = ambient_->closest_point(x);
    if (kind_ == Kind::Tube) {
        auto y = p.tail(extra_dim_);
        double ny = y.norm();
        if (ny == 0.0) {
            y.setZero();
            y(0) = r_out_;
        } else {
            y *= r_out_ / ny;
        }
        return p;
    }
    if (!ambient_->is_flat()) throw PreconditionError("boundary projection on curved ambients is not supported");
    Vec d = p - center_;
    double r = d.norm();
    if (r == 0.0) {
        d = Vec::Zero(d.size());
        d(0) = 1.0;
        r = 1.0;
    }
    double target = r_out_;
    if (kind_ == Kind::Shell && std::abs(r - r_in_) < std::abs(r - r_out_)) target = r_in_;
    return center_ + (target / r) * d;
}

Vec CompactSubset::outward_normal(const Vec& x, double tol) const {
    Vec n = Vec::Zero(x.size());
    if (kind_ == Kind::Tube) {
        auto y = x.tail(extra_dim_);
        double ny = y.norm();
        if (ny >= r_out_ - tol && ny > 0.0) n.tail(extra_dim_) = y / ny;
        return n;
    }
    Vec d = x - center_;
    double r = d.norm();
    if (r >= r_out_ - tol && r > 0.0) return d / r;
    if (kind_ == Kind::Shell && r <= r_in_ + tol && r > 0.0) return -d / r;
    return n;
}

}  // namespace varimin
