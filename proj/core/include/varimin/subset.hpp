#pragma once

#include "varimin/ambient.hpp"

#include <string>

namespace varimin {

// Compact subset of an ambient manifold: ball, shell, or tube around the base
// factor of a product ambient ({(x, y) : |y| <= r}).
class CompactSubset {
public:
    enum class Kind { Ball, Shell, Tube };

    static CompactSubset ball(AmbientPtr ambient, double R, Vec center = Vec());
    static CompactSubset shell(AmbientPtr ambient, double R_in, double R_out, Vec center = Vec());
    static CompactSubset tube(AmbientPtr product_ambient, double radius);

    Kind kind() const { return kind_; }
    std::string describe() const;
    const AmbientPtr& ambient() const { return ambient_; }
    const Vec& center() const { return center_; }
    double inner_radius() const { return r_in_; }
    double outer_radius() const { return r_out_; }
    bool has_interior() const;

    bool contains(const Vec& x, double tol = 1e-10) const;
    // Closest point of the subset; identity on points already inside.
    Vec project(const Vec& x) const;
    Vec project_to_boundary(const Vec& x) const;
    // Outward unit normal of the boundary at a boundary point (zero vector
    // when x is interior).
    Vec outward_normal(const Vec& x, double tol = 1e-9) const;

private:
    CompactSubset(Kind kind, AmbientPtr ambient, double r_in, double r_out, Vec center, int extra_dim);

    Kind kind_;
    AmbientPtr ambient_;
    double r_in_;
    double r_out_;
    Vec center_;
    int extra_dim_;
};

}  // namespace varimin
