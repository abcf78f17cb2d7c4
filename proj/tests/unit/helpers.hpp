#pragma once

#include "varimin/mesh.hpp"
#include "varimin/tensor.hpp"

#include <Eigen/Geometry>

#include <cmath>
#include <numbers>

namespace testing {

inline constexpr double pi = std::numbers::pi;

// Total triangle area from cross products, independent of the library.
inline double triangle_area(const varimin::SimplicialMesh& mesh) {
    double a = 0.0;
    for (int t = 0; t < mesh.num_simplices(); ++t) {
        Eigen::Vector3d p = mesh.vertex(mesh.index(t, 0)), q = mesh.vertex(mesh.index(t, 1)),
                        r = mesh.vertex(mesh.index(t, 2));
        a += 0.5 * (q - p).cross(r - p).norm();
    }
    return a;
}

inline varimin::Mat rotation(double ax, double ay, double az) {
    Eigen::Matrix3d R = (Eigen::AngleAxisd(az, Eigen::Vector3d::UnitZ()) *
                         Eigen::AngleAxisd(ay, Eigen::Vector3d::UnitY()) *
                         Eigen::AngleAxisd(ax, Eigen::Vector3d::UnitX()))
                            .toRotationMatrix();
    return R;
}

}  // namespace testing
