#pragma once

#include "varimin/mesh.hpp"

#include <cstdint>

namespace varimin {

// Subdivided icosahedron projected to the sphere; level 0 has 12 vertices,
// level k has 10 * 4^k + 2. Outward orientation.
SimplicialMesh icosphere(int level, double radius = 1.0, const Eigen::Vector3d& center = Eigen::Vector3d::Zero());

// Icosphere scaled by (a, b, c) along the coordinate axes.
SimplicialMesh ellipsoid(int level, double a, double b, double c);

// Torus with tube radius r around the z axis circle of radius R. Rings are
// staggered by half a step so triangles are close to equilateral.
SimplicialMesh torus(double R, double r, int n_major, int n_minor);

// Open cylinder of radius r around the z axis, z in [-length/2, length/2].
SimplicialMesh open_cylinder(double r, double length, int n_around, int n_along);

// Flat patch [-size/2, size/2]^2 in the z = 0 plane of R^3 with n cells per
// side, triangulated with alternating diagonals.
SimplicialMesh flat_patch(int n, double size = 1.0);

// Closed polygon with n segments on the circle of radius r in the plane
// spanned by e_0, e_1 of R^S.
SimplicialMesh circle(int n, double r = 1.0, int S = 2);

// Latitude circle on the unit sphere S^2 in R^3 at latitude theta (radians):
// radius cos(theta), height sin(theta). theta = 0 is a great circle.
SimplicialMesh latitude_circle(int n, double theta);

// Appends zero coordinates so vertices live in R^S (S >= current dim).
SimplicialMesh embed(const SimplicialMesh& mesh, int S);

// Applies x -> scale * x + shift to every vertex.
SimplicialMesh transformed(const SimplicialMesh& mesh, double scale, const Vec& shift);
SimplicialMesh rigid_motion(const SimplicialMesh& mesh, const Mat& R, const Vec& t);

// Independent uniform jitter of amplitude `amplitude` (times mean edge
// length) in every coordinate; deterministic in seed.
SimplicialMesh jitter(const SimplicialMesh& mesh, double amplitude, std::uint64_t seed);

}  // namespace varimin
