#include "helpers.hpp"

#include "varimin/mesh.hpp"
#include "varimin/remesh.hpp"
#include "varimin/shapes.hpp"

#include <doctest.h>

#include <set>

using namespace varimin;

namespace {

int euler_characteristic(const SimplicialMesh& m) {
    std::set<std::pair<int, int>> edges;
    for (int t = 0; t < m.num_simplices(); ++t)
        for (int c = 0; c < 3; ++c) {
            int a = m.index(t, c), b = m.index(t, (c + 1) % 3);
            edges.insert({std::min(a, b), std::max(a, b)});
        }
    return m.num_vertices() - static_cast<int>(edges.size()) + m.num_simplices();
}

}  // namespace

TEST_CASE("splits shorten long edges and keep the topology") {
    SimplicialMesh m = ellipsoid(2, 3.0, 1.0, 1.0);
    const double area = testing::triangle_area(m);
    const double before = max_edge_length(m);
    RemeshOptions o;
    o.flips = false;
    o.max_mass_change = 1.0;
    RemeshReport r = remesh(m, o);
    CHECK(r.splits > 0);
    CHECK(max_edge_length(m) < before);
    CHECK(euler_characteristic(m) == 2);
    CHECK_NOTHROW(require_manifold(m));
    CHECK(enclosed_volume(m) > 0.0);
    CHECK(r.mass_before == doctest::Approx(area));
}

TEST_CASE("flips improve a skewed mesh") {
    SimplicialMesh m = jitter(icosphere(3), 0.35, 17);
    const double aspect = max_aspect_ratio(m);
    const double area = testing::triangle_area(m);
    RemeshOptions o;
    o.splits = false;
    o.max_mass_change = 0.05;
    RemeshReport r = remesh(m, o);
    CHECK(r.flips > 0);
    CHECK(max_aspect_ratio(m) <= aspect);
    CHECK(euler_characteristic(m) == 2);
    CHECK(std::abs(testing::triangle_area(m) - area) / area < 0.05);
    CHECK(enclosed_volume(m) > 0.0);
}

TEST_CASE("a Delaunay sphere is left alone") {
    SimplicialMesh m = icosphere(3);
    SimplicialMesh copy = m;
    RemeshReport r = remesh(m);
    CHECK(r.flips == 0);
    CHECK(r.splits == 0);
    CHECK(m.vertices() == copy.vertices());
}

TEST_CASE("boundary edges are untouched") {
    SimplicialMesh m = flat_patch(6, 3.0);
    auto bnd = boundary_vertices(m);
    int nb = 0;
    for (bool b : bnd) nb += b;
    RemeshOptions o;
    o.reference_length = 0.1;
    remesh(m, o);
    int nb2 = 0;
    for (bool b : boundary_vertices(m)) nb2 += b;
    CHECK(nb2 == nb);
}
