#include "varimin/spatial_grid.hpp"

#include "varimin/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace varimin {

SpatialGrid::SpatialGrid(const Mat& points, double cell)
    : points_(points), cell_(cell), keyed_dims_(std::min<int>(3, static_cast<int>(points.rows()))) {
    if (!(cell > 0.0)) throw PreconditionError("spatial grid cell size must be positive");
    for (int i = 0; i < points_.cols(); ++i) cells_[key(cell_of(points_.col(i)))].push_back(i);
}

std::array<long, 3> SpatialGrid::cell_of(const Vec& x) const {
    std::array<long, 3> c{0, 0, 0};
    for (int d = 0; d < keyed_dims_; ++d) c[d] = static_cast<long>(std::floor(x(d) / cell_));
    return c;
}

std::int64_t SpatialGrid::key(const std::array<long, 3>& c) const {
    // 21 bits per axis, wrapped; collisions only merge buckets.
    const std::int64_t mask = (1 << 21) - 1;
    return ((c[0] & mask) << 42) | ((c[1] & mask) << 21) | (c[2] & mask);
}

std::vector<int> SpatialGrid::within(const Vec& x, double radius) const {
    std::vector<double> unused;
    return within(x, radius, unused);
}

std::vector<int> SpatialGrid::within(const Vec& x, double radius, std::vector<double>& dist) const {
    std::vector<int> out;
    dist.clear();
    const auto c = cell_of(x);
    const long reach = static_cast<long>(std::ceil(radius / cell_));
    std::array<long, 3> lo{0, 0, 0}, hi{0, 0, 0};
    for (int d = 0; d < keyed_dims_; ++d) {
        lo[d] = c[d] - reach;
        hi[d] = c[d] + reach;
    }
    for (long a = lo[0]; a <= hi[0]; ++a)
        for (long b = lo[1]; b <= hi[1]; ++b)
            for (long e = lo[2]; e <= hi[2]; ++e) {
                auto it = cells_.find(key({a, b, e}));
                if (it == cells_.end()) continue;
                for (int i : it->second)
                    if ((points_.col(i) - x).norm() < radius) out.push_back(i);
            }
    std::sort(out.begin(), out.end());
    dist.reserve(out.size());
    for (int i : out) dist.push_back((points_.col(i) - x).norm());
    return out;
}

int SpatialGrid::nearest(const Vec& x, double* distance) const {
    int best = -1;
    double bd = std::numeric_limits<double>::infinity();
    for (double r = cell_; best < 0 && r < 64 * cell_; r *= 2) {
        std::vector<double> d;
        auto idx = within(x, r, d);
        for (std::size_t k = 0; k < idx.size(); ++k)
            if (d[k] < bd) {
                bd = d[k];
                best = idx[k];
            }
    }
    if (best < 0) {
        for (int i = 0; i < points_.cols(); ++i) {
            double d = (points_.col(i) - x).norm();
            if (d < bd) {
                bd = d;
                best = i;
            }
        }
    }
    if (distance) *distance = bd;
    return best;
}

}  // namespace varimin
