#pragma once

#include "varimin/tensor.hpp"

#include <cstdint>
#include <unordered_map>
#include <vector>

namespace varimin {

// Uniform hash grid over the first (up to) three coordinates of a point set.
// Candidate cells are filtered with the full R^S distance, so queries are
// exact in any dimension. Results are returned in ascending index order.
class SpatialGrid {
public:
    SpatialGrid(const Mat& points, double cell);

    // Indices i with |p_i - x| < radius.
    std::vector<int> within(const Vec& x, double radius) const;
    std::vector<int> within(const Vec& x, double radius, std::vector<double>& dist) const;
    // Nearest point index and distance (linear fallback if the grid is empty near x).
    int nearest(const Vec& x, double* distance = nullptr) const;

    const Mat& points() const { return points_; }
    double cell() const { return cell_; }

private:
    std::int64_t key(const std::array<long, 3>& c) const;
    std::array<long, 3> cell_of(const Vec& x) const;

    Mat points_;
    double cell_;
    int keyed_dims_;
    std::unordered_map<std::int64_t, std::vector<int>> cells_;
};

}  // namespace varimin
