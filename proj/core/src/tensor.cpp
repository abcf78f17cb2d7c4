#include "varimin/tensor.hpp"

#include <cassert>
#include <cmath>

namespace varimin {

double Tensor3::norm() const {
    double s = 0.0;
    for (double v : data_) s += v * v;
    return std::sqrt(s);
}

void Tensor3::set_zero() {
    std::fill(data_.begin(), data_.end(), 0.0);
}

Tensor3& Tensor3::operator+=(const Tensor3& o) {
    assert(o.n_ == n_);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
}

Tensor3& Tensor3::operator-=(const Tensor3& o) {
    assert(o.n_ == n_);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
}

Tensor3& Tensor3::operator*=(double s) {
    for (double& v : data_) v *= s;
    return *this;
}

Tensor3 operator+(Tensor3 a, const Tensor3& b) { return a += b; }
Tensor3 operator-(Tensor3 a, const Tensor3& b) { return a -= b; }
Tensor3 operator*(double s, Tensor3 a) { return a *= s; }

}  // namespace varimin
