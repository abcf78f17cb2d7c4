#pragma once

#include <array>
#include <cmath>

namespace varimin {

// Forward-mode dual number with N infinitesimal directions.
template <int N>
struct Jet {
    double a = 0.0;
    std::array<double, N> v{};

    Jet() = default;
    Jet(double value) : a(value) {}  // NOLINT: implicit lift of constants
    static Jet variable(double value, int k) {
        Jet j(value);
        j.v[k] = 1.0;
        return j;
    }

    Jet& operator+=(const Jet& o) {
        a += o.a;
        for (int k = 0; k < N; ++k) v[k] += o.v[k];
        return *this;
    }
    Jet& operator-=(const Jet& o) {
        a -= o.a;
        for (int k = 0; k < N; ++k) v[k] -= o.v[k];
        return *this;
    }
    Jet& operator*=(const Jet& o) {
        for (int k = 0; k < N; ++k) v[k] = a * o.v[k] + o.a * v[k];
        a *= o.a;
        return *this;
    }
    Jet& operator/=(const Jet& o) {
        const double inv = 1.0 / o.a;
        a *= inv;
        for (int k = 0; k < N; ++k) v[k] = (v[k] - a * o.v[k]) * inv;
        return *this;
    }
};

template <int N> Jet<N> operator+(Jet<N> x, const Jet<N>& y) { return x += y; }
template <int N> Jet<N> operator-(Jet<N> x, const Jet<N>& y) { return x -= y; }
template <int N> Jet<N> operator*(Jet<N> x, const Jet<N>& y) { return x *= y; }
template <int N> Jet<N> operator/(Jet<N> x, const Jet<N>& y) { return x /= y; }
template <int N> Jet<N> operator+(Jet<N> x, double y) { x.a += y; return x; }
template <int N> Jet<N> operator+(double y, Jet<N> x) { x.a += y; return x; }
template <int N> Jet<N> operator-(Jet<N> x, double y) { x.a -= y; return x; }
template <int N> Jet<N> operator-(double y, const Jet<N>& x) { return Jet<N>(y) - x; }
template <int N> Jet<N> operator-(Jet<N> x) {
    x.a = -x.a;
    for (auto& d : x.v) d = -d;
    return x;
}
template <int N> Jet<N> operator*(Jet<N> x, double y) {
    x.a *= y;
    for (auto& d : x.v) d *= y;
    return x;
}
template <int N> Jet<N> operator*(double y, Jet<N> x) { return x * y; }
template <int N> Jet<N> operator/(Jet<N> x, double y) { return x * (1.0 / y); }
template <int N> bool operator<(const Jet<N>& x, const Jet<N>& y) { return x.a < y.a; }
template <int N> bool operator>(const Jet<N>& x, const Jet<N>& y) { return x.a > y.a; }
template <int N> bool operator<(const Jet<N>& x, double y) { return x.a < y; }
template <int N> bool operator>(const Jet<N>& x, double y) { return x.a > y; }

template <int N> Jet<N> chain(const Jet<N>& x, double f, double df) {
    Jet<N> out(f);
    for (int k = 0; k < N; ++k) out.v[k] = df * x.v[k];
    return out;
}

template <int N> Jet<N> sqrt(const Jet<N>& x) {
    const double s = std::sqrt(x.a);
    return chain(x, s, 0.5 / s);
}
template <int N> Jet<N> pow(const Jet<N>& x, double e) {
    const double f = std::pow(x.a, e);
    return chain(x, f, x.a == 0.0 ? (e == 1.0 ? 1.0 : 0.0) : e * f / x.a);
}
template <int N> Jet<N> log1p(const Jet<N>& x) { return chain(x, std::log1p(x.a), 1.0 / (1.0 + x.a)); }
template <int N> Jet<N> expm1(const Jet<N>& x) { return chain(x, std::expm1(x.a), std::exp(x.a)); }
template <int N> Jet<N> atan2(const Jet<N>& y, const Jet<N>& x) {
    const double r2 = x.a * x.a + y.a * y.a;
    Jet<N> out(std::atan2(y.a, x.a));
    for (int k = 0; k < N; ++k) out.v[k] = (x.a * y.v[k] - y.a * x.v[k]) / r2;
    return out;
}

inline double value_of(double x) { return x; }
template <int N> double value_of(const Jet<N>& x) { return x.a; }

}  // namespace varimin
