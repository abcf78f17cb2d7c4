#include "varimin/curvature_recovery.hpp"

#include "varimin/error.hpp"

namespace varimin {

TestScalarDictionary::TestScalarDictionary(int S, double eps) : S_(S), eps_(eps) {
    if (S < 2) throw PreconditionError("dictionary needs S >= 2");
    if (!(eps > 0.0)) throw PreconditionError("dictionary radius must be positive");
    monomials_.push_back({});
    for (int a = 0; a < S; ++a)
        for (int b = 0; b < S; ++b) monomials_.push_back({{a, b}});
    std::vector<std::pair<int, int>> upper;
    for (int a = 0; a < S; ++a)
        for (int b = a; b < S; ++b) upper.emplace_back(a, b);
    const int nu = static_cast<int>(upper.size());
    for (int u = 0; u < nu; ++u)
        for (int v = u; v < nu; ++v) monomials_.push_back({upper[u], upper[v]});
    if (size() < 3 * S * S) {
        for (int u = 0; u < nu; ++u)
            for (int v = u; v < nu; ++v)
                for (int w = v; w < nu; ++w) monomials_.push_back({upper[u], upper[v], upper[w]});
    }
}

double TestScalarDictionary::eta(const Vec& y) const {
    double t = 1.0 - y.squaredNorm() / (eps_ * eps_);
    return t > 0.0 ? t * t : 0.0;
}

Vec TestScalarDictionary::grad_eta(const Vec& y) const {
    double t = 1.0 - y.squaredNorm() / (eps_ * eps_);
    if (t <= 0.0) return Vec::Zero(y.size());
    return (-4.0 * t / (eps_ * eps_)) * y;
}

double TestScalarDictionary::q_value(int q, const Mat& P) const {
    double v = 1.0;
    for (const auto& [a, b] : monomials_[q]) v *= P(a, b);
    return v;
}

Mat TestScalarDictionary::q_derivative(int q, const Mat& P) const {
    Mat D = Mat::Zero(S_, S_);
    const auto& f = monomials_[q];
    for (std::size_t t = 0; t < f.size(); ++t) {
        double rest = 1.0;
        for (std::size_t u = 0; u < f.size(); ++u)
            if (u != t) rest *= P(f[u].first, f[u].second);
        D(f[t].first, f[t].second) += rest;
    }
    return D;
}

void TestScalarDictionary::evaluate(int q, const Vec& y, const Mat& P, double& phi, Vec& grad, Mat& dstar) const {
    double e = eta(y);
    double qv = q_value(q, P);
    phi = e * qv;
    grad = qv * grad_eta(y);
    dstar = e * q_derivative(q, P);
}

}  // namespace varimin
