#include "varimin/monitors.hpp"

#include "varimin/error.hpp"
#include "varimin/monotonicity.hpp"
#include "varimin/parallel.hpp"
#include "varimin/spatial_grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace varimin {

double ambient_lp_constant(EnergyForm form, double p, int S, double correction_bound) {
    const double two = std::pow(2.0, p - 1.0);
    if (form == EnergyForm::H) return correction_bound == 0.0 ? 1.0 : two * std::max(1.0, std::pow(correction_bound, p));
    return two * std::max(std::pow(2.0 * S, p), std::pow(correction_bound, p));
}

MonitorRecord nondegeneracy_monitor(double mass, double diameter, double curvature_integral, EnergyForm form, double p,
                                    int m, int S, double correction_bound) {
    MonitorRecord r;
    r.mass = mass;
    r.diameter = diameter;
    r.curvature_integral = curvature_integral;
    r.constant = ambient_lp_constant(form, p, S, correction_bound);
    const double bound = r.constant * (mass + curvature_integral);
    r.a_lower = std::pow(diameter_lower_constant(p, m) * bound, -1.0 / (p - m));
    r.b_lower = mass_lower_factor(p, m) * std::pow(bound, -m / (p - m));
    r.diameter_ok = diameter >= r.a_lower;
    r.mass_ok = mass >= r.b_lower;
    return r;
}

namespace {

double directed_hausdorff(const Mat& a, const Mat& b) {
    if (b.cols() == 0) return std::numeric_limits<double>::infinity();
    Vec lo = b.rowwise().minCoeff(), hi = b.rowwise().maxCoeff();
    double extent = (hi - lo).norm();
    double cell = std::max(extent / std::max(1.0, std::cbrt(static_cast<double>(b.cols()))), 1e-12);
    SpatialGrid grid(b, cell);
    std::vector<double> d(static_cast<std::size_t>(a.cols()), 0.0);
    parallel_for(d.size(), [&](std::size_t i) {
        double dist = 0.0;
        grid.nearest(a.col(static_cast<Eigen::Index>(i)), &dist);
        d[i] = dist;
    });
    return d.empty() ? 0.0 : *std::max_element(d.begin(), d.end());
}

}  // namespace

double hausdorff_distance(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows()) throw PreconditionError("hausdorff_distance: dimension mismatch");
    if (a.cols() == 0 && b.cols() == 0) return 0.0;
    return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

ConvergenceRecord convergence_monitor(const DiscreteVarifold& a, const DiscreteVarifold& b, const CurvatureField* fa,
                                      const CurvatureField* fb, const TestScalarDictionary& dict, const Mat& centers) {
    if (a.S() != b.S() || a.m() != b.m()) throw PreconditionError("convergence_monitor needs matching m and S");
    ConvergenceRecord rec;
    rec.hausdorff = hausdorff_distance(a.points(), b.points());
    const int S = a.S();
    const bool pair = fa && fb;
    const int K = static_cast<int>(centers.cols());
    const int Q = dict.size();
    // integrals[c][q] and pair integrals[c][q*S + i] for each varifold
    auto integrate = [&](const DiscreteVarifold& V, const CurvatureField* f, std::vector<double>& meas, std::vector<double>& pr) {
        meas.assign(static_cast<std::size_t>(K) * Q, 0.0);
        pr.assign(pair ? static_cast<std::size_t>(K) * Q * S : 0, 0.0);
        SpatialGrid grid(V.points(), std::max(dict.eps(), 1e-12));
        parallel_for(static_cast<std::size_t>(K), [&](std::size_t c) {
            Vec x0 = centers.col(static_cast<Eigen::Index>(c));
            for (int i : grid.within(x0, dict.eps())) {
                const auto& at = V.atom(i);
                double eta = dict.eta(at.x - x0);
                for (int q = 0; q < Q; ++q) {
                    double phi = at.w * eta * dict.q_value(q, at.P.matrix());
                    meas[c * Q + q] += phi;
                    if (pair)
                        for (int s = 0; s < S; ++s) pr[(c * Q + q) * S + s] += phi * f->H[i](s);
                }
            }
        });
    };
    std::vector<double> ma, mb, pa, pb;
    integrate(a, fa, ma, pa);
    integrate(b, fb, mb, pb);
    for (std::size_t k = 0; k < ma.size(); ++k) rec.weak_measure = std::max(rec.weak_measure, std::abs(ma[k] - mb[k]));
    for (std::size_t k = 0; k < pa.size(); ++k) rec.weak_pair = std::max(rec.weak_pair, std::abs(pa[k] - pb[k]));
    return rec;
}

}  // namespace varimin
