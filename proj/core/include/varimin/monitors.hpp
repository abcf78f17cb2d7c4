#pragma once

#include "varimin/curvature_recovery.hpp"
#include "varimin/energy.hpp"
#include "varimin/first_variation.hpp"

namespace varimin {

// C_{N,p} in int |H^{R^S}|^p <= C_{N,p} (|V| + int |q|^p), q = H^N or A,
// from |H| <= |H^N| + C_N (H-form) or |H| <= 2S |A| + C_N (A-form), with
// C_N the ambient correction bound.
double ambient_lp_constant(EnergyForm form, double p, int S, double correction_bound);

struct MonitorRecord {
    double mass = 0.0;
    double diameter = 0.0;
    double curvature_integral = 0.0;  // int |q|^p
    double constant = 0.0;            // C_{N,p}
    double a_lower = 0.0;             // diameter lower bound
    double b_lower = 0.0;             // mass lower bound
    bool diameter_ok = true;
    bool mass_ok = true;
    bool ok() const { return diameter_ok && mass_ok; }
};

MonitorRecord nondegeneracy_monitor(double mass, double diameter, double curvature_integral, EnergyForm form, double p,
                                    int m, int S, double correction_bound);

// Exact Hausdorff distance between two point sets (columns).
double hausdorff_distance(const Mat& a, const Mat& b);

struct ConvergenceRecord {
    double hausdorff = 0.0;
    double weak_measure = 0.0;  // max |int phi dV_a - int phi dV_b|
    double weak_pair = 0.0;     // max |int <f_a, phi e_i> dV_a - int <f_b, phi e_i> dV_b|
};

// Dictionary functions centered at the columns of `centers`. The pair term
// is skipped (left at zero) when either field is null.
ConvergenceRecord convergence_monitor(const DiscreteVarifold& a, const DiscreteVarifold& b, const CurvatureField* fa,
                                      const CurvatureField* fb, const TestScalarDictionary& dict, const Mat& centers);

}  // namespace varimin
