#pragma once

#include "varimin/curvature_recovery.hpp"
#include "varimin/first_variation.hpp"

#include <cstdint>
#include <string>

namespace varimin {

enum class EnergyForm { H, A };
enum class IntegrandKind { Power, HuberPower };

// F(q) depends on |q| only: power C |q|^p, or the smooth variant
// C ((|q|^2 + delta^2)^{p/2} - delta^p).
struct EnergySpec {
    EnergyForm form = EnergyForm::H;
    IntegrandKind integrand = IntegrandKind::Power;
    double C = 1.0;
    double p = 3.0;
    double delta = 1e-2;

    // Throws PreconditionError unless C > 0, p > m and delta > 0.
    void validate(int m) const;

    // F as a function of s2 = |q|^2.
    double F_sq(double s2) const;
    double value(double s) const { return F_sq(s * s); }
    std::string describe() const;
};

EnergyForm parse_form(const std::string& s);
IntegrandKind parse_integrand(const std::string& s);
std::string to_string(EnergyForm f);
std::string to_string(IntegrandKind k);

// Numerical probes of the integrand on random q in R^dim.
struct IntegrandCheck {
    bool nonnegative = true;
    bool zero_iff_zero = true;
    bool convex = true;
    bool superlinear = true;
    bool ok() const { return nonnegative && zero_iff_zero && convex && superlinear; }
};

IntegrandCheck check_integrand(const EnergySpec& spec, int dim, int samples = 200, std::uint64_t seed = 7);

// sum w F(H_N) (H_N equals H when no ambient correction was applied).
double energy(const DiscreteVarifold& V, const CurvatureField& field, const EnergySpec& spec, bool skip_flagged = false);

// sum w F(|A|), |A| the Frobenius norm of the per-atom tensor.
double energy(const DiscreteVarifold& V, const CurvatureTensorField& field, const EnergySpec& spec,
              bool skip_flagged = false);

// |V| / energy; +inf when the energy vanishes.
double isoperimetric_ratio(double mass, double energy);

}  // namespace varimin
