#pragma once

#include "varimin/first_variation.hpp"
#include "varimin/varifold.hpp"

#include <string>
#include <vector>

namespace varimin {

// Volume of the unit m-ball.
double unit_ball_volume(int m);

// C1 nonincreasing cutoff with phi = 1 on t <= 1 - w and phi = 0 on t >= 1,
// where w = sharpness / 2 (sharpness in (0, 1]; 1 gives the transition on
// [1/2, 1]).
struct Cutoff {
    enum class Profile { QuarticBump, PiecewiseCubic };
    Profile profile = Profile::QuarticBump;
    double sharpness = 1.0;

    double value(double t) const;
    double derivative(double t) const;
};

struct MonotoneProfile {
    Vec center;
    Cutoff cutoff;
    int m = 0;
    std::vector<double> radii;
    std::vector<double> I, L, J;
    // Exact rho-derivatives of I and J.
    std::vector<double> dI, dJ;
    // d/drho[rho^-m I] - rho^-m J' - rho^-m-1 L with exact derivatives.
    std::vector<double> residual;
    // Finite-difference form on consecutive radii (size K - 1), evaluated at
    // the midpoints with L interpolated linearly.
    std::vector<double> residual_fd;
};

// Median nearest-neighbor distance over a deterministic sample of atoms.
double median_spacing(const DiscreteVarifold& V);

// Throws PreconditionError if x0 is farther than 2 x median spacing from
// every atom.
void require_on_support(const DiscreteVarifold& V, const Vec& x0, double spacing);

MonotoneProfile monotone_profile(const DiscreteVarifold& V, const CurvatureField& H, const Vec& x0,
                                 std::vector<double> radii, Cutoff cutoff = {});

// RMS of the exact-derivative residual relative to RMS of m rho^-m-1 I.
double relative_diffmf_residual(const MonotoneProfile& profile);

struct DensityEstimate {
    double estimate = 0.0;
    std::vector<double> radii;
    std::vector<double> ratios;  // mu(B_rho) / (omega_m rho^m)
};

// Least-squares fit ratio(rho) = theta + c rho^2 over the (at least three)
// radii, extrapolated to rho = 0. Radii must decrease and stay >= 3 x atom
// spacing.
DensityEstimate density_estimate(const DiscreteVarifold& V, const Vec& x0, const std::vector<double>& rho_sequence);

struct BoundReport {
    enum class Status { Pass, Fail, Inapplicable, HypothesisViolated };
    std::string lemma;  // A<dH, d<AH, d>H, A>H, FundIn, LocMF
    double lhs = 0.0;
    double rhs = 0.0;
    double constant = 0.0;
    double margin = 0.0;  // rhs / lhs
    Status status = Status::Fail;
    std::string note;

    bool pass() const { return status == Status::Pass; }
    bool failed() const { return status == Status::Fail; }
};

std::string to_string(BoundReport::Status s);

// Fundamental-inequality constant (2^{p-1}/omega_m) max(1, (p^2/(p-m))^p).
double fundamental_constant(double p, int m);
// Diameter upper bound constant: 2 C_F (2^m + 2^{m-p}(m/2)^p)(m/2)^{1-m}.
double diameter_upper_constant(double p, int m);
// Diameter lower bound constant: C_F (1 + m^{-p}).
double diameter_lower_constant(double p, int m);
// Mass lower bound: |V| >= mass_lower_factor * E^{-m/(p-m)}.
double mass_lower_factor(double p, int m);

// [sigma^-m mu(B_sigma)]^{1/p} + K sigma^{1-m/p}(int_{B_sigma}|H|^p)^{1/p}
//   <= [rho^-m mu(B_rho)]^{1/p} + K rho^{1-m/p}(int_{B_rho}|H|^p)^{1/p},
// K = p^2/(p-m). lhs/rhs are the two sides in this form.
BoundReport check_local_monotonicity(const DiscreteVarifold& V, const CurvatureField& H, const Vec& x0, double sigma,
                                     double rho, double p);

// 1 <= C_F [mu(B_rho)/rho^m + rho^{p-m} int_{B_rho}|H|^p].
BoundReport check_fundamental(const DiscreteVarifold& V, const CurvatureField& H, const Vec& x0, double rho, double p);

struct BoundsOptions {
    // Link radius for the connectivity hypothesis when the varifold has no
    // mesh provenance; <= 0 selects 3 x median spacing.
    double link_radius = 0.0;
    // Precomputed support diameter; < 0 computes it.
    double diameter = -1.0;
};

// A<dH, d<AH, d>H, A>H in this order.
std::vector<BoundReport> check_bounds(const DiscreteVarifold& V, const CurvatureField& H, double p,
                                      const BoundsOptions& options = {});

bool is_connected(const DiscreteVarifold& V, double link_radius = 0.0);

// Shipped (sigma, rho, p) sweep: 20 entries with p in {2.5, 3, 4}, radii as
// fractions of `length` (typically the support diameter).
struct SweepPoint {
    double sigma;
    double rho;
    double p;
};
std::vector<SweepPoint> default_local_sweep(double length);

}  // namespace varimin
