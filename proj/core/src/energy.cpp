#include "varimin/energy.hpp"

#include "varimin/error.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace varimin {

void EnergySpec::validate(int m) const {
    if (!(C > 0.0)) throw PreconditionError("energy constant C must be positive");
    if (!(p > m)) {
        std::ostringstream os;
        os << "energy exponent p = " << p << " must exceed m = " << m;
        throw PreconditionError(os.str());
    }
    if (integrand == IntegrandKind::HuberPower && !(delta > 0.0))
        throw PreconditionError("huber-power integrand needs delta > 0");
}

double EnergySpec::F_sq(double s2) const {
    if (integrand == IntegrandKind::Power) return C * std::pow(s2, 0.5 * p);
    return C * std::pow(delta, p) * std::expm1(0.5 * p * std::log1p(s2 / (delta * delta)));
}

std::string EnergySpec::describe() const {
    std::ostringstream os;
    os << to_string(form) << "-form " << to_string(integrand) << "(C=" << C << ", p=" << p;
    if (integrand == IntegrandKind::HuberPower) os << ", delta=" << delta;
    os << ")";
    return os.str();
}

EnergyForm parse_form(const std::string& s) {
    if (s == "H" || s == "h") return EnergyForm::H;
    if (s == "A" || s == "a") return EnergyForm::A;
    throw InputError("unknown energy form '" + s + "' (expected H or A)");
}

IntegrandKind parse_integrand(const std::string& s) {
    if (s == "power") return IntegrandKind::Power;
    if (s == "huber" || s == "huber-power") return IntegrandKind::HuberPower;
    throw InputError("unknown integrand '" + s + "' (expected power or huber)");
}

std::string to_string(EnergyForm f) { return f == EnergyForm::H ? "H" : "A"; }
std::string to_string(IntegrandKind k) { return k == IntegrandKind::Power ? "power" : "huber"; }

IntegrandCheck check_integrand(const EnergySpec& spec, int dim, int samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    auto draw = [&] {
        Vec q(dim);
        for (int i = 0; i < dim; ++i) q(i) = nd(rng);
        return q;
    };
    auto F = [&](const Vec& q) { return spec.F_sq(q.squaredNorm()); };
    IntegrandCheck out;
    if (F(Vec::Zero(dim)) != 0.0) out.zero_iff_zero = false;
    for (int s = 0; s < samples; ++s) {
        Vec a = draw(), b = draw();
        double scale = std::exp(2.0 * nd(rng));
        a *= scale;
        double Fa = F(a), Fb = F(b);
        if (!(Fa >= 0.0) || !(Fb >= 0.0)) out.nonnegative = false;
        if (!(Fa > 0.0)) out.zero_iff_zero = false;
        for (double t : {0.25, 0.5, 0.75}) {
            double mix = F((1.0 - t) * a + t * b);
            double chord = (1.0 - t) * Fa + t * Fb;
            if (mix > chord + 1e-12 * std::max(1.0, chord)) out.convex = false;
        }
        // F(tq)/t must grow without bound.
        Vec u = b.normalized();
        double r1 = F(10.0 * u) / 10.0, r2 = F(1000.0 * u) / 1000.0;
        if (!(r2 > 10.0 * r1)) out.superlinear = false;
    }
    return out;
}

double energy(const DiscreteVarifold& V, const CurvatureField& field, const EnergySpec& spec, bool skip_flagged) {
    if (spec.form != EnergyForm::H) throw PreconditionError("A-form energy needs a curvature tensor field");
    if (field.size() != V.size()) throw PreconditionError("curvature field size does not match varifold");
    spec.validate(V.m());
    double s = 0.0;
    for (int i = 0; i < V.size(); ++i) {
        if (!field.valid(i)) {
            if (skip_flagged) continue;
            throw PreconditionError("energy over a field with flagged atom " + std::to_string(i));
        }
        s += V.atom(i).w * spec.F_sq(field.H_N[i].squaredNorm());
    }
    return s;
}

double energy(const DiscreteVarifold& V, const CurvatureTensorField& field, const EnergySpec& spec, bool skip_flagged) {
    if (spec.form != EnergyForm::A) throw PreconditionError("H-form energy needs a mean curvature field");
    if (field.size() != V.size()) throw PreconditionError("tensor field size does not match varifold");
    spec.validate(V.m());
    double s = 0.0;
    for (int i = 0; i < V.size(); ++i) {
        if (!field.valid(i)) {
            if (skip_flagged) continue;
            throw PreconditionError("energy over a field with flagged atom " + std::to_string(i));
        }
        double a2 = field.A[i].norm();
        s += V.atom(i).w * spec.F_sq(a2 * a2);
    }
    return s;
}

double isoperimetric_ratio(double mass, double energy) {
    if (energy <= 0.0) return std::numeric_limits<double>::infinity();
    return mass / energy;
}

}  // namespace varimin
