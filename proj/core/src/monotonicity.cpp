#include "varimin/monotonicity.hpp"

#include "varimin/error.hpp"
#include "varimin/spatial_grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

namespace varimin {

namespace {

void require_p_above_m(double p, int m) {
    if (!(p > m)) {
        std::ostringstream os;
        os << "exponent p = " << p << " must exceed m = " << m << " (constants blow up as p -> m)";
        throw PreconditionError(os.str());
    }
}

double ball_lp(const DiscreteVarifold& V, const CurvatureField& H, const Vec& x0, double rho, double p) {
    double s = 0.0;
    for (int i = 0; i < V.size(); ++i)
        if ((V.atom(i).x - x0).norm() < rho) s += V.atom(i).w * std::pow(H.H[i].norm(), p);
    return s;
}

}  // namespace

double unit_ball_volume(int m) {
    return std::pow(std::numbers::pi, 0.5 * m) / std::tgamma(0.5 * m + 1.0);
}

double Cutoff::value(double t) const {
    const double w = 0.5 * sharpness;
    if (t <= 1.0 - w) return 1.0;
    if (t >= 1.0) return 0.0;
    double s = (t - (1.0 - w)) / w;
    if (profile == Profile::QuarticBump) {
        double u = 1.0 - s * s;
        return u * u;
    }
    return 1.0 - 3.0 * s * s + 2.0 * s * s * s;
}

double Cutoff::derivative(double t) const {
    const double w = 0.5 * sharpness;
    if (t <= 1.0 - w || t >= 1.0) return 0.0;
    double s = (t - (1.0 - w)) / w;
    if (profile == Profile::QuarticBump) return -4.0 * s * (1.0 - s * s) / w;
    return (-6.0 * s + 6.0 * s * s) / w;
}

double median_spacing(const DiscreteVarifold& V) {
    if (V.size() < 2) return 0.0;
    Mat X = V.points();
    double h = std::pow(V.mass() / V.size(), 1.0 / V.m());
    SpatialGrid grid(X, std::max(h, 1e-12));
    const int stride = std::max(1, V.size() / 512);
    std::vector<double> d;
    for (int i = 0; i < V.size(); i += stride) {
        auto nbr = grid.within(X.col(i), 4.0 * h);
        double best = std::numeric_limits<double>::infinity();
        for (int j : nbr)
            if (j != i) best = std::min(best, (X.col(j) - X.col(i)).norm());
        if (!std::isfinite(best)) {
            for (int j = 0; j < V.size(); ++j)
                if (j != i) best = std::min(best, (X.col(j) - X.col(i)).norm());
        }
        d.push_back(best);
    }
    std::nth_element(d.begin(), d.begin() + d.size() / 2, d.end());
    return d[d.size() / 2];
}

void require_on_support(const DiscreteVarifold& V, const Vec& x0, double spacing) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& a : V.atoms()) best = std::min(best, (a.x - x0).norm());
    if (best > 2.0 * spacing) {
        std::ostringstream os;
        os << "center is off the support: nearest atom at " << best << " > 2 x spacing " << spacing;
        throw PreconditionError(os.str());
    }
}

MonotoneProfile monotone_profile(const DiscreteVarifold& V, const CurvatureField& H, const Vec& x0,
                                 std::vector<double> radii, Cutoff cutoff) {
    if (H.size() != V.size()) throw PreconditionError("curvature field size does not match varifold");
    if (radii.empty()) throw PreconditionError("monotone_profile needs radii");
    for (std::size_t k = 0; k < radii.size(); ++k) {
        if (!(radii[k] > 0.0)) throw PreconditionError("radii must be positive");
        if (k && !(radii[k] > radii[k - 1])) throw PreconditionError("radii must increase");
    }
    require_on_support(V, x0, median_spacing(V));
    const int m = V.m();
    const int K = static_cast<int>(radii.size());
    MonotoneProfile prof;
    prof.center = x0;
    prof.cutoff = cutoff;
    prof.m = m;
    prof.radii = std::move(radii);
    prof.I.assign(K, 0.0);
    prof.L.assign(K, 0.0);
    prof.J.assign(K, 0.0);
    prof.dI.assign(K, 0.0);
    prof.dJ.assign(K, 0.0);
    prof.residual.assign(K, 0.0);
    for (int i = 0; i < V.size(); ++i) {
        const auto& a = V.atom(i);
        Vec y = a.x - x0;
        double r = y.norm();
        double perp2 = 0.0;
        if (r > 0.0) perp2 = (y - a.P.matrix() * y).squaredNorm() / (r * r);
        double yh = y.dot(H.H[i]);
        for (int k = 0; k < K; ++k) {
            double rho = prof.radii[k];
            double t = r / rho;
            if (t >= 1.0) continue;
            double phi = cutoff.value(t);
            double dphi = cutoff.derivative(t) * (-r / (rho * rho));
            prof.I[k] += a.w * phi;
            prof.L[k] += a.w * phi * yh;
            prof.J[k] += a.w * phi * perp2;
            prof.dI[k] += a.w * dphi;
            prof.dJ[k] += a.w * dphi * perp2;
        }
    }
    for (int k = 0; k < K; ++k) {
        double rho = prof.radii[k];
        double rm = std::pow(rho, -m);
        prof.residual[k] = -m * rm / rho * prof.I[k] + rm * prof.dI[k] - rm * prof.dJ[k] - rm / rho * prof.L[k];
    }
    for (int k = 0; k + 1 < K; ++k) {
        double r0 = prof.radii[k], r1 = prof.radii[k + 1];
        double dr = r1 - r0, mid = 0.5 * (r0 + r1);
        double lhs = (std::pow(r1, -m) * prof.I[k + 1] - std::pow(r0, -m) * prof.I[k]) / dr;
        double rhs = std::pow(mid, -m) * (prof.J[k + 1] - prof.J[k]) / dr +
                     std::pow(mid, -m - 1) * 0.5 * (prof.L[k] + prof.L[k + 1]);
        prof.residual_fd.push_back(lhs - rhs);
    }
    return prof;
}

double relative_diffmf_residual(const MonotoneProfile& profile) {
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < profile.radii.size(); ++k) {
        double rho = profile.radii[k];
        double scale = profile.m * std::pow(rho, -profile.m - 1) * profile.I[k];
        num += profile.residual[k] * profile.residual[k];
        den += scale * scale;
    }
    return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

DensityEstimate density_estimate(const DiscreteVarifold& V, const Vec& x0, const std::vector<double>& rho_sequence) {
    if (rho_sequence.size() < 3) throw PreconditionError("density_estimate needs at least three radii");
    for (std::size_t k = 1; k < rho_sequence.size(); ++k)
        if (!(rho_sequence[k] < rho_sequence[k - 1])) throw PreconditionError("density radii must decrease");
    const double spacing = median_spacing(V);
    if (rho_sequence.back() < 3.0 * spacing) {
        std::ostringstream os;
        os << "radius " << rho_sequence.back() << " is below the resolution floor 3 x spacing = " << 3.0 * spacing;
        throw PreconditionError(os.str());
    }
    require_on_support(V, x0, spacing);
    const double om = unit_ball_volume(V.m());
    DensityEstimate est;
    est.radii = rho_sequence;
    const int K = static_cast<int>(rho_sequence.size());
    Mat A(K, 2);
    Vec b(K);
    for (int k = 0; k < K; ++k) {
        double rho = rho_sequence[k];
        double ratio = ball_mass(V, x0, rho) / (om * std::pow(rho, V.m()));
        est.ratios.push_back(ratio);
        A(k, 0) = 1.0;
        A(k, 1) = rho * rho;
        b(k) = ratio;
    }
    Vec coef = A.colPivHouseholderQr().solve(b);
    est.estimate = coef(0);
    return est;
}

std::string to_string(BoundReport::Status s) {
    switch (s) {
        case BoundReport::Status::Pass: return "pass";
        case BoundReport::Status::Fail: return "fail";
        case BoundReport::Status::Inapplicable: return "inapplicable";
        case BoundReport::Status::HypothesisViolated: return "hypothesis-violated";
    }
    return "unknown";
}

double fundamental_constant(double p, int m) {
    require_p_above_m(p, m);
    double K = p * p / (p - m);
    return std::pow(2.0, p - 1.0) / unit_ball_volume(m) * std::max(1.0, std::pow(K, p));
}

double diameter_upper_constant(double p, int m) {
    // Fundamental inequality on N disjoint balls B_{rho/2}(y_j) along a
    // chain: N <= C_F (2^m |V| rho^-m + 2^{m-p} rho^{p-m} E), with
    // d <= 2 rho N and rho = (m/2)(|V|/E)^{1/p}.
    const double h = 0.5 * m;
    return 2.0 * fundamental_constant(p, m) * (std::pow(2.0, m) + std::pow(2.0, m - p) * std::pow(h, p)) * std::pow(h, 1.0 - m);
}

double diameter_lower_constant(double p, int m) {
    // Fundamental inequality at rho = d, then |V| <= (d/m)^p E.
    return fundamental_constant(p, m) * (1.0 + std::pow(static_cast<double>(m), -p));
}

double mass_lower_factor(double p, int m) {
    // Combine d <= C34 |V|^{(p-m+1)/p} E^{(m-1)/p} with d >= (C35 E)^{-1/(p-m)}.
    const double q = p - m + 1.0;
    return std::pow(diameter_lower_constant(p, m), -p / ((p - m) * q)) * std::pow(diameter_upper_constant(p, m), -p / q);
}

BoundReport check_local_monotonicity(const DiscreteVarifold& V, const CurvatureField& H, const Vec& x0, double sigma,
                                     double rho, double p) {
    require_p_above_m(p, V.m());
    if (!(sigma > 0.0) || !(rho > sigma)) throw PreconditionError("need 0 < sigma < rho");
    if (H.size() != V.size()) throw PreconditionError("curvature field size does not match varifold");
    require_on_support(V, x0, median_spacing(V));
    const int m = V.m();
    const double K = p * p / (p - m);
    auto side = [&](double r) {
        double dens = std::pow(std::pow(r, -m) * ball_mass(V, x0, r), 1.0 / p);
        double curv = K * std::pow(r, 1.0 - m / p) * std::pow(ball_lp(V, H, x0, r, p), 1.0 / p);
        return dens + curv;
    };
    BoundReport rep;
    rep.lemma = "LocMF";
    rep.lhs = side(sigma);
    rep.rhs = side(rho);
    rep.constant = K;
    rep.margin = rep.lhs > 0.0 ? rep.rhs / rep.lhs : std::numeric_limits<double>::infinity();
    rep.status = rep.margin >= 1.0 ? BoundReport::Status::Pass : BoundReport::Status::Fail;
    std::ostringstream os;
    os << "sigma=" << sigma << " rho=" << rho << " p=" << p;
    rep.note = os.str();
    return rep;
}

BoundReport check_fundamental(const DiscreteVarifold& V, const CurvatureField& H, const Vec& x0, double rho, double p) {
    require_p_above_m(p, V.m());
    if (!(rho > 0.0)) throw PreconditionError("rho must be positive");
    if (H.size() != V.size()) throw PreconditionError("curvature field size does not match varifold");
    const double spacing = median_spacing(V);
    require_on_support(V, x0, spacing);
    if (rho < spacing) {
        std::ostringstream os;
        os << "rho = " << rho << " is below the resolution floor " << spacing;
        throw PreconditionError(os.str());
    }
    const int m = V.m();
    const double C = fundamental_constant(p, m);
    BoundReport rep;
    rep.lemma = "FundIn";
    rep.lhs = 1.0;
    rep.rhs = C * (ball_mass(V, x0, rho) / std::pow(rho, m) + std::pow(rho, p - m) * ball_lp(V, H, x0, rho, p));
    rep.constant = C;
    rep.margin = rep.rhs;
    rep.status = rep.margin >= 1.0 ? BoundReport::Status::Pass : BoundReport::Status::Fail;
    std::ostringstream os;
    os << "rho=" << rho << " p=" << p;
    rep.note = os.str();
    return rep;
}

bool is_connected(const DiscreteVarifold& V, double link_radius) {
    if (V.empty()) return false;
    if (V.mesh()) {
        const SimplicialMesh& mesh = *V.mesh();
        std::vector<int> parent(static_cast<std::size_t>(mesh.num_vertices()));
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int a) {
            while (parent[a] != a) a = parent[a] = parent[parent[a]];
            return a;
        };
        for (int k = 0; k < mesh.num_simplices(); ++k)
            for (int c = 1; c <= mesh.simplex_dim(); ++c) {
                int a = find(mesh.index(k, 0)), b = find(mesh.index(k, c));
                if (a != b) parent[std::max(a, b)] = std::min(a, b);
            }
        int root = find(mesh.index(V.sources()[0].simplex, 0));
        for (const auto& src : V.sources())
            if (find(mesh.index(src.simplex, 0)) != root) return false;
        return true;
    }
    if (link_radius <= 0.0) link_radius = 3.0 * median_spacing(V);
    return connected_components(V, link_radius).size() == 1;
}

std::vector<BoundReport> check_bounds(const DiscreteVarifold& V, const CurvatureField& H, double p, const BoundsOptions& options) {
    const int m = V.m();
    require_p_above_m(p, m);
    if (H.size() != V.size()) throw PreconditionError("curvature field size does not match varifold");
    const double mass = V.mass();
    const double E = lp_norm(H, V, p, CurvatureComponent::H, true);
    const double d = options.diameter >= 0.0 ? options.diameter : support_diameter(V);
    std::vector<BoundReport> out;

    BoundReport a;
    a.lemma = "A<dH";
    a.lhs = mass;
    a.rhs = std::pow(d / m, p) * E;
    a.constant = 1.0;
    a.margin = a.rhs / a.lhs;
    a.status = a.margin >= 1.0 ? BoundReport::Status::Pass : BoundReport::Status::Fail;
    out.push_back(a);

    BoundReport b;
    b.lemma = "d<AH";
    b.constant = diameter_upper_constant(p, m);
    b.lhs = d;
    b.rhs = b.constant * std::pow(mass, 1.0 - (m - 1.0) / p) * std::pow(E, (m - 1.0) / p);
    b.margin = b.rhs / b.lhs;
    if (!is_connected(V, options.link_radius)) {
        b.status = BoundReport::Status::HypothesisViolated;
        b.note = "d<AH requires a connected support; input is disconnected";
    } else {
        b.status = b.margin >= 1.0 ? BoundReport::Status::Pass : BoundReport::Status::Fail;
    }
    out.push_back(b);

    BoundReport c;
    c.lemma = "d>H";
    c.constant = diameter_lower_constant(p, m);
    c.rhs = d;
    if (E > 0.0) {
        c.lhs = std::pow(c.constant * E, -1.0 / (p - m));
        c.margin = c.rhs / c.lhs;
        c.status = c.margin >= 1.0 ? BoundReport::Status::Pass : BoundReport::Status::Fail;
    } else {
        c.lhs = std::numeric_limits<double>::infinity();
        c.margin = 0.0;
        c.status = BoundReport::Status::Inapplicable;
        c.note = "inapplicable: int |H|^p = 0";
    }
    out.push_back(c);

    BoundReport e;
    e.lemma = "A>H";
    e.constant = mass_lower_factor(p, m);
    e.rhs = mass;
    if (E > 0.0) {
        e.lhs = e.constant * std::pow(E, -m / (p - m));
        e.margin = e.rhs / e.lhs;
        e.status = e.margin >= 1.0 ? BoundReport::Status::Pass : BoundReport::Status::Fail;
    } else {
        e.lhs = std::numeric_limits<double>::infinity();
        e.margin = 0.0;
        e.status = BoundReport::Status::Inapplicable;
        e.note = "inapplicable: int |H|^p = 0";
    }
    out.push_back(e);
    return out;
}

std::vector<SweepPoint> default_local_sweep(double length) {
    const double rhos[] = {0.1, 0.18, 0.3, 0.45, 0.7};
    const double fracs[] = {0.3, 0.5, 0.7, 0.85};
    const double ps[] = {2.5, 3.0, 4.0};
    std::vector<SweepPoint> out;
    int idx = 0;
    for (double r : rhos)
        for (double f : fracs) {
            out.push_back({f * r * length, r * length, ps[idx % 3]});
            ++idx;
        }
    return out;
}

}  // namespace varimin
