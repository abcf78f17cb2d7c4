#include "commands.hpp"

#include "json_out.hpp"

#include "varimin/config.hpp"
#include "varimin/curvature_recovery.hpp"
#include "varimin/descent.hpp"
#include "varimin/energy.hpp"
#include "varimin/error.hpp"
#include "varimin/field_io.hpp"
#include "varimin/first_variation.hpp"
#include "varimin/mesh_io.hpp"
#include "varimin/monotonicity.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>

#ifndef VARIMIN_VERSION
#define VARIMIN_VERSION "0.0.0"
#endif

namespace varimin::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

class Manifest {
public:
    Manifest(std::string command, fs::path out) : command_(std::move(command)), out_(std::move(out)) {
        fs::create_directories(out_);
        start_ = std::chrono::steady_clock::now();
    }
    void input(const std::string& p) { inputs_.push_back(p); }
    fs::path output(const std::string& name) {
        outputs_.push_back(name);
        return out_ / name;
    }
    void set(const std::string& key, json value) { extra_[key] = std::move(value); }
    void write() {
        json j;
        j["schema"] = kConfigSchema;
        j["command"] = command_;
        j["tool_version"] = VARIMIN_VERSION;
        j["inputs"] = inputs_;
        j["outputs"] = outputs_;
        for (auto& [k, v] : extra_.items()) j[k] = v;
        j["wall_clock_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        write_json(out_ / "manifest.json", j);
    }

private:
    std::string command_;
    fs::path out_;
    std::vector<std::string> inputs_, outputs_;
    json extra_ = json::object();
    std::chrono::steady_clock::time_point start_;
};

std::ofstream open_out(const fs::path& p) {
    std::ofstream out(p);
    if (!out) throw InputError("cannot write " + p.string());
    return out;
}

QuadratureRule parse_rule(const std::string& s) {
    if (s == "centroid") return QuadratureRule::Centroid;
    if (s == "gauss") return QuadratureRule::Gauss;
    if (s == "vertex") return QuadratureRule::Vertex;
    throw InputError("unknown quadrature rule '" + s + "'");
}

DiscreteVarifold load_input(const InputOptions& opt, std::ostream& log) {
    fs::path path(opt.input);
    DiscreteVarifold V;
    if (path.extension() == ".jsonl") {
        V = read_varifold_jsonl(path);
    } else {
        V = varifold_from_mesh(read_mesh(path), parse_rule(opt.rule));
    }
    AmbientPtr amb = parse_ambient_spec(opt.ambient);
    if (amb->embedding_dim() != V.S())
        throw InputError("ambient " + amb->describe() + " lives in R^" + std::to_string(amb->embedding_dim()) +
                         " but the input is in R^" + std::to_string(V.S()));
    if (opt.conform) {
        log << "note: projecting atoms onto " << amb->describe() << '\n';
        return conform_to_ambient(V, amb);
    }
    try {
        return V.with_ambient(amb);
    } catch (const OffManifoldError& e) {
        throw InputError(std::string(e.what()) + " (use --conform to project atoms onto the ambient)");
    }
}

std::string resolve_estimator(const std::string& est, const DiscreteVarifold& V) {
    if (est == "auto") return V.mesh() && V.m() <= 2 ? "mesh" : "kernel";
    if (est != "mesh" && est != "kernel" && est != "both") throw InputError("unknown estimator '" + est + "'");
    return est;
}

CurvatureField estimate(const DiscreteVarifold& V, const std::string& est, double eps) {
    CurvatureField f = est == "kernel" ? mean_curvature_kernel(V, eps) : mean_curvature_mesh(V);
    if (V.ambient() && !V.ambient()->is_flat()) f = relative_mean_curvature(V, f);
    return f;
}

json stats(const std::vector<double>& values) {
    json j;
    if (values.empty()) {
        j["count"] = 0;
        return j;
    }
    double lo = values[0], hi = values[0], sum = 0.0;
    for (double v : values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        sum += v;
    }
    j["count"] = values.size();
    j["min"] = lo;
    j["max"] = hi;
    j["mean"] = sum / static_cast<double>(values.size());
    return j;
}

json field_summary(const DiscreteVarifold& V, const CurvatureField& f, double p) {
    std::vector<double> h, hn, res;
    for (int i = 0; i < f.size(); ++i) {
        if (!f.valid(i)) continue;
        h.push_back(f.H[i].norm());
        hn.push_back(f.H_N[i].norm());
        res.push_back(f.residual[i]);
    }
    json j;
    j["flagged"] = f.size() - f.count_valid();
    j["H_norm"] = stats(h);
    j["H_N_norm"] = stats(hn);
    j["residual"] = stats(res);
    j["energy_H_p"] = lp_norm(f, V, p, CurvatureComponent::H, true);
    j["energy_H_N_p"] = lp_norm(f, V, p, CurvatureComponent::HN, true);
    return j;
}

json varifold_summary(const DiscreteVarifold& V) {
    json j;
    j["atoms"] = V.size();
    j["m"] = V.m();
    j["S"] = V.S();
    j["mass"] = V.mass();
    j["diameter"] = support_diameter(V);
    j["median_spacing"] = median_spacing(V);
    j["ambient"] = V.ambient() ? V.ambient()->describe() : std::string("none");
    return j;
}

}  // namespace

int run_curvature(const CurvatureOptions& opt, std::ostream& log) {
    Manifest man("curvature", opt.out);
    man.input(opt.in.input);
    DiscreteVarifold V = load_input(opt.in, log);
    const std::string est = resolve_estimator(opt.estimator, V);
    const double spacing = median_spacing(V);
    const double eps = opt.eps > 0.0 ? opt.eps : 4.0 * spacing;

    json summary;
    summary["schema"] = kConfigSchema;
    summary["input"] = opt.in.input;
    summary["varifold"] = varifold_summary(V);
    summary["estimator"] = est;
    summary["p"] = opt.p;
    if (est != "mesh") summary["kernel_eps"] = eps;

    CurvatureField field = estimate(V, est == "both" ? "mesh" : est, eps);
    summary["field"] = field_summary(V, field, opt.p);
    if (est == "both") {
        CurvatureField kf = estimate(V, "kernel", eps);
        summary["kernel_field"] = field_summary(V, kf, opt.p);
        double dev = 0.0, rel = 0.0, rel_n = 0.0;
        for (int i = 0; i < V.size(); ++i) {
            if (!field.valid(i) || !kf.valid(i)) continue;
            double d = (field.H[i] - kf.H[i]).norm();
            Vec kn = kf.H[i] - V.atom(i).P.matrix() * kf.H[i];
            double dn = (field.H[i] - kn).norm();
            dev = std::max(dev, d);
            if (field.H[i].norm() > 0.0) {
                rel = std::max(rel, d / field.H[i].norm());
                rel_n = std::max(rel_n, dn / field.H[i].norm());
            }
        }
        summary["cross_check"] = {{"max_deviation", dev},
                                  {"max_relative_deviation", rel},
                                  {"max_relative_normal_deviation", rel_n}};
    }
    {
        auto out = open_out(man.output("curvature.jsonl"));
        write_curvature_jsonl(out, V, field);
    }
    if (opt.tensors) {
        const double teps = opt.tensor_eps > 0.0 ? opt.tensor_eps : 5.0 * spacing;
        TestScalarDictionary dict(V.S(), teps);
        CurvatureTensorField tf = recover_B(V, teps, dict);
        CurvatureField tr = trace_field(tf);
        std::vector<double> anorm, trace_dev;
        for (int i = 0; i < tf.size(); ++i) {
            if (!tf.valid(i)) continue;
            anorm.push_back(tf.A[i].norm());
            if (field.valid(i) && field.H[i].norm() > 0.0)
                trace_dev.push_back((tr.H[i] - field.H[i]).norm() / field.H[i].norm());
        }
        json t;
        t["eps"] = teps;
        t["flagged"] = tf.size() - static_cast<int>(anorm.size());
        t["A_norm"] = stats(anorm);
        t["trace_relative_deviation"] = stats(trace_dev);
        summary["tensors"] = t;
        auto out = open_out(man.output("tensors.jsonl"));
        write_tensor_jsonl(out, V, tf);
    }
    write_json(man.output("summary.json"), summary);
    man.write();

    const json& f = summary["field"];
    log << "atoms " << V.size() << "  mass " << format_number(V.mass()) << "  estimator " << est << '\n';
    log << "int |H|^" << opt.p << " = " << format_number(f["energy_H_p"].get<double>()) << '\n';
    if (V.ambient() && !V.ambient()->is_flat())
        log << "int |H_N|^" << opt.p << " = " << format_number(f["energy_H_N_p"].get<double>()) << '\n';
    if (summary.contains("cross_check"))
        log << "cross-check max |H_mesh - H_kernel| = "
            << format_number(summary["cross_check"]["max_deviation"].get<double>()) << '\n';
    return kExitOk;
}

int run_check(const CheckOptions& opt, std::ostream& log) {
    Manifest man("check", opt.out);
    man.input(opt.in.input);
    DiscreteVarifold V = load_input(opt.in, log);
    CurvatureField field;
    if (!opt.h_field.empty()) {
        man.input(opt.h_field);
        field = read_curvature_jsonl(opt.h_field, V.size(), V.S());
    } else {
        const std::string est = resolve_estimator(opt.estimator, V);
        field = estimate(V, est == "both" ? "mesh" : est, opt.eps > 0.0 ? opt.eps : 4.0 * median_spacing(V));
    }
    if (opt.center < 0 || opt.center >= V.size()) throw InputError("center index out of range");
    const Vec x0 = V.atom(opt.center).x;
    const double d = support_diameter(V);
    const double spacing = median_spacing(V);

    std::vector<BoundReport> rows;
    BoundsOptions bo;
    bo.link_radius = opt.link_radius;
    bo.diameter = d;
    std::vector<double> rhos = opt.rho;
    if (rhos.empty())
        for (double f : {0.05, 0.1, 0.25, 0.5, 1.0, 2.0, 10.0, 100.0}) rhos.push_back(f * d);
    for (double p : opt.p) {
        for (auto& r : check_bounds(V, field, p, bo)) {
            r.note = (r.note.empty() ? "" : r.note + "; ") + "p=" + format_number(p);
            rows.push_back(r);
        }
        for (double rho : rhos) {
            if (rho < spacing) continue;
            rows.push_back(check_fundamental(V, field, x0, rho, p));
        }
    }
    if (opt.local_sweep)
        for (const auto& sp : default_local_sweep(d)) {
            if (sp.sigma < spacing) continue;
            rows.push_back(check_local_monotonicity(V, field, x0, sp.sigma, sp.rho, sp.p));
        }

    {
        auto out = open_out(man.output("bounds.csv"));
        write_bounds_csv(out, rows);
    }
    int failed = 0, violated = 0, inapplicable = 0;
    for (const auto& r : rows) {
        failed += r.failed();
        violated += r.status == BoundReport::Status::HypothesisViolated;
        inapplicable += r.status == BoundReport::Status::Inapplicable;
    }
    json summary;
    summary["schema"] = kConfigSchema;
    summary["input"] = opt.in.input;
    summary["varifold"] = varifold_summary(V);
    summary["rows"] = rows.size();
    summary["failed"] = failed;
    summary["hypothesis_violated"] = violated;
    summary["inapplicable"] = inapplicable;
    write_json(man.output("summary.json"), summary);
    man.write();

    log << format_bounds_table(rows);
    if (violated) log << "warning: " << violated << " bound(s) skipped because their hypotheses do not hold\n";
    log << rows.size() << " rows, " << failed << " failed\n";
    return failed ? kExitBoundFailure : kExitOk;
}

int run_minimize(const MinimizeOptions& opt, std::ostream& log) {
    RunConfig cfg = load_run_config(opt.config);
    if (!cfg.subset) throw InputError("config has no constraint subset");
    if (opt.max_iter >= 0) cfg.descent.max_iter = opt.max_iter;
    if (opt.seed >= 0) cfg.descent.seed = static_cast<std::uint64_t>(opt.seed);
    for (int v = 0; v < cfg.mesh.num_vertices(); ++v)
        if (!cfg.subset->contains(cfg.mesh.vertex(v), 1e-9))
            throw InputError("initial mesh vertex " + std::to_string(v) + " lies outside " + cfg.subset->describe());
    Manifest man("minimize", opt.out);
    man.set("config", opt.config);
    man.set("seed", cfg.descent.seed);
    man.input(opt.config);
    man.input(cfg.mesh_source);

    auto trace = open_out(man.output("trace.csv"));
    auto monitors = open_out(man.output("monitors.csv"));
    trace << "iter,energy,step,backtracks,projections,grad_sup,aspect,flips,splits\n";
    monitors << "iter,mass,diameter,curvature_integral,constant,a_lower,b_lower,diameter_ok,mass_ok,hausdorff,"
                "weak_measure,weak_pair\n";
    auto on_step = [&](const TraceRow& r) {
        trace << r.iter << ',' << format_number(r.energy) << ',' << format_number(r.step) << ',' << r.backtracks << ','
              << r.projections << ',' << format_number(r.grad_sup) << ',' << format_number(r.aspect) << ',' << r.flips
              << ',' << r.splits << '\n';
        const auto& m = r.monitor;
        const auto& c = r.convergence;
        monitors << r.iter << ',' << format_number(m.mass) << ',' << format_number(m.diameter) << ','
                 << format_number(m.curvature_integral) << ',' << format_number(m.constant) << ','
                 << format_number(m.a_lower) << ',' << format_number(m.b_lower) << ',' << int(m.diameter_ok) << ','
                 << int(m.mass_ok) << ',' << format_number(c.hausdorff) << ',' << format_number(c.weak_measure) << ','
                 << format_number(c.weak_pair) << '\n';
        trace.flush();
        monitors.flush();
    };
    DescentResult res = minimize(cfg.mesh, cfg.energy, *cfg.subset, cfg.descent, on_step);
    write_mesh(man.output("final.off"), res.mesh);

    const TraceRow& last = res.trace.back();
    json summary;
    summary["schema"] = kConfigSchema;
    summary["energy_spec"] = cfg.energy.describe();
    summary["subset"] = cfg.subset->describe();
    summary["initial_energy"] = res.trace.front().energy;
    summary["final_energy"] = last.energy;
    summary["final_mass"] = last.monitor.mass;
    summary["final_diameter"] = last.monitor.diameter;
    summary["bounds_ok"] = res.bounds_ok;
    summary["monotone"] = res.monotone;
    summary["iterations"] = res.iterations;
    summary["stop_reason"] = res.stop_reason;
    summary["aborted"] = res.aborted;
    summary["gradient_check_rel_error"] = res.gradient_check;
    summary["final_hausdorff_step"] = last.convergence.hausdorff;
    summary["final_weak_measure_step"] = last.convergence.weak_measure;
    summary["final_aspect_ratio"] = last.aspect;
    if (res.mesh.simplex_dim() == 2 && boundary_vertices(res.mesh) == std::vector<bool>(res.mesh.num_vertices(), false))
        summary["final_sphericity"] = sphericity(res.mesh);
    write_json(man.output("summary.json"), summary);
    man.write();

    log << "stop: " << res.stop_reason << " after " << res.iterations << " iterations\n";
    log << "energy " << format_number(res.trace.front().energy) << " -> " << format_number(last.energy) << '\n';
    log << "non-degeneracy monitors " << (res.bounds_ok ? "pass" : "FAIL") << '\n';
    if (res.aborted) return kExitAbort;
    return res.bounds_ok ? kExitOk : kExitBoundFailure;
}

int run_report(const ReportOptions& opt, std::ostream& log) {
    Manifest man("report", opt.out);
    man.input(opt.in.input);
    DiscreteVarifold V = load_input(opt.in, log);
    const std::string est = resolve_estimator(opt.estimator, V);
    const double spacing = median_spacing(V);
    CurvatureField field = estimate(V, est == "both" ? "mesh" : est, opt.eps > 0.0 ? opt.eps : 4.0 * spacing);
    if (opt.center < 0 || opt.center >= V.size()) throw InputError("center index out of range");
    const Vec x0 = V.atom(opt.center).x;
    const double d = support_diameter(V);

    std::vector<double> radii = opt.radii;
    if (radii.empty()) {
        const double lo = 3.0 * spacing, hi = 0.5 * d;
        if (!(hi > lo)) throw InputError("support too small relative to its spacing for a profile");
        for (int k = 0; k < 24; ++k) radii.push_back(lo * std::pow(hi / lo, k / 23.0));
    }
    Cutoff cut;
    if (opt.cutoff == "quartic")
        cut.profile = Cutoff::Profile::QuarticBump;
    else if (opt.cutoff == "cubic")
        cut.profile = Cutoff::Profile::PiecewiseCubic;
    else
        throw InputError("unknown cutoff '" + opt.cutoff + "'");
    cut.sharpness = opt.sharpness;
    MonotoneProfile prof = monotone_profile(V, field, x0, radii, cut);
    {
        auto out = open_out(man.output("profile.csv"));
        out << "rho,I,L,J,dI,dJ,residual,scaled_density\n";
        for (std::size_t k = 0; k < prof.radii.size(); ++k) {
            double rho = prof.radii[k];
            out << format_number(rho) << ',' << format_number(prof.I[k]) << ',' << format_number(prof.L[k]) << ','
                << format_number(prof.J[k]) << ',' << format_number(prof.dI[k]) << ',' << format_number(prof.dJ[k])
                << ',' << format_number(prof.residual[k]) << ','
                << format_number(prof.I[k] / (unit_ball_volume(V.m()) * std::pow(rho, V.m()))) << '\n';
        }
        auto fd = open_out(man.output("profile_fd.csv"));
        fd << "rho_mid,residual_fd\n";
        for (std::size_t k = 0; k < prof.residual_fd.size(); ++k)
            fd << format_number(0.5 * (prof.radii[k] + prof.radii[k + 1])) << ','
               << format_number(prof.residual_fd[k]) << '\n';
    }
    json summary;
    summary["schema"] = kConfigSchema;
    summary["input"] = opt.in.input;
    summary["varifold"] = varifold_summary(V);
    summary["estimator"] = est;
    summary["relative_diffmf_residual"] = relative_diffmf_residual(prof);

    std::vector<double> drad;
    const double top = std::min(0.25 * d, radii.back());
    for (int k = 0; k < 8; ++k) {
        double r = top * std::pow(0.8, k);
        if (r >= 3.0 * spacing) drad.push_back(r);
    }
    if (drad.size() >= 3) {
        DensityEstimate de = density_estimate(V, x0, drad);
        auto out = open_out(man.output("density.csv"));
        out << "rho,ratio\n";
        for (std::size_t k = 0; k < de.radii.size(); ++k)
            out << format_number(de.radii[k]) << ',' << format_number(de.ratios[k]) << '\n';
        summary["density_estimate"] = de.estimate;
        log << "density estimate " << format_number(de.estimate) << '\n';
    } else {
        log << "warning: support too coarse for a density estimate\n";
    }
    write_json(man.output("summary.json"), summary);
    man.write();
    log << "relative DiffMF residual " << format_number(summary["relative_diffmf_residual"].get<double>()) << '\n';
    return kExitOk;
}

}  // namespace varimin::cli
