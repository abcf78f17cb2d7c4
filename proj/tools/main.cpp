#include "commands.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace varimin::cli;

namespace {

void add_input(CLI::App* cmd, InputOptions& in) {
    cmd->add_option("input", in.input, "Mesh (.off, .obj) or atom list (.jsonl)")->required();
    cmd->add_option("--ambient", in.ambient, "euclidean<S>, sphere<n>[:r=<r>] or <base>xR<s>")->capture_default_str();
    cmd->add_option("--rule", in.rule, "Quadrature rule for meshes: centroid, gauss, vertex")->capture_default_str();
    cmd->add_flag("--conform", in.conform, "Project atoms onto a curved ambient");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"varimin: discrete varifold curvature, bounds and curvature-energy minimization"};
    app.require_subcommand(1);
    app.set_version_flag("--version", VARIMIN_VERSION_STRING);

    CurvatureOptions cur;
    auto* c = app.add_subcommand("curvature", "Estimate mean curvature (and optionally B, A) per atom");
    add_input(c, cur.in);
    c->add_option("--estimator", cur.estimator, "auto, mesh, kernel or both")->capture_default_str();
    c->add_option("--eps", cur.eps, "Kernel radius (default 4 x median spacing)");
    c->add_flag("--tensors", cur.tensors, "Recover B and A from the weak identity");
    c->add_option("--tensor-eps", cur.tensor_eps, "Recovery radius (default 5 x median spacing)");
    c->add_option("--p", cur.p, "Exponent for the reported curvature integrals")->capture_default_str();
    c->add_option("--out", cur.out, "Output directory")->capture_default_str();

    CheckOptions chk;
    auto* k = app.add_subcommand("check", "Evaluate monotonicity and diameter/mass bounds");
    add_input(k, chk.in);
    k->add_option("--estimator", chk.estimator, "auto, mesh or kernel")->capture_default_str();
    k->add_option("--eps", chk.eps, "Kernel radius");
    k->add_option("--h-field", chk.h_field, "JSONL mean curvature field overriding the estimator");
    k->add_option("--p", chk.p, "Exponents")->delimiter(',');
    k->add_option("--rho", chk.rho, "Radii for the fundamental inequality")->delimiter(',');
    k->add_flag("!--no-local-sweep", chk.local_sweep, "Skip the local monotonicity sweep");
    k->add_option("--center", chk.center, "Atom index of the ball center")->capture_default_str();
    k->add_option("--link-radius", chk.link_radius, "Connectivity radius for point clouds");
    k->add_option("--out", chk.out, "Output directory")->capture_default_str();

    MinimizeOptions mn;
    auto* m = app.add_subcommand("minimize", "Projected descent of a curvature energy from a run config");
    m->add_option("config", mn.config, "Run config (JSON, schema 1)")->required();
    m->add_option("--out", mn.out, "Output directory")->capture_default_str();
    m->add_option("--max-iter", mn.max_iter, "Override max_iter");
    m->add_option("--seed", mn.seed, "Override seed");

    ReportOptions rep;
    auto* r = app.add_subcommand("report", "Emit monotonicity profile and density plot data");
    add_input(r, rep.in);
    r->add_option("--estimator", rep.estimator, "auto, mesh or kernel")->capture_default_str();
    r->add_option("--eps", rep.eps, "Kernel radius");
    r->add_option("--center", rep.center, "Atom index of the center")->capture_default_str();
    r->add_option("--radii", rep.radii, "Profile radii")->delimiter(',');
    r->add_option("--cutoff", rep.cutoff, "quartic or cubic")->capture_default_str();
    r->add_option("--sharpness", rep.sharpness, "Cutoff transition width in (0, 1]")->capture_default_str();
    r->add_option("--out", rep.out, "Output directory")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitInputError;
    }

    if (*c) return run_guarded([&] { return run_curvature(cur, std::cout); }, std::cerr);
    if (*k) return run_guarded([&] { return run_check(chk, std::cout); }, std::cerr);
    if (*m) return run_guarded([&] { return run_minimize(mn, std::cout); }, std::cerr);
    return run_guarded([&] { return run_report(rep, std::cout); }, std::cerr);
}
