// Acceptance suite: one PASS/FAIL line per criterion.
//   varimin_acceptance [--only N] [--cli PATH] [--work DIR]

#include "varimin/ambient.hpp"
#include "varimin/config.hpp"
#include "varimin/curvature_recovery.hpp"
#include "varimin/descent.hpp"
#include "varimin/energy.hpp"
#include "varimin/first_variation.hpp"
#include "varimin/mesh_energy.hpp"
#include "varimin/mesh_io.hpp"
#include "varimin/monotonicity.hpp"
#include "varimin/shapes.hpp"
#include "varimin/subset.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace varimin;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

fs::path g_cli;
fs::path g_work = fs::temp_directory_path() / "varimin_acceptance";
fs::path g_configs;

// Unit-sphere second fundamental form A^k_ij = -P_ij n_k, n the atom's unit
// plane normal oriented along x.
Tensor3 sphere_A(const VarifoldAtom& a) {
    Mat P = a.P.matrix();
    Eigen::SelfAdjointEigenSolver<Mat> es(P);
    Vec n = es.eigenvectors().col(0);
    if (n.dot(a.x) < 0.0) n = -n;
    Tensor3 A(3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) A(i, j, k) = -P(i, j) * n(k);
    return A;
}

// Symmetric in (i, j), tangent in i and j, normal in k.
Tensor3 proper_form(const Tensor3& A, const Mat& P) {
    const int S = A.dim();
    Mat N = Mat::Identity(S, S) - P;
    Tensor3 out(S);
    for (int i = 0; i < S; ++i)
        for (int j = 0; j < S; ++j)
            for (int k = 0; k < S; ++k) {
                double v = 0.0;
                for (int a = 0; a < S; ++a)
                    for (int b = 0; b < S; ++b)
                        for (int c = 0; c < S; ++c)
                            v += 0.5 * (P(i, a) * P(j, b) + P(j, a) * P(i, b)) * N(k, c) * A(a, b, c);
                out(i, j, k) = v;
            }
    return out;
}

Outcome c1_curvature_oracle() {
    auto t0 = std::chrono::steady_clock::now();
    DiscreteVarifold V = varifold_from_mesh(icosphere(4));
    CurvatureField mesh = mean_curvature_mesh(V);
    double worst = 0.0;
    for (int i = 0; i < V.size(); ++i) worst = std::max(worst, std::abs(mesh.H[i].norm() - 2.0) / 2.0);
    double E = lp_norm(mesh, V, 3.0);
    double e_rel = std::abs(E - 32.0 * kPi) / (32.0 * kPi);
    CurvatureField ker = mean_curvature_kernel(V, 0.15);
    double kworst = 0.0;
    for (int i = 0; i < V.size(); ++i) kworst = std::max(kworst, std::abs(ker.H[i].norm() - 2.0) / 2.0);
    double t = seconds_since(t0);
    return {worst <= 0.02 && e_rel <= 0.05 && kworst <= 0.05 && t < 5.0,
            fmt("mesh max||H|-2|/2=%.4f  int|H|^3=%.4f (rel %.4f)  kernel max rel=%.4f  %.2fs", worst, E, e_rel,
                kworst, t)};
}

Outcome c2_weak_identity() {
    Mat centers = icosphere(1).vertices();
    TestScalarDictionary dict(3, 0.5);
    std::vector<double> h, r;
    double control = 0.0, at4 = 0.0;
    for (int level = 3; level <= 5; ++level) {
        SimplicialMesh mesh = icosphere(level);
        DiscreteVarifold V = varifold_from_mesh(mesh);
        std::vector<Tensor3> B;
        for (const auto& a : V.atoms()) B.push_back(B_from_A_atom(sphere_A(a), a.P.matrix(), nullptr));
        h.push_back(mean_edge_length(mesh));
        r.push_back(vc_residual(V, B, dict, centers));
        if (level == 4) {
            at4 = r.back();
            control = vc_residual(V, std::vector<Tensor3>(V.size(), Tensor3(3)), dict, centers);
        }
    }
    // Least-squares slope of log r against log h.
    double mx = 0, my = 0;
    for (std::size_t k = 0; k < h.size(); ++k) mx += std::log(h[k]), my += std::log(r[k]);
    mx /= h.size();
    my /= h.size();
    double sxy = 0, sxx = 0;
    for (std::size_t k = 0; k < h.size(); ++k) {
        sxy += (std::log(h[k]) - mx) * (std::log(r[k]) - my);
        sxx += (std::log(h[k]) - mx) * (std::log(h[k]) - mx);
    }
    double order = sxy / sxx;
    return {order >= 0.9 && control >= 10.0 * at4,
            fmt("residuals %.3e %.3e %.3e  order %.3f  control/analytic at L4 %.1f", r[0], r[1], r[2], order,
                control / at4)};
}

Outcome c3_trace_identity() {
    struct Case {
        const char* name;
        SimplicialMesh mesh;
        double eps;
    };
    std::vector<Case> cases = {{"sphere", icosphere(4), 0.3}, {"torus", torus(2.0, 0.75, 128, 48), 0.3}};
    std::string detail;
    bool ok = true;
    double roundtrip = 0.0;
    for (auto& c : cases) {
        DiscreteVarifold V = varifold_from_mesh(c.mesh);
        CurvatureField H = mean_curvature_mesh(V);
        TestScalarDictionary dict(3, c.eps);
        CurvatureTensorField tf = recover_B(V, c.eps, dict);
        CurvatureField tr = trace_field(tf);
        double worst = 0.0;
        int flagged = 0;
        for (int i = 0; i < V.size(); ++i) {
            if (!tf.valid(i)) {
                ++flagged;
                continue;
            }
            worst = std::max(worst, (tr.H[i] - H.H[i]).norm() / H.H[i].norm());
        }
        ok = ok && worst <= 0.10 && flagged == 0;
        CurvatureTensorField A = tf;
        for (int i = 0; i < V.size(); ++i) A.A[i] = proper_form(tf.A[i], V.atom(i).P.matrix());
        CurvatureTensorField B2 = B_from_A(A, V);
        CurvatureTensorField A2 = A_from_B(B2, V);
        CurvatureTensorField B3 = B_from_A(A2, V);
        for (int i = 0; i < V.size(); ++i)
            roundtrip = std::max({roundtrip, (A2.A[i] - A.A[i]).norm(), (B3.B[i] - B2.B[i]).norm()});
        detail += fmt("%s max trace dev %.4f flagged %d; ", c.name, worst, flagged);
    }
    ok = ok && roundtrip <= 1e-10;
    return {ok, detail + fmt("A<->B roundtrip %.2e", roundtrip)};
}

Outcome c4_monotonicity() {
    std::vector<std::pair<const char*, SimplicialMesh>> shapes = {
        {"sphere", icosphere(4)}, {"torus", torus(2.0, 0.75, 96, 32)}, {"ellipsoid", ellipsoid(4, 1.0, 1.0, 0.5)}};
    int passed = 0, total = 0;
    for (auto& [name, mesh] : shapes) {
        DiscreteVarifold V = varifold_from_mesh(mesh);
        CurvatureField H = mean_curvature_mesh(V);
        const double d = support_diameter(V);
        const Vec x0 = V.atom(0).x;
        for (const auto& sp : default_local_sweep(d)) {
            ++total;
            passed += check_local_monotonicity(V, H, x0, sp.sigma, sp.rho, sp.p).pass();
        }
    }
    std::vector<double> res;
    for (int level = 3; level <= 5; ++level) {
        DiscreteVarifold V = varifold_from_mesh(icosphere(level));
        CurvatureField H = mean_curvature_mesh(V);
        std::vector<double> radii;
        for (int k = 0; k < 12; ++k) radii.push_back(0.3 + 0.05 * k);
        res.push_back(relative_diffmf_residual(monotone_profile(V, H, V.atom(0).x, radii)));
    }
    // At least halving per halving of h: ratio >= 2 x 0.8.
    double q1 = res[0] / res[1], q2 = res[1] / res[2];
    bool rate = q1 >= 1.6 && q2 >= 1.6;
    bool within_band = q1 <= 2.4 && q2 <= 2.4;
    return {passed == total && total == 60 && rate,
            fmt("sweep %d/%d  DiffMF residual %.3e %.3e %.3e (ratios %.2f %.2f, %s 2 +- 20%%)", passed, total,
                res[0], res[1], res[2], q1, q2, within_band ? "inside" : "faster than")};
}

Outcome c5_fundamental() {
    std::vector<std::pair<const char*, SimplicialMesh>> shapes = {{"sphere", icosphere(4)},
                                                                  {"sphere r=0.5", icosphere(4, 0.5)},
                                                                  {"sphere r=2", icosphere(4, 2.0)},
                                                                  {"torus", torus(2.0, 0.75, 96, 32)},
                                                                  {"ellipsoid", ellipsoid(4, 1.0, 1.0, 0.5)}};
    int passed = 0, total = 0;
    for (auto& [name, mesh] : shapes) {
        DiscreteVarifold V = varifold_from_mesh(mesh);
        CurvatureField H = mean_curvature_mesh(V);
        const double d = support_diameter(V);
        const double h = median_spacing(V);
        for (double p : {2.05, 2.5, 3.0, 4.0})
            for (double f : {0.05, 0.1, 0.25, 0.5, 1.0, 2.0, 10.0}) {
                if (f * d < h) continue;
                for (int c : {0, V.size() / 2}) {
                    ++total;
                    passed += check_fundamental(V, H, V.atom(c).x, f * d, p).pass();
                }
            }
    }
    double ratio = fundamental_constant(2.05, 2) / fundamental_constant(3.0, 2);
    return {passed == total && ratio > 1e4,
            fmt("inequality %d/%d  C(2.05,2)/C(3,2) = %.3f (required > 1e4)", passed, total, ratio)};
}

Outcome c6_lemmas() {
    auto t0 = std::chrono::steady_clock::now();
    double margin = 0.0;
    int passed = 0, total = 0;
    std::string detail;
    for (double r : {0.5, 1.0, 2.0}) {
        DiscreteVarifold V = varifold_from_mesh(icosphere(4, r));
        CurvatureField H = mean_curvature_mesh(V);
        auto rows = check_bounds(V, H, 3.0);
        if (r == 1.0) margin = rows[0].margin;
        for (std::size_t k = 1; k < rows.size(); ++k) {
            ++total;
            passed += rows[k].pass();
        }
    }
    double t = seconds_since(t0);
    return {std::abs(margin - 8.0) <= 0.4 && passed == total && t < 10.0,
            fmt("unit-sphere margin %.4f (8 +- 5%%)  remaining lemmas %d/%d  %.2fs", margin, passed, total, t)};
}

Outcome c7_totally_geodesic() {
    AmbientPtr sphere = make_sphere(2);
    DiscreteVarifold V = conform_to_ambient(varifold_from_mesh(latitude_circle(512, 0.0)), sphere);
    CurvatureField H = relative_mean_curvature(V, mean_curvature_mesh(V));
    double hn = 0.0, h_dev = 0.0;
    for (int i = 0; i < V.size(); ++i) {
        hn = std::max(hn, H.H_N[i].norm());
        h_dev = std::max(h_dev, std::abs(H.H[i].norm() - 1.0));
    }
    const double eps = 0.2;
    TestScalarDictionary dict(3, eps);
    CurvatureTensorField A = A_from_B(recover_B(V, eps, dict), V);
    double anorm = 0.0;
    int flagged = 0;
    for (int i = 0; i < V.size(); ++i) {
        if (!A.valid(i)) {
            ++flagged;
            continue;
        }
        anorm = std::max(anorm, A.A[i].norm());
    }
    const double scale = sphere->correction_bound(1);
    return {anorm <= 0.10 * scale && hn <= 0.05 && h_dev <= 0.05 && flagged == 0,
            fmt("max|A| %.4f (scale %.1f, flagged %d)  max|H_N| %.4f  max||H|-1| %.4f", anorm, scale, flagged, hn,
                h_dev)};
}

Outcome c8_gradient() {
    double worst = 0.0;
    int runs = 0;
    for (EnergyForm form : {EnergyForm::H, EnergyForm::A}) {
        EnergySpec spec;
        spec.form = form;
        std::vector<SimplicialMesh> meshes = {jitter(icosphere(2), 0.1, 11), jitter(ellipsoid(2, 1.0, 0.8, 0.5), 0.1, 12),
                                              jitter(torus(2.0, 0.75, 24, 10), 0.1, 13)};
        for (std::size_t k = 0; k < meshes.size(); ++k) {
            MeshEnergy E(meshes[k], spec);
            auto chk = E.check_gradient(meshes[k].vertices(), 12, 100 + k);
            worst = std::max(worst, chk.rel_error);
            ++runs;
        }
    }
    return {worst <= 1e-4, fmt("%d meshes x 2 forms, max relative error %.3e", runs / 2, worst)};
}

struct RunCache {
    bool done = false;
    DescentResult result;
    double seconds = 0.0;
    bool every_step_ok = true;
};

RunCache& ellipsoid_run() {
    static RunCache cache;
    if (cache.done) return cache;
    RunConfig cfg = load_run_config(g_configs / "ellipsoid_ball.json");
    auto t0 = std::chrono::steady_clock::now();
    cache.result = minimize(cfg.mesh, cfg.energy, *cfg.subset, cfg.descent,
                            [&](const TraceRow& r) { cache.every_step_ok = cache.every_step_ok && r.monitor.ok(); });
    cache.seconds = seconds_since(t0);
    cache.done = true;
    return cache;
}

Outcome c9_minimization() {
    RunCache& run = ellipsoid_run();
    const DescentResult& r = run.result;
    bool monotone = true;
    for (std::size_t k = 1; k < r.trace.size(); ++k) monotone = monotone && r.trace[k].energy <= r.trace[k - 1].energy;
    double E = r.final_energy();
    double sph = sphericity(r.mesh);
    bool ok = !r.aborted && E <= 1.10 * 32.0 * kPi && sph >= 0.99 && r.iterations <= 5000 && run.seconds < 300.0 &&
              monotone && run.every_step_ok;
    return {ok, fmt("E %.4f (<= %.4f)  sphericity %.5f  %d iters  %.2fs  monotone %d  monitors %d (%s)", E,
                    1.10 * 32.0 * kPi, sph, r.iterations, run.seconds, int(monotone), int(run.every_step_ok),
                    r.stop_reason.c_str())};
}

Outcome c10_convergence() {
    const DescentResult& r = ellipsoid_run().result;
    const auto& c = r.trace.back().convergence;
    return {c.hausdorff < 1e-3 && c.weak_measure < 1e-3 && c.weak_pair < 1e-3,
            fmt("final step Hausdorff %.3e  weak measure %.3e  weak pair %.3e", c.hausdorff, c.weak_measure,
                c.weak_pair)};
}

std::uint64_t fnv1a(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::uint64_t h = 1469598103934665603ull;
    char ch;
    while (in.get(ch)) {
        h ^= static_cast<unsigned char>(ch);
        h *= 1099511628211ull;
    }
    return h;
}

Outcome c11_determinism() {
    if (g_cli.empty()) return {false, "no --cli given"};
    std::vector<std::vector<std::pair<std::string, std::uint64_t>>> hashes;
    for (int k = 0; k < 2; ++k) {
        fs::path out = g_work / ("determinism_" + std::to_string(k));
        fs::remove_all(out);
        std::string cmd = "\"" + g_cli.string() + "\" minimize \"" + (g_configs / "ellipsoid_ball.json").string() +
                          "\" --out \"" + out.string() + "\" > /dev/null";
        if (std::system(cmd.c_str()) != 0) return {false, "minimize exited nonzero"};
        std::vector<std::pair<std::string, std::uint64_t>> h;
        for (const char* name : {"trace.csv", "monitors.csv", "final.off", "summary.json"})
            h.emplace_back(name, fnv1a(out / name));
        hashes.push_back(h);
    }
    bool same = hashes[0] == hashes[1];
    return {same, fmt("trace/monitors/final/summary hashes %s (final.off %016llx)", same ? "identical" : "differ",
                      static_cast<unsigned long long>(hashes[0][2].second))};
}

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "--only" && i + 1 < argc) only = std::atoi(argv[++i]);
        else if (a == "--cli" && i + 1 < argc) g_cli = argv[++i];
        else if (a == "--work" && i + 1 < argc) g_work = argv[++i];
        else if (a == "--configs" && i + 1 < argc) g_configs = argv[++i];
        else {
            std::cerr << "usage: varimin_acceptance [--only N] [--cli PATH] [--configs DIR] [--work DIR]\n";
            return 2;
        }
    }
    if (g_configs.empty()) g_configs = VARIMIN_CONFIG_DIR;
    fs::create_directories(g_work);

    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"curvature oracle", c1_curvature_oracle},
        {"weak-identity convergence", c2_weak_identity},
        {"trace identity", c3_trace_identity},
        {"monotonicity suite", c4_monotonicity},
        {"fundamental inequality", c5_fundamental},
        {"lemma bounds", c6_lemmas},
        {"totally geodesic detection", c7_totally_geodesic},
        {"gradient check", c8_gradient},
        {"minimization run", c9_minimization},
        {"convergence monitors", c10_convergence},
        {"determinism", c11_determinism},
    };
    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        if (only && static_cast<int>(k) + 1 != only) continue;
        Outcome o;
        try {
            o = criteria[k].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::printf("[%s] C%-2zu %-28s %s\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first, o.detail.c_str());
        std::fflush(stdout);
    }
    return failed ? 1 : 0;
}
