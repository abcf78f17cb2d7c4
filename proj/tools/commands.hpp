#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace varimin::cli {

// Process exit codes.
enum ExitCode : int { kExitOk = 0, kExitBoundFailure = 1, kExitInputError = 2, kExitAbort = 3 };

struct InputOptions {
    std::string input;                 // .off / .obj mesh or .jsonl atom list
    std::string ambient = "euclidean3";
    std::string rule = "centroid";     // centroid | gauss | vertex
    bool conform = false;              // project atoms onto a curved ambient
};

struct CurvatureOptions {
    InputOptions in;
    std::string estimator = "auto";    // auto | mesh | kernel | both
    double eps = 0.0;                  // kernel radius; 0 = 4 x median spacing
    bool tensors = false;              // weak-form B and A recovery
    double tensor_eps = 0.0;           // 0 = 5 x median spacing
    double p = 3.0;
    std::string out = "out";
};

struct CheckOptions {
    InputOptions in;
    std::string estimator = "auto";
    double eps = 0.0;
    std::string h_field;               // JSONL with "H" per atom, overrides the estimator
    std::vector<double> p{2.5, 3.0, 4.0};
    std::vector<double> rho;           // fundamental-inequality radii; empty = default sweep
    bool local_sweep = true;
    int center = 0;
    double link_radius = 0.0;
    std::string out = "out";
};

struct MinimizeOptions {
    std::string config;
    std::string out = "out";
    int max_iter = -1;                 // overrides the config when >= 0
    std::int64_t seed = -1;            // overrides the config when >= 0
};

struct ReportOptions {
    InputOptions in;
    std::string estimator = "auto";
    double eps = 0.0;
    int center = 0;
    std::vector<double> radii;         // empty = 24 radii from 3 spacings to diam / 2
    std::string cutoff = "quartic";    // quartic | cubic
    double sharpness = 1.0;
    std::string out = "out";
};

// Each command writes its files under `out` plus manifest.json, prints a
// short report to `log`, and returns an ExitCode. Library errors propagate
// as exceptions; run_guarded maps them to exit codes.
int run_curvature(const CurvatureOptions& opt, std::ostream& log);
int run_check(const CheckOptions& opt, std::ostream& log);
int run_minimize(const MinimizeOptions& opt, std::ostream& log);
int run_report(const ReportOptions& opt, std::ostream& log);

template <class F>
int run_guarded(F&& f, std::ostream& err);

}  // namespace varimin::cli

#include "varimin/error.hpp"

#include <exception>
#include <ostream>

namespace varimin::cli {

template <class F>
int run_guarded(F&& f, std::ostream& err) {
    try {
        return f();
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const PreconditionError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const RunAbort& e) {
        err << "aborted: " << e.what() << '\n';
        return kExitAbort;
    } catch (const GradientCheckError& e) {
        err << "aborted: " << e.what() << '\n';
        return kExitAbort;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }
}

}  // namespace varimin::cli
