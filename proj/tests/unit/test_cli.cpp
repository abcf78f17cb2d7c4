#include "varimin/mesh_io.hpp"
#include "varimin/shapes.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <sys/wait.h>

using namespace varimin;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path kWork = fs::path(VARIMIN_TEST_WORK_DIR) / "cli";

int run(const std::string& args) {
    std::string cmd = std::string("\"") + VARIMIN_CLI + "\" " + args + " > \"" + (kWork / "stdout.txt").string() +
                      "\" 2> \"" + (kWork / "stderr.txt").string() + "\"";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json load(const fs::path& p) { return json::parse(slurp(p)); }

struct Fixtures {
    Fixtures() {
        fs::remove_all(kWork);
        fs::create_directories(kWork);
        write_mesh(kWork / "sphere4.off", icosphere(4));
        Vec shift(3);
        shift << 5, 0, 0;
        write_mesh(kWork / "two_spheres.off", concatenate(icosphere(3), transformed(icosphere(3), 1.0, shift)));
        write_mesh(kWork / "circle.off", latitude_circle(512, 0.0));
    }
};

const Fixtures& fixtures() {
    static Fixtures f;
    return f;
}

fs::path write_config(const std::string& name, const std::string& body) {
    fs::path p = kWork / name;
    std::ofstream(p) << body;
    return p;
}

}  // namespace

TEST_CASE("curvature on a sphere") {
    fixtures();
    fs::path out = kWork / "curv";
    REQUIRE(run("curvature \"" + (kWork / "sphere4.off").string() + "\" --ambient euclidean3 --p 3 --estimator both "
                "--tensors --out \"" + out.string() + "\"") == 0);
    json s = load(out / "summary.json");
    CHECK(s["field"]["energy_H_p"].get<double>() == doctest::Approx(32 * std::numbers::pi).epsilon(0.05));
    CHECK(s.contains("cross_check"));
    CHECK(s["cross_check"]["max_relative_normal_deviation"].get<double>() < 0.1);
    CHECK(fs::exists(out / "curvature.jsonl"));
    CHECK(fs::exists(out / "tensors.jsonl"));
    json m = load(out / "manifest.json");
    for (const auto& f : m["outputs"]) CHECK(fs::exists(out / f.get<std::string>()));
}

TEST_CASE("curvature input errors") {
    fixtures();
    CHECK(run("curvature /nonexistent/mesh.off --out \"" + (kWork / "x").string() + "\"") == 2);
    CHECK(slurp(kWork / "stderr.txt").find("/nonexistent/mesh.off") != std::string::npos);
    CHECK(run("curvature \"" + (kWork / "circle.off").string() + "\" --ambient sphere2") == 2);
    CHECK(slurp(kWork / "stderr.txt").find("--conform") != std::string::npos);
    CHECK(run("curvature --bogus") == 2);
}

TEST_CASE("great circle with a sphere ambient") {
    fixtures();
    fs::path out = kWork / "circle";
    REQUIRE(run("curvature \"" + (kWork / "circle.off").string() + "\" --ambient sphere2 --conform --out \"" +
                out.string() + "\"") == 0);
    json s = load(out / "summary.json");
    CHECK(s["field"]["H_norm"]["mean"].get<double>() == doctest::Approx(1.0).epsilon(0.05));
    CHECK(s["field"]["H_N_norm"]["max"].get<double>() < 0.05);
}

TEST_CASE("check exit codes") {
    fixtures();
    fs::path sphere = kWork / "sphere4.off";
    CHECK(run("check \"" + sphere.string() + "\" --p 2.5,3,4 --out \"" + (kWork / "chk").string() + "\"") == 0);
    CHECK(fs::exists(kWork / "chk" / "bounds.csv"));

    // Zeroed curvature field.
    {
        std::ifstream in(kWork / "curv" / "curvature.jsonl");
        std::ofstream zero(kWork / "zero.jsonl");
        std::string line;
        while (std::getline(in, line)) {
            json j = json::parse(line);
            j["H"] = {0.0, 0.0, 0.0};
            j.erase("H_N");
            zero << j.dump() << '\n';
        }
    }
    CHECK(run("check \"" + sphere.string() + "\" --h-field \"" + (kWork / "zero.jsonl").string() + "\" --out \"" +
              (kWork / "chk_zero").string() + "\"") == 1);

    CHECK(run("check \"" + (kWork / "two_spheres.off").string() + "\" --out \"" + (kWork / "chk_two").string() +
              "\"") == 0);
    CHECK(slurp(kWork / "stdout.txt").find("hypothesis") != std::string::npos);
    CHECK(slurp(kWork / "chk_two" / "bounds.csv").find("hypothesis-violated") != std::string::npos);
}

TEST_CASE("minimize") {
    fixtures();
    fs::path cfg = write_config("ell.json", R"({"schema": 1, "energy": {"form": "H", "p": 3},
        "subset": {"kind": "ball", "R": 1.0}, "mesh": {"shape": "ellipsoid", "level": 2, "axes": [1, 1, 0.5]},
        "max_iter": 40})");
    fs::path out = kWork / "min";
    REQUIRE(run("minimize \"" + cfg.string() + "\" --out \"" + out.string() + "\"") == 0);
    json s = load(out / "summary.json");
    for (const char* key : {"final_energy", "final_mass", "final_diameter", "bounds_ok", "iterations"})
        CHECK(s.contains(key));
    CHECK(s["bounds_ok"].get<bool>());
    CHECK(fs::exists(out / "trace.csv"));
    CHECK(fs::exists(out / "monitors.csv"));

    fs::path zero = kWork / "min0";
    REQUIRE(run("minimize \"" + cfg.string() + "\" --max-iter 0 --out \"" + zero.string() + "\"") == 0);
    SimplicialMesh initial = ellipsoid(2, 1.0, 1.0, 0.5);
    CHECK(read_mesh(zero / "final.off").vertices() == initial.vertices());

    fs::path bad = write_config("outside.json", R"({"schema": 1, "energy": {"p": 3},
        "subset": {"kind": "ball", "R": 0.5}, "mesh": {"shape": "icosphere", "level": 2}})");
    CHECK(run("minimize \"" + bad.string() + "\" --out \"" + (kWork / "bad").string() + "\"") == 2);
    CHECK_FALSE(fs::exists(kWork / "bad" / "trace.csv"));

    fs::path abort = write_config("abort.json", R"({"schema": 1, "energy": {"p": 3},
        "subset": {"kind": "ball", "R": 1.0}, "mesh": {"shape": "ellipsoid", "level": 2, "axes": [1, 1, 0.5]},
        "descent": {"remesh": false, "abort_aspect": 1.0}})");
    CHECK(run("minimize \"" + abort.string() + "\" --out \"" + (kWork / "abort").string() + "\"") == 3);
    CHECK(fs::exists(kWork / "abort" / "trace.csv"));
}

TEST_CASE("report") {
    fixtures();
    fs::path out = kWork / "rep";
    REQUIRE(run("report \"" + (kWork / "sphere4.off").string() + "\" --out \"" + out.string() + "\"") == 0);
    json s = load(out / "summary.json");
    CHECK(s["relative_diffmf_residual"].get<double>() < 0.1);
    CHECK(s["density_estimate"].get<double>() == doctest::Approx(1.0).epsilon(0.05));
    CHECK(fs::exists(out / "profile.csv"));
    CHECK(fs::exists(out / "density.csv"));
}
