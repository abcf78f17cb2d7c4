#include "varimin/config.hpp"

#include "varimin/error.hpp"
#include "varimin/mesh_io.hpp"
#include "varimin/shapes.hpp"

#include <json.hpp>

#include <fstream>
#include <regex>
#include <sstream>

namespace varimin {

namespace {

using nlohmann::json;

Vec to_vec(const json& j) {
    if (!j.is_array()) throw InputError("expected a numeric array");
    Vec v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
    return v;
}

AmbientPtr parse_ambient_json(const json& j) {
    if (j.is_string()) return parse_ambient_spec(j.get<std::string>());
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "euclidean") return make_euclidean(j.value("dim", 3));
    if (kind == "sphere") {
        Vec c = j.contains("center") ? to_vec(j["center"]) : Vec();
        return make_sphere(j.at("n").get<int>(), j.value("r", 1.0), c);
    }
    if (kind == "product") return make_product(parse_ambient_json(j.at("base")), j.at("extra").get<int>());
    throw InputError("unknown ambient kind '" + kind + "'");
}

CompactSubset parse_subset(const json& j, const AmbientPtr& ambient) {
    const std::string kind = j.at("kind").get<std::string>();
    Vec c = j.contains("center") ? to_vec(j["center"]) : Vec();
    if (kind == "ball") return CompactSubset::ball(ambient, j.at("R").get<double>(), c);
    if (kind == "shell") return CompactSubset::shell(ambient, j.at("R_in").get<double>(), j.at("R_out").get<double>(), c);
    if (kind == "tube") return CompactSubset::tube(ambient, j.at("radius").get<double>());
    throw InputError("unknown subset kind '" + kind + "'");
}

SimplicialMesh parse_mesh(const json& j, const std::filesystem::path& base, std::string& source) {
    if (j.is_string()) {
        std::filesystem::path p = j.get<std::string>();
        if (p.is_relative() && !base.empty()) p = base / p;
        source = p.string();
        return read_mesh(p);
    }
    const std::string shape = j.at("shape").get<std::string>();
    const int level = j.value("level", 3);
    source = shape + ":" + j.dump();
    if (shape == "icosphere") return icosphere(level, j.value("radius", 1.0));
    if (shape == "ellipsoid") {
        Vec ax = to_vec(j.at("axes"));
        if (ax.size() != 3) throw InputError("ellipsoid axes need three entries");
        return ellipsoid(level, ax(0), ax(1), ax(2));
    }
    if (shape == "torus") return torus(j.value("R", 2.0), j.value("r", 0.5), j.value("n_major", 48), j.value("n_minor", 16));
    throw InputError("unknown mesh shape '" + shape + "'");
}

}  // namespace

AmbientPtr parse_ambient_spec(const std::string& spec) {
    static const std::regex product(R"((.+)xR(\d+))");
    static const std::regex euclid(R"(euclidean(\d+))");
    static const std::regex sphere(R"(sphere(\d+)(?::r=([0-9.eE+-]+))?)");
    std::smatch m;
    if (std::regex_match(spec, m, product)) return make_product(parse_ambient_spec(m[1]), std::stoi(m[2]));
    if (std::regex_match(spec, m, euclid)) return make_euclidean(std::stoi(m[1]));
    if (std::regex_match(spec, m, sphere)) {
        double r = m[2].matched ? std::stod(m[2]) : 1.0;
        return make_sphere(std::stoi(m[1]), r);
    }
    throw InputError("unknown ambient '" + spec + "' (expected euclidean<S>, sphere<n>[:r=<r>] or <base>xR<s>)");
}

RunConfig parse_run_config(const std::string& text, const std::filesystem::path& base_dir) {
    RunConfig cfg;
    try {
        json j = json::parse(text);
        cfg.schema = j.value("schema", kConfigSchema);
        if (cfg.schema != kConfigSchema)
            throw InputError("unsupported config schema " + std::to_string(cfg.schema) + " (expected " +
                             std::to_string(kConfigSchema) + ")");
        const json& e = j.at("energy");
        cfg.energy.form = parse_form(e.value("form", std::string("H")));
        cfg.energy.integrand = parse_integrand(e.value("integrand", std::string("power")));
        cfg.energy.p = e.value("p", 3.0);
        cfg.energy.C = e.value("C", 1.0);
        cfg.energy.delta = e.value("delta", 1e-2);
        cfg.ambient = parse_ambient_json(j.value("ambient", json("euclidean3")));
        if (j.contains("subset")) cfg.subset = parse_subset(j["subset"], cfg.ambient);
        cfg.mesh = parse_mesh(j.at("mesh"), base_dir, cfg.mesh_source);
        auto& d = cfg.descent;
        d.max_iter = j.value("max_iter", d.max_iter);
        d.tol = j.value("tol", d.tol);
        d.seed = j.value("seed", d.seed);
        if (j.contains("descent")) {
            const json& o = j["descent"];
            d.initial_step = o.value("initial_step", d.initial_step);
            d.armijo = o.value("armijo", d.armijo);
            d.max_backtracks = o.value("max_backtracks", d.max_backtracks);
            d.remesh = o.value("remesh", d.remesh);
            d.remesh_every = o.value("remesh_every", d.remesh_every);
            d.remesh_aspect = o.value("remesh_aspect", d.remesh_aspect);
            d.abort_aspect = o.value("abort_aspect", d.abort_aspect);
            d.bilaplacian_scale = o.value("bilaplacian_scale", d.bilaplacian_scale);
            d.normal_only = o.value("normal_only", d.normal_only);
            d.gradient_check_samples = o.value("gradient_check_samples", d.gradient_check_samples);
            d.monitor_centers = o.value("monitor_centers", d.monitor_centers);
            d.monitor_eps = o.value("monitor_eps", d.monitor_eps);
            const std::string pc = o.value("preconditioner", std::string("bilaplacian"));
            if (pc == "bilaplacian")
                d.preconditioner = Preconditioner::Bilaplacian;
            else if (pc == "lumped")
                d.preconditioner = Preconditioner::Lumped;
            else
                throw InputError("unknown preconditioner '" + pc + "'");
        }
        if (d.max_iter < 0) throw InputError("max_iter must be nonnegative");
        if (!(d.tol > 0.0)) throw InputError("tol must be positive");
    } catch (const json::exception& e) {
        throw InputError(std::string("config: ") + e.what());
    } catch (const PreconditionError& e) {
        throw InputError(std::string("config: ") + e.what());
    }
    return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open config file: " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_run_config(ss.str(), path.parent_path());
}

}  // namespace varimin
