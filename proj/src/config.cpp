#include "nv/config.hpp"

#include <fstream>

#include <json.hpp>

namespace nv {

using json = nlohmann::json;

void RunConfig::validate() const {
    if (scattering.c < 0.0) throw ConfigError("config: scattering.c must be >= 0");
    if (quadrature.n_r < 2 || quadrature.n_r % 2 != 0)
        throw ConfigError("config: quadrature.n_r must be even, >= 2");
    if (quadrature.n_theta < 4 || quadrature.n_theta % 2 != 0)
        throw ConfigError("config: quadrature.n_theta must be even, >= 4");
    if (!(quadrature.s_max > 0.0)) throw ConfigError("config: quadrature.s_max must be > 0");
    if (!(solver.tol_mu > 0.0)) throw ConfigError("config: solver.tol_mu must be > 0");
    if (solver.max_iter < 1) throw ConfigError("config: solver.max_iter must be >= 1");
    if (!(solver.stencil_h > 0.0)) throw ConfigError("config: solver.stencil_h must be > 0");
    if (!(sweep_u_window > 0.0)) throw ConfigError("config: sweep.u_window must be > 0");
    if (sweep_resolution < 2) throw ConfigError("config: sweep.resolution must be >= 2");
    if (threads < 0) throw ConfigError("config: threads must be >= 0");
}

std::string serialize_config(const RunConfig& cfg) {
    json j;
    j["scattering"]["family"] = "default";
    j["scattering"]["c"] = cfg.scattering.c;
    j["quadrature"]["s_max"] = cfg.quadrature.s_max;
    j["quadrature"]["n_r"] = cfg.quadrature.n_r;
    j["quadrature"]["n_theta"] = cfg.quadrature.n_theta;
    j["solver"]["tol_mu"] = cfg.solver.tol_mu;
    j["solver"]["max_iter"] = cfg.solver.max_iter;
    j["solver"]["stencil_h"] = cfg.solver.stencil_h;
    j["sweep"]["u_window"] = cfg.sweep_u_window;
    j["sweep"]["resolution"] = cfg.sweep_resolution;
    j["seed"] = cfg.seed;
    j["threads"] = cfg.threads;
    j["out"] = cfg.out;
    return j.dump(2);
}

RunConfig parse_config(const std::string& json_text) {
    RunConfig cfg;
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    try {
        if (j.contains("scattering")) {
            const auto& s = j.at("scattering");
            if (s.contains("family")) {
                const std::string fam = s.at("family");
                if (fam != "default")
                    throw ConfigError("config: unknown scattering.family '" + fam + "'");
            }
            if (s.contains("c")) cfg.scattering.c = s.at("c").get<double>();
        }
        if (j.contains("quadrature")) {
            const auto& q = j.at("quadrature");
            if (q.contains("s_max")) cfg.quadrature.s_max = q.at("s_max").get<double>();
            if (q.contains("n_r")) cfg.quadrature.n_r = q.at("n_r").get<int>();
            if (q.contains("n_theta")) cfg.quadrature.n_theta = q.at("n_theta").get<int>();
        }
        if (j.contains("solver")) {
            const auto& s = j.at("solver");
            if (s.contains("tol_mu")) cfg.solver.tol_mu = s.at("tol_mu").get<double>();
            if (s.contains("max_iter")) cfg.solver.max_iter = s.at("max_iter").get<int>();
            if (s.contains("stencil_h")) cfg.solver.stencil_h = s.at("stencil_h").get<double>();
        }
        if (j.contains("sweep")) {
            const auto& s = j.at("sweep");
            if (s.contains("u_window")) cfg.sweep_u_window = s.at("u_window").get<double>();
            if (s.contains("resolution")) cfg.sweep_resolution = s.at("resolution").get<int>();
        }
        if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("threads")) cfg.threads = j.at("threads").get<int>();
        if (j.contains("out")) cfg.out = j.at("out").get<std::string>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: bad field type: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_config(text);
}

}  // namespace nv
