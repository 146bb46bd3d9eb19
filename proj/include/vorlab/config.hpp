// Experiment configuration: a JSON key tree with schema validation that
// reports every offending key path, plus the FNV content hash that names
// run directories and pins determinism.
#pragma once
#include <json.hpp>

#include <fstream>
#include <optional>

#include "eig.hpp"
#include "profile.hpp"

namespace vorlab {

using Json = nlohmann::json;

struct ExperimentConfig {
    // profile
    std::string family = "ring";
    std::map<std::string, double> params{{"amp", 1.0}, {"scale", 1.0}, {"steep", 4.0}};
    double trunc_radius = 2.0;
    // geometry
    double R0 = 2.0;
    double R = 4.0;
    std::vector<double> R_list{4.0, 6.0, 8.0, 12.0};
    // grid
    int n = 81;
    double L = 0.0;          // 0: R + 3 R0
    double h_target = 0.25;  // R-sweep spacing
    double mask_pad = 0.0;   // 0: 4h
    // viscosity sweep
    double alpha = 1000.0;
    std::vector<double> alpha_list{1e2, 1e3, 1e4, 1e5};
    // disc filter
    std::optional<Complex> disc_center;
    double disc_eps = 0.05;
    // solver knobs
    double poisson_tol = 1e-10;
    double residual_tol = 1e-8;
    int dense_limit = 20000;
    int contour_nodes = 32;
    bool shift_invert = true;
    int krylov = 90;
    // boundary-layer study
    std::vector<double> corrector_alphas{1e2, 1e3, 1e4, 1e5};
    double wall_L = 8.0;
    int wall_n = 801;
    // simulation
    double sim_dt = 0.0;
    double sim_horizon = 0.0;  // 0: auto from the measured rate
    double sim_eps_pert = 1e-6;
    int sim_log_every = 1;
    // misc
    std::uint64_t seed = 12345;
    std::string out_dir = "runs";

    Json to_json() const {
        Json j;
        j["profile"] = {{"family", family}, {"params", params}, {"trunc_radius", trunc_radius}};
        j["geometry"] = {{"R0", R0}, {"R", R}, {"R_list", R_list}};
        j["grid"] = {{"n", n}, {"L", L}, {"h_target", h_target}, {"mask_pad", mask_pad}};
        j["alpha"] = alpha;
        j["alpha_list"] = alpha_list;
        Json disc;
        if (disc_center) {
            disc["center_re"] = disc_center->real();
            disc["center_im"] = disc_center->imag();
        }
        disc["eps"] = disc_eps;
        j["disc"] = disc;
        j["solver"] = {{"poisson_tol", poisson_tol}, {"residual_tol", residual_tol},
                       {"dense_limit", dense_limit}, {"contour_nodes", contour_nodes},
                       {"shift_invert", shift_invert}, {"krylov", krylov}};
        j["corrector"] = {{"alphas", corrector_alphas}, {"wall_L", wall_L}, {"wall_n", wall_n}};
        j["simulate"] = {{"dt", sim_dt}, {"horizon", sim_horizon},
                         {"eps_pert", sim_eps_pert}, {"log_every", sim_log_every}};
        j["seed"] = seed;
        j["out_dir"] = out_dir;
        return j;
    }

    RadialProfile make_truncated_profile() const {
        return truncate(make_profile(family, params), trunc_radius);
    }
    double box_L() const { return L > 0.0 ? L : R + 3.0 * R0; }
};

namespace detail {

template <typename T>
void take(const Json& j, const std::string& path, T& out, std::vector<std::string>& errs) {
    const Json* cur = &j;
    std::string walked;
    size_t pos = 0;
    while (pos != std::string::npos) {
        const size_t dot = path.find('.', pos);
        const std::string key =
            dot == std::string::npos ? path.substr(pos) : path.substr(pos, dot - pos);
        walked += (walked.empty() ? "" : ".") + key;
        if (!cur->contains(key)) return;  // optional: keep default
        cur = &(*cur)[key];
        pos = dot == std::string::npos ? std::string::npos : dot + 1;
    }
    try {
        out = cur->get<T>();
    } catch (const std::exception&) {
        errs.push_back(path + ": wrong type");
    }
}

}  // namespace detail

inline ExperimentConfig parse_config(const Json& j) {
    ExperimentConfig c;
    std::vector<std::string> errs;
    detail::take(j, "profile.family", c.family, errs);
    detail::take(j, "profile.params", c.params, errs);
    detail::take(j, "profile.trunc_radius", c.trunc_radius, errs);
    detail::take(j, "geometry.R0", c.R0, errs);
    detail::take(j, "geometry.R", c.R, errs);
    detail::take(j, "geometry.R_list", c.R_list, errs);
    detail::take(j, "grid.n", c.n, errs);
    detail::take(j, "grid.L", c.L, errs);
    detail::take(j, "grid.h_target", c.h_target, errs);
    detail::take(j, "grid.mask_pad", c.mask_pad, errs);
    detail::take(j, "alpha", c.alpha, errs);
    detail::take(j, "alpha_list", c.alpha_list, errs);
    if (j.contains("disc") && j["disc"].contains("center_re")) {
        double re = 0, im = 0;
        detail::take(j, "disc.center_re", re, errs);
        detail::take(j, "disc.center_im", im, errs);
        c.disc_center = Complex(re, im);
    }
    detail::take(j, "disc.eps", c.disc_eps, errs);
    detail::take(j, "solver.poisson_tol", c.poisson_tol, errs);
    detail::take(j, "solver.residual_tol", c.residual_tol, errs);
    detail::take(j, "solver.dense_limit", c.dense_limit, errs);
    detail::take(j, "solver.contour_nodes", c.contour_nodes, errs);
    detail::take(j, "solver.shift_invert", c.shift_invert, errs);
    detail::take(j, "solver.krylov", c.krylov, errs);
    detail::take(j, "corrector.alphas", c.corrector_alphas, errs);
    detail::take(j, "corrector.wall_L", c.wall_L, errs);
    detail::take(j, "corrector.wall_n", c.wall_n, errs);
    detail::take(j, "simulate.dt", c.sim_dt, errs);
    detail::take(j, "simulate.horizon", c.sim_horizon, errs);
    detail::take(j, "simulate.eps_pert", c.sim_eps_pert, errs);
    detail::take(j, "simulate.log_every", c.sim_log_every, errs);
    detail::take(j, "seed", c.seed, errs);
    detail::take(j, "out_dir", c.out_dir, errs);

    // structural validation
    if (c.n < 17 || c.n % 2 == 0) errs.push_back("grid.n: need an odd count >= 17");
    if (c.R0 <= 0.0) errs.push_back("geometry.R0: must be positive");
    if (c.R <= c.R0) errs.push_back("geometry.R: need R > R0");
    if (c.trunc_radius <= 0.0) errs.push_back("profile.trunc_radius: must be positive");
    if (c.alpha < 1.0) errs.push_back("alpha: must be >= 1");
    if (c.disc_eps <= 0.0) errs.push_back("disc.eps: must be positive");
    for (double a : c.alpha_list)
        if (a < 1.0) errs.push_back("alpha_list: entries must be >= 1");
    if (c.wall_n < 17) errs.push_back("corrector.wall_n: too few wall nodes");
    if (c.sim_eps_pert > 1e-4) errs.push_back("simulate.eps_pert: must be <= 1e-4");
    if (!errs.empty()) {
        std::string msg = "invalid config:";
        for (const auto& e : errs) msg += "\n  " + e;
        throw ConfigError(msg);
    }
    return c;
}

inline ExperimentConfig load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is.good()) throw ConfigError("cannot open config file " + path);
    Json j;
    try {
        is >> j;
    } catch (const std::exception& e) {
        throw ConfigError("config parse error in " + path + ": " + e.what());
    }
    return parse_config(j);
}

// FNV-1a over the canonical serialized config.
inline std::uint64_t fnv1a(const std::string& bytes, std::uint64_t h = 1469598103934665603ull) {
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string config_hash(const ExperimentConfig& c) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a(c.to_json().dump())));
    return buf;
}

}  // namespace vorlab
