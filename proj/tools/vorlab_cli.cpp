// vorlab: experiment runner for the half-plane vortex spectral laboratory.
// Subcommands: spectrum | sweep-alpha | sweep-R | project | corrector |
// simulate | validate {fields,greens,operators,spectra,blayer,simulate,all}
// | report. Exit codes: 0 success, 1 execution error, 2 validation failure.
#include <CLI11.hpp>

#include <iostream>

#include "vorlab/manifest.hpp"
#include "vorlab/validate.hpp"

using namespace vorlab;

namespace {

ExperimentConfig load_or_default(const std::string& path, std::uint64_t seed_override,
                                 const std::string& out_override) {
    ExperimentConfig cfg = path.empty() ? ExperimentConfig{} : load_config(path);
    if (seed_override != 0) cfg.seed = seed_override;
    if (!out_override.empty()) cfg.out_dir = out_override;
    return cfg;
}

int run_spectrum(const ExperimentConfig& cfg) {
    RunDir run(cfg, "spectrum");
    RadialProfile p = cfg.make_truncated_profile();
    MirroredFlow m = build_mirrored(p, cfg.R0, cfg.R, cfg.n, cfg.box_L());
    auto [UE, OmegaE] = to_half_plane(m);
    DomainRestriction mask = DomainRestriction::discs(
        UE.grid(), {{0.0, m.R}}, m.R0 + (cfg.mask_pad > 0 ? cfg.mask_pad : 4.0 * UE.grid().h));
    OperatorMatrix lamE = assemble_lambda_E(UE, OmegaE, mask);
    EigOptions eopt;
    eopt.dense_limit = cfg.dense_limit;
    eopt.residual_tol = cfg.residual_tol;
    SpectrumResult s = eig(lamE, {}, eopt);
    Complex sel = select_isolated(s, cfg.disc_center
                                         ? std::optional<Disc>(Disc{*cfg.disc_center, cfg.disc_eps})
                                         : std::nullopt,
                                  cfg.disc_eps, cfg.residual_tol);
    CsvWriter csv(run.path("spectrum.csv"));
    csv.header({"re_lambda", "im_lambda", "residual", "in_disc"});
    for (const auto& pr : s.pairs)
        csv.row({fmt_double(pr.lambda.real()), fmt_double(pr.lambda.imag()),
                 fmt_double(pr.residual),
                 std::abs(pr.lambda - sel) <= cfg.disc_eps ? "1" : "0"});
    csv.comment("selected lambda_E = (" + fmt_double(sel.real()) + ", " +
                fmt_double(sel.imag()) + ")");
    run.finalize();
    std::cout << "lambda_E = (" << fmt_double(sel.real()) << ", " << fmt_double(sel.imag())
              << "), DOF = " << lamE.size() << ", run dir " << run.dir() << "\n";
    return 0;
}

int run_sweep_alpha(const ExperimentConfig& cfg) {
    RunDir run(cfg, "sweep-alpha");
    AlphaSweepResult res;
    CheckResult crit = criterion_alpha_persistence(cfg, &res);
    CsvWriter csv(run.path("sweep_alpha.csv"));
    csv.header({"alpha", "re_lambda", "im_lambda", "residual", "dist_to_lambdaE", "in_disc"});
    for (const auto& q : res.records)
        csv.row({fmt_double(q.param), fmt_double(q.lambda.real()), fmt_double(q.lambda.imag()),
                 fmt_double(q.residual), fmt_double(q.dist_to_ref), q.in_disc ? "1" : "0"});
    csv.comment("lambda_E = (" + fmt_double(res.lambda_E.real()) + ", " +
                fmt_double(res.lambda_E.imag()) + "), eps = " + fmt_double(res.eps) +
                ", fitted slope = " + fmt_double(res.slope));
    csv.comment(std::string("criterion 8: ") + (crit.pass ? "PASS" : "FAIL") + " - " +
                crit.detail);
    run.finalize();
    std::cout << "criterion 8 " << (crit.pass ? "PASS" : "FAIL") << ": " << crit.detail << "\n";
    return crit.pass ? 0 : 2;
}

int run_sweep_R(const ExperimentConfig& cfg) {
    RunDir run(cfg, "sweep-R");
    RSweepResult res;
    CheckResult crit = criterion_R_rate_law(cfg, &res);
    CsvWriter csv(run.path("sweep_R.csv"));
    csv.header({"R", "gap", "re_lambda", "im_lambda", "dist_to_lambdaInf", "fitted_slope"});
    for (const auto& q : res.records)
        csv.row({fmt_double(q.param), fmt_double(q.param - cfg.R0), fmt_double(q.lambda.real()),
                 fmt_double(q.lambda.imag()), fmt_double(q.dist_to_ref),
                 fmt_double(q.slope_so_far)});
    csv.comment("lambda_inf = (" + fmt_double(res.lambda_inf.real()) + ", " +
                fmt_double(res.lambda_inf.imag()) + ")");
    csv.comment("slope_dist = " + fmt_double(res.slope_lambda) + ", slope_UR = " +
                fmt_double(res.slope_UR));
    CsvWriter ur(run.path("sweep_R_UR.csv"));
    ur.header({"R", "gap", "norm_UR", "compensated_gap_constant"});
    for (size_t k = 0; k < res.records.size(); ++k)
        ur.row({fmt_double(res.records[k].param), fmt_double(res.records[k].param - cfg.R0),
                fmt_double(res.norm_UR[k]),
                fmt_double(res.norm_UR[k] * (res.records[k].param - cfg.R0))});
    run.finalize();
    std::cout << "criterion 5 " << (crit.pass ? "PASS" : "FAIL") << ": " << crit.detail << "\n";
    return crit.pass ? 0 : 2;
}

int run_project(const ExperimentConfig& cfg) {
    RunDir run(cfg, "project");
    RadialProfile p = cfg.make_truncated_profile();
    MirroredFlow m = build_mirrored(p, cfg.R0, cfg.R, cfg.n, cfg.box_L());
    auto [UE, OmegaE] = to_half_plane(m);
    DomainRestriction mask =
        DomainRestriction::discs(UE.grid(), {{0.0, m.R}}, m.R0 + 4.0 * UE.grid().h);
    OperatorMatrix lamE = assemble_lambda_E(UE, OmegaE, mask);
    SpectrumResult s = eig(lamE);
    Complex center = cfg.disc_center ? *cfg.disc_center
                                     : select_isolated(s, {}, cfg.disc_eps, cfg.residual_tol);
    ProjectionResult pr =
        projection_study(lamE, center, cfg.disc_eps, cfg.contour_nodes, 1e-8, 4, &s);
    CsvWriter csv(run.path("projection_nodes.csv"));
    csv.header({"node", "solve_residual"});
    for (size_t k = 0; k < pr.node_residuals.size(); ++k)
        csv.row({std::to_string(k), fmt_double(pr.node_residuals[k])});
    Json j;
    j["center_re"] = center.real();
    j["center_im"] = center.imag();
    j["radius"] = cfg.disc_eps;
    j["quad_nodes"] = pr.quad_nodes;
    j["rank"] = pr.rank;
    j["trace_re"] = pr.trace.real();
    j["trace_im"] = pr.trace.imag();
    j["idempotency_defect"] = pr.idempotency_defect;
    j["converged"] = pr.converged;
    std::ofstream os(run.path("projection.json"));
    os << j.dump(2) << "\n";
    os.close();
    run.finalize();
    std::cout << "projection rank " << pr.rank << ", trace (" << fmt_double(pr.trace.real())
              << ", " << fmt_double(pr.trace.imag()) << "), defect "
              << fmt_double(pr.idempotency_defect) << (pr.converged ? "" : " (unconverged)")
              << "\n";
    return 0;
}

int run_corrector(const ExperimentConfig& cfg) {
    RunDir run(cfg, "corrector");
    CorrectorReport rep;
    CheckResult crit = criterion_corrector(cfg, &rep);
    CsvWriter csv(run.path("corrector.csv"));
    csv.header({"alpha", "norm_J", "norm_gradJ", "norm_grad2J", "norm_xi_gradJ", "max_div"});
    for (const auto& row : rep.rows)
        csv.row({fmt_double(row.alpha), fmt_double(row.norm_J), fmt_double(row.norm_gradJ),
                 fmt_double(row.norm_grad2J), fmt_double(row.norm_xi_gradJ),
                 fmt_double(row.max_div)});
    csv.comment("slope_J = " + fmt_double(rep.slope_J) + " (target -0.25)");
    csv.comment("slope_gradJ = " + fmt_double(rep.slope_gradJ) + " (target +0.25)");
    csv.comment("slope_grad2J = " + fmt_double(rep.slope_grad2J) + " (target +0.75)");
    csv.comment("slope_xi_gradJ = " + fmt_double(rep.slope_xi_gradJ) + " (target -0.25)");
    csv.comment("znorm_h = " + fmt_double(rep.znorm_h));
    run.finalize();
    std::cout << "criterion 9 " << (crit.pass ? "PASS" : "FAIL") << ": " << crit.detail << "\n";
    return crit.pass ? 0 : 2;
}

int run_simulate(const ExperimentConfig& cfg) {
    RunDir run(cfg, "simulate");
    PairRunResult pr;
    CheckResult crit = criterion_growth(cfg, &pr);
    if (crit.exercised) {
        CsvWriter csv(run.path("trajectory.csv"));
        csv.header({"tau", "norm_base_dev", "norm_pert", "pair_dist"});
        for (size_t k = 0; k < pr.pert_log.tau.size(); ++k)
            csv.row({fmt_double(pr.pert_log.tau[k]), fmt_double(pr.base_log.base_dev[k]),
                     fmt_double(pr.pert_log.base_dev[k]), fmt_double(pr.pert_log.pair_dist[k])});
        csv.comment("fitted_rate = " + fmt_double(pr.pert_log.fitted_rate) +
                    ", target alpha*Re(lambda_alpha) = " + fmt_double(pr.rate_target));
        csv.comment("fitted_freq = " + fmt_double(pr.pert_log.fitted_freq) +
                    ", target alpha*|Im(lambda_alpha)| = " + fmt_double(pr.freq_target));
        csv.comment("fit_r2 = " + fmt_double(pr.pert_log.fit_r2));
    }
    Json j;
    j["criterion"] = crit.id;
    j["pass"] = crit.pass;
    j["exercised"] = crit.exercised;
    j["detail"] = crit.detail;
    std::ofstream os(run.path("simulate_summary.json"));
    os << j.dump(2) << "\n";
    os.close();
    run.finalize();
    std::cout << "criterion 11 "
              << (crit.exercised ? (crit.pass ? "PASS" : "FAIL") : "NOT-EXERCISED") << ": "
              << crit.detail << "\n";
    return crit.pass ? 0 : 2;
}

int run_validate(const ExperimentConfig& cfg, const std::string& which) {
    RunDir run(cfg, "validate-" + which);
    std::vector<CheckResult> results;
    if (which == "fields") results = validate_fields(cfg);
    else if (which == "greens") results = validate_greens(cfg);
    else if (which == "operators") results = validate_operators(cfg);
    else if (which == "spectra") results = validate_spectra(cfg);
    else if (which == "blayer") results = validate_blayer(cfg);
    else if (which == "simulate") results = validate_simulate(cfg);
    else if (which == "all") results = validate_all(cfg);
    else throw ConfigError("unknown validate target '" + which + "'");

    if (which == "greens") {
        CsvWriter csv(run.path("greens_inequalities.csv"));
        csv.header({"test_id", "r1", "r2", "r3", "grid_n"});
        for (const auto& row : greens_inequality_rows(cfg))
            csv.row({std::to_string(row.test_id), fmt_double(row.r1), fmt_double(row.r2),
                     fmt_double(row.r3), std::to_string(row.grid_n)});
    }

    Json j = Json::array();
    bool all_pass = true;
    for (const auto& r : results) {
        Json e;
        e["id"] = r.id;
        e["description"] = r.description;
        e["pass"] = r.pass;
        e["exercised"] = r.exercised;
        e["detail"] = r.detail;
        j.push_back(e);
        all_pass = all_pass && r.pass;
        std::cout << (r.exercised ? (r.pass ? "PASS " : "FAIL ") : "SKIP ") << r.id << "  "
                  << r.description << "\n       " << r.detail << "\n";
    }
    std::ofstream os(run.path("suite_report.json"));
    os << j.dump(2) << "\n";
    os.close();
    run.finalize();
    std::cout << (all_pass ? "suite PASS" : "suite FAIL") << " (" << results.size()
              << " checks), report in " << run.dir() << "\n";
    return all_pass ? 0 : 2;
}

int run_report(const std::string& dir) {
    namespace fs = std::filesystem;
    const fs::path mpath = fs::path(dir) / "manifest.json";
    if (!fs::exists(mpath)) throw Error("no manifest.json in " + dir);
    std::ifstream is(mpath);
    Json m;
    try {
        is >> m;
    } catch (const std::exception& e) {
        throw Error("corrupt manifest in " + dir + ": " + e.what());
    }
    std::cout << "run " << m.value("subcommand", "?") << "  config " << m.value("config_hash", "?")
              << "  " << m.value("started", "?") << " .. " << m.value("finished", "?") << "\n";
    for (const auto& f : m["outputs"]) {
        const std::string name = f["file"];
        std::cout << "  " << name << "  fnv64=" << f["fnv64"].get<std::string>() << "\n";
        if (name == "suite_report.json") {
            std::ifstream rs(fs::path(dir) / name);
            Json rep;
            rs >> rep;
            for (const auto& e : rep)
                std::cout << "    "
                          << (e.value("exercised", true) ? (e.value("pass", false) ? "PASS" : "FAIL")
                                                         : "SKIP")
                          << "  " << e.value("id", "?") << "  " << e.value("detail", "") << "\n";
        } else if (name.size() > 4 && name.substr(name.size() - 4) == ".csv") {
            std::ifstream cs(fs::path(dir) / name);
            std::string line;
            while (std::getline(cs, line))
                if (!line.empty() && line[0] == '#') std::cout << "    " << line << "\n";
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"vorlab: half-plane vortex spectral laboratory"};
    app.require_subcommand(1);

    std::string config_path, out_override, validate_target = "all", report_dir;
    std::uint64_t seed_override = 0;
    app.add_option("--config", config_path, "JSON config file (defaults used when absent)");
    app.add_option("--seed", seed_override, "override the config seed");
    app.add_option("--out", out_override, "override the output directory");

    auto* c_spec = app.add_subcommand("spectrum", "eigenvalues of the half-plane operator");
    auto* c_sa = app.add_subcommand("sweep-alpha", "viscous eigenvalue persistence sweep");
    auto* c_sr = app.add_subcommand("sweep-R", "mirroring-distance sweep and U_R law");
    auto* c_pj = app.add_subcommand("project", "Riesz spectral projection study");
    auto* c_co = app.add_subcommand("corrector", "boundary-layer corrector scaling study");
    std::string alphas_csv;
    c_co->add_option("--alphas", alphas_csv, "comma-separated alpha list");
    auto* c_si = app.add_subcommand("simulate", "nonlinear pair run against the spectral rate");
    auto* c_va = app.add_subcommand("validate", "run a validation suite");
    c_va->add_option("target", validate_target,
                     "fields|greens|operators|spectra|blayer|simulate|all");
    auto* c_re = app.add_subcommand("report", "summarize a run directory");
    c_re->add_option("dir", report_dir, "run directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_re->parsed()) return run_report(report_dir);
        ExperimentConfig cfg = load_or_default(config_path, seed_override, out_override);
        if (!alphas_csv.empty()) {
            cfg.corrector_alphas.clear();
            std::istringstream ss(alphas_csv);
            std::string tok;
            while (std::getline(ss, tok, ',')) cfg.corrector_alphas.push_back(std::stod(tok));
        }
        if (c_spec->parsed()) return run_spectrum(cfg);
        if (c_sa->parsed()) return run_sweep_alpha(cfg);
        if (c_sr->parsed()) return run_sweep_R(cfg);
        if (c_pj->parsed()) return run_project(cfg);
        if (c_co->parsed()) return run_corrector(cfg);
        if (c_si->parsed()) return run_simulate(cfg);
        if (c_va->parsed()) return run_validate(cfg, validate_target);
    } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
