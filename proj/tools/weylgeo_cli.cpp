// weylgeo command-line driver. Talks to the shared library exclusively
// through the C API in weylgeo/weylgeo_c.h.
//
// Exit codes: 0 all checks passed, 1 at least one check failed,
//             2 usage error, 3 I/O error.

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "weylgeo/weylgeo_c.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

int exit_code_for(wg_status status) {
    switch (status) {
        case WG_OK: return kExitPass;
        case WG_ERR_IO: return kExitIo;
        default: return kExitUsage;
    }
}

struct ConfigFlags {
    std::string model = "sphere";
    wg_suite_config config;

    void attach(CLI::App* cmd) {
        wg_suite_config_defaults(&config);
        cmd->set_help_flag("--help", "print help"); // frees -h for the step flag --h
        cmd->add_option("--model", model, "surface model: sphere | torus | plane");
        cmd->add_option("--radius", config.radius, "sphere radius");
        cmd->add_option("--h", config.h, "field derivative step");
        cmd->add_option("--dt", config.dt, "geodesic integrator step");
        cmd->add_option("--steps", config.steps, "geodesic steps");
        cmd->add_option("--grid", config.grid, "residual sample grid size");
        cmd->add_option("--seed", config.seed, "RNG seed (SplitMix64)");
        cmd->add_option("--tol", config.tol, "projective-equivalence tolerance");
        cmd->add_option("--resolution", config.resolution, "quadrature mesh resolution");
        cmd->add_option("--n-psi", config.n_psi, "SL(3) draws");
        cmd->add_option("--n-geodesics", config.n_geodesics, "geodesics per draw");
        cmd->add_option("--n-alpha", config.n_alpha, "pure-trace shift draws");
    }
};

bool parse_ic(const std::string& text, double out[4]) {
    return std::sscanf(text.c_str(), "%lf,%lf,%lf,%lf", &out[0], &out[1], &out[2], &out[3]) == 4;
}

int report_failure(const char* what, wg_status status) {
    std::fprintf(stderr, "error: %s: %s\n", what, wg_last_error());
    return exit_code_for(status);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical verification of projective structures and conformal connections "
                 "on surfaces"};
    app.require_subcommand(1);
    app.set_help_flag("--help", "print help");
    app.set_version_flag("--version", std::string(wg_version()));

    // verify <suite>
    auto* verify = app.add_subcommand("verify", "run a named verification suite");
    std::string suite;
    verify->add_option("suite", suite,
                       "structure | projective | beltrami | degree | uniqueness | jets | all")
        ->required();
    ConfigFlags verify_cfg;
    verify_cfg.attach(verify);
    std::string verify_out, verify_format = "json";
    bool deterministic = false, quiet = false;
    verify->add_option("--out", verify_out, "write the report to this path");
    verify->add_option("--format", verify_format, "report format: json | csv");
    verify->add_flag("--deterministic", deterministic,
                     "omit timing fields so identical runs are byte-identical");
    verify->add_flag("--quiet", quiet, "suppress the per-check listing");

    // geodesics
    auto* geod = app.add_subcommand("geodesics", "integrate geodesics and export them as CSV");
    ConfigFlags geod_cfg;
    geod_cfg.attach(geod);
    std::string metric = "round", geod_out;
    std::vector<std::string> ic_strings;
    geod->add_option("--metric", metric,
                     "round | flat | second | beltrami:a,b,c | beltrami:<9 entries>");
    geod->add_option("--ic", ic_strings, "initial condition u,v,du,dv (repeatable)");
    geod->add_option("--out", geod_out, "output CSV path")->required();

    // report
    auto* rep = app.add_subcommand("report", "reload a JSON report and re-emit it");
    std::string rep_in, rep_out, rep_format = "json";
    bool rep_deterministic = false;
    rep->add_option("--in", rep_in, "input JSON report")->required();
    rep->add_option("--out", rep_out, "output path (stdout when omitted)");
    rep->add_option("--format", rep_format, "output format: json | csv");
    rep->add_flag("--deterministic", rep_deterministic, "omit timing fields");

    // mesh
    auto* mesh = app.add_subcommand("mesh", "export a quadrature mesh as CSV");
    ConfigFlags mesh_cfg;
    mesh_cfg.attach(mesh);
    std::string mesh_out;
    mesh->add_option("--out", mesh_out, "output CSV path")->required();

    // wfield
    auto* wfield = app.add_subcommand("wfield", "sample the flatness coefficients W1/W2");
    ConfigFlags w_cfg;
    w_cfg.attach(wfield);
    std::string w_metric = "round", w_out;
    wfield->add_option("--metric", w_metric, "metric spec, as for geodesics");
    wfield->add_option("--out", w_out, "output CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitPass : kExitUsage;
    }

    if (verify->parsed()) {
        wg_report* report = nullptr;
        wg_status status = wg_run_suite(suite.c_str(), &verify_cfg.config, &report);
        if (status != WG_OK) return report_failure("verify", status);
        int n = wg_report_check_count(report);
        if (!quiet) {
            for (int i = 0; i < n; ++i) {
                char name[128];
                double residual = 0.0, tolerance = 0.0;
                int passed = 0;
                wg_report_check_name(report, i, name, sizeof(name));
                wg_report_check_values(report, i, &residual, &tolerance, &passed);
                std::printf("[%s] %-36s residual=%-12.4g tol=%.4g\n",
                            passed ? "PASS" : "FAIL", name, residual, tolerance);
            }
        }
        int overall = wg_report_passed(report);
        std::printf("%s: %d checks, %s\n", suite.c_str(), n, overall ? "PASS" : "FAIL");
        if (!verify_out.empty()) {
            status = wg_report_write(report, verify_out.c_str(), verify_format.c_str(),
                                     deterministic ? 0 : 1);
            if (status != WG_OK) {
                wg_report_destroy(report);
                return report_failure("write report", status);
            }
        }
        wg_report_destroy(report);
        return overall ? kExitPass : kExitCheckFailure;
    }

    if (geod->parsed()) {
        std::vector<double> ics;
        for (const std::string& s : ic_strings) {
            double q[4];
            if (!parse_ic(s, q)) {
                std::fprintf(stderr, "error: bad --ic '%s' (expected u,v,du,dv)\n", s.c_str());
                return kExitUsage;
            }
            ics.insert(ics.end(), q, q + 4);
        }
        wg_status status = wg_geodesics_csv(
            geod_cfg.model.c_str(), geod_cfg.config.radius, metric.c_str(),
            ics.empty() ? nullptr : ics.data(), int(ic_strings.size()),
            geod_cfg.config.steps, geod_cfg.config.dt, geod_out.c_str());
        if (status != WG_OK) return report_failure("geodesics", status);
        return kExitPass;
    }

    if (rep->parsed()) {
        wg_report* report = nullptr;
        wg_status status = wg_report_load_json(rep_in.c_str(), &report);
        if (status != WG_OK) return report_failure("report", status);
        if (rep_out.empty()) {
            char* text = rep_format == "csv"
                             ? wg_report_to_csv(report, rep_deterministic ? 0 : 1)
                             : wg_report_to_json(report, rep_deterministic ? 0 : 1);
            if (text) {
                std::fputs(text, stdout);
                wg_string_free(text);
            }
        } else {
            status = wg_report_write(report, rep_out.c_str(), rep_format.c_str(),
                                     rep_deterministic ? 0 : 1);
            if (status != WG_OK) {
                wg_report_destroy(report);
                return report_failure("write report", status);
            }
        }
        wg_report_destroy(report);
        return kExitPass;
    }

    if (mesh->parsed()) {
        wg_model* model = nullptr;
        wg_status status =
            wg_model_create(mesh_cfg.model.c_str(), mesh_cfg.config.radius, &model);
        if (status != WG_OK) return report_failure("mesh", status);
        status = wg_model_mesh_csv(model, mesh_cfg.config.resolution, mesh_out.c_str());
        wg_model_destroy(model);
        if (status != WG_OK) return report_failure("mesh", status);
        return kExitPass;
    }

    if (wfield->parsed()) {
        wg_status status = wg_w_grid_csv(w_cfg.model.c_str(), w_cfg.config.radius,
                                         w_metric.c_str(), w_cfg.config.grid, w_out.c_str());
        if (status != WG_OK) return report_failure("wfield", status);
        return kExitPass;
    }

    return kExitUsage;
}
