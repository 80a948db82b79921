#include "weylgeo/weylgeo_c.h"

#include <cstring>
#include <string>

#include "weylgeo/fields.hpp"
#include "weylgeo/models.hpp"
#include "weylgeo/report.hpp"
#include "weylgeo/suites.hpp"

using namespace weylgeo;

struct wg_model {
    SurfaceModel model;
};

struct wg_report {
    SuiteReport report;
};

namespace {

thread_local std::string g_last_error;

wg_status status_of(const Error& e) {
    switch (e.code()) {
        case ErrorCode::argument: return WG_ERR_ARGUMENT;
        case ErrorCode::domain: return WG_ERR_DOMAIN;
        case ErrorCode::singular_metric: return WG_ERR_SINGULAR_METRIC;
        case ErrorCode::io: return WG_ERR_IO;
        case ErrorCode::integration: return WG_ERR_INTEGRATION;
        case ErrorCode::unknown_suite: return WG_ERR_UNKNOWN_SUITE;
    }
    return WG_ERR_INTERNAL;
}

template <typename F>
wg_status guarded(F&& f) {
    try {
        f();
        return WG_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return status_of(e);
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return WG_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return WG_ERR_INTERNAL;
    }
}

SuiteConfig to_config(const wg_suite_config* c) {
    SuiteConfig out;
    if (!c) return out;
    out.radius = c->radius;
    out.h = c->h;
    out.dt = c->dt;
    out.steps = c->steps;
    out.grid = c->grid;
    out.seed = c->seed;
    out.tol = c->tol;
    out.resolution = c->resolution;
    out.n_psi = c->n_psi;
    out.n_geodesics = c->n_geodesics;
    out.n_alpha = c->n_alpha;
    return out;
}

} // namespace

extern "C" {

const char* wg_version(void) { return "0.1.0"; }

const char* wg_last_error(void) { return g_last_error.c_str(); }

void wg_suite_config_defaults(wg_suite_config* config) {
    if (!config) return;
    SuiteConfig d;
    config->radius = d.radius;
    config->h = d.h;
    config->dt = d.dt;
    config->steps = d.steps;
    config->grid = d.grid;
    config->seed = d.seed;
    config->tol = d.tol;
    config->resolution = d.resolution;
    config->n_psi = d.n_psi;
    config->n_geodesics = d.n_geodesics;
    config->n_alpha = d.n_alpha;
}

wg_status wg_model_create(const char* name, double radius, wg_model** out) {
    if (!name || !out) {
        g_last_error = "null argument";
        return WG_ERR_ARGUMENT;
    }
    *out = nullptr;
    return guarded([&] { *out = new wg_model{make_model(name, radius)}; });
}

void wg_model_destroy(wg_model* model) { delete model; }

int wg_model_euler_characteristic(const wg_model* model) {
    return model ? model->model.euler_characteristic() : 0;
}

wg_status wg_model_mesh_csv(const wg_model* model, int resolution, const char* path) {
    if (!model || !path) {
        g_last_error = "null argument";
        return WG_ERR_ARGUMENT;
    }
    return guarded([&] { export_mesh_csv(model->model.mesh(resolution), path); });
}

wg_status wg_run_suite(const char* suite, const wg_suite_config* config, wg_report** out) {
    if (!suite || !out) {
        g_last_error = "null argument";
        return WG_ERR_ARGUMENT;
    }
    *out = nullptr;
    return guarded([&] { *out = new wg_report{run_suite(suite, to_config(config))}; });
}

int wg_report_passed(const wg_report* report) {
    return report && report->report.passed() ? 1 : 0;
}

int wg_report_check_count(const wg_report* report) {
    return report ? int(report->report.checks.size()) : 0;
}

wg_status wg_report_check_name(const wg_report* report, int index, char* buffer,
                               size_t buffer_len) {
    if (!report || !buffer || buffer_len == 0) {
        g_last_error = "null argument";
        return WG_ERR_ARGUMENT;
    }
    if (index < 0 || index >= int(report->report.checks.size())) {
        g_last_error = "check index out of range";
        return WG_ERR_ARGUMENT;
    }
    const std::string& name = report->report.checks[index].name;
    std::strncpy(buffer, name.c_str(), buffer_len - 1);
    buffer[buffer_len - 1] = '\0';
    return WG_OK;
}

wg_status wg_report_check_values(const wg_report* report, int index, double* residual,
                                 double* tolerance, int* passed) {
    if (!report) {
        g_last_error = "null report";
        return WG_ERR_ARGUMENT;
    }
    if (index < 0 || index >= int(report->report.checks.size())) {
        g_last_error = "check index out of range";
        return WG_ERR_ARGUMENT;
    }
    const CheckRecord& r = report->report.checks[index];
    if (residual) *residual = r.residual;
    if (tolerance) *tolerance = r.tolerance;
    if (passed) *passed = r.passed ? 1 : 0;
    return WG_OK;
}

wg_status wg_report_write(const wg_report* report, const char* path, const char* format,
                          int include_runtime) {
    if (!report || !path || !format) {
        g_last_error = "null argument";
        return WG_ERR_ARGUMENT;
    }
    return guarded([&] { write_report(report->report, path, format, include_runtime != 0); });
}

namespace {

char* dup_string(const std::string& text) {
    char* out = static_cast<char*>(std::malloc(text.size() + 1));
    if (!out) return nullptr;
    std::memcpy(out, text.c_str(), text.size() + 1);
    return out;
}

} // namespace

char* wg_report_to_json(const wg_report* report, int include_runtime) {
    if (!report) return nullptr;
    return dup_string(report_to_json(report->report, include_runtime != 0));
}

char* wg_report_to_csv(const wg_report* report, int include_runtime) {
    if (!report) return nullptr;
    return dup_string(report_to_csv(report->report, include_runtime != 0));
}

void wg_report_destroy(wg_report* report) { delete report; }

wg_status wg_report_load_json(const char* path, wg_report** out) {
    if (!path || !out) {
        g_last_error = "null argument";
        return WG_ERR_ARGUMENT;
    }
    *out = nullptr;
    return guarded([&] { *out = new wg_report{load_report_json(path)}; });
}

void wg_string_free(char* s) { std::free(s); }

wg_status wg_geodesics_csv(const char* model_name, double radius, const char* metric_spec,
                           const double* ics, int n, int steps, double dt, const char* path) {
    if (!model_name || !metric_spec || !path || (n > 0 && !ics)) {
        g_last_error = "null argument";
        return WG_ERR_ARGUMENT;
    }
    return guarded([&] {
        std::vector<GeodesicRequest> reqs;
        reqs.reserve(std::max(n, 0));
        for (int i = 0; i < n; ++i)
            reqs.push_back({ics[4 * i], ics[4 * i + 1], ics[4 * i + 2], ics[4 * i + 3]});
        emit_geodesics_csv(model_name, radius, metric_spec, reqs, steps, dt, path);
    });
}

wg_status wg_w_grid_csv(const char* model_name, double radius, const char* metric_spec, int n,
                        const char* path) {
    if (!model_name || !metric_spec || !path) {
        g_last_error = "null argument";
        return WG_ERR_ARGUMENT;
    }
    return guarded([&] { emit_w_grid_csv(model_name, radius, metric_spec, n, path); });
}

} // extern "C"
