#pragma once

// Suite reports and their serialization. JSON is emitted by a small writer of
// our own: fixed field order, floats at 17 significant digits, so identical
// (suite, config, seed) runs produce byte-identical files once timing fields
// are suppressed. Parsing reuses nlohmann/json.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace weylgeo {

struct SuiteConfig {
    std::string model = "sphere";
    double radius = 1.0;
    double h = 1e-5;      // plain field derivative step
    double dt = 1e-3;     // geodesic integrator step
    int steps = 1800;     // geodesic steps
    int grid = 41;        // residual sample grid (grid x grid)
    uint64_t seed = 42;
    double tol = 1e-5;    // projective-equivalence tolerance
    int resolution = 200; // quadrature mesh resolution
    int n_psi = 20;       // SL(3) draws
    int n_geodesics = 50; // geodesics per draw
    int n_alpha = 50;     // pure-trace shift draws
};

struct CheckRecord {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    // observed convergence order where the check measures one; NaN otherwise
    double order = std::numeric_limits<double>::quiet_NaN();
    double runtime_ms = 0.0;

    bool has_order() const { return !std::isnan(order); }
};

struct SuiteReport {
    std::string suite;
    SuiteConfig config;
    std::vector<CheckRecord> checks;

    bool passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
};

std::string report_to_json(const SuiteReport& report, bool include_runtime = true);
std::string report_to_csv(const SuiteReport& report, bool include_runtime = true);

// format is "json" or "csv"; files are written atomically (temp + rename)
void write_report(const SuiteReport& report, const std::string& path,
                  const std::string& format, bool include_runtime = true);

SuiteReport parse_report_json(const std::string& text);
SuiteReport load_report_json(const std::string& path);

bool reports_equal(const SuiteReport& a, const SuiteReport& b);

// shared helper: atomic text-file write (temp + rename)
void write_text_atomic(const std::string& path, const std::string& text);

} // namespace weylgeo
