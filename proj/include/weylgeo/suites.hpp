#pragma once

// Named verification suites over the model registry. Every tolerance is
// pinned here, in code; the CLI and the acceptance runner both go through
// run_suite. Suites draw all randomness from SplitMix64(config.seed), so a
// fixed (suite, config, seed) triple reproduces residuals bitwise.

#include "weylgeo/report.hpp"

#include <string>
#include <vector>

namespace weylgeo {

// name in {structure, projective, beltrami, degree, uniqueness, jets, all}
SuiteReport run_suite(const std::string& name, const SuiteConfig& config);

bool is_known_suite(const std::string& name);
std::vector<std::string> suite_names();

// Geodesic CSV export: header chart_id,u,v,x,y,z; one block per initial
// condition, blocks separated by a blank line; embedded columns are left
// empty on models without an embedding. Initial conditions are given as
// (u, v, du, dv) quadruples.
struct GeodesicRequest {
    double u = 0.0, v = 0.0, du = 1.0, dv = 0.0;
};

// metric_spec: "round" (sphere), "beltrami:a,b,c" (diagonal) or nine
// comma-separated entries, "flat" (plane/torus), "second" (torus g2).
void emit_geodesics_csv(const std::string& model_name, double radius,
                        const std::string& metric_spec,
                        const std::vector<GeodesicRequest>& ics, int steps, double dt,
                        const std::string& path);

// Plot-ready dump of the flatness coefficients W1/W2 of (metric_spec, beta=0)
// on an n x n chart grid; header u,v,W1,W2.
void emit_w_grid_csv(const std::string& model_name, double radius,
                     const std::string& metric_spec, int n, const std::string& path);

} // namespace weylgeo
