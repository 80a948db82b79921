#pragma once

// Fixed-step RK4 geodesic integration for affine connections, with sphere
// chart switching, plus reparametrization-invariant comparison of geodesic
// traces and the central-plane (great circle) test on embedded paths.

#include <cstdint>
#include <vector>

#include "weylgeo/connections.hpp"
#include "weylgeo/models.hpp"

namespace weylgeo {

struct InitialCondition {
    ChartPoint point;
    Vec2 direction; // normalized at construction of the integrator

    InitialCondition(const ChartPoint& p, const Vec2& dir) : point(p), direction(dir) {
        double n = dir.norm();
        if (!(n > 0.0)) fail(ErrorCode::argument, "initial direction must be non-zero");
        direction = dir * (1.0 / n);
    }
};

struct GeodesicPath {
    std::vector<ChartPoint> samples;
    std::vector<Vec2> velocities; // chart components, same indexing as samples
    std::vector<Vec3> embedded;   // unit vectors; empty when the model has none
    bool truncated = false;       // left the atlas before finishing

    bool has_embedding() const { return !embedded.empty(); }
};

// Solves x''^i + Gamma^i_jk x'^j x'^k = 0 with classic RK4. Chart switching is
// applied between steps (sphere); torus points are wrapped for storage only.
// A step that leaves the atlas or produces non-finite state stops the
// integration: domain exits set the truncated flag, NaN raises an error.
GeodesicPath integrate_geodesic(const ChristoffelField& nabla, const SurfaceModel& model,
                                const InitialCondition& ic, int steps, double dt,
                                int store_stride = 1);

// Symmetric Hausdorff-style distance between traces: max over samples of one
// path of the min distance to the segments of the other, in the embedding
// when available, else in the chart (periodicity-aware on the torus).
double trace_distance(const GeodesicPath& a, const GeodesicPath& b, const SurfaceModel& model);

// Drop samples beyond the given cumulative chord length.
GeodesicPath trim_to_length(const GeodesicPath& path, const SurfaceModel& model, double length);

double path_length(const GeodesicPath& path, const SurfaceModel& model);

struct PlanarityResult {
    double defect = 0.0;   // sigma_3 / sigma_1 of the embedded sample matrix
    bool degenerate = false; // samples nearly collinear, defect unreliable
};

// 0 iff the embedded points lie on a plane through the origin, i.e. the trace
// is a great circle.
PlanarityResult planarity_defect(const GeodesicPath& path);

struct SharesResult {
    bool shares = false;
    double max_distance = 0.0;
    std::vector<double> distances;
};

// Launches n random initial conditions (seeded), integrates under both
// connections, trims to the common chord length and compares traces. The
// trim keeps the comparison parametrization-free: pure-trace shifts of a
// connection reparametrize its geodesics, so equal step counts cover
// different amounts of the same trace.
SharesResult shares_geodesics(const ChristoffelField& nabla1, const ChristoffelField& nabla2,
                              const SurfaceModel& model, int n_samples, double tol,
                              uint64_t seed, int steps = 1000, double dt = 2e-3,
                              int store_stride = 1);

} // namespace weylgeo
