#include "weylgeo/geodesics.hpp"

#include <cmath>

#include "weylgeo/rng.hpp"

namespace weylgeo {

namespace {

struct State {
    double u, v, du, dv;
};

State rk4_rhs(const ChristoffelField& nabla, const State& s, int chart) {
    Gamma g = nabla({s.u, s.v, chart});
    double vel[2] = {s.du, s.dv};
    double acc[2] = {0.0, 0.0};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) acc[i] -= g.c[i][j][k] * vel[j] * vel[k];
    return {s.du, s.dv, acc[0], acc[1]};
}

State axpy(const State& s, const State& d, double h) {
    return {s.u + h * d.u, s.v + h * d.v, s.du + h * d.du, s.dv + h * d.dv};
}

} // namespace

GeodesicPath integrate_geodesic(const ChristoffelField& nabla, const SurfaceModel& model,
                                const InitialCondition& ic, int steps, double dt,
                                int store_stride) {
    if (steps < 1 || !(dt > 0.0) || store_stride < 1)
        fail(ErrorCode::argument, "integrate_geodesic: bad steps/dt/stride");
    GeodesicPath path;
    path.samples.reserve(size_t(steps / store_stride) + 2);
    bool embed = model.has_embedding();
    if (embed) path.embedded.reserve(size_t(steps / store_stride) + 2);

    int chart = ic.point.chart;
    State s{ic.point.u, ic.point.v, ic.direction.x, ic.direction.y};
    Domain domain = model.chart_domain(chart);

    auto store = [&](const State& st) {
        ChartPoint p = model.normalize_point({st.u, st.v, chart});
        path.samples.push_back(p);
        path.velocities.push_back({st.du, st.dv});
        if (embed) path.embedded.push_back(model.embed(p));
    };
    store(s);

    double margin = 16.0 * dt; // generous stencil margin for the Gamma samples
    for (int n = 0; n < steps; ++n) {
        if (!domain.contains({s.u, s.v, chart}, margin)) {
            path.truncated = true;
            return path;
        }
        State k1 = rk4_rhs(nabla, s, chart);
        State k2 = rk4_rhs(nabla, axpy(s, k1, 0.5 * dt), chart);
        State k3 = rk4_rhs(nabla, axpy(s, k2, 0.5 * dt), chart);
        State k4 = rk4_rhs(nabla, axpy(s, k3, dt), chart);
        s = {s.u + dt / 6.0 * (k1.u + 2 * k2.u + 2 * k3.u + k4.u),
             s.v + dt / 6.0 * (k1.v + 2 * k2.v + 2 * k3.v + k4.v),
             s.du + dt / 6.0 * (k1.du + 2 * k2.du + 2 * k3.du + k4.du),
             s.dv + dt / 6.0 * (k1.dv + 2 * k2.dv + 2 * k3.dv + k4.dv)};
        if (!std::isfinite(s.u) || !std::isfinite(s.v) || !std::isfinite(s.du) ||
            !std::isfinite(s.dv))
            fail(ErrorCode::integration, "geodesic integration produced non-finite state");
        if (model.should_switch({s.u, s.v, chart})) {
            auto [np, nvel] = model.switch_chart({s.u, s.v, chart}, {s.du, s.dv});
            chart = np.chart;
            s = {np.u, np.v, nvel.x, nvel.y};
        }
        if ((n + 1) % store_stride == 0 || n + 1 == steps) store(s);
    }
    return path;
}

namespace {

double point_segment_distance_3d(const Vec3& p, const Vec3& a, const Vec3& b) {
    Vec3 ab = b - a;
    double len2 = ab.dot(ab);
    double t = len2 > 0.0 ? std::clamp((p - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
    return (p - (a + ab * t)).norm();
}

double point_segment_distance_chart(const Vec2& p, Vec2 a, Vec2 b, bool periodic) {
    if (periodic) {
        // move the segment to the periodic copy nearest to p
        Vec2 mid = (a + b) * 0.5;
        double su = std::round(mid.x - p.x), sv = std::round(mid.y - p.y);
        a = {a.x - su, a.y - sv};
        b = {b.x - su, b.y - sv};
    }
    Vec2 ab = b - a;
    double len2 = ab.dot(ab);
    double t = len2 > 0.0 ? std::clamp((p - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
    Vec2 proj = a + ab * t;
    return (p - proj).norm();
}

double one_sided_distance(const GeodesicPath& from, const GeodesicPath& to,
                          const SurfaceModel& model) {
    bool embed = model.has_embedding();
    bool periodic = model.kind() == ModelKind::Torus;
    double worst = 0.0;
    if (embed) {
        for (const Vec3& p : from.embedded) {
            double best = 1e300;
            for (size_t i = 0; i + 1 < to.embedded.size(); ++i) {
                best = std::min(best,
                                point_segment_distance_3d(p, to.embedded[i], to.embedded[i + 1]));
                if (best == 0.0) break;
            }
            if (to.embedded.size() == 1) best = (p - to.embedded[0]).norm();
            worst = std::max(worst, best);
        }
    } else {
        for (const ChartPoint& cp : from.samples) {
            Vec2 p = {cp.u, cp.v};
            double best = 1e300;
            for (size_t i = 0; i + 1 < to.samples.size(); ++i) {
                Vec2 a = {to.samples[i].u, to.samples[i].v};
                Vec2 b = {to.samples[i + 1].u, to.samples[i + 1].v};
                // skip wrapped segments; their periodic copy handles them
                if (periodic && (std::abs(a.x - b.x) > 0.5 || std::abs(a.y - b.y) > 0.5))
                    continue;
                best = std::min(best, point_segment_distance_chart(p, a, b, periodic));
                if (best == 0.0) break;
            }
            if (to.samples.size() == 1)
                best = model.point_distance(cp, to.samples[0]);
            worst = std::max(worst, best);
        }
    }
    return worst;
}

} // namespace

double trace_distance(const GeodesicPath& a, const GeodesicPath& b, const SurfaceModel& model) {
    if (a.samples.empty() || b.samples.empty())
        fail(ErrorCode::argument, "trace_distance: empty path");
    if (model.has_embedding() && (!a.has_embedding() || !b.has_embedding()))
        fail(ErrorCode::argument, "trace_distance: missing embedded samples");
    return std::max(one_sided_distance(a, b, model), one_sided_distance(b, a, model));
}

double path_length(const GeodesicPath& path, const SurfaceModel& model) {
    double len = 0.0;
    for (size_t i = 0; i + 1 < path.samples.size(); ++i)
        len += model.point_distance(path.samples[i], path.samples[i + 1]);
    return len;
}

GeodesicPath trim_to_length(const GeodesicPath& path, const SurfaceModel& model, double length) {
    GeodesicPath out;
    out.truncated = path.truncated;
    double len = 0.0;
    for (size_t i = 0; i < path.samples.size(); ++i) {
        double seg = i > 0 ? model.point_distance(path.samples[i - 1], path.samples[i]) : 0.0;
        if (i > 0 && len + seg > length) {
            // land the endpoint exactly at the cutoff, so trimmed traces end
            // at the same arc position up to interpolation sag
            double t = seg > 0.0 ? (length - len) / seg : 0.0;
            const ChartPoint& a = path.samples[i - 1];
            const ChartPoint& b = path.samples[i];
            if (a.chart == b.chart) {
                ChartPoint mid{a.u + t * (b.u - a.u), a.v + t * (b.v - a.v), a.chart};
                out.samples.push_back(mid);
                if (i < path.velocities.size()) out.velocities.push_back(path.velocities[i]);
                if (path.has_embedding()) {
                    Vec3 e = path.embedded[i - 1] + (path.embedded[i] - path.embedded[i - 1]) * t;
                    out.embedded.push_back(e.normalized());
                }
            }
            break;
        }
        len += seg;
        out.samples.push_back(path.samples[i]);
        if (i < path.velocities.size()) out.velocities.push_back(path.velocities[i]);
        if (path.has_embedding()) out.embedded.push_back(path.embedded[i]);
    }
    return out;
}

PlanarityResult planarity_defect(const GeodesicPath& path) {
    if (path.embedded.size() < 10)
        fail(ErrorCode::argument, "planarity_defect needs >= 10 embedded samples");
    // Subsample long paths; the singular values of the point matrix do not
    // need thousands of rows.
    size_t stride = std::max<size_t>(1, path.embedded.size() / 512);
    std::vector<double> rows;
    rows.reserve(3 * (path.embedded.size() / stride + 1));
    for (size_t i = 0; i < path.embedded.size(); i += stride) {
        rows.push_back(path.embedded[i].x);
        rows.push_back(path.embedded[i].y);
        rows.push_back(path.embedded[i].z);
    }
    double sv[8];
    singular_values(rows.data(), int(rows.size() / 3), 3, sv);
    PlanarityResult res;
    res.degenerate = sv[0] <= 0.0 || sv[1] / sv[0] < 1e-6;
    res.defect = sv[0] > 0.0 ? sv[2] / sv[0] : 0.0;
    return res;
}

SharesResult shares_geodesics(const ChristoffelField& nabla1, const ChristoffelField& nabla2,
                              const SurfaceModel& model, int n_samples, double tol,
                              uint64_t seed, int steps, double dt, int store_stride) {
    SplitMix64 rng(seed);
    SharesResult res;
    res.distances.reserve(n_samples);
    for (int i = 0; i < n_samples; ++i) {
        ChartPoint p;
        Vec2 dir;
        if (model.kind() == ModelKind::Sphere) {
            double r = model.radius();
            double rad = 0.8 * r * std::sqrt(rng.uniform());
            double ang = rng.uniform(0.0, 2.0 * 3.14159265358979323846);
            p = {rad * std::cos(ang), rad * std::sin(ang), 0};
        } else {
            p = {rng.uniform(0.2, 0.8), rng.uniform(0.2, 0.8), 0};
        }
        double theta = rng.uniform(0.0, 2.0 * 3.14159265358979323846);
        dir = {std::cos(theta), std::sin(theta)};
        InitialCondition ic(p, dir);
        GeodesicPath a = integrate_geodesic(nabla1, model, ic, steps, dt, store_stride);
        GeodesicPath b = integrate_geodesic(nabla2, model, ic, steps, dt, store_stride);
        double common = std::min(path_length(a, model), path_length(b, model));
        GeodesicPath at = trim_to_length(a, model, common);
        GeodesicPath bt = trim_to_length(b, model, common);
        double d = trace_distance(at, bt, model);
        res.distances.push_back(d);
        res.max_distance = std::max(res.max_distance, d);
    }
    res.shares = res.max_distance < tol;
    return res;
}

} // namespace weylgeo
