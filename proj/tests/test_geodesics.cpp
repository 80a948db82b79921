#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "weylgeo/corpus.hpp"
#include "weylgeo/geodesics.hpp"

using namespace weylgeo;

namespace {

constexpr double kPi = 3.14159265358979323846;

ChristoffelField flat() {
    return {[](const ChartPoint&) { return Gamma{}; }};
}

} // namespace

TEST_CASE("flat connection gives straight lines until the atlas ends") {
    SurfaceModel plane = SurfaceModel::plane();
    InitialCondition ic({0.1, -0.2, 0}, {3.0, 4.0}); // normalized to (0.6, 0.8)
    GeodesicPath path = integrate_geodesic(flat(), plane, ic, 1000, 1e-3);
    CHECK_FALSE(path.truncated);
    for (size_t i = 0; i < path.samples.size(); ++i) {
        double t = double(i) * 1e-3;
        CHECK(std::abs(path.samples[i].u - (0.1 + 0.6 * t)) < 1e-10);
        CHECK(std::abs(path.samples[i].v - (-0.2 + 0.8 * t)) < 1e-10);
    }

    GeodesicPath runaway = integrate_geodesic(flat(), plane, ic, 20000, 1e-3);
    CHECK(runaway.truncated);
}

TEST_CASE("great circle through the pole: antipode and period") {
    SurfaceModel sph = SurfaceModel::sphere(1.0);
    ChristoffelField lc = levi_civita(round_metric(sph));
    double dt = 1e-3;
    int steps = int(std::ceil(2.0 * kPi / dt)) + 10;
    InitialCondition ic({1.0, 0.0, 0}, {1.0, 0.0}); // equator point, heading north
    GeodesicPath path = integrate_geodesic(lc, sph, ic, steps, dt);
    REQUIRE(path.has_embedding());

    // the trace is the great circle (cos t, 0, sin t); it passes the north
    // pole, reaches the antipode at t = pi and closes up at t = 2 pi
    bool switched = false;
    double y_max = 0.0;
    for (size_t i = 0; i < path.samples.size(); ++i) {
        switched |= (path.samples[i].chart == 1);
        y_max = std::max(y_max, std::abs(path.embedded[i].y));
    }
    CHECK(switched);
    CHECK(y_max < 1e-8); // confined to the y = 0 plane

    // crossing times of the unwrapped circle phase; linear interpolation
    // between samples removes the dt grid granularity
    auto crossing_time = [&](double target) {
        double prev = 0.0;
        double unwrapped = 0.0;
        for (size_t i = 1; i < path.embedded.size(); ++i) {
            double ph = std::atan2(path.embedded[i].z, path.embedded[i].x);
            double dphi = ph - prev;
            if (dphi > kPi) dphi -= 2.0 * kPi;
            if (dphi < -kPi) dphi += 2.0 * kPi;
            double next = unwrapped + dphi;
            if (unwrapped < target && next >= target)
                return (double(i) - 1.0 + (target - unwrapped) / dphi) * dt;
            unwrapped = next;
            prev = ph;
        }
        return -1.0;
    };
    CHECK(std::abs(crossing_time(kPi / 2.0) - kPi / 2.0) < 1e-4); // pole
    CHECK(std::abs(crossing_time(kPi) - kPi) < 1e-4);             // antipode
    CHECK(std::abs(crossing_time(2.0 * kPi) - 2.0 * kPi) < 1e-4); // period
}

TEST_CASE("metric geodesics conserve their speed") {
    SurfaceModel sph = SurfaceModel::sphere(1.0);
    MetricField g = round_metric(sph);
    ChristoffelField lc = levi_civita(g);
    InitialCondition ic({0.3, -0.5, 0}, {0.8, 0.6});
    GeodesicPath path = integrate_geodesic(lc, sph, ic, 10000, 1e-3);
    auto energy = [&](size_t i) {
        Sym2 gp = g(path.samples[i]);
        Vec2 v = path.velocities[i];
        return gp.uu * v.x * v.x + 2.0 * gp.uv * v.x * v.y + gp.vv * v.y * v.y;
    };
    double e0 = energy(0);
    double worst = 0.0;
    for (size_t i = 0; i < path.samples.size(); i += 100)
        worst = std::max(worst, std::abs(energy(i) - e0) / e0);
    CHECK(worst < 1e-6);
}

TEST_CASE("RK4 endpoint error drops ~16x when dt halves") {
    SurfaceModel sph = SurfaceModel::sphere(1.0);
    ChristoffelField lc = levi_civita(round_metric(sph));
    InitialCondition ic({1.0, 0.0, 0}, {1.0, 0.0});
    auto endpoint_error = [&](double dt) {
        int steps = int(std::lround(2.0 / dt));
        GeodesicPath p = integrate_geodesic(lc, sph, ic, steps, dt);
        Vec3 exact{std::cos(2.0), 0.0, std::sin(2.0)};
        return (p.embedded.back() - exact).norm();
    };
    double coarse = endpoint_error(0.02);
    double fine = endpoint_error(0.01);
    CHECK(coarse / fine >= 14.0);
}

TEST_CASE("trace distance") {
    SurfaceModel sph = SurfaceModel::sphere(1.0);
    ChristoffelField lc = levi_civita(round_metric(sph));
    InitialCondition ic({0.2, 0.1, 0}, {1.0, 0.5});
    GeodesicPath a = integrate_geodesic(lc, sph, ic, 3000, 1e-3);
    CHECK(trace_distance(a, a, sph) == 0.0);

    // same trace, reversed and thinned
    GeodesicPath rev;
    for (size_t i = a.samples.size(); i-- > 0;) {
        if (i % 3 != 0) continue;
        rev.samples.push_back(a.samples[i]);
        rev.embedded.push_back(a.embedded[i]);
    }
    double gap = 0.0;
    for (size_t i = 0; i + 1 < rev.embedded.size(); ++i)
        gap = std::max(gap, (rev.embedded[i + 1] - rev.embedded[i]).norm());
    CHECK(trace_distance(a, rev, sph) < 2.0 * gap);
    CHECK(trace_distance(a, rev, sph) == trace_distance(rev, a, sph)); // symmetric

    // two full great circles through (1,0,0) meeting at 0.1 rad: the trace
    // distance peaks a quarter arc from the crossing, at the crossing angle
    double dt = 1e-3;
    int steps = int(std::ceil(2.0 * kPi / dt)) + 20;
    GeodesicPath c1 =
        integrate_geodesic(lc, sph, InitialCondition({1.0, 0.0, 0}, {1.0, 0.0}), steps, dt);
    double ang = 0.1;
    GeodesicPath c2 = integrate_geodesic(
        lc, sph, InitialCondition({1.0, 0.0, 0}, {std::cos(ang), std::sin(ang)}), steps, dt);
    // chart direction (cos a, sin a) at (1,0) maps to an embedded tangent at
    // angle a with the first circle's tangent, so the crossing angle is a
    double d = trace_distance(c1, c2, sph);
    double expected = 2.0 * std::sin(ang / 2.0); // chordal distance at angle 0.1
    CHECK(std::abs(d - expected) < 3e-3);
}

TEST_CASE("planarity defect") {
    SurfaceModel sph = SurfaceModel::sphere(1.0);
    ChristoffelField lc = levi_civita(round_metric(sph));
    double dt = 1e-3;
    int steps = int(std::ceil(2.0 * kPi / dt));

    // exact equator samples: defect at roundoff
    GeodesicPath equator;
    for (int i = 0; i < 500; ++i) {
        double t = 2.0 * kPi * i / 500.0;
        equator.embedded.push_back({std::cos(t), std::sin(t), 0.0});
        equator.samples.push_back({std::cos(t), std::sin(t), 0});
    }
    CHECK(planarity_defect(equator).defect < 1e-12);

    // integrated equator stays planar to integration accuracy
    GeodesicPath orbit =
        integrate_geodesic(lc, sph, InitialCondition({1.0, 0.0, 0}, {0.0, 1.0}), steps, dt);
    CHECK(planarity_defect(orbit).defect < 1e-8);

    // 45-degree latitude circle: not a geodesic, defect bounded well away
    // from zero (tan-related: sigma ratios of (cos/sqrt2, sin) at 45 deg)
    GeodesicPath latitude;
    double c = std::sqrt(0.5);
    for (int i = 0; i < 400; ++i) {
        double t = 2.0 * kPi * i / 400.0;
        latitude.embedded.push_back({c * std::cos(t), c * std::sin(t), c});
        latitude.samples.push_back({0, 0, 0});
    }
    PlanarityResult lat = planarity_defect(latitude);
    CHECK_FALSE(lat.degenerate);
    CHECK(lat.defect > 0.1);

    // noisy great circle stays well inside the acceptance budget
    SplitMix64 rng(3);
    GeodesicPath noisy = equator;
    for (Vec3& p : noisy.embedded) {
        p.x += rng.uniform(-1e-6, 1e-6);
        p.y += rng.uniform(-1e-6, 1e-6);
        p.z += rng.uniform(-1e-6, 1e-6);
    }
    CHECK(planarity_defect(noisy).defect < 1e-5);

    GeodesicPath too_short;
    too_short.embedded = {{1, 0, 0}, {0, 1, 0}};
    too_short.samples = {{0, 0, 0}, {0, 0, 0}};
    CHECK_THROWS_AS(planarity_defect(too_short), Error);
}

TEST_CASE("shares_geodesics: pure-trace shifts share, perturbations do not") {
    SurfaceModel sph = SurfaceModel::sphere(1.0);
    MetricField ground = round_metric(sph);
    ChristoffelField lc = levi_civita(ground);

    SharesResult same = shares_geodesics(lc, lc, sph, 5, 1e-3, 77);
    CHECK(same.shares);
    CHECK(same.max_distance == 0.0);

    SplitMix64 rng(101);
    for (int trial = 0; trial < 5; ++trial) {
        OneFormField alpha = random_sphere_oneform(sph, rng, 0.2);
        DifferenceTensor shift = iota_embed(alpha);
        ChristoffelField shifted{[lc, shift](const ChartPoint& p) { return lc(p) + shift(p); },
                                 lc.domain};
        SharesResult res = shares_geodesics(lc, shifted, sph, 5, 1e-3, 1000 + trial);
        CHECK(res.shares);
    }

    // non-Beltrami conformal bump: geodesics genuinely move
    ScalarField bump = ambient_scalar(sph, [](const Vec3& n) { return 0.2 * n.x * n.z; });
    MetricField perturbed{[ground, bump](const ChartPoint& p) {
                              return ground(p) * std::exp(2.0 * bump(p));
                          },
                          ground.domain};
    SharesResult neg = shares_geodesics(lc, levi_civita(perturbed), sph, 5, 1e-3, 55);
    CHECK_FALSE(neg.shares);
    CHECK(neg.max_distance > 1e-2);

    // flat model: pure-trace shifts keep straight traces straight
    SurfaceModel plane = SurfaceModel::plane();
    SplitMix64 rng2(7);
    OneFormField alpha = random_smooth_oneform(rng2, 0.3, 1.0);
    DifferenceTensor shift = iota_embed(alpha);
    ChristoffelField f = flat();
    ChristoffelField fshift{[f, shift](const ChartPoint& p) { return f(p) + shift(p); },
                            f.domain};
    SharesResult flat_res = shares_geodesics(f, fshift, plane, 8, 1e-3, 11);
    CHECK(flat_res.shares);
}

TEST_CASE("torus traces wrap") {
    SurfaceModel torus = SurfaceModel::torus();
    InitialCondition ic({0.5, 0.5, 0}, {1.0, 0.618});
    GeodesicPath a = integrate_geodesic(flat(), torus, ic, 4000, 1e-3);
    CHECK_FALSE(a.truncated);
    for (const ChartPoint& p : a.samples) {
        CHECK(p.u >= 0.0);
        CHECK(p.u < 1.0);
    }
    CHECK(trace_distance(a, a, torus) == 0.0);
}
