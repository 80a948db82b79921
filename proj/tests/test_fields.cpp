#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "weylgeo/corpus.hpp"
#include "weylgeo/fields.hpp"
#include "weylgeo/models.hpp"

using namespace weylgeo;

namespace {

constexpr double kPi = 3.14159265358979323846;

ScalarField make_scalar(double (*f)(double, double)) {
    return {[f](const ChartPoint& p) { return f(p.u, p.v); }};
}

MetricField euclidean() {
    return {[](const ChartPoint&) { return Sym2::euclidean(); }};
}

} // namespace

TEST_CASE("d_scalar on polynomials and trig fields") {
    ScalarField sq = make_scalar([](double u, double) { return u * u; });
    Vec2 g = d_scalar(sq, {1.0, 0.0, 0});
    CHECK(std::abs(g.x - 2.0) < 1e-8);
    CHECK(std::abs(g.y) < 1e-8);

    ScalarField constant{[](const ChartPoint&) { return 3.5; }};
    Vec2 gc = d_scalar(constant, {0.2, -0.7, 0});
    CHECK(gc.x == 0.0);
    CHECK(gc.y == 0.0);

    // analytic gradient oracle
    ScalarField sc = make_scalar([](double u, double v) { return std::sin(u) * std::cos(v); });
    Vec2 gs = d_scalar(sc, {0.3, 0.7, 0});
    CHECK(std::abs(gs.x - std::cos(0.3) * std::cos(0.7)) < 1e-8);
    CHECK(std::abs(gs.y + std::sin(0.3) * std::sin(0.7)) < 1e-8);
}

TEST_CASE("d_oneform: d^2 = 0, area primitive, analytic oracle") {
    ScalarField f = make_scalar([](double u, double v) { return std::sin(u * v) + u * u * v; });
    OneFormField df = exterior_derivative(f);
    CHECK(std::abs(d_oneform(df, {0.4, -0.3, 0})) < 1e-5);

    OneFormField half_area{[](const ChartPoint& p) { return Vec2{-0.5 * p.v, 0.5 * p.u}; }};
    CHECK(std::abs(d_oneform(half_area, {1.3, 0.2, 0}) - 1.0) < 1e-9);

    OneFormField w{[](const ChartPoint& p) { return Vec2{p.v * p.v, 0.0}; }};
    CHECK(std::abs(d_oneform(w, {0.0, 1.0, 0}) + 2.0) < 1e-6);
}

TEST_CASE("d o d converges at order >= 1.9") {
    SplitMix64 rng(11);
    for (int trial = 0; trial < 4; ++trial) {
        ScalarField f = random_smooth_scalar(rng, 1.0, 2.0);
        ChartPoint p{0.3, -0.2, 0};
        double coarse = std::abs(d_oneform(exterior_derivative(f, 2e-3), p, 2e-3));
        double fine = std::abs(d_oneform(exterior_derivative(f, 1e-3), p, 1e-3));
        if (coarse < 1e-12) continue; // d^2 already at roundoff
        double order = std::log2(coarse / fine);
        CHECK(order >= 1.9);
    }
}

TEST_CASE("Richardson extrapolation lifts the derivative order to ~4") {
    ScalarField f = make_scalar([](double u, double v) { return std::sin(2.0 * u) * std::cos(v); });
    ChartPoint p{0.4, -0.3, 0};
    double exact = 2.0 * std::cos(2.0 * 0.4) * std::cos(-0.3);
    double coarse = std::abs(d_scalar_richardson(f, p, 4e-2).x - exact);
    double fine = std::abs(d_scalar_richardson(f, p, 2e-2).x - exact);
    CHECK(std::log2(coarse / fine) >= 3.5);

    OneFormField w{[](const ChartPoint& q) {
        return Vec2{std::cos(q.v * q.v), std::sin(q.u * q.u)};
    }};
    double exact_d = 2.0 * p.u * std::cos(p.u * p.u) + 2.0 * p.v * std::sin(p.v * p.v);
    double coarse_d = std::abs(d_oneform_richardson(w, p, 4e-2) - exact_d);
    double fine_d = std::abs(d_oneform_richardson(w, p, 2e-2) - exact_d);
    CHECK(std::log2(coarse_d / fine_d) >= 3.5);
}

TEST_CASE("hodge star conventions") {
    MetricField g = euclidean();
    OneFormField du{[](const ChartPoint&) { return Vec2{1.0, 0.0}; }};
    Vec2 star_du = hodge_star(du, g)({0.1, 0.2, 0});
    CHECK(std::abs(star_du.x) < 1e-14);
    CHECK(std::abs(star_du.y - 1.0) < 1e-14);

    // star star = -1 on random data and a random metric
    SplitMix64 rng(7);
    MetricField grand = random_spd_metric(rng, 0.3, 1.5);
    OneFormField w = random_smooth_oneform(rng, 1.0, 2.0);
    OneFormField ww = hodge_star(hodge_star(w, grand), grand);
    SampleGrid grid{-0.8, 0.8, -0.8, 0.8, 7, 0};
    grid.for_each([&](const ChartPoint& p) {
        Vec2 a = ww(p), b = w(p);
        CHECK(std::abs(a.x + b.x) < 1e-10);
        CHECK(std::abs(a.y + b.y) < 1e-10);
    });

    // conformal invariance on the sphere chart
    SurfaceModel sph = SurfaceModel::sphere(1.0);
    MetricField round = round_metric(sph);
    Vec2 s = hodge_star(du, round)({1.0, 1.0, 0});
    CHECK(std::abs(s.x) < 1e-12);
    CHECK(std::abs(s.y - 1.0) < 1e-12);

    // orientation switch flips the convention
    Vec2 sflip = hodge_star(du, g, -1)({0.0, 0.0, 0});
    CHECK(std::abs(sflip.y + 1.0) < 1e-14);
}

TEST_CASE("codifferential sign convention and closed-surface integral") {
    MetricField g = euclidean();
    OneFormField zero{[](const ChartPoint&) { return Vec2{0.0, 0.0}; }};
    CHECK(codifferential(zero, g)({0.3, 0.1, 0}) == 0.0);

    OneFormField udu{[](const ChartPoint& p) { return Vec2{p.u, 0.0}; }};
    CHECK(std::abs(codifferential(udu, g)({0.4, -1.2, 0}) + 1.0) < 1e-9);

    SplitMix64 rng(23);
    MetricField gt = random_periodic_metric(rng, 0.2);
    OneFormField beta = random_periodic_oneform(rng, 0.5);
    ScalarField db = codifferential(beta, gt);
    TwoFormField integrand{[db, gt](const ChartPoint& p) {
        return db(p) * std::sqrt(gt(p).det());
    }};
    double total = integrate_2form(integrand, SurfaceModel::torus().mesh(48));
    CHECK(std::abs(total) < 1e-8);
}

TEST_CASE("orthonormal coframe") {
    CHECK(orthonormal_coframe_at(Sym2::euclidean()).max_abs() == 1.0);
    Mat2 e49 = orthonormal_coframe_at({4.0, 0.0, 9.0});
    CHECK(e49(0, 0) == 2.0);
    CHECK(e49(1, 1) == 3.0);
    CHECK(e49(0, 1) == 0.0);

    SplitMix64 rng(5);
    MetricField g = random_spd_metric(rng, 0.3, 1.5);
    CoframeField cf = orthonormal_coframe(g);
    SampleGrid grid{-1.0, 1.0, -1.0, 1.0, 9, 0};
    grid.for_each([&](const ChartPoint& p) {
        Mat2 e = cf(p);
        CHECK(e.det() > 0.0);
        Mat2 rec = e.transpose() * e;
        Sym2 gp = g(p);
        CHECK(std::abs(rec(0, 0) - gp.uu) < 1e-12);
        CHECK(std::abs(rec(0, 1) - gp.uv) < 1e-12);
        CHECK(std::abs(rec(1, 1) - gp.vv) < 1e-12);
    });

    CHECK_THROWS_AS(orthonormal_coframe_at({1.0, 2.0, 1.0}), Error);
}

TEST_CASE("quadrature on the three models") {
    TwoFormField one{[](const ChartPoint&) { return 1.0; }};
    double unit = integrate_2form(one, SurfaceModel::plane().mesh(32));
    CHECK(std::abs(unit - 1.0) < 1e-12);

    TwoFormField wave{[](const ChartPoint& p) { return std::sin(2.0 * kPi * p.u); }};
    CHECK(std::abs(integrate_2form(wave, SurfaceModel::torus().mesh(40))) < 1e-10);

    SurfaceModel sph = SurfaceModel::sphere(1.3);
    MetricField g = round_metric(sph);
    TwoFormField area{[g](const ChartPoint& p) { return std::sqrt(g(p).det()); }};
    double target = 4.0 * kPi * 1.3 * 1.3;
    double coarse_err = std::abs(integrate_2form(area, sph.mesh(50)) - target);
    double fine_err = std::abs(integrate_2form(area, sph.mesh(100)) - target);
    CHECK(std::abs(integrate_2form(area, sph.mesh(100)) - target) / target < 1e-3);
    CHECK(coarse_err / fine_err >= 3.5);

    Mesh empty;
    CHECK_THROWS_AS(integrate_2form(one, empty), Error);
}

TEST_CASE("domain margin errors") {
    ScalarField f{[](const ChartPoint& p) { return p.u; }, SurfaceModel::plane().chart_domain()};
    CHECK_THROWS_AS(d_scalar(f, {5.0, 0.0, 0}), Error);
    CHECK_NOTHROW(d_scalar(f, {4.9, 0.0, 0}));
}

TEST_CASE("mesh total weight and csv export") {
    Mesh m = SurfaceModel::torus().mesh(16);
    CHECK(std::abs(m.total_weight() - 1.0) < 1e-12);
    export_mesh_csv(m, "mesh_test.csv");
    std::remove("mesh_test.csv");
}
