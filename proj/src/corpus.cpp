#include "weylgeo/corpus.hpp"

#include <cmath>

namespace weylgeo {

namespace {

constexpr double kTwoPi = 6.283185307179586476925;

struct CosTerm {
    double amp, wu, wv, phase;
};

std::array<CosTerm, 4> draw_terms(SplitMix64& rng, double amplitude, double max_freq) {
    std::array<CosTerm, 4> t{};
    for (auto& term : t) {
        term.amp = amplitude / 4.0 * rng.uniform(-1.0, 1.0);
        term.wu = rng.uniform(-max_freq, max_freq);
        term.wv = rng.uniform(-max_freq, max_freq);
        term.phase = rng.uniform(0.0, kTwoPi);
    }
    return t;
}

double eval_terms(const std::array<CosTerm, 4>& t, const ChartPoint& p) {
    double s = 0.0;
    for (const auto& term : t) s += term.amp * std::cos(term.wu * p.u + term.wv * p.v + term.phase);
    return s;
}

std::array<CosTerm, 4> draw_periodic_terms(SplitMix64& rng, double amplitude) {
    std::array<CosTerm, 4> t{};
    for (auto& term : t) {
        term.amp = amplitude / 4.0 * rng.uniform(-1.0, 1.0);
        term.wu = kTwoPi * double(int(rng.uniform(0.0, 3.0)) - 1);
        term.wv = kTwoPi * double(int(rng.uniform(0.0, 3.0)) - 1);
        term.phase = rng.uniform(0.0, kTwoPi);
    }
    return t;
}

} // namespace

ScalarField random_smooth_scalar(SplitMix64& rng, double amplitude, double max_freq,
                                 const Domain& domain) {
    auto t = draw_terms(rng, amplitude, max_freq);
    return {[t](const ChartPoint& p) { return eval_terms(t, p); }, domain};
}

OneFormField random_smooth_oneform(SplitMix64& rng, double amplitude, double max_freq,
                                   const Domain& domain) {
    auto tu = draw_terms(rng, amplitude, max_freq);
    auto tv = draw_terms(rng, amplitude, max_freq);
    return {[tu, tv](const ChartPoint& p) {
                return Vec2{eval_terms(tu, p), eval_terms(tv, p)};
            },
            domain};
}

MetricField random_spd_metric(SplitMix64& rng, double amplitude, double max_freq,
                              const Domain& domain) {
    auto ta = draw_terms(rng, amplitude, max_freq);
    auto tb = draw_terms(rng, amplitude, max_freq);
    auto tc = draw_terms(rng, amplitude, max_freq);
    return {[ta, tb, tc](const ChartPoint& p) {
                return Sym2{1.0 + eval_terms(ta, p), eval_terms(tc, p),
                            1.0 + eval_terms(tb, p)};
            },
            domain};
}

ScalarField random_periodic_scalar(SplitMix64& rng, double amplitude) {
    auto t = draw_periodic_terms(rng, amplitude);
    Domain d = SurfaceModel::torus().chart_domain();
    return {[t](const ChartPoint& p) { return eval_terms(t, p); }, d};
}

OneFormField random_periodic_oneform(SplitMix64& rng, double amplitude) {
    auto tu = draw_periodic_terms(rng, amplitude);
    auto tv = draw_periodic_terms(rng, amplitude);
    Domain d = SurfaceModel::torus().chart_domain();
    return {[tu, tv](const ChartPoint& p) {
                return Vec2{eval_terms(tu, p), eval_terms(tv, p)};
            },
            d};
}

MetricField random_periodic_metric(SplitMix64& rng, double amplitude) {
    auto ta = draw_periodic_terms(rng, amplitude);
    auto tb = draw_periodic_terms(rng, amplitude);
    auto tc = draw_periodic_terms(rng, amplitude);
    Domain d = SurfaceModel::torus().chart_domain();
    return {[ta, tb, tc](const ChartPoint& p) {
                return Sym2{1.0 + eval_terms(ta, p), eval_terms(tc, p),
                            1.0 + eval_terms(tb, p)};
            },
            d};
}

OneFormField random_sphere_oneform(const SurfaceModel& sphere, SplitMix64& rng,
                                   double amplitude) {
    // coefficients c_i(x) = a_i + B_i . x restricted to the sphere
    Vec3 a = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    Mat3 b;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) b(i, j) = rng.uniform(-1.0, 1.0);
    OneFormField raw = ambient_oneform(sphere, [a, b](const Vec3& x) { return a + b * x; });
    // normalize so that amplitude bounds the chart components; the two unit
    // disks together cover the whole sphere
    double sup = 0.0;
    double r = sphere.radius();
    for (int chart = 0; chart < 2; ++chart) {
        SampleGrid grid{-r, r, -r, r, 9, chart};
        grid.for_each([&](const ChartPoint& p) {
            Vec2 c = raw(p);
            sup = std::max({sup, std::abs(c.x), std::abs(c.y)});
        });
    }
    double s = sup > 0.0 ? amplitude / sup : 0.0;
    return {[raw, s](const ChartPoint& p) { return raw(p) * s; }, raw.domain};
}

SL3Matrix random_sl3(SplitMix64& rng, double cond_max) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        Mat3 m;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m(i, j) = rng.uniform(-1.0, 1.0);
        if (std::abs(m.det()) < 0.05) continue;
        SL3Matrix psi(m);
        if (psi.condition_number() <= cond_max) return psi;
    }
    fail(ErrorCode::argument, "random_sl3: condition cap too tight");
}

GroupElement random_group_element(SplitMix64& rng, double b_max) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        Mat2 a = {{{1.0 + 0.5 * rng.uniform(-1.0, 1.0), 0.5 * rng.uniform(-1.0, 1.0)},
                   {0.5 * rng.uniform(-1.0, 1.0), 1.0 + 0.5 * rng.uniform(-1.0, 1.0)}}};
        Vec2 b = {rng.uniform(-b_max, b_max), rng.uniform(-b_max, b_max)};
        if (a.det() > 0.1) return make_group_element(a, b);
    }
    fail(ErrorCode::argument, "random_group_element: rejection overflow");
}

} // namespace weylgeo
