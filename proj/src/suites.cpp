#include "weylgeo/suites.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

#include "weylgeo/cartan.hpp"
#include "weylgeo/corpus.hpp"
#include "weylgeo/geodesics.hpp"

namespace weylgeo {

namespace {

constexpr double kPi = 3.14159265358979323846;

using Clock = std::chrono::steady_clock;

class SuiteBuilder {
public:
    explicit SuiteBuilder(std::string suite, const SuiteConfig& config) {
        report_.suite = std::move(suite);
        report_.config = config;
    }

    // residual must stay at or below tolerance
    void bound(const std::string& name, std::function<double()> eval, double tolerance) {
        auto t0 = Clock::now();
        double residual = eval();
        add(name, residual, tolerance, residual <= tolerance, t0);
    }

    // residual must exceed tolerance (negative controls, kernel floors)
    void exceeds(const std::string& name, std::function<double()> eval, double tolerance) {
        auto t0 = Clock::now();
        double residual = eval();
        add(name, residual, tolerance, residual > tolerance, t0);
    }

    // measured convergence order must reach the threshold
    void order_at_least(const std::string& name, std::function<double()> eval,
                        double threshold) {
        auto t0 = Clock::now();
        double order = eval();
        CheckRecord r;
        r.name = name;
        r.residual = std::max(0.0, threshold - order);
        r.tolerance = 0.0;
        r.order = order;
        r.passed = order >= threshold;
        r.runtime_ms = ms_since(t0);
        report_.checks.push_back(std::move(r));
    }

    SuiteReport take() { return std::move(report_); }

private:
    static double ms_since(Clock::time_point t0) {
        return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    }

    void add(const std::string& name, double residual, double tolerance, bool passed,
             Clock::time_point t0) {
        CheckRecord r;
        r.name = name;
        r.residual = residual;
        r.tolerance = tolerance;
        r.passed = passed;
        r.runtime_ms = ms_since(t0);
        report_.checks.push_back(std::move(r));
    }

    SuiteReport report_;
};

OneFormField zero_form(const Domain& d = Domain::unbounded()) {
    return {[](const ChartPoint&) { return Vec2{0.0, 0.0}; }, d};
}

struct PlaneCorpus {
    MetricField g;
    OneFormField beta;
};

// the random chart-level (g, beta) corpora used by the structure checks
std::vector<PlaneCorpus> plane_corpora(uint64_t seed, int count) {
    SplitMix64 rng(seed);
    std::vector<PlaneCorpus> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i)
        out.push_back({random_spd_metric(rng, 0.2, 1.2), random_smooth_oneform(rng, 0.3, 1.2)});
    return out;
}

// ---- structure suite --------------------------------------------------------

SuiteReport run_structure(const SuiteConfig& cfg) {
    SuiteBuilder suite("structure", cfg);
    SurfaceModel sph = SurfaceModel::sphere(cfg.radius);
    MetricField round = round_metric(sph);
    std::vector<PlaneCorpus> corpora = plane_corpora(cfg.seed, 5);
    SampleGrid sphere_grid{-0.6 * cfg.radius, 0.6 * cfg.radius, -0.6 * cfg.radius,
                           0.6 * cfg.radius, 21, 0};
    SampleGrid w_grid{-0.4, 0.4, -0.4, 0.4, 21, 0};
    SampleGrid small_grid{-0.3, 0.3, -0.3, 0.3, 7, 0};

    suite.bound(
        "flat_gauge_residual",
        [&] {
            MetricField flat{[](const ChartPoint&) { return Sym2::euclidean(); }};
            CartanGauge theta = weyl_gauge(flat, zero_form());
            double worst = 0.0;
            small_grid.for_each([&](const ChartPoint& p) {
                GaugeDensity r = structure_residual_at(theta, p, 1e-3);
                for (auto& row : r)
                    for (double v : row) worst = std::max(worst, std::abs(v));
            });
            return worst;
        },
        1e-8);

    suite.bound(
        "sphere_w_zero",
        [&] {
            CurvatureResidual res =
                structure_residual(weyl_gauge(round, zero_form(round.domain)), sphere_grid);
            double worst = 0.0;
            sphere_grid.for_each([&](const ChartPoint& p) {
                worst = std::max({worst, std::abs(res.w1(p)), std::abs(res.w2(p))});
            });
            return worst;
        },
        1e-4);

    suite.bound(
        "sphere_shape_defect",
        [&] {
            return structure_residual(weyl_gauge(round, zero_form(round.domain)), sphere_grid)
                .shape_defect;
        },
        1e-4);

    suite.order_at_least(
        "shape_defect_order",
        [&] {
            double worst_order = 1e300;
            for (const auto& c : corpora) {
                double coarse = structure_residual(
                                    weyl_gauge(c.g, c.beta, CartanSteps::scaled(8e-3)),
                                    small_grid, 8e-3)
                                    .shape_defect;
                double fine = structure_residual(
                                  weyl_gauge(c.g, c.beta, CartanSteps::scaled(4e-3)),
                                  small_grid, 4e-3)
                                  .shape_defect;
                worst_order = std::min(worst_order, std::log2(coarse / fine));
            }
            return worst_order;
        },
        1.9);

    suite.bound(
        "w_pipelines_match",
        [&] {
            double worst = 0.0;
            for (const auto& c : corpora) {
                CurvatureResidual res = structure_residual(weyl_gauge(c.g, c.beta), w_grid);
                auto [w1, w2] = w_closed_form(c.g, c.beta);
                double scale = 0.0, diff = 0.0;
                w_grid.for_each([&](const ChartPoint& p) {
                    scale = std::max({scale, std::abs(w1(p)), std::abs(w2(p))});
                    diff = std::max(
                        {diff, std::abs(res.w1(p) - w1(p)), std::abs(res.w2(p) - w2(p))});
                });
                worst = std::max(worst, diff / scale);
            }
            return worst;
        },
        1e-3);

    suite.bound(
        "omega2_weyl_zero",
        [&] {
            double worst = 0.0;
            for (const auto& c : corpora) {
                ComplexForms forms = complexify(weyl_gauge(c.g, c.beta));
                small_grid.for_each([&](const ChartPoint& p) {
                    auto w2 = forms.omega2(p);
                    worst = std::max({worst, std::abs(w2[0]), std::abs(w2[1])});
                });
            }
            return worst;
        },
        1e-15);

    suite.bound(
        "complex_residuals",
        [&] {
            double worst = 0.0;
            CartanGauge sphere_theta = weyl_gauge(round, zero_form(round.domain));
            small_grid.for_each([&](const ChartPoint& p) {
                worst = std::max(worst, complex_structure_residuals(sphere_theta, p).max_abs());
            });
            for (const auto& c : corpora) {
                CartanGauge theta = weyl_gauge(c.g, c.beta);
                small_grid.for_each([&](const ChartPoint& p) {
                    worst = std::max(worst, complex_structure_residuals(theta, p).max_abs());
                });
            }
            return worst;
        },
        1e-4);

    suite.bound(
        "complex_equivalence",
        [&] {
            double worst = 0.0;
            for (const auto& c : corpora) {
                CartanGauge theta = weyl_gauge(c.g, c.beta);
                small_grid.for_each([&](const ChartPoint& p) {
                    worst =
                        std::max(worst, complex_structure_residuals(theta, p).max_mismatch());
                });
            }
            return worst;
        },
        1e-10);

    suite.bound(
        "omega1_scaling_law",
        [&] {
            CartanGauge theta = weyl_gauge(corpora[0].g, corpora[0].beta);
            GroupElement h = GroupElement::rotation_scaling({0.3, -0.4}, 1.2, 0.7);
            ComplexForms base = complexify(theta);
            ComplexForms moved =
                complexify(gauge_transform(theta, [h](const ChartPoint&) { return h; }));
            std::complex<double> factor = std::polar(1.0, 0.7) / (1.2 * 1.2 * 1.2);
            double worst = 0.0;
            small_grid.for_each([&](const ChartPoint& p) {
                auto a = base.omega1(p);
                auto b = moved.omega1(p);
                worst = std::max(
                    {worst, std::abs(b[0] - factor * a[0]), std::abs(b[1] - factor * a[1])});
            });
            return worst;
        },
        1e-8);

    suite.bound(
        "omega2_rotation_law",
        [&] {
            // needs omega2 != 0: gauge along a xi section
            CartanSteps steps;
            const auto& c = corpora[1];
            OneFormField xi_form = corpora[2].beta;
            CartanGauge theta = theta_general(
                zeta_conformal(c.g, c.beta, steps.h_coframe),
                schouten_conformal(c.g, c.beta, steps),
                [xi_form](const ChartPoint& q) { return xi_form(q); },
                orthonormal_coframe(c.g), steps.h_coframe);
            double phi = -0.55;
            GroupElement rot = GroupElement::rotation_scaling({0.0, 0.0}, 1.0, phi);
            ComplexForms base = complexify(theta);
            ComplexForms moved =
                complexify(gauge_transform(theta, [rot](const ChartPoint&) { return rot; }));
            std::complex<double> factor = std::polar(1.0, 2.0 * phi);
            double worst = 0.0;
            small_grid.for_each([&](const ChartPoint& p) {
                auto a = base.omega2(p);
                auto b = moved.omega2(p);
                worst = std::max(
                    {worst, std::abs(b[0] - factor * a[0]), std::abs(b[1] - factor * a[1])});
            });
            return worst;
        },
        1e-8);

    suite.bound(
        "w_rotation_covariance",
        [&] {
            const auto& c = corpora[3];
            CartanGauge theta = weyl_gauge(c.g, c.beta);
            GroupElement rot = GroupElement::rotation_scaling({0.0, 0.0}, 1.0, 0.85);
            CartanGauge moved =
                gauge_transform(theta, [rot](const ChartPoint&) { return rot; });
            CurvatureResidual base = structure_residual(theta, small_grid);
            CurvatureResidual rotated = structure_residual(moved, small_grid);
            double worst = 0.0;
            small_grid.for_each([&](const ChartPoint& p) {
                double w1 = base.w1(p), w2 = base.w2(p);
                double e1 = w1 * rot.a(0, 0) + w2 * rot.a(1, 0);
                double e2 = w1 * rot.a(0, 1) + w2 * rot.a(1, 1);
                worst = std::max(
                    {worst, std::abs(rotated.w1(p) - e1), std::abs(rotated.w2(p) - e2)});
            });
            return worst;
        },
        1e-6);

    suite.bound(
        "trace_free_gauges",
        [&] {
            double worst = gauge_trace_residual(weyl_gauge(round, zero_form(round.domain)),
                                                sphere_grid);
            for (const auto& c : corpora)
                worst = std::max(worst,
                                 gauge_trace_residual(weyl_gauge(c.g, c.beta), small_grid));
            return worst;
        },
        1e-10);

    suite.bound(
        "theta_general_shape",
        [&] {
            SplitMix64 rng(cfg.seed + 101);
            const auto& c = corpora[4];
            OneFormField xi_form = random_smooth_oneform(rng, 0.3, 1.0);
            CartanSteps steps;
            CartanGauge theta = theta_general(
                zeta_conformal(c.g, c.beta, steps.h_coframe),
                schouten_conformal(c.g, c.beta, steps),
                [xi_form](const ChartPoint& q) { return xi_form(q); },
                orthonormal_coframe(c.g), steps.h_coframe);
            return structure_residual(theta, small_grid).shape_defect;
        },
        1e-5);

    // conformal-connection algebra
    suite.bound(
        "conformal_gauge_invariance",
        [&] {
            SplitMix64 rng(cfg.seed + 202);
            const auto& c = corpora[0];
            ScalarField u = random_smooth_scalar(rng, 0.3, 1.0);
            MetricField g2{
                [g = c.g, u](const ChartPoint& p) { return g(p) * std::exp(2.0 * u(p)); },
                c.g.domain};
            OneFormField b2{
                [b = c.beta, u](const ChartPoint& p) { return b(p) + d_scalar(u, p); },
                c.beta.domain};
            ChristoffelField n1 = conformal_connection(c.g, c.beta);
            ChristoffelField n2 = conformal_connection(g2, b2);
            double worst = 0.0;
            w_grid.for_each(
                [&](const ChartPoint& p) { worst = std::max(worst, (n1(p) - n2(p)).max_abs()); });
            return worst;
        },
        1e-6);

    suite.order_at_least(
        "compatibility_order",
        [&] {
            const auto& c = corpora[1];
            ChristoffelField nabla = conformal_connection(c.g, c.beta);
            ChartPoint p{0.2, -0.1, 0};
            double coarse = weyl_compatibility_residual(nabla, c.g, c.beta, 4e-3)(p);
            double fine = weyl_compatibility_residual(nabla, c.g, c.beta, 2e-3)(p);
            return std::log2(coarse / fine);
        },
        1.9);

    suite.bound(
        "conformal_ricci_formula",
        [&] {
            const auto& c = corpora[2];
            RicciData ric = ricci(conformal_connection(c.g, c.beta));
            ScalarField k = gauss_curvature(c.g);
            ScalarField db = codifferential(c.beta, c.g);
            double worst = 0.0;
            small_grid.for_each([&](const ChartPoint& p) {
                double scale = k(p) - db(p);
                worst = std::max(worst, (ric.sym(p) - c.g(p) * scale).max_abs());
                worst = std::max(worst, std::abs(ric.skew(p) + d_oneform(c.beta, p)));
            });
            return worst;
        },
        1e-5);

    suite.bound(
        "schouten_diagonal",
        [&] {
            const auto& c = corpora[3];
            SchoutenMatrix s =
                schouten(conformal_connection(c.g, c.beta), orthonormal_coframe(c.g));
            ScalarField k = gauss_curvature(c.g);
            ScalarField db = codifferential(c.beta, c.g);
            double worst = 0.0;
            small_grid.for_each([&](const ChartPoint& p) {
                double diag = k(p) - db(p);
                Mat2 sp = s(p);
                worst = std::max(
                    {worst, std::abs(sp(0, 0) - diag), std::abs(sp(1, 1) - diag)});
            });
            return worst;
        },
        1e-5);

    return suite.take();
}

// ---- projective suite -------------------------------------------------------

SuiteReport run_projective(const SuiteConfig& cfg) {
    SuiteBuilder suite("projective", cfg);
    SurfaceModel sph = SurfaceModel::sphere(cfg.radius);
    MetricField round = round_metric(sph);
    ChristoffelField round_lc = levi_civita(round, cfg.h);
    SampleGrid eq_grid{-0.7 * cfg.radius, 0.7 * cfg.radius, -0.7 * cfg.radius,
                       0.7 * cfg.radius, cfg.grid, 0};

    suite.bound(
        "beltrami_weyl_criterion",
        [&] {
            SplitMix64 rng(cfg.seed);
            double worst = 0.0;
            for (int i = 0; i < cfg.n_psi; ++i) {
                SL3Matrix psi = random_sl3(rng, 5.0);
                ChristoffelField lc = levi_civita(beltrami_metric(sph, psi).metric, cfg.h);
                EquivalenceResult eq = projectively_equivalent(lc, round_lc, eq_grid, 1e-5);
                worst = std::max(worst, eq.residual);
            }
            return worst;
        },
        1e-5);

    suite.bound(
        "beltrami_sharing_agrees",
        [&] {
            // the Weyl-criterion booleans above and the trace test must agree:
            // every pullback metric shares its geodesic traces with the round one
            SplitMix64 rng(cfg.seed);
            double worst = 0.0;
            for (int i = 0; i < cfg.n_psi; ++i) {
                SL3Matrix psi = random_sl3(rng, 5.0);
                ChristoffelField lc = levi_civita(beltrami_metric(sph, psi).metric, cfg.h);
                SharesResult res = shares_geodesics(lc, round_lc, sph, 1, 1e-3, cfg.seed + i,
                                                    cfg.steps, cfg.dt, 2);
                worst = std::max(worst, res.max_distance);
            }
            return worst;
        },
        1e-3);

    suite.bound(
        "iota_shift_sharing",
        [&] {
            SplitMix64 rng(cfg.seed + 1);
            double worst = 0.0;
            for (int i = 0; i < cfg.n_alpha; ++i) {
                OneFormField alpha = random_sphere_oneform(sph, rng, 0.3);
                DifferenceTensor shift = iota_embed(alpha);
                ChristoffelField shifted{
                    [round_lc, shift](const ChartPoint& p) { return round_lc(p) + shift(p); },
                    round_lc.domain};
                SharesResult res = shares_geodesics(round_lc, shifted, sph, 1, 1e-3,
                                                    rng.next(), cfg.steps, cfg.dt, 2);
                worst = std::max(worst, res.max_distance);
            }
            return worst;
        },
        1e-3);

    suite.bound(
        "flat_iota_shift_sharing",
        [&] {
            SurfaceModel plane = SurfaceModel::plane();
            ChristoffelField flat{[](const ChartPoint&) { return Gamma{}; },
                                  plane.chart_domain()};
            SplitMix64 rng(cfg.seed + 2);
            double worst = 0.0;
            for (int i = 0; i < 10; ++i) {
                OneFormField alpha = random_smooth_oneform(rng, 0.3, 1.0);
                DifferenceTensor shift = iota_embed(alpha);
                ChristoffelField shifted{
                    [flat, shift](const ChartPoint& p) { return flat(p) + shift(p); },
                    flat.domain};
                SharesResult res = shares_geodesics(flat, shifted, plane, 2, 1e-3,
                                                    rng.next(), cfg.steps, cfg.dt, 2);
                worst = std::max(worst, res.max_distance);
            }
            return worst;
        },
        1e-3);

    // negative control: a conformal bump moves both tests off zero
    ScalarField bump = ambient_scalar(sph, [](const Vec3& n) { return 0.2 * n.x * n.z; });
    MetricField perturbed{
        [round, bump](const ChartPoint& p) { return round(p) * std::exp(2.0 * bump(p)); },
        round.domain};
    ChristoffelField perturbed_lc = levi_civita(perturbed, cfg.h);

    suite.exceeds(
        "negative_control_weyl",
        [&] { return projectively_equivalent(perturbed_lc, round_lc, eq_grid).residual; },
        100.0 * 1e-5);

    suite.exceeds(
        "negative_control_sharing",
        [&] {
            return shares_geodesics(round_lc, perturbed_lc, sph, 5, 1e-3, cfg.seed + 3,
                                    cfg.steps, cfg.dt, 2)
                .max_distance;
        },
        10.0 * 1e-3);

    return suite.take();
}

// ---- beltrami suite ---------------------------------------------------------

SuiteReport run_beltrami(const SuiteConfig& cfg) {
    SuiteBuilder suite("beltrami", cfg);
    SurfaceModel sph = SurfaceModel::sphere(cfg.radius);

    suite.bound(
        "great_circle_planarity",
        [&] {
            SplitMix64 rng(cfg.seed);
            double worst = 0.0;
            int planarity_steps = std::max(200, int(std::lround(1.8 / cfg.dt)));
            int stride = std::max(1, planarity_steps / 225);
            for (int i = 0; i < cfg.n_psi; ++i) {
                SL3Matrix psi = random_sl3(rng, 5.0);
                BeltramiMetric bm = beltrami_metric(sph, psi);
                ChristoffelField lc = levi_civita(bm.metric, cfg.h);
                for (int j = 0; j < cfg.n_geodesics; ++j) {
                    double ang = rng.uniform(0.0, 2.0 * kPi);
                    double rad = 0.6 * cfg.radius * std::sqrt(rng.uniform());
                    double dir = rng.uniform(0.0, 2.0 * kPi);
                    InitialCondition ic(
                        {rad * std::cos(ang), rad * std::sin(ang), 0},
                        {std::cos(dir), std::sin(dir)});
                    GeodesicPath path =
                        integrate_geodesic(lc, sph, ic, planarity_steps, cfg.dt, stride);
                    worst = std::max(worst, planarity_defect(path).defect);
                }
            }
            return worst;
        },
        1e-6);

    suite.bound(
        "family_rank_is_5",
        [&] {
            SplitMix64 rng(cfg.seed + 7);
            double worst = 0.0; // residual: |rank - 5| summed with gap failures
            for (int i = 0; i < 10; ++i) {
                SL3Matrix base = random_sl3(rng, 5.0);
                FamilyRankResult r = family_rank(sph, base);
                if (r.rank != 5 || r.gap_ratio < 1e3) worst += 1.0;
            }
            return worst;
        },
        0.0);

    suite.bound(
        "family_gap_ratio_floor",
        [&] {
            SplitMix64 rng(cfg.seed + 7);
            double min_gap = 1e300;
            for (int i = 0; i < 10; ++i)
                min_gap = std::min(min_gap, family_rank(sph, random_sl3(rng, 5.0)).gap_ratio);
            return 1e3 / min_gap; // below 1 iff every gap exceeds 1e3
        },
        1.0);

    suite.bound(
        "so3_isometry_directions",
        [&] { return so3_direction_residual(sph, SL3Matrix::identity()); }, 1e-8);

    suite.bound(
        "chart_transition_compatibility",
        [&] {
            SplitMix64 rng(cfg.seed + 9);
            SL3Matrix psi = random_sl3(rng, 4.0);
            ChristoffelField lc = levi_civita(beltrami_metric(sph, psi).metric, cfg.h);
            double worst = 0.0;
            for (int t = 0; t < 12; ++t) {
                double ang = rng.uniform(0.0, 2.0 * kPi);
                double rho = cfg.radius * rng.uniform(0.85, 1.15);
                ChartPoint x{rho * std::cos(ang), rho * std::sin(ang), 0};
                ChartPoint xp = sph.transition(x);
                Mat2 jac = sph.transition_jacobian(x);
                Mat2 inv = sph.transition_jacobian(xp);
                double h = 1e-5;
                Mat2 dj[2] = {
                    (sph.transition_jacobian({xp.u + h, xp.v, xp.chart}) -
                     sph.transition_jacobian({xp.u - h, xp.v, xp.chart})) *
                        (1.0 / (2 * h)),
                    (sph.transition_jacobian({xp.u, xp.v + h, xp.chart}) -
                     sph.transition_jacobian({xp.u, xp.v - h, xp.chart})) *
                        (1.0 / (2 * h))};
                Gamma g0 = lc(x);
                Gamma g1 = lc(xp);
                for (int c = 0; c < 2; ++c)
                    for (int a = 0; a < 2; ++a)
                        for (int b = 0; b < 2; ++b) {
                            double val = 0.0;
                            for (int k = 0; k < 2; ++k) {
                                double sum = dj[b](k, a);
                                for (int i = 0; i < 2; ++i)
                                    for (int j2 = 0; j2 < 2; ++j2)
                                        sum += g0.c[k][i][j2] * inv(i, a) * inv(j2, b);
                                val += jac(c, k) * sum;
                            }
                            worst = std::max(worst, std::abs(g1.c[c][a][b] - val));
                        }
            }
            return worst;
        },
        1e-5);

    suite.bound(
        "analytic_vs_fd_pullback",
        [&] {
            SplitMix64 rng(cfg.seed + 11);
            SL3Matrix psi = random_sl3(rng, 5.0);
            BeltramiMetric bm = beltrami_metric(sph, psi);
            MetricField fd = beltrami_metric_fd(sph, psi);
            double worst = 0.0;
            SampleGrid grid{-1.2 * cfg.radius, 1.2 * cfg.radius, -1.2 * cfg.radius,
                            1.2 * cfg.radius, 7, 0};
            grid.for_each([&](const ChartPoint& p) {
                worst = std::max(worst, (bm.metric(p) - fd(p)).max_abs());
            });
            return worst;
        },
        1e-6);

    return suite.take();
}

// ---- degree suite -----------------------------------------------------------

SuiteReport run_degree(const SuiteConfig& cfg) {
    SuiteBuilder suite("degree", cfg);
    SurfaceModel sph = SurfaceModel::sphere(cfg.radius);
    MetricField round = round_metric(sph);

    suite.bound(
        "sphere_degree_4",
        [&] {
            DegreeResult d =
                degree_normal_bundle(sph, round, zero_form(round.domain), cfg.resolution);
            return std::abs(d.raw - 4.0);
        },
        1e-3);

    suite.bound(
        "sphere_beta_invariance",
        [&] {
            SplitMix64 rng(cfg.seed);
            double lo = 4.0, hi = 4.0;
            for (int i = 0; i < 10; ++i) {
                OneFormField beta = random_sphere_oneform(sph, rng, 0.4);
                DegreeResult d = degree_normal_bundle(sph, round, beta, 160);
                lo = std::min(lo, d.raw);
                hi = std::max(hi, d.raw);
            }
            return hi - lo;
        },
        2e-3);

    suite.bound(
        "torus_degree_0",
        [&] {
            SplitMix64 rng(cfg.seed + 1);
            auto [g1, g2] = flat_torus_pair();
            OneFormField beta = random_periodic_oneform(rng, 0.4);
            DegreeResult d = degree_normal_bundle(SurfaceModel::torus(), g2, beta, 128);
            return std::abs(d.raw);
        },
        1e-6);

    return suite.take();
}

// ---- uniqueness suite ---------------------------------------------------------

SuiteReport run_uniqueness(const SuiteConfig& cfg) {
    SuiteBuilder suite("uniqueness", cfg);
    SampleGrid torus_grid{0.15, 0.85, 0.15, 0.85, 9, 0};

    auto [g1, g2] = flat_torus_pair();
    FInvariantResult torus =
        f_invariant(g1, g2, zero_form(g1.domain), zero_form(g1.domain), torus_grid);

    suite.bound(
        "torus_pair_f_is_1_36",
        [&] {
            double worst = 0.0;
            torus_grid.for_each([&](const ChartPoint& p) {
                worst = std::max(worst, std::abs(torus.f(p) - 1.36));
            });
            return torus.precondition_ok ? worst : 1.0;
        },
        1e-12);

    suite.bound("torus_pair_df_identity", [&] { return torus.identity_residual; }, 1e-10);

    SplitMix64 rng(cfg.seed);
    MetricField g = random_spd_metric(rng, 0.25, 1.2);
    OneFormField beta = random_smooth_oneform(rng, 0.3, 1.2);
    ScalarField u = random_smooth_scalar(rng, 0.4, 1.0);
    MetricField h{[g, u](const ChartPoint& p) { return g(p) * std::exp(2.0 * u(p)); },
                  g.domain};
    OneFormField alpha{[beta, u](const ChartPoint& p) { return beta(p) + d_scalar(u, p); },
                       beta.domain};
    SampleGrid plane_grid{-0.4, 0.4, -0.4, 0.4, 9, 0};
    FInvariantResult conf = f_invariant(g, h, beta, alpha, plane_grid);

    suite.bound(
        "conformal_pair_f_vanishes",
        [&] {
            double worst = 0.0;
            plane_grid.for_each(
                [&](const ChartPoint& p) { worst = std::max(worst, std::abs(conf.f(p))); });
            return conf.precondition_ok ? worst : 1.0;
        },
        1e-12);

    suite.bound("conformal_pair_df_identity", [&] { return conf.identity_residual; }, 1e-10);

    suite.exceeds(
        "kernel_sigma_floor",
        [&] {
            SplitMix64 rng2(cfg.seed + 1);
            double min_sigma = 1e300;
            for (int t = 0; t < 100; ++t) {
                ChartPoint p{rng2.uniform(-1.0, 1.0), rng2.uniform(-1.0, 1.0), 0};
                min_sigma = std::min(min_sigma, conformal_kernel_sigma_min(g(p)));
            }
            return min_sigma;
        },
        0.2);

    suite.exceeds(
        "least_squares_floor",
        [&] {
            SplitMix64 rng2(cfg.seed + 2);
            OneFormField alpha2 = random_smooth_oneform(rng2, 0.5, 1.2);
            ChristoffelField conf_conn = conformal_connection(g, beta);
            DifferenceTensor shift = iota_embed(alpha2);
            ChristoffelField shifted{
                [conf_conn, shift](const ChartPoint& p) { return conf_conn(p) + shift(p); },
                conf_conn.domain};
            double sup_alpha = 0.0, sup_fit = 0.0;
            plane_grid.for_each([&](const ChartPoint& p) {
                Vec2 a = alpha2(p);
                sup_alpha = std::max({sup_alpha, std::abs(a.x), std::abs(a.y)});
                sup_fit = std::max(sup_fit, best_fit_compatibility_residual(shifted, g, p));
            });
            return sup_fit / (0.5 * sup_alpha); // > 1 iff the floor holds
        },
        1.0);

    suite.exceeds(
        "nonparallel_pair_guard",
        [&] {
            SurfaceModel sph = SurfaceModel::sphere(cfg.radius);
            MetricField round = round_metric(sph);
            MetricField bh = beltrami_metric(sph, SL3Matrix::diag(2.0, 1.0, 0.5)).metric;
            SampleGrid sph_grid{-0.4, 0.4, -0.4, 0.4, 7, 0};
            FInvariantResult guard = f_invariant(round, bh, zero_form(round.domain),
                                                 zero_form(round.domain), sph_grid);
            return guard.precondition_ok ? 0.0 : guard.precondition_residual;
        },
        0.1);

    return suite.take();
}

// ---- jets suite ---------------------------------------------------------------

SuiteReport run_jets(const SuiteConfig& cfg) {
    SuiteBuilder suite("jets", cfg);

    suite.bound(
        "jet_homomorphism",
        [&] {
            SplitMix64 rng(cfg.seed);
            double worst = 0.0;
            for (int t = 0; t < 100; ++t) {
                GroupElement g1 = random_group_element(rng, 0.5);
                GroupElement g2 = random_group_element(rng, 0.5);
                worst = std::max(worst, jet_homomorphism_residual(g1, g2));
            }
            return worst;
        },
        1e-9);

    suite.bound(
        "group_embedding_product",
        [&] {
            SplitMix64 rng(cfg.seed + 1);
            double worst = 0.0;
            for (int t = 0; t < 100; ++t) {
                GroupElement g1 = random_group_element(rng, 0.8);
                GroupElement g2 = random_group_element(rng, 0.8);
                Mat3 lhs = g1.embed() * g2.embed();
                Mat3 rhs = group_mul(g1, g2).embed();
                worst = std::max(worst, (lhs - rhs).max_abs());
                worst = std::max(worst, std::abs(rhs.det() - 1.0));
            }
            return worst;
        },
        1e-12);

    suite.bound(
        "jet_matches_finite_differences",
        [&] {
            SplitMix64 rng(cfg.seed + 2);
            double worst = 0.0;
            double h = 3e-4;
            for (int t = 0; t < 25; ++t) {
                GroupElement g = random_group_element(rng, 0.4);
                TwoJet exact = two_jet_of_fab(g);
                Vec2 e[2] = {{1.0, 0.0}, {0.0, 1.0}};
                for (int j = 0; j < 2; ++j) {
                    Vec2 plus = fractional_linear_apply(g, e[j] * h);
                    Vec2 minus = fractional_linear_apply(g, e[j] * -h);
                    worst = std::max(worst,
                                     std::abs(exact.jacobian(0, j) - (plus.x - minus.x) / (2 * h)));
                    worst = std::max(worst,
                                     std::abs(exact.jacobian(1, j) - (plus.y - minus.y) / (2 * h)));
                    worst = std::max(
                        worst, std::abs(exact.hessian[0][j][j] - (plus.x + minus.x) / (h * h)));
                    worst = std::max(
                        worst, std::abs(exact.hessian[1][j][j] - (plus.y + minus.y) / (h * h)));
                }
                Vec2 pp = fractional_linear_apply(g, {h, h});
                Vec2 pm = fractional_linear_apply(g, {h, -h});
                Vec2 mp = fractional_linear_apply(g, {-h, h});
                Vec2 mm = fractional_linear_apply(g, {-h, -h});
                worst = std::max(worst, std::abs(exact.hessian[0][0][1] -
                                                 (pp.x - pm.x - mp.x + mm.x) / (4 * h * h)));
                worst = std::max(worst, std::abs(exact.hessian[1][0][1] -
                                                 (pp.y - pm.y - mp.y + mm.y) / (4 * h * h)));
            }
            return worst;
        },
        1e-6);

    return suite.take();
}

} // namespace

bool is_known_suite(const std::string& name) {
    for (const auto& s : suite_names())
        if (s == name) return true;
    return false;
}

std::vector<std::string> suite_names() {
    return {"structure", "projective", "beltrami", "degree", "uniqueness", "jets", "all"};
}

SuiteReport run_suite(const std::string& name, const SuiteConfig& config) {
    if (name == "structure") return run_structure(config);
    if (name == "projective") return run_projective(config);
    if (name == "beltrami") return run_beltrami(config);
    if (name == "degree") return run_degree(config);
    if (name == "uniqueness") return run_uniqueness(config);
    if (name == "jets") return run_jets(config);
    if (name == "all") {
        SuiteReport all;
        all.suite = "all";
        all.config = config;
        for (const auto& sub :
             {"structure", "projective", "beltrami", "degree", "uniqueness", "jets"}) {
            SuiteReport part = run_suite(sub, config);
            for (auto& check : part.checks) {
                check.name = std::string(sub) + "." + check.name;
                all.checks.push_back(std::move(check));
            }
        }
        return all;
    }
    fail(ErrorCode::unknown_suite, "unknown suite: " + name);
}

// ---- exports -------------------------------------------------------------------

namespace {

struct ModelMetric {
    SurfaceModel model;
    MetricField metric;
};

ModelMetric resolve_metric(const std::string& model_name, double radius,
                           const std::string& spec) {
    SurfaceModel model = make_model(model_name, radius);
    if (spec == "round") {
        if (model.kind() != ModelKind::Sphere)
            fail(ErrorCode::argument, "metric 'round' needs the sphere model");
        return {model, round_metric(model)};
    }
    if (spec == "flat") {
        if (model.kind() == ModelKind::Sphere)
            fail(ErrorCode::argument, "metric 'flat' needs the plane or torus model");
        return {model, MetricField{[](const ChartPoint&) { return Sym2::euclidean(); },
                                   model.chart_domain()}};
    }
    if (spec == "second") {
        if (model.kind() != ModelKind::Torus)
            fail(ErrorCode::argument, "metric 'second' needs the torus model");
        return {model, flat_torus_pair().second};
    }
    if (spec.rfind("beltrami:", 0) == 0) {
        if (model.kind() != ModelKind::Sphere)
            fail(ErrorCode::argument, "beltrami metrics need the sphere model");
        std::vector<double> vals;
        std::stringstream ss(spec.substr(9));
        std::string item;
        while (std::getline(ss, item, ',')) vals.push_back(std::stod(item));
        Mat3 m;
        if (vals.size() == 3) {
            m(0, 0) = vals[0];
            m(1, 1) = vals[1];
            m(2, 2) = vals[2];
        } else if (vals.size() == 9) {
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) m(i, j) = vals[i * 3 + j];
        } else {
            fail(ErrorCode::argument, "beltrami spec needs 3 or 9 comma-separated values");
        }
        return {model, beltrami_metric(model, SL3Matrix(m)).metric};
    }
    fail(ErrorCode::argument, "unknown metric spec: " + spec);
}

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

} // namespace

void emit_geodesics_csv(const std::string& model_name, double radius,
                        const std::string& metric_spec,
                        const std::vector<GeodesicRequest>& ics, int steps, double dt,
                        const std::string& path) {
    ModelMetric mm = resolve_metric(model_name, radius, metric_spec);
    ChristoffelField lc = levi_civita(mm.metric);
    std::ostringstream out;
    out << "chart_id,u,v,x,y,z\n";
    bool first = true;
    for (const GeodesicRequest& req : ics) {
        if (!first) out << "\n";
        first = false;
        InitialCondition ic({req.u, req.v, 0}, {req.du, req.dv});
        GeodesicPath p = integrate_geodesic(lc, mm.model, ic, steps, dt);
        for (size_t i = 0; i < p.samples.size(); ++i) {
            out << p.samples[i].chart << ',' << fmt17(p.samples[i].u) << ','
                << fmt17(p.samples[i].v) << ',';
            if (p.has_embedding())
                out << fmt17(p.embedded[i].x) << ',' << fmt17(p.embedded[i].y) << ','
                    << fmt17(p.embedded[i].z);
            else
                out << ",,";
            out << '\n';
        }
    }
    write_text_atomic(path, out.str());
}

void emit_w_grid_csv(const std::string& model_name, double radius,
                     const std::string& metric_spec, int n, const std::string& path) {
    ModelMetric mm = resolve_metric(model_name, radius, metric_spec);
    OneFormField beta = zero_form(mm.metric.domain);
    auto [w1, w2] = w_closed_form(mm.metric, beta);
    double extent = (mm.model.kind() == ModelKind::Sphere) ? 1.6 * radius : 0.8;
    double center = (mm.model.kind() == ModelKind::Torus) ? 0.5 : 0.0;
    std::ostringstream out;
    out << "u,v,W1,W2\n";
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double fu = n == 1 ? 0.0 : double(i) / (n - 1) - 0.5;
            double fv = n == 1 ? 0.0 : double(j) / (n - 1) - 0.5;
            ChartPoint p{center + extent * fu, center + extent * fv, 0};
            out << fmt17(p.u) << ',' << fmt17(p.v) << ',' << fmt17(w1(p)) << ','
                << fmt17(w2(p)) << '\n';
        }
    write_text_atomic(path, out.str());
}

} // namespace weylgeo
