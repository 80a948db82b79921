// Acceptance runner: executes every verification criterion at its pinned
// tolerance and prints one PASS/FAIL line per criterion. Exit code 0 iff all
// criteria hold. Criteria with wall-clock budgets measure and report them.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "weylgeo/cartan.hpp"
#include "weylgeo/corpus.hpp"
#include "weylgeo/geodesics.hpp"

using namespace weylgeo;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr uint64_t kSeed = 42;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

int g_failures = 0;

void report(int criterion, const std::string& label, bool pass, const std::string& detail) {
    std::printf("criterion %d (%s): %s  [%s]\n", criterion, label.c_str(),
                pass ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", x);
    return buf;
}

OneFormField zero_form(const Domain& d) {
    return {[](const ChartPoint&) { return Vec2{0.0, 0.0}; }, d};
}

std::vector<SL3Matrix> draw_psis(int n) {
    SplitMix64 rng(kSeed);
    std::vector<SL3Matrix> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) out.push_back(random_sl3(rng, 5.0));
    return out;
}

struct Corpus {
    MetricField g;
    OneFormField beta;
};

std::vector<Corpus> draw_corpora(int n) {
    SplitMix64 rng(kSeed);
    std::vector<Corpus> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i)
        out.push_back({random_spd_metric(rng, 0.2, 1.2), random_smooth_oneform(rng, 0.3, 1.2)});
    return out;
}

// ---- criterion 1: degree identity ------------------------------------------

void criterion_degree() {
    SurfaceModel sph = SurfaceModel::sphere(1.0);
    MetricField round = round_metric(sph);

    auto t0 = Clock::now();
    DegreeResult sphere_deg = degree_normal_bundle(sph, round, zero_form(round.domain), 200);
    double sphere_secs = seconds_since(t0);
    double sphere_err = std::abs(sphere_deg.raw - 4.0);
    bool sphere_ok = sphere_deg.degree == 4 && sphere_err < 1e-3 && sphere_secs < 5.0;

    t0 = Clock::now();
    SplitMix64 rng(kSeed);
    auto torus_pair = flat_torus_pair();
    OneFormField beta_t = random_periodic_oneform(rng, 0.4);
    DegreeResult torus_deg =
        degree_normal_bundle(SurfaceModel::torus(), torus_pair.second, beta_t, 128);
    double torus_secs = seconds_since(t0);
    bool torus_ok = torus_deg.degree == 0 && std::abs(torus_deg.raw) < 1e-6 && torus_secs < 1.0;

    double lo = sphere_deg.raw, hi = sphere_deg.raw;
    for (int i = 0; i < 10; ++i) {
        OneFormField beta = random_sphere_oneform(sph, rng, 0.4);
        DegreeResult d = degree_normal_bundle(sph, round, beta, 200);
        lo = std::min(lo, d.raw);
        hi = std::max(hi, d.raw);
    }
    bool spread_ok = (hi - lo) < 2e-3;

    report(1, "degree identity", sphere_ok && torus_ok && spread_ok,
           "sphere raw err " + fmt(sphere_err) + " <1e-3 in " + fmt(sphere_secs) +
               " s; torus raw " + fmt(std::abs(torus_deg.raw)) + " <1e-6 in " +
               fmt(torus_secs) + " s; beta spread " + fmt(hi - lo) + " <2e-3");
}

// ---- criterion 2: Beltrami great circles ------------------------------------

void criterion_planarity(const std::vector<SL3Matrix>& psis) {
    SurfaceModel sph = SurfaceModel::sphere(1.0);
    auto t0 = Clock::now();
    SplitMix64 rng(kSeed + 1);
    int pass_count = 0, total = 0;
    double worst = 0.0;
    for (const SL3Matrix& psi : psis) {
        ChristoffelField lc = levi_civita(beltrami_metric(sph, psi).metric);
        for (int j = 0; j < 50; ++j) {
            double ang = rng.uniform(0.0, 2.0 * kPi);
            double rad = 0.6 * std::sqrt(rng.uniform());
            double dir = rng.uniform(0.0, 2.0 * kPi);
            InitialCondition ic({rad * std::cos(ang), rad * std::sin(ang), 0},
                                {std::cos(dir), std::sin(dir)});
            GeodesicPath path = integrate_geodesic(lc, sph, ic, 1800, 1e-3, 8);
            double defect = planarity_defect(path).defect;
            worst = std::max(worst, defect);
            ++total;
            if (defect < 1e-6) ++pass_count;
        }
    }
    double secs = seconds_since(t0);
    bool ok = pass_count == total && total == 1000 && secs < 60.0;
    report(2, "Beltrami great circles", ok,
           std::to_string(pass_count) + "/" + std::to_string(total) +
               " paths with defect <1e-6 (worst " + fmt(worst) + ") in " + fmt(secs) + " s (<60)");
}

// ---- criterion 3: Weyl criterion <=> geodesic sharing -------------------------

void criterion_weyl_vs_sharing(const std::vector<SL3Matrix>& psis) {
    SurfaceModel sph = SurfaceModel::sphere(1.0);
    MetricField round = round_metric(sph);
    ChristoffelField round_lc = levi_civita(round);
    SampleGrid eq_grid{-0.7, 0.7, -0.7, 0.7, 41, 0};

    double worst_equiv = 0.0;
    bool all_equiv = true;
    for (const SL3Matrix& psi : psis) {
        ChristoffelField lc = levi_civita(beltrami_metric(sph, psi).metric);
        EquivalenceResult eq = projectively_equivalent(lc, round_lc, eq_grid, 1e-5);
        all_equiv = all_equiv && eq.equivalent;
        worst_equiv = std::max(worst_equiv, eq.residual);
    }

    SplitMix64 rng(kSeed + 2);
    double worst_share = 0.0;
    bool all_share = true;
    for (int i = 0; i < 50; ++i) {
        OneFormField alpha = random_sphere_oneform(sph, rng, 0.3);
        DifferenceTensor shift = iota_embed(alpha);
        ChristoffelField shifted{
            [round_lc, shift](const ChartPoint& p) { return round_lc(p) + shift(p); },
            round_lc.domain};
        SharesResult res =
            shares_geodesics(round_lc, shifted, sph, 1, 1e-3, rng.next(), 1800, 1e-3, 2);
        all_share = all_share && res.shares;
        worst_share = std::max(worst_share, res.max_distance);
    }

    // negative control: conformal bump, fails both
    ScalarField bump = ambient_scalar(sph, [](const Vec3& n) { return 0.2 * n.x * n.z; });
    MetricField perturbed{
        [round, bump](const ChartPoint& p) { return round(p) * std::exp(2.0 * bump(p)); },
        round.domain};
    ChristoffelField perturbed_lc = levi_civita(perturbed);
    EquivalenceResult neg_eq = projectively_equivalent(perturbed_lc, round_lc, eq_grid, 1e-5);
    SharesResult neg_share =
        shares_geodesics(round_lc, perturbed_lc, sph, 5, 1e-3, kSeed + 3, 1800, 1e-3, 2);
    bool control_ok =
        !neg_eq.equivalent && !neg_share.shares && neg_share.max_distance > 10.0 * 1e-3;

    bool ok = all_equiv && worst_equiv < 1e-5 && all_share && control_ok;
    report(3, "Weyl criterion vs geodesic sharing", ok,
           "20/20 equivalent, residual " + fmt(worst_equiv) + " <1e-5; 50/50 shifts share, max " +
               fmt(worst_share) + " <1e-3; control residual " + fmt(neg_eq.residual) +
               ", distance " + fmt(neg_share.max_distance) + " >1e-2");
}

// ---- criterion 4: structure equations ----------------------------------------

void criterion_structure(const std::vector<Corpus>& corpora) {
    SampleGrid small_grid{-0.3, 0.3, -0.3, 0.3, 5, 0};
    SampleGrid w_grid{-0.4, 0.4, -0.4, 0.4, 21, 0};

    double min_order = 1e300;
    for (const Corpus& c : corpora) {
        double coarse =
            structure_residual(weyl_gauge(c.g, c.beta, CartanSteps::scaled(8e-3)), small_grid,
                               8e-3)
                .shape_defect;
        double fine =
            structure_residual(weyl_gauge(c.g, c.beta, CartanSteps::scaled(4e-3)), small_grid,
                               4e-3)
                .shape_defect;
        min_order = std::min(min_order, std::log2(coarse / fine));
    }

    double worst_match = 0.0;
    for (const Corpus& c : corpora) {
        CurvatureResidual res = structure_residual(weyl_gauge(c.g, c.beta), w_grid);
        auto [w1, w2] = w_closed_form(c.g, c.beta);
        double scale = 0.0, diff = 0.0;
        w_grid.for_each([&](const ChartPoint& p) {
            scale = std::max({scale, std::abs(w1(p)), std::abs(w2(p))});
            diff = std::max({diff, std::abs(res.w1(p) - w1(p)), std::abs(res.w2(p) - w2(p))});
        });
        worst_match = std::max(worst_match, diff / scale);
    }

    SurfaceModel sph = SurfaceModel::sphere(1.0);
    MetricField round = round_metric(sph);
    SampleGrid sphere_grid{-0.6, 0.6, -0.6, 0.6, 21, 0};
    CurvatureResidual sphere_res =
        structure_residual(weyl_gauge(round, zero_form(round.domain)), sphere_grid);
    double sphere_w = 0.0;
    sphere_grid.for_each([&](const ChartPoint& p) {
        sphere_w = std::max({sphere_w, std::abs(sphere_res.w1(p)), std::abs(sphere_res.w2(p))});
    });

    bool ok = min_order >= 1.9 && worst_match < 1e-3 && sphere_w < 1e-4;
    report(4, "structure equations", ok,
           "shape order " + fmt(min_order) + " >=1.9; W pipelines rel diff " + fmt(worst_match) +
               " <1e-3; sphere W " + fmt(sphere_w) + " <1e-4");
}

// ---- criterion 5: complexification -------------------------------------------

void criterion_complex(const std::vector<Corpus>& corpora) {
    SampleGrid grid{-0.3, 0.3, -0.3, 0.3, 5, 0};
    SurfaceModel sph = SurfaceModel::sphere(1.0);
    MetricField round = round_metric(sph);

    double omega2_sup = 0.0;
    double worst_res = 0.0;
    for (const Corpus& c : corpora) {
        CartanGauge theta = weyl_gauge(c.g, c.beta);
        ComplexForms forms = complexify(theta);
        grid.for_each([&](const ChartPoint& p) {
            auto w2 = forms.omega2(p);
            omega2_sup = std::max({omega2_sup, std::abs(w2[0]), std::abs(w2[1])});
            worst_res = std::max(worst_res, complex_structure_residuals(theta, p).max_abs());
        });
    }
    CartanGauge sphere_theta = weyl_gauge(round, zero_form(round.domain));
    grid.for_each([&](const ChartPoint& p) {
        worst_res = std::max(worst_res, complex_structure_residuals(sphere_theta, p).max_abs());
    });

    CartanGauge theta = weyl_gauge(corpora[0].g, corpora[0].beta);
    GroupElement h = GroupElement::rotation_scaling({0.3, -0.4}, 1.2, 0.7);
    ComplexForms base = complexify(theta);
    ComplexForms moved = complexify(gauge_transform(theta, [h](const ChartPoint&) { return h; }));
    std::complex<double> factor = std::polar(1.0, 0.7) / (1.2 * 1.2 * 1.2);
    double law = 0.0;
    grid.for_each([&](const ChartPoint& p) {
        auto a = base.omega1(p);
        auto b = moved.omega1(p);
        law = std::max({law, std::abs(b[0] - factor * a[0]), std::abs(b[1] - factor * a[1])});
    });

    bool ok = omega2_sup == 0.0 && worst_res < 1e-4 && law < 1e-8;
    report(5, "complexification", ok,
           "omega2 sup " + fmt(omega2_sup) + " (exact 0); residuals " + fmt(worst_res) +
               " <1e-4; omega1 scaling law " + fmt(law) + " <1e-8");
}

// ---- criterion 6: conformal-connection algebra ---------------------------------

void criterion_conformal(const std::vector<Corpus>& corpora) {
    SampleGrid grid{-0.3, 0.3, -0.3, 0.3, 7, 0};
    SplitMix64 rng(kSeed + 4);
    const Corpus& c = corpora[0];

    ScalarField u = random_smooth_scalar(rng, 0.3, 1.0);
    MetricField g2{[g = c.g, u](const ChartPoint& p) { return g(p) * std::exp(2.0 * u(p)); },
                   c.g.domain};
    OneFormField b2{[b = c.beta, u](const ChartPoint& p) { return b(p) + d_scalar(u, p); },
                    c.beta.domain};
    ChristoffelField n1 = conformal_connection(c.g, c.beta);
    ChristoffelField n2 = conformal_connection(g2, b2);
    double invariance = 0.0;
    grid.for_each(
        [&](const ChartPoint& p) { invariance = std::max(invariance, (n1(p) - n2(p)).max_abs()); });

    ChartPoint probe{0.2, -0.1, 0};
    double coarse = weyl_compatibility_residual(n1, c.g, c.beta, 4e-3)(probe);
    double fine = weyl_compatibility_residual(n1, c.g, c.beta, 2e-3)(probe);
    double order = std::log2(coarse / fine);

    const Corpus& c2 = corpora[1];
    RicciData ric = ricci(conformal_connection(c2.g, c2.beta));
    ScalarField k = gauss_curvature(c2.g);
    ScalarField db = codifferential(c2.beta, c2.g);
    double ricci_match = 0.0;
    grid.for_each([&](const ChartPoint& p) {
        double scale = k(p) - db(p);
        ricci_match = std::max(ricci_match, (ric.sym(p) - c2.g(p) * scale).max_abs());
        ricci_match = std::max(ricci_match, std::abs(ric.skew(p) + d_oneform(c2.beta, p)));
    });

    const Corpus& c3 = corpora[2];
    SchoutenMatrix s = schouten(conformal_connection(c3.g, c3.beta), orthonormal_coframe(c3.g));
    ScalarField k3 = gauss_curvature(c3.g);
    ScalarField db3 = codifferential(c3.beta, c3.g);
    double schouten_diag = 0.0;
    grid.for_each([&](const ChartPoint& p) {
        double diag = k3(p) - db3(p);
        Mat2 sp = s(p);
        schouten_diag =
            std::max({schouten_diag, std::abs(sp(0, 0) - diag), std::abs(sp(1, 1) - diag)});
    });

    bool ok = invariance < 1e-6 && order >= 1.9 && ricci_match < 1e-5 && schouten_diag < 1e-5;
    report(6, "conformal-connection algebra", ok,
           "rescaling invariance " + fmt(invariance) + " <1e-6; compatibility order " +
               fmt(order) + " >=1.9; Ricci match " + fmt(ricci_match) +
               " <1e-5; Schouten diag " + fmt(schouten_diag) + " <1e-5");
}

// ---- criterion 7: uniqueness machinery ----------------------------------------

void criterion_uniqueness() {
    SampleGrid torus_grid{0.15, 0.85, 0.15, 0.85, 9, 0};
    auto [g1, g2] = flat_torus_pair();
    FInvariantResult torus =
        f_invariant(g1, g2, zero_form(g1.domain), zero_form(g1.domain), torus_grid);
    double f_err = 0.0;
    torus_grid.for_each(
        [&](const ChartPoint& p) { f_err = std::max(f_err, std::abs(torus.f(p) - 1.36)); });
    bool torus_ok = torus.precondition_ok && f_err < 1e-12 && torus.identity_residual < 1e-10;

    SplitMix64 rng(kSeed + 5);
    MetricField g = random_spd_metric(rng, 0.25, 1.2);
    OneFormField beta = random_smooth_oneform(rng, 0.3, 1.2);
    ScalarField u = random_smooth_scalar(rng, 0.4, 1.0);
    MetricField h{[g, u](const ChartPoint& p) { return g(p) * std::exp(2.0 * u(p)); }, g.domain};
    OneFormField alpha{[beta, u](const ChartPoint& p) { return beta(p) + d_scalar(u, p); },
                       beta.domain};
    SampleGrid plane_grid{-0.4, 0.4, -0.4, 0.4, 9, 0};
    FInvariantResult conf = f_invariant(g, h, beta, alpha, plane_grid);
    double conf_f = 0.0;
    plane_grid.for_each([&](const ChartPoint& p) { conf_f = std::max(conf_f, std::abs(conf.f(p))); });
    bool conf_ok = conf.precondition_ok && conf_f < 1e-12 && conf.identity_residual < 1e-10;

    double sigma_min = 1e300;
    for (int t = 0; t < 100; ++t) {
        ChartPoint p{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), 0};
        sigma_min = std::min(sigma_min, conformal_kernel_sigma_min(g(p)));
    }
    bool kernel_ok = sigma_min > 0.2;

    report(7, "uniqueness machinery", torus_ok && conf_ok && kernel_ok,
           "torus f err " + fmt(f_err) + " <1e-12, df residual " + fmt(torus.identity_residual) +
               " <1e-10; conformal f " + fmt(conf_f) + "; kernel sigma_min " + fmt(sigma_min) +
               " >0.2 at 100 samples");
}

// ---- criterion 8: group/jet realization ----------------------------------------

void criterion_jets() {
    SplitMix64 rng(kSeed);
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        GroupElement g1 = random_group_element(rng, 0.5);
        GroupElement g2 = random_group_element(rng, 0.5);
        worst = std::max(worst, jet_homomorphism_residual(g1, g2));
    }
    report(8, "group/jet realization", worst < 1e-9,
           "homomorphism residual " + fmt(worst) + " <1e-9 over 100 pairs");
}

// ---- criterion 9: family dimension ---------------------------------------------

void criterion_family() {
    SurfaceModel sph = SurfaceModel::sphere(1.0);
    SplitMix64 rng(kSeed + 7);
    bool all_rank5 = true;
    double min_gap = 1e300;
    for (int i = 0; i < 10; ++i) {
        FamilyRankResult r = family_rank(sph, random_sl3(rng, 5.0));
        all_rank5 = all_rank5 && r.rank == 5;
        min_gap = std::min(min_gap, r.gap_ratio);
    }
    report(9, "family dimension", all_rank5 && min_gap > 1e3,
           "rank 5 at 10/10 base points, min singular-value gap " + fmt(min_gap) + " >1e3");
}

} // namespace

int main() {
    auto t0 = Clock::now();
    std::vector<SL3Matrix> psis = draw_psis(20);
    std::vector<Corpus> corpora = draw_corpora(5);

    criterion_degree();
    criterion_planarity(psis);
    criterion_weyl_vs_sharing(psis);
    criterion_structure(corpora);
    criterion_complex(corpora);
    criterion_conformal(corpora);
    criterion_uniqueness();
    criterion_jets();
    criterion_family();

    std::printf("acceptance: %s (%d/9 criteria, %.1f s total)\n",
                g_failures == 0 ? "PASS" : "FAIL", 9 - g_failures, seconds_since(t0));
    return g_failures == 0 ? 0 : 1;
}
