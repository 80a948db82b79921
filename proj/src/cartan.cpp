#include "weylgeo/cartan.hpp"

#include <cmath>

namespace weylgeo {

// ---- group and jets ---------------------------------------------------------

GroupElement GroupElement::rotation_scaling(std::complex<double> z, double r, double phi) {
    double c = std::cos(phi), s = std::sin(phi);
    GroupElement g;
    g.a = {{{r * c, r * s}, {-r * s, r * c}}};
    g.b = {z.real(), z.imag()};
    return g;
}

Mat3 GroupElement::embed() const {
    Mat3 m;
    m(0, 0) = 1.0 / a.det();
    m(0, 1) = b.x;
    m(0, 2) = b.y;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) m(i + 1, j + 1) = a(i, j);
    return m;
}

GroupElement make_group_element(const Mat2& a, const Vec2& b) {
    if (!(a.det() > 0.0)) fail(ErrorCode::argument, "group element needs det a > 0");
    return {a, b};
}

GroupElement group_mul(const GroupElement& g1, const GroupElement& g2) {
    if (!(g1.a.det() > 0.0) || !(g2.a.det() > 0.0))
        fail(ErrorCode::argument, "group element needs det a > 0");
    GroupElement out;
    out.a = g1.a * g2.a;
    // top row of the 3x3 block product
    double alpha1 = 1.0 / g1.a.det();
    out.b = {alpha1 * g2.b.x + g1.b.x * g2.a(0, 0) + g1.b.y * g2.a(1, 0),
             alpha1 * g2.b.y + g1.b.x * g2.a(0, 1) + g1.b.y * g2.a(1, 1)};
    return out;
}

GroupElement group_inverse(const GroupElement& g) {
    GroupElement out;
    out.a = g.a.inverse();
    // from (b|x a)(b'|x a') = identity: b' = -(det a) b a^{-1}
    double d = g.a.det();
    Vec2 ba = {g.b.x * out.a(0, 0) + g.b.y * out.a(1, 0),
               g.b.x * out.a(0, 1) + g.b.y * out.a(1, 1)};
    out.b = {-d * ba.x, -d * ba.y};
    return out;
}

Vec2 fractional_linear_apply(const GroupElement& g, const Vec2& x) {
    double d = g.a.det();
    double den = 1.0 + d * (g.b.x * x.x + g.b.y * x.y);
    Vec2 ax = g.a * x;
    return {d * ax.x / den, d * ax.y / den};
}

TwoJet two_jet_of_fab(const GroupElement& g) {
    TwoJet jet;
    double d = g.a.det();
    jet.value = {0.0, 0.0};
    jet.jacobian = g.a * d;
    double bb[2] = {g.b.x, g.b.y};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                jet.hessian[i][j][k] = -d * d * (g.a(i, j) * bb[k] + g.a(i, k) * bb[j]);
    return jet;
}

TwoJet jet_compose(const TwoJet& outer, const TwoJet& inner) {
    TwoJet jet;
    jet.value = {0.0, 0.0};
    jet.jacobian = outer.jacobian * inner.jacobian;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) {
                double s = 0.0;
                for (int m = 0; m < 2; ++m) {
                    s += outer.jacobian(i, m) * inner.hessian[m][j][k];
                    for (int n = 0; n < 2; ++n)
                        s += outer.hessian[i][m][n] * inner.jacobian(m, j) *
                             inner.jacobian(n, k);
                }
                jet.hessian[i][j][k] = s;
            }
    return jet;
}

double jet_homomorphism_residual(const GroupElement& g1, const GroupElement& g2) {
    TwoJet lhs = two_jet_of_fab(group_mul(g1, g2));
    TwoJet rhs = jet_compose(two_jet_of_fab(g1), two_jet_of_fab(g2));
    double worst = (lhs.jacobian - rhs.jacobian).max_abs();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                worst = std::max(worst, std::abs(lhs.hessian[i][j][k] - rhs.hessian[i][j][k]));
    return worst;
}

// ---- gauge assembly -----------------------------------------------------------

ZetaField zeta_from_christoffel(const ChristoffelField& nabla, const CoframeField& coframe,
                                double h) {
    ZetaField out;
    out.domain = coframe.domain;
    out.value = [nabla, coframe, h](const ChartPoint& p) {
        check_fd_margin(coframe.domain, p, h);
        Mat2 e = coframe(p);
        Gamma gam = nabla(p);
        ChartPoint up = p, um = p, vp = p, vm = p;
        up.u += h;
        um.u -= h;
        vp.v += h;
        vm.v -= h;
        Mat2 de_du = (coframe(up).inverse() - coframe(um).inverse()) * (1.0 / (2.0 * h));
        Mat2 de_dv = (coframe(vp).inverse() - coframe(vm).inverse()) * (1.0 / (2.0 * h));
        Mat2 einv = e.inverse();
        ZetaValue z;
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                double comp[2];
                for (int k = 0; k < 2; ++k) {
                    const Mat2& de = (k == 0) ? de_du : de_dv;
                    double s = 0.0;
                    for (int i = 0; i < 2; ++i) {
                        double term = de(i, b);
                        for (int j = 0; j < 2; ++j) term += gam.c[i][k][j] * einv(j, b);
                        s += e(a, i) * term;
                    }
                    comp[k] = s;
                }
                z[a][b] = {comp[0], comp[1]};
            }
        return z;
    };
    return out;
}

ZetaField zeta_conformal(const MetricField& g, const OneFormField& beta, double h_coframe) {
    CoframeField coframe = orthonormal_coframe(g);
    OneFormField star_beta = hodge_star(beta, g);
    ZetaField out;
    out.domain = g.domain;
    out.value = [coframe, beta, star_beta, h_coframe](const ChartPoint& p) {
        Vec2 b = beta(p);
        Vec2 sb = star_beta(p);
        Vec2 phi = levi_civita_form_at(coframe, p, h_coframe);
        ZetaValue z;
        z[0][0] = -b;
        z[1][1] = -b;
        z[0][1] = sb - phi;
        z[1][0] = phi - sb;
        return z;
    };
    return out;
}

SchoutenMatrix schouten_conformal(const MetricField& g, const OneFormField& beta,
                                  const CartanSteps& steps) {
    ScalarField k = gauss_curvature(g, steps.h_coframe, steps.h_curv);
    ScalarField delta_beta = codifferential(beta, g, +1, steps.h_coframe);
    ScalarField star_dbeta = hodge_star(exterior_derivative(beta, steps.h_coframe), g);
    SchoutenMatrix out;
    out.domain = g.domain;
    out.frame = [k, delta_beta, star_dbeta](const ChartPoint& p) {
        double diag = k(p) - delta_beta(p);
        double w = star_dbeta(p) / 3.0;
        return Mat2{{{diag, w}, {-w, diag}}};
    };
    return out;
}

CartanGauge theta_general(const ZetaField& zeta, const SchoutenMatrix& schouten_frame,
                          const XiSection& xi, const CoframeField& coframe, double h_xi) {
    CartanGauge out;
    out.domain = coframe.domain;
    out.value = [zeta, schouten_frame, xi, coframe, h_xi](const ChartPoint& p) {
        Mat2 e = coframe(p);
        Vec2 eta[2] = {{e(0, 0), e(0, 1)}, {e(1, 0), e(1, 1)}};
        ZetaValue z = zeta(p);
        Mat2 s = schouten_frame(p);
        Vec2 x = xi(p);
        double xs[2] = {x.x, x.y};

        ChartPoint up = p, um = p, vp = p, vm = p;
        up.u += h_xi;
        um.u -= h_xi;
        vp.v += h_xi;
        vm.v -= h_xi;
        Vec2 xi_up = xi(up), xi_um = xi(um), xi_vp = xi(vp), xi_vm = xi(vm);
        // d xi_j as 1-forms
        Vec2 dxi[2] = {{(xi_up.x - xi_um.x) / (2 * h_xi), (xi_vp.x - xi_vm.x) / (2 * h_xi)},
                       {(xi_up.y - xi_um.y) / (2 * h_xi), (xi_vp.y - xi_vm.y) / (2 * h_xi)}};

        Vec2 tr_zeta = z[0][0] + z[1][1];
        Vec2 xi_eta = eta[0] * xs[0] + eta[1] * xs[1];

        GaugeValue theta;
        theta[0][0] = -(tr_zeta * (1.0 / 3.0)) - xi_eta;
        for (int j = 0; j < 2; ++j) {
            Vec2 entry = dxi[j];
            entry = entry - (z[0][j] * xs[0] + z[1][j] * xs[1]);
            entry = entry - (eta[0] * s(0, j) + eta[1] * s(1, j));
            entry = entry - xi_eta * xs[j];
            theta[0][j + 1] = entry;
        }
        for (int i = 0; i < 2; ++i) {
            theta[i + 1][0] = eta[i];
            for (int j = 0; j < 2; ++j) {
                Vec2 entry = z[i][j];
                if (i == j) entry = entry - tr_zeta * (1.0 / 3.0);
                entry = entry + eta[i] * xs[j];
                theta[i + 1][j + 1] = entry;
            }
        }
        return theta;
    };
    return out;
}

CartanGauge weyl_gauge(const MetricField& g, const OneFormField& beta, const CartanSteps& steps) {
    CoframeField coframe = orthonormal_coframe(g);
    ZetaField zeta = zeta_conformal(g, beta, steps.h_coframe);
    SchoutenMatrix s = schouten_conformal(g, beta, steps);
    XiSection zero = [](const ChartPoint&) { return Vec2{0.0, 0.0}; };
    return theta_general(zeta, s, zero, coframe, steps.h_coframe);
}

// ---- structure equations -------------------------------------------------------

GaugeDensity structure_residual_at(const CartanGauge& theta, const ChartPoint& p,
                                   double h_outer) {
    check_fd_margin(theta.domain, p, h_outer);
    ChartPoint up = p, um = p, vp = p, vm = p;
    up.u += h_outer;
    um.u -= h_outer;
    vp.v += h_outer;
    vm.v -= h_outer;
    GaugeValue tu_p = theta(up), tu_m = theta(um), tv_p = theta(vp), tv_m = theta(vm);
    GaugeValue tc = theta(p);
    GaugeDensity res;
    for (int mu = 0; mu < 3; ++mu)
        for (int nu = 0; nu < 3; ++nu) {
            double d = (tu_p[mu][nu].y - tu_m[mu][nu].y) / (2.0 * h_outer) -
                       (tv_p[mu][nu].x - tv_m[mu][nu].x) / (2.0 * h_outer);
            double wedge = 0.0;
            for (int k = 0; k < 3; ++k)
                wedge += tc[mu][k].x * tc[k][nu].y - tc[mu][k].y * tc[k][nu].x;
            res[mu][nu] = d + wedge;
        }
    return res;
}

namespace {

double area_density(const GaugeValue& t) {
    return t[1][0].x * t[2][0].y - t[1][0].y * t[2][0].x;
}

double checked_area_density(const GaugeValue& t) {
    double den = area_density(t);
    if (std::abs(den) < 1e-10)
        fail(ErrorCode::singular_metric, "degenerate coframe: eta1 ^ eta2 density below 1e-10");
    return den;
}

} // namespace

CurvatureResidual structure_residual(const CartanGauge& theta, const SampleGrid& grid,
                                     double h_outer) {
    CurvatureResidual out;
    out.entries = [theta, h_outer](const ChartPoint& p) {
        return structure_residual_at(theta, p, h_outer);
    };
    out.w1 = {[theta, h_outer](const ChartPoint& p) {
                  GaugeDensity r = structure_residual_at(theta, p, h_outer);
                  return r[0][1] / checked_area_density(theta(p));
              },
              theta.domain};
    out.w2 = {[theta, h_outer](const ChartPoint& p) {
                  GaugeDensity r = structure_residual_at(theta, p, h_outer);
                  return r[0][2] / checked_area_density(theta(p));
              },
              theta.domain};
    double defect = 0.0;
    grid.for_each([&](const ChartPoint& p) {
        GaugeDensity r = structure_residual_at(theta, p, h_outer);
        double den = std::abs(checked_area_density(theta(p)));
        for (int mu = 0; mu < 3; ++mu)
            for (int nu = 0; nu < 3; ++nu) {
                if (mu == 0 && (nu == 1 || nu == 2)) continue;
                defect = std::max(defect, std::abs(r[mu][nu]) / den);
            }
    });
    out.shape_defect = defect;
    return out;
}

double gauge_trace_residual(const CartanGauge& theta, const SampleGrid& grid) {
    double worst = 0.0;
    grid.for_each([&](const ChartPoint& p) {
        GaugeValue t = theta(p);
        Vec2 tr = t[0][0] + t[1][1] + t[2][2];
        worst = std::max(worst, std::max(std::abs(tr.x), std::abs(tr.y)));
    });
    return worst;
}

std::pair<ScalarField, ScalarField> w_closed_form(const MetricField& g, const OneFormField& beta,
                                                  const CartanSteps& steps) {
    CoframeField coframe = orthonormal_coframe(g);
    ScalarField k = gauss_curvature(g, steps.h_coframe, steps.h_curv);
    ScalarField delta_beta = codifferential(beta, g, +1, steps.h_coframe);
    ScalarField kd{[k, delta_beta](const ChartPoint& p) { return k(p) - delta_beta(p); },
                   g.domain};
    ScalarField star_dbeta = hodge_star(exterior_derivative(beta, steps.h_coframe), g);
    OneFormField star_beta = hodge_star(beta, g);

    double h_outer = steps.h_outer;
    auto frame_components = [coframe, kd, star_dbeta, star_beta, beta, g,
                             h_outer](const ChartPoint& p) {
        Vec2 dkd = d_scalar(kd, p, h_outer);
        Mat2 star = hodge_star_matrix(g(p), +1);
        Vec2 term1 = -(star * dkd);
        Vec2 term2 = d_scalar(star_dbeta, p, h_outer) * (1.0 / 3.0);
        Vec2 term3 = star_beta(p) * (-2.0 * kd(p));
        // Expanding d theta^0_j + (theta ^ theta)^0_j for the gauge matrix
        // above forces the beta (*d beta) term to carry the same sign as the
        // d * d beta term; with it the closed form matches the structure
        // residual and is covariant under (g, beta) -> (e^{2u} g, beta + du).
        Vec2 term4 = beta(p) * ((2.0 / 3.0) * star_dbeta(p));
        Vec2 chart = term1 + term2 + term3 + term4;
        // frame coefficients: chart = e^T (W1, W2)
        return coframe(p).transpose().inverse() * chart;
    };
    ScalarField w1{[frame_components](const ChartPoint& p) { return frame_components(p).x; },
                   g.domain};
    ScalarField w2{[frame_components](const ChartPoint& p) { return frame_components(p).y; },
                   g.domain};
    return {w1, w2};
}

// ---- gauge transformation and complex form -------------------------------------

CartanGauge gauge_transform(const CartanGauge& theta, const GroupField& h, double h_fd) {
    CartanGauge out;
    out.domain = theta.domain;
    out.value = [theta, h, h_fd](const ChartPoint& p) {
        Mat3 hp = h(p).embed();
        Mat3 hinv = hp.inverse();
        ChartPoint up = p, um = p, vp = p, vm = p;
        up.u += h_fd;
        um.u -= h_fd;
        vp.v += h_fd;
        vm.v -= h_fd;
        Mat3 dh_du = (h(up).embed() - h(um).embed()) * (1.0 / (2.0 * h_fd));
        Mat3 dh_dv = (h(vp).embed() - h(vm).embed()) * (1.0 / (2.0 * h_fd));
        GaugeValue t = theta(p);
        Mat3 mu, mv;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                mu(i, j) = t[i][j].x;
                mv(i, j) = t[i][j].y;
            }
        Mat3 new_u = hinv * mu * hp + hinv * dh_du;
        Mat3 new_v = hinv * mv * hp + hinv * dh_dv;
        GaugeValue r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r[i][j] = {new_u(i, j), new_v(i, j)};
        return r;
    };
    return out;
}

namespace {

using Cx = std::complex<double>;
using CxPair = std::array<Cx, 2>;

struct ComplexGauge {
    CxPair omega1, omega2, xi, psi;
};

ComplexGauge complex_combinations(const GaugeValue& t) {
    ComplexGauge c;
    for (int k = 0; k < 2; ++k) {
        auto comp = [k](const Vec2& v) { return k == 0 ? v.x : v.y; };
        c.omega1[k] = Cx(comp(t[1][0]), comp(t[2][0]));
        c.omega2[k] = Cx(comp(t[1][1]) - comp(t[2][2]), comp(t[1][2]) + comp(t[2][1]));
        c.xi[k] = Cx(comp(t[0][1]), comp(t[0][2]));
        c.psi[k] = -0.5 * Cx(3.0 * comp(t[0][0]), comp(t[1][2]) - comp(t[2][1]));
    }
    return c;
}

Cx cx_wedge(const CxPair& a, const CxPair& b) { return a[0] * b[1] - a[1] * b[0]; }

CxPair cx_conj(const CxPair& a) { return {std::conj(a[0]), std::conj(a[1])}; }

} // namespace

ComplexForms complexify(const CartanGauge& theta) {
    auto make = [theta](int which) {
        ComplexOneForm f;
        f.domain = theta.domain;
        f.components = [theta, which](const ChartPoint& p) {
            ComplexGauge c = complex_combinations(theta(p));
            switch (which) {
                case 0: return c.omega1;
                case 1: return c.omega2;
                case 2: return c.xi;
                default: return c.psi;
            }
        };
        return f;
    };
    return {make(0), make(1), make(2), make(3)};
}

ComplexResidualSample complex_structure_residuals(const CartanGauge& theta, const ChartPoint& p,
                                                  double h_outer) {
    check_fd_margin(theta.domain, p, h_outer);
    ChartPoint up = p, um = p, vp = p, vm = p;
    up.u += h_outer;
    um.u -= h_outer;
    vp.v += h_outer;
    vm.v -= h_outer;
    GaugeValue tu_p = theta(up), tu_m = theta(um), tv_p = theta(vp), tv_m = theta(vm);
    GaugeValue tc = theta(p);

    // real residual from the same stencil
    GaugeDensity real_res;
    for (int mu = 0; mu < 3; ++mu)
        for (int nu = 0; nu < 3; ++nu) {
            double d = (tu_p[mu][nu].y - tu_m[mu][nu].y) / (2.0 * h_outer) -
                       (tv_p[mu][nu].x - tv_m[mu][nu].x) / (2.0 * h_outer);
            double wedge = 0.0;
            for (int k = 0; k < 3; ++k)
                wedge += tc[mu][k].x * tc[k][nu].y - tc[mu][k].y * tc[k][nu].x;
            real_res[mu][nu] = d + wedge;
        }

    ComplexGauge cu_p = complex_combinations(tu_p), cu_m = complex_combinations(tu_m);
    ComplexGauge cv_p = complex_combinations(tv_p), cv_m = complex_combinations(tv_m);
    ComplexGauge cc = complex_combinations(tc);

    auto cx_d = [&](const CxPair& aup, const CxPair& aum, const CxPair& avp, const CxPair& avm) {
        return (aup[1] - aum[1]) / (2.0 * h_outer) - (avp[0] - avm[0]) / (2.0 * h_outer);
    };

    double den = area_density(tc);
    if (std::abs(den) < 1e-10)
        fail(ErrorCode::singular_metric, "degenerate coframe: eta1 ^ eta2 density below 1e-10");
    double w1 = real_res[0][1] / den;
    double w2 = real_res[0][2] / den;
    Cx w = 0.5 * Cx(w2, -w1);

    Cx d_omega1 = cx_d(cu_p.omega1, cu_m.omega1, cv_p.omega1, cv_m.omega1);
    Cx d_omega2 = cx_d(cu_p.omega2, cu_m.omega2, cv_p.omega2, cv_m.omega2);
    Cx d_xi = cx_d(cu_p.xi, cu_m.xi, cv_p.xi, cv_m.xi);
    Cx d_psi = cx_d(cu_p.psi, cu_m.psi, cv_p.psi, cv_m.psi);

    ComplexResidualSample out;
    double norm = std::abs(den);
    out.omega1 = (d_omega1 - cx_wedge(cc.omega1, cc.psi) -
                  0.5 * cx_wedge(cx_conj(cc.omega1), cc.omega2)) /
                 norm;
    out.omega2 = (d_omega2 + cx_wedge(cc.omega1, cc.xi) - cx_wedge(cc.omega2, cc.psi) -
                  cx_wedge(cx_conj(cc.psi), cc.omega2)) /
                 norm;
    out.xi = (d_xi - w * cx_wedge(cx_conj(cc.omega1), cc.omega1) +
              0.5 * cx_wedge(cx_conj(cc.xi), cc.omega2) - cx_wedge(cx_conj(cc.psi), cc.xi)) /
             norm;
    out.psi = (d_psi + 0.5 * cx_wedge(cx_conj(cc.omega1), cc.xi) -
               0.25 * cx_wedge(cx_conj(cc.omega2), cc.omega2) -
               cx_wedge(cx_conj(cc.xi), cc.omega1)) /
              norm;

    out.expected_omega1 = Cx(real_res[1][0], real_res[2][0]) / norm;
    out.expected_omega2 =
        Cx(real_res[1][1] - real_res[2][2], real_res[1][2] + real_res[2][1]) / norm;
    out.expected_xi = (Cx(real_res[0][1], real_res[0][2]) - Cx(w1, w2) * den) / norm;
    out.expected_psi =
        -0.5 * Cx(3.0 * real_res[0][0], real_res[1][2] - real_res[2][1]) / norm;
    return out;
}

} // namespace weylgeo
