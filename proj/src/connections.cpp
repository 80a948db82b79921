#include "weylgeo/connections.hpp"

#include <cmath>

namespace weylgeo {

namespace {

// d_l g_ij by central differences, l = 0 (u) or 1 (v)
Sym2 metric_derivative(const MetricField& g, const ChartPoint& p, int l, double h) {
    ChartPoint plus = p, minus = p;
    (l == 0 ? plus.u : plus.v) += h;
    (l == 0 ? minus.u : minus.v) -= h;
    return (g(plus) - g(minus)) * (1.0 / (2.0 * h));
}

double sym_get(const Sym2& s, int i, int j) {
    if (i == 0 && j == 0) return s.uu;
    if (i == 1 && j == 1) return s.vv;
    return s.uv;
}

} // namespace

ChristoffelField levi_civita(const MetricField& g, double h) {
    ChristoffelField out;
    out.domain = g.domain;
    out.gamma = [g, h](const ChartPoint& p) {
        check_fd_margin(g.domain, p, h);
        Sym2 gp = g(p);
        Sym2 ginv = gp.inverse();
        Sym2 dg[2] = {metric_derivative(g, p, 0, h), metric_derivative(g, p, 1, h)};
        Gamma gamma;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int k = j; k < 2; ++k) {
                    double s = 0.0;
                    for (int l = 0; l < 2; ++l) {
                        double bracket = sym_get(dg[j], l, k) + sym_get(dg[k], j, l) -
                                         sym_get(dg[l], j, k);
                        s += 0.5 * sym_get(ginv, i, l) * bracket;
                    }
                    gamma.c[i][j][k] = s;
                    gamma.c[i][k][j] = s;
                }
        return gamma;
    };
    return out;
}

Gamma conformal_difference_at(const Sym2& g, const Vec2& beta) {
    Sym2 ginv = g.inverse();
    Vec2 sharp = {ginv.uu * beta.x + ginv.uv * beta.y, ginv.uv * beta.x + ginv.vv * beta.y};
    double b[2] = {beta.x, beta.y};
    double sh[2] = {sharp.x, sharp.y};
    Gamma d;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) {
                double val = sym_get(g, j, k) * sh[i];
                if (i == k) val -= b[j];
                if (i == j) val -= b[k];
                d.c[i][j][k] = val;
            }
    return d;
}

ChristoffelField conformal_connection(const MetricField& g, const OneFormField& beta, double h) {
    ChristoffelField lc = levi_civita(g, h);
    ChristoffelField out;
    out.domain = g.domain;
    out.gamma = [lc, g, beta](const ChartPoint& p) {
        return lc(p) + conformal_difference_at(g(p), beta(p));
    };
    return out;
}

ScalarField weyl_compatibility_residual(const ChristoffelField& nabla, const MetricField& g,
                                        const OneFormField& beta, double h) {
    ScalarField out;
    out.domain = g.domain;
    out.sample = [nabla, g, beta, h](const ChartPoint& p) {
        Sym2 gp = g(p);
        Gamma gam = nabla(p);
        Vec2 b = beta(p);
        double bk[2] = {b.x, b.y};
        double worst = 0.0;
        for (int k = 0; k < 2; ++k) {
            Sym2 dg = metric_derivative(g, p, k, h);
            for (int i = 0; i < 2; ++i)
                for (int j = i; j < 2; ++j) {
                    double cov = sym_get(dg, i, j);
                    for (int l = 0; l < 2; ++l) {
                        cov -= gam.c[l][k][i] * sym_get(gp, l, j);
                        cov -= gam.c[l][k][j] * sym_get(gp, i, l);
                    }
                    worst = std::max(worst, std::abs(cov - 2.0 * bk[k] * sym_get(gp, i, j)));
                }
        }
        return worst;
    };
    return out;
}

Gamma iota_embed_at(const Vec2& alpha) {
    double a[2] = {alpha.x, alpha.y};
    Gamma phi;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) {
                double val = 0.0;
                if (i == k) val += a[j];
                if (i == j) val += a[k];
                phi.c[i][j][k] = val;
            }
    return phi;
}

DifferenceTensor iota_embed(const OneFormField& alpha) {
    return {[alpha](const ChartPoint& p) { return iota_embed_at(alpha(p)); }, alpha.domain};
}

Vec2 trace_at(const Gamma& phi) {
    return {phi.c[0][0][0] + phi.c[1][1][0], phi.c[0][0][1] + phi.c[1][1][1]};
}

OneFormField trace_of(const DifferenceTensor& phi) {
    return {[phi](const ChartPoint& p) { return trace_at(phi(p)); }, phi.domain};
}

Gamma trace_free_part_at(const Gamma& phi) {
    return phi - iota_embed_at(trace_at(phi)) * (1.0 / 3.0);
}

DifferenceTensor trace_free_part(const DifferenceTensor& phi) {
    return {[phi](const ChartPoint& p) { return trace_free_part_at(phi(p)); }, phi.domain};
}

DifferenceTensor difference(const ChristoffelField& a, const ChristoffelField& b) {
    return {[a, b](const ChartPoint& p) { return a(p) - b(p); }, a.domain};
}

EquivalenceResult projectively_equivalent(const ChristoffelField& a, const ChristoffelField& b,
                                          const SampleGrid& grid, double tol) {
    double worst = 0.0;
    grid.for_each([&](const ChartPoint& p) {
        worst = std::max(worst, trace_free_part_at(a(p) - b(p)).max_abs());
    });
    return {worst < tol, worst};
}

RicciData ricci(const ChristoffelField& nabla, double h_gamma) {
    // R^i_j(uv) = d_u Gamma^i_vj - d_v Gamma^i_uj + [Gamma_u, Gamma_v]^i_j,
    // then Ric_jl = R^k_jkl.
    auto ricci_matrix = [nabla, h_gamma](const ChartPoint& p) {
        check_fd_margin(nabla.domain, p, h_gamma);
        ChartPoint up = p, um = p, vp = p, vm = p;
        up.u += h_gamma;
        um.u -= h_gamma;
        vp.v += h_gamma;
        vm.v -= h_gamma;
        Gamma du = (nabla(up) - nabla(um)) * (1.0 / (2.0 * h_gamma));
        Gamma dv = (nabla(vp) - nabla(vm)) * (1.0 / (2.0 * h_gamma));
        Gamma c = nabla(p);
        double m[2][2]; // m[i][j] = R^i_j(u,v)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                double quad = 0.0;
                for (int k = 0; k < 2; ++k)
                    quad += c.c[i][0][k] * c.c[k][1][j] - c.c[i][1][k] * c.c[k][0][j];
                m[i][j] = du.c[i][1][j] - dv.c[i][0][j] + quad;
            }
        Mat2 ric;
        for (int j = 0; j < 2; ++j) {
            ric(j, 0) = -m[1][j];
            ric(j, 1) = m[0][j];
        }
        return ric;
    };
    RicciData out;
    out.domain = nabla.domain;
    out.sym = [ricci_matrix](const ChartPoint& p) {
        Mat2 r = ricci_matrix(p);
        return Sym2{r(0, 0), 0.5 * (r(0, 1) + r(1, 0)), r(1, 1)};
    };
    out.skew = [ricci_matrix](const ChartPoint& p) {
        Mat2 r = ricci_matrix(p);
        return 0.5 * (r(0, 1) - r(1, 0));
    };
    return out;
}

SchoutenMatrix schouten(const ChristoffelField& nabla, const CoframeField& coframe,
                        double h_gamma) {
    RicciData ric = ricci(nabla, h_gamma);
    SchoutenMatrix out;
    out.domain = nabla.domain;
    out.frame = [ric, coframe](const ChartPoint& p) {
        Mat2 einv = coframe(p).inverse();
        Mat2 sym_frame = einv.transpose() * ric.sym(p).matrix() * einv;
        double r_frame = ric.skew(p) / coframe(p).det();
        Mat2 s = sym_frame;
        s(0, 1) -= r_frame / 3.0;
        s(1, 0) += r_frame / 3.0;
        return s;
    };
    return out;
}

Vec2 levi_civita_form_at(const CoframeField& coframe, const ChartPoint& p, double h) {
    Mat2 e = coframe(p);
    OneFormField eta1{[coframe](const ChartPoint& q) {
                          Mat2 m = coframe(q);
                          return Vec2{m(0, 0), m(0, 1)};
                      },
                      coframe.domain};
    OneFormField eta2{[coframe](const ChartPoint& q) {
                          Mat2 m = coframe(q);
                          return Vec2{m(1, 0), m(1, 1)};
                      },
                      coframe.domain};
    double rho1 = d_oneform(eta1, p, h);
    double rho2 = d_oneform(eta2, p, h);
    // d eta1 = -eta2 ^ phi and d eta2 = eta1 ^ phi, solved for phi = p du + q dv
    Mat2 sys = {{{e(1, 1), -e(1, 0)}, {-e(0, 1), e(0, 0)}}};
    return sys.inverse() * Vec2{rho1, rho2};
}

OneFormField levi_civita_form(const MetricField& g, double h) {
    CoframeField coframe = orthonormal_coframe(g);
    return {[coframe, h](const ChartPoint& p) { return levi_civita_form_at(coframe, p, h); },
            g.domain};
}

ScalarField gauss_curvature(const MetricField& g, double h_coframe, double h_curv) {
    CoframeField coframe = orthonormal_coframe(g);
    OneFormField phi = levi_civita_form(g, h_coframe);
    ScalarField out;
    out.domain = g.domain;
    out.sample = [coframe, phi, h_curv](const ChartPoint& p) {
        double dphi = d_oneform(phi, p, h_curv);
        return -dphi / coframe(p).det();
    };
    return out;
}

double conformal_kernel_sigma_min(const Sym2& g) {
    // columns: image of X = e1, e2 under X -> g (x) X - (1/3) iota(X_flat)
    double cols[8][2];
    for (int c = 0; c < 2; ++c) {
        Vec2 x = (c == 0) ? Vec2{1.0, 0.0} : Vec2{0.0, 1.0};
        Vec2 flat = {g.uu * x.x + g.uv * x.y, g.uv * x.x + g.vv * x.y};
        double xs[2] = {x.x, x.y};
        Gamma t = iota_embed_at(flat) * (-1.0 / 3.0);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k) t.c[i][j][k] += sym_get(g, j, k) * xs[i];
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k) cols[4 * i + 2 * j + k][c] = t.c[i][j][k];
    }
    double sv[8];
    singular_values(&cols[0][0], 8, 2, sv);
    return sv[1];
}

double best_fit_compatibility_residual(const ChristoffelField& nabla, const MetricField& g,
                                       const ChartPoint& p, double h) {
    Sym2 gp = g(p);
    Gamma gam = nabla(p);
    double gnorm = gp.uu * gp.uu + 2.0 * gp.uv * gp.uv + gp.vv * gp.vv;
    double worst = 0.0;
    for (int k = 0; k < 2; ++k) {
        Sym2 dg = metric_derivative(g, p, k, h);
        double cov[2][2];
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                double c = sym_get(dg, i, j);
                for (int l = 0; l < 2; ++l) {
                    c -= gam.c[l][k][i] * sym_get(gp, l, j);
                    c -= gam.c[l][k][j] * sym_get(gp, i, l);
                }
                cov[i][j] = c;
            }
        double inner = cov[0][0] * gp.uu + cov[0][1] * gp.uv + cov[1][0] * gp.uv +
                       cov[1][1] * gp.vv;
        double gamma_k = inner / (2.0 * gnorm);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                worst = std::max(worst, std::abs(cov[i][j] - 2.0 * gamma_k * sym_get(gp, i, j)));
    }
    return worst;
}

} // namespace weylgeo
