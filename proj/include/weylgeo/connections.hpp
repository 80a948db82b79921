#pragma once

// Affine torsion-free connections on charts: Levi-Civita and conformal
// connections, the trace / iota decomposition behind projective equivalence,
// and Ricci / Schouten / Gauss curvature by finite differences.

#include <functional>

#include "weylgeo/fields.hpp"
#include "weylgeo/models.hpp"

namespace weylgeo {

// Curvature differentiation uses a larger step than plain field derivatives to
// keep the noise of nested second differences in check.
inline constexpr double kGammaFdStep = 1e-4;

// c[i][j][k] = Gamma^i_jk, symmetric in (j,k).
struct Gamma {
    double c[2][2][2] = {};

    Gamma operator+(const Gamma& o) const {
        Gamma r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k) r.c[i][j][k] = c[i][j][k] + o.c[i][j][k];
        return r;
    }
    Gamma operator-(const Gamma& o) const {
        Gamma r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k) r.c[i][j][k] = c[i][j][k] - o.c[i][j][k];
        return r;
    }
    Gamma operator*(double s) const {
        Gamma r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k) r.c[i][j][k] = c[i][j][k] * s;
        return r;
    }
    double max_abs() const {
        double m = 0.0;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k) m = std::max(m, std::abs(c[i][j][k]));
        return m;
    }
};

struct ChristoffelField {
    std::function<Gamma(const ChartPoint&)> gamma;
    Domain domain = Domain::unbounded();

    Gamma operator()(const ChartPoint& p) const { return gamma(p); }
};

// Section of S^2(T*) (x) T: same index layout as Gamma.
struct DifferenceTensor {
    std::function<Gamma(const ChartPoint&)> phi;
    Domain domain = Domain::unbounded();

    Gamma operator()(const ChartPoint& p) const { return phi(p); }
};

struct RicciData {
    // Symmetric part in chart coordinates.
    std::function<Sym2(const ChartPoint&)> sym;
    // Skew coefficient A with Ric^- = A (du (x) dv - dv (x) du).
    std::function<double(const ChartPoint&)> skew;
    Domain domain = Domain::unbounded();
};

// Frame components S_ab of the Schouten tensor, S = Ric+ - (1/3) Ric-; the
// off-diagonal carries the -+ R/3 pattern around the symmetric part.
struct SchoutenMatrix {
    std::function<Mat2(const ChartPoint&)> frame;
    Domain domain = Domain::unbounded();

    Mat2 operator()(const ChartPoint& p) const { return frame(p); }
};

// Gamma^i_jk = (1/2) g^il (d_j g_lk + d_k g_jl - d_l g_jk)
ChristoffelField levi_civita(const MetricField& g, double h = kDefaultFdStep);

// nabla = levi_civita(g) + g (x) beta# - iota(beta); satisfies nabla g = 2 beta (x) g
ChristoffelField conformal_connection(const MetricField& g, const OneFormField& beta,
                                      double h = kDefaultFdStep);

// Pointwise difference tensor of the two formulas above at one point, used to
// assemble connections without re-deriving the metric part.
Gamma conformal_difference_at(const Sym2& g, const Vec2& beta);

// Pointwise sup over components of nabla g - 2 beta (x) g.
ScalarField weyl_compatibility_residual(const ChristoffelField& nabla, const MetricField& g,
                                        const OneFormField& beta, double h = kDefaultFdStep);

// phi^i_jk = alpha_j delta^i_k + alpha_k delta^i_j
Gamma iota_embed_at(const Vec2& alpha);
DifferenceTensor iota_embed(const OneFormField& alpha);

// (tr phi)_k = phi^i_ik  (equals 3 alpha for phi = iota(alpha) in 2D)
Vec2 trace_at(const Gamma& phi);
OneFormField trace_of(const DifferenceTensor& phi);

// phi0 = phi - (1/3) iota(tr phi); trace-free
Gamma trace_free_part_at(const Gamma& phi);
DifferenceTensor trace_free_part(const DifferenceTensor& phi);

DifferenceTensor difference(const ChristoffelField& a, const ChristoffelField& b);

struct EquivalenceResult {
    bool equivalent = false;
    double residual = 0.0; // sup norm of the trace-free difference over the grid
};

// Weyl's criterion: nabla ~ nabla' iff their difference is pure trace.
EquivalenceResult projectively_equivalent(const ChristoffelField& a, const ChristoffelField& b,
                                          const SampleGrid& grid, double tol = 1e-5);

// Full curvature by finite differences of Gamma plus the quadratic terms,
// contracted to the Ricci tensor and split into symmetric / skew parts.
RicciData ricci(const ChristoffelField& nabla, double h_gamma = kGammaFdStep);

SchoutenMatrix schouten(const ChristoffelField& nabla, const CoframeField& coframe,
                        double h_gamma = kGammaFdStep);

// K from d(phi) = -K eta1 ^ eta2 in the lower-triangular coframe gauge.
// h_coframe differentiates the coframe (connection form), h_curv the form.
ScalarField gauss_curvature(const MetricField& g, double h_coframe = kDefaultFdStep,
                            double h_curv = kGammaFdStep);

// Levi-Civita connection 1-form phi of g in the lower-triangular coframe
// gauge, solved pointwise from d eta1 = -eta2 ^ phi, d eta2 = eta1 ^ phi.
OneFormField levi_civita_form(const MetricField& g, double h = kDefaultFdStep);
Vec2 levi_civita_form_at(const CoframeField& coframe, const ChartPoint& p, double h);

// Smallest singular value of X -> g (x) X - (1/3) iota(X_flat) at a point; a
// positive lower bound is the kernel step of the shared-geodesics rigidity
// argument.
double conformal_kernel_sigma_min(const Sym2& g);

// Least-squares fit of gamma in nabla g = 2 gamma (x) g at a point, returning
// the sup-norm residual after the fit.
double best_fit_compatibility_residual(const ChristoffelField& nabla, const MetricField& g,
                                       const ChartPoint& p, double h = kDefaultFdStep);

} // namespace weylgeo
