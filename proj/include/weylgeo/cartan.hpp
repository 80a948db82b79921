#pragma once

// The structure group G = R^2 |x GL+(2,R) inside SL(3,R), its 2-jet
// realization by fractional-linear maps, sl(3)-valued gauge matrices for the
// canonical connection of a projective surface, structure-equation residuals
// with the flatness functions W1/W2, gauge transformation and the complex
// form of the structure equations.
//
// Everything is verified along explicit sections over a chart: the gauge is a
// sampler returning the full 3x3 matrix of (du, dv) coefficients at a point,
// so one evaluation shares the curvature scalars across all nine entries.

#include <array>
#include <complex>
#include <functional>

#include "weylgeo/connections.hpp"
#include "weylgeo/fields.hpp"

namespace weylgeo {

// ---- structure group and jets ----------------------------------------------

struct GroupElement {
    Mat2 a = Mat2::identity(); // det a > 0
    Vec2 b = {0.0, 0.0};       // row vector

    static GroupElement identity() { return {}; }

    // z |x r e^{i phi}: rotation-scaling block with translation-jet part z
    static GroupElement rotation_scaling(std::complex<double> z, double r, double phi);

    // [[ (det a)^-1, b ], [ 0, a ]], determinant 1
    Mat3 embed() const;
};

GroupElement make_group_element(const Mat2& a, const Vec2& b);
GroupElement group_mul(const GroupElement& g1, const GroupElement& g2);
GroupElement group_inverse(const GroupElement& g);

struct TwoJet {
    Vec2 value = {0.0, 0.0};
    Mat2 jacobian = Mat2::identity();
    double hessian[2][2][2] = {}; // symmetric in the last two indices
};

// f_{a,b}(x) = (det a) a x / (1 + (det a) b x)
Vec2 fractional_linear_apply(const GroupElement& g, const Vec2& x);

// exact 2-jet of f_{a,b} at 0: value 0, jacobian (det a) a,
// hessian^i_jk = -(det a)^2 (a^i_j b_k + a^i_k b_j)
TwoJet two_jet_of_fab(const GroupElement& g);

// 2-jet of outer o inner for jets based at 0 with value 0
TwoJet jet_compose(const TwoJet& outer, const TwoJet& inner);

// | jet(g1 g2) - jet(g1) o jet(g2) |, sup over jacobian and hessian entries
double jet_homomorphism_residual(const GroupElement& g1, const GroupElement& g2);

// ---- gauge matrices ---------------------------------------------------------

// 3x3 matrix of 1-forms: entry[mu][nu] holds the (du, dv) coefficients.
using GaugeValue = std::array<std::array<Vec2, 3>, 3>;
// 3x3 matrix of 2-form densities (coefficients on du ^ dv).
using GaugeDensity = std::array<std::array<double, 3>, 3>;

struct CartanGauge {
    std::function<GaugeValue(const ChartPoint&)> value;
    Domain domain = Domain::unbounded();

    GaugeValue operator()(const ChartPoint& p) const { return value(p); }
};

// Finite-difference ladder for the nested derivative pipeline. The innermost
// layer (coframe / 1-form calculus) runs at a smaller step than the curvature
// and outermost layers so roundoff stays below truncation at every level.
struct CartanSteps {
    double h_coframe = 1e-4;
    double h_curv = 1e-3;
    double h_outer = 1e-3;

    static CartanSteps scaled(double lambda) { return {lambda / 10.0, lambda, lambda}; }
};

// 2x2 matrix of 1-forms (connection form along the coframe section).
using ZetaValue = std::array<std::array<Vec2, 2>, 2>;
struct ZetaField {
    std::function<ZetaValue(const ChartPoint&)> value;
    Domain domain = Domain::unbounded();

    ZetaValue operator()(const ChartPoint& p) const { return value(p); }
};

// Row-covector section (xi_1, xi_2) of the flat fibre coordinate.
using XiSection = std::function<Vec2(const ChartPoint&)>;

// Connection form of an arbitrary torsion-free connection along a coframe:
// zeta^a_b = e^a_i (d_k E^i_b + Gamma^i_kj E^j_b) dx^k with E = e^{-1}.
ZetaField zeta_from_christoffel(const ChristoffelField& nabla, const CoframeField& coframe,
                                double h = kDefaultFdStep);

// Closed form for the conformal connection in the orthonormal gauge:
// zeta = [[-beta, *beta - phi], [phi - *beta, -beta]].
ZetaField zeta_conformal(const MetricField& g, const OneFormField& beta,
                         double h_coframe = 1e-4);

// Frame Schouten matrix of the (g, beta) conformal connection in closed form:
// diag K - delta beta, off-diagonal -+ (1/3) * d beta.
SchoutenMatrix schouten_conformal(const MetricField& g, const OneFormField& beta,
                                  const CartanSteps& steps = {});

// Full gauge along the section x -> (coframe(x), xi(x)):
//   theta = [ -(1/3) tr zeta - xi.eta   d xi - xi zeta - S^t eta - (xi.eta) xi ]
//           [ eta                        zeta - (1/3) I tr zeta + eta xi       ]
CartanGauge theta_general(const ZetaField& zeta, const SchoutenMatrix& schouten_frame,
                          const XiSection& xi, const CoframeField& coframe,
                          double h_xi = 1e-4);

// theta_general specialized to the conformal connection with xi = 0; the
// top-row entries reduce to (delta beta - K) eta^1 + (1/3)(*d beta) eta^2 and
// its partner.
CartanGauge weyl_gauge(const MetricField& g, const OneFormField& beta,
                       const CartanSteps& steps = {});

// ---- structure equations ----------------------------------------------------

// dtheta + theta ^ theta at a point, as du^dv densities.
GaugeDensity structure_residual_at(const CartanGauge& theta, const ChartPoint& p,
                                   double h_outer);

struct CurvatureResidual {
    std::function<GaugeDensity(const ChartPoint&)> entries;
    ScalarField w1; // entry (0,1) / (eta1 ^ eta2 density)
    ScalarField w2; // entry (0,2) / (eta1 ^ eta2 density)
    // sup over the grid of the seven entries outside (0,1), (0,2), normalized
    // by the eta1 ^ eta2 density
    double shape_defect = 0.0;
};

CurvatureResidual structure_residual(const CartanGauge& theta, const SampleGrid& grid,
                                     double h_outer = 1e-3);

// sup over the grid of |sum of diagonal 1-forms| (trace-free audit)
double gauge_trace_residual(const CartanGauge& theta, const SampleGrid& grid);

// The flatness 1-form in the orthonormal gauge, as frame coefficients
// (W1_hat, W2_hat) of
//   -*d(K - delta beta) + (1/3) d * d beta
//   - 2 (K - delta beta) * beta + (2/3) beta (* d beta).
std::pair<ScalarField, ScalarField> w_closed_form(const MetricField& g,
                                                  const OneFormField& beta,
                                                  const CartanSteps& steps = {});

// ---- gauge transformation and complexification -------------------------------

using GroupField = std::function<GroupElement(const ChartPoint&)>;

// theta -> h^{-1} theta h + h^{-1} dh (dh by finite differences; vanishes for
// constant h)
CartanGauge gauge_transform(const CartanGauge& theta, const GroupField& h,
                            double h_fd = 1e-5);

struct ComplexOneForm {
    // (du, dv) coefficients
    std::function<std::array<std::complex<double>, 2>(const ChartPoint&)> components;
    Domain domain = Domain::unbounded();

    std::array<std::complex<double>, 2> operator()(const ChartPoint& p) const {
        return components(p);
    }
};

// omega1 = theta^1_0 + i theta^2_0
// omega2 = (theta^1_1 - theta^2_2) + i (theta^1_2 + theta^2_1)
// xi     = theta^0_1 + i theta^0_2
// psi    = -(1/2) (3 theta^0_0 + i (theta^1_2 - theta^2_1))
struct ComplexForms {
    ComplexOneForm omega1, omega2, xi, psi;
};

ComplexForms complexify(const CartanGauge& theta);

// Residuals of the four complex structure equations at a point, normalized by
// |eta1 ^ eta2|, next to the same combinations read off the real residual
// matrix (they agree identically when the complex equations hold).
struct ComplexResidualSample {
    std::complex<double> omega1, omega2, xi, psi;
    std::complex<double> expected_omega1, expected_omega2, expected_xi, expected_psi;

    double max_abs() const {
        return std::max({std::abs(omega1), std::abs(omega2), std::abs(xi), std::abs(psi)});
    }
    double max_mismatch() const {
        return std::max({std::abs(omega1 - expected_omega1), std::abs(omega2 - expected_omega2),
                         std::abs(xi - expected_xi), std::abs(psi - expected_psi)});
    }
};

ComplexResidualSample complex_structure_residuals(const CartanGauge& theta, const ChartPoint& p,
                                                  double h_outer = 1e-3);

} // namespace weylgeo
