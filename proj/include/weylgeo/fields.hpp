#pragma once

// Chart-level tensor fields over 2D coordinate charts, with finite-difference
// exterior calculus, Hodge duality and mesh quadrature.
//
// Fields are samplers: plain callables of a ChartPoint. Every derivative is a
// central finite difference (default step 1e-5, configurable per call), with
// Richardson extrapolation available where an order bump is wanted. All field
// values are immutable after construction and safe to evaluate concurrently.
//
// Orientation/sign conventions, fixed once for the whole library:
//   * on a positively oriented g-orthonormal coframe (eta1, eta2):
//       star eta1 = eta2,  star eta2 = -eta1
//   * codifferential on 1-forms: delta = -star d star
//   * orthonormal coframes come from the lower-triangular square root of g
// hodge_star and codifferential accept an orientation switch (+1/-1) so the
// opposite convention can be audited without touching call sites.

#include <functional>
#include <string>
#include <vector>

#include "weylgeo/errors.hpp"
#include "weylgeo/linalg.hpp"

namespace weylgeo {

inline constexpr double kDefaultFdStep = 1e-5;

struct ChartPoint {
    double u = 0.0;
    double v = 0.0;
    int chart = 0;
};

// Rectangular chart domain; fields carry one so derivative stencils can be
// margin-checked. Periodic directions never run out of domain.
struct Domain {
    double u_min = -1e300, u_max = 1e300;
    double v_min = -1e300, v_max = 1e300;
    bool periodic_u = false;
    bool periodic_v = false;

    static Domain unbounded() { return {}; }

    bool contains(const ChartPoint& p, double margin = 0.0) const {
        bool u_ok = periodic_u || (p.u >= u_min + margin && p.u <= u_max - margin);
        bool v_ok = periodic_v || (p.v >= v_min + margin && p.v <= v_max - margin);
        return u_ok && v_ok;
    }
};

struct ScalarField {
    std::function<double(const ChartPoint&)> sample;
    Domain domain = Domain::unbounded();

    double operator()(const ChartPoint& p) const { return sample(p); }
};

struct OneFormField {
    // (du, dv) coefficients
    std::function<Vec2(const ChartPoint&)> components;
    Domain domain = Domain::unbounded();

    Vec2 operator()(const ChartPoint& p) const { return components(p); }
};

struct TwoFormField {
    // coefficient on du ^ dv
    std::function<double(const ChartPoint&)> density;
    Domain domain = Domain::unbounded();

    double operator()(const ChartPoint& p) const { return density(p); }
};

struct MetricField {
    std::function<Sym2(const ChartPoint&)> components;
    Domain domain = Domain::unbounded();

    Sym2 operator()(const ChartPoint& p) const { return components(p); }
};

// Rows of e are the (du, dv) coefficients of (eta1, eta2); e^T e reproduces g.
struct CoframeField {
    std::function<Mat2(const ChartPoint&)> matrix;
    Domain domain = Domain::unbounded();
    int orientation = +1;

    Mat2 operator()(const ChartPoint& p) const { return matrix(p); }
};

struct Mesh {
    std::vector<ChartPoint> nodes;
    std::vector<double> weights; // chart-area units
    bool periodic_u = false;
    bool periodic_v = false;

    double total_weight() const {
        double s = 0.0;
        for (double w : weights) s += w;
        return s;
    }
};

// ---- derivatives ----------------------------------------------------------

void check_fd_margin(const Domain& d, const ChartPoint& p, double h);

// exterior derivative of a scalar at a point: (df/du, df/dv)
Vec2 d_scalar(const ScalarField& f, const ChartPoint& p, double h = kDefaultFdStep);

// du^dv density of d(omega) at a point: d_u omega_v - d_v omega_u
double d_oneform(const OneFormField& w, const ChartPoint& p, double h = kDefaultFdStep);

// Richardson-extrapolated variants (error O(h^4)); used by order audits.
Vec2 d_scalar_richardson(const ScalarField& f, const ChartPoint& p, double h = kDefaultFdStep);
double d_oneform_richardson(const OneFormField& w, const ChartPoint& p,
                            double h = kDefaultFdStep);

// field-valued wrappers
OneFormField exterior_derivative(const ScalarField& f, double h = kDefaultFdStep);
TwoFormField exterior_derivative(const OneFormField& w, double h = kDefaultFdStep);

// ---- Hodge / coframe ------------------------------------------------------

// Pointwise star matrix on 1-form chart components: omega -> e^T J e^{-T} omega.
Mat2 hodge_star_matrix(const Sym2& g, int orientation);

OneFormField hodge_star(const OneFormField& w, const MetricField& g, int orientation = +1);

// star of a 2-form: density / sqrt(det g)
ScalarField hodge_star(const TwoFormField& w, const MetricField& g, int orientation = +1);

// delta beta = -star d star beta (scalar)
ScalarField codifferential(const OneFormField& beta, const MetricField& g,
                           int orientation = +1, double h = kDefaultFdStep);

// Deterministic lower-triangular (Cholesky) orthonormal coframe of g.
Mat2 orthonormal_coframe_at(const Sym2& g);
CoframeField orthonormal_coframe(const MetricField& g);

// ---- quadrature -----------------------------------------------------------

double integrate_2form(const TwoFormField& w, const Mesh& mesh);

void export_mesh_csv(const Mesh& mesh, const std::string& path);

} // namespace weylgeo
