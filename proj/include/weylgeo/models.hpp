#pragma once

// Concrete surface models: the round 2-sphere with its two-chart stereographic
// atlas, the flat square torus, and an unbounded plane chart for flat tests.
// On top of the sphere sit the SL(3,R) pullback metrics whose geodesics are
// great circles, the normal-bundle degree integral, the rank-5 family check
// and the f-invariant of the shared-connection comparison.

#include <array>
#include <optional>
#include <string>
#include <utility>

#include "weylgeo/fields.hpp"

namespace weylgeo {

enum class ModelKind { Plane, Torus, Sphere };

// 3x2 Jacobian of an embedding map (columns: d/du, d/dv).
struct Mat32 {
    Vec3 du, dv;
};

class SurfaceModel {
public:
    static SurfaceModel plane();
    static SurfaceModel torus();
    static SurfaceModel sphere(double radius);

    ModelKind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    double radius() const { return radius_; }
    int euler_characteristic() const { return chi_; }
    int chart_count() const { return kind_ == ModelKind::Sphere ? 2 : 1; }
    bool has_embedding() const { return kind_ == ModelKind::Sphere; }

    Domain chart_domain(int chart = 0) const;

    // Unit-sphere position of a chart point (sphere only).
    Vec3 embed(const ChartPoint& p) const;
    // d(embed)/d(u,v), analytic.
    Mat32 embed_jacobian(const ChartPoint& p) const;
    // Chart coordinates of a unit vector in the given chart.
    ChartPoint project(const Vec3& n, int chart) const;
    // Chart whose projection of n is best conditioned (|rho| smallest).
    int preferred_chart(const Vec3& n) const;

    // Sphere chart transition (u,v) -> r^2 (u,-v)/|.|^2 into the other chart,
    // with its analytic Jacobian. Identity on single-chart models.
    ChartPoint transition(const ChartPoint& p) const;
    Mat2 transition_jacobian(const ChartPoint& p) const;

    // Geodesic integration support: switch charts once |(u,v)| > 2r.
    bool should_switch(const ChartPoint& p) const;
    std::pair<ChartPoint, Vec2> switch_chart(const ChartPoint& p, const Vec2& velocity) const;

    // Wrap a torus point back into the fundamental square.
    ChartPoint normalize_point(const ChartPoint& p) const;

    // Distance between two points: chordal in the embedding when available,
    // otherwise chart distance (periodicity-aware on the torus).
    double point_distance(const ChartPoint& a, const ChartPoint& b) const;

    // Quadrature mesh. resolution n means: n x n cells on torus/plane(unit
    // square), and a (2n x n) lon/lat grid on the sphere with polar caps of
    // angular radius kCapAngle replaced by single analytic cap nodes.
    Mesh mesh(int resolution) const;

    static constexpr double kCapAngle = 1e-3;

private:
    ModelKind kind_ = ModelKind::Plane;
    std::string name_;
    double radius_ = 1.0;
    int chi_ = 0;
};

// Registry addressable by name: "sphere", "torus", "plane".
SurfaceModel make_model(const std::string& name, double radius = 1.0);

// Round metric of the model's sphere in chart coordinates:
// g = 4 r^4 / (r^2 + u^2 + v^2)^2 * (du^2 + dv^2) on both charts.
MetricField round_metric(const SurfaceModel& sphere);

// Scalar / 1-form fields obtained by restricting ambient R^3 data to the
// sphere; smooth on the whole surface, so safe across both charts.
ScalarField ambient_scalar(const SurfaceModel& sphere,
                           std::function<double(const Vec3&)> f);
// Pullback of sum_i c_i(x) dx_i along the unit embedding.
OneFormField ambient_oneform(const SurfaceModel& sphere,
                             std::function<Vec3(const Vec3&)> coefficients);

struct SL3Matrix {
    explicit SL3Matrix(const Mat3& m);
    static SL3Matrix identity() { return SL3Matrix(Mat3::identity()); }
    static SL3Matrix diag(double a, double b, double c);

    const Mat3& matrix() const { return m_; }
    double condition_number() const; // sigma_max / sigma_min

private:
    Mat3 m_;
};

struct BeltramiMetric {
    MetricField metric;
    bool ill_conditioned = false; // cond(psi) > 1e3
};

// Pullback of the round metric under the projective action x -> psi x / |psi x|.
BeltramiMetric beltrami_metric(const SurfaceModel& sphere, const SL3Matrix& psi);

// Same metric computed by the chart-composition route with finite-difference
// Jacobians (step h); retained as a cross-check oracle for the analytic path.
MetricField beltrami_metric_fd(const SurfaceModel& sphere, const SL3Matrix& psi,
                               double h = 1e-6);

// Flat torus pair: g1 = du^2 + dv^2, g2 = 2 du^2 + 0.6 du dv + dv^2.
// Constants are fixed so that the f-invariant of the pair is exactly 1.36.
std::pair<MetricField, MetricField> flat_torus_pair();

struct DegreeResult {
    double raw = 0.0;
    int degree = 0;
    bool precision_warning = false; // |raw - degree| > 0.1
};

// deg N = -(1/pi) * integral of (delta beta - K) dmu over the closed surface.
DegreeResult degree_normal_bundle(const SurfaceModel& model, const MetricField& g,
                                  const OneFormField& beta, int resolution);

struct FamilyRankResult {
    int rank = 0;
    double gap_ratio = 0.0; // sigma_rank / sigma_rank+1
    bool inconclusive = false; // gap_ratio < 10
    std::array<double, 8> singular_values{};
};

// Numerical rank of psi -> (metric components at 12 fixed chart points) over
// the 8 directions of sl(3,R) through the base point.
FamilyRankResult family_rank(const SurfaceModel& sphere, const SL3Matrix& base,
                             double fd_step = 1e-4);

// Rate of metric change along the so(3) directions at the base point; zero at
// the identity since rotations are isometries of the round metric.
double so3_direction_residual(const SurfaceModel& sphere, const SL3Matrix& base,
                              double fd_step = 1e-4);

struct SampleGrid {
    double u0 = -0.5, u1 = 0.5, v0 = -0.5, v1 = 0.5;
    int n = 41;
    int chart = 0;

    template <typename F>
    void for_each(F&& f) const {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                ChartPoint p;
                p.u = u0 + (u1 - u0) * (n == 1 ? 0.5 : double(i) / (n - 1));
                p.v = v0 + (v1 - v0) * (n == 1 ? 0.5 : double(j) / (n - 1));
                p.chart = chart;
                f(p);
            }
    }
};

struct FInvariantResult {
    ScalarField f;
    double identity_residual = 0.0;     // sup |df - 4 f (a-b).eta|
    double precondition_residual = 0.0; // sup |nabla h - 2 alpha (x) h|
    bool precondition_ok = false;
};

// f = (h11 - h22)^2 + 4 h12^2 with h expressed in the g-orthonormal coframe.
// The derivative identity df = 4 f (a_k - b_k) eta^k is checked on the grid;
// it only applies when nabla h = 2 alpha (x) h for nabla the (g,beta)
// conformal connection, so that residual is reported alongside.
FInvariantResult f_invariant(const MetricField& g, const MetricField& h,
                             const OneFormField& beta, const OneFormField& alpha,
                             const SampleGrid& grid, double precondition_tol = 1e-4);

} // namespace weylgeo
