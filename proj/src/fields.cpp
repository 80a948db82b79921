#include "weylgeo/fields.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace weylgeo {

void check_fd_margin(const Domain& d, const ChartPoint& p, double h) {
    if (!d.contains(p, h))
        fail(ErrorCode::domain, "finite-difference stencil leaves the chart domain");
}

Vec2 d_scalar(const ScalarField& f, const ChartPoint& p, double h) {
    check_fd_margin(f.domain, p, h);
    ChartPoint up = p, um = p, vp = p, vm = p;
    up.u += h;
    um.u -= h;
    vp.v += h;
    vm.v -= h;
    return {(f(up) - f(um)) / (2.0 * h), (f(vp) - f(vm)) / (2.0 * h)};
}

double d_oneform(const OneFormField& w, const ChartPoint& p, double h) {
    check_fd_margin(w.domain, p, h);
    ChartPoint up = p, um = p, vp = p, vm = p;
    up.u += h;
    um.u -= h;
    vp.v += h;
    vm.v -= h;
    double dwv_du = (w(up).y - w(um).y) / (2.0 * h);
    double dwu_dv = (w(vp).x - w(vm).x) / (2.0 * h);
    return dwv_du - dwu_dv;
}

Vec2 d_scalar_richardson(const ScalarField& f, const ChartPoint& p, double h) {
    Vec2 coarse = d_scalar(f, p, h);
    Vec2 fine = d_scalar(f, p, 0.5 * h);
    return (fine * 4.0 - coarse) * (1.0 / 3.0);
}

double d_oneform_richardson(const OneFormField& w, const ChartPoint& p, double h) {
    double coarse = d_oneform(w, p, h);
    double fine = d_oneform(w, p, 0.5 * h);
    return (4.0 * fine - coarse) / 3.0;
}

OneFormField exterior_derivative(const ScalarField& f, double h) {
    return {[f, h](const ChartPoint& p) { return d_scalar(f, p, h); }, f.domain};
}

TwoFormField exterior_derivative(const OneFormField& w, double h) {
    return {[w, h](const ChartPoint& p) { return d_oneform(w, p, h); }, w.domain};
}

Mat2 hodge_star_matrix(const Sym2& g, int orientation) {
    if (!g.positive_definite())
        fail(ErrorCode::singular_metric, "hodge_star: metric not positive definite");
    Mat2 e = orthonormal_coframe_at(g);
    // J realizes star eta1 = eta2, star eta2 = -eta1 on frame components
    Mat2 j = {{{0.0, -1.0}, {1.0, 0.0}}};
    if (orientation < 0) j = j * (-1.0);
    return e.transpose() * j * e.inverse().transpose();
}

OneFormField hodge_star(const OneFormField& w, const MetricField& g, int orientation) {
    return {[w, g, orientation](const ChartPoint& p) {
                return hodge_star_matrix(g(p), orientation) * w(p);
            },
            w.domain};
}

ScalarField hodge_star(const TwoFormField& w, const MetricField& g, int orientation) {
    return {[w, g, orientation](const ChartPoint& p) {
                Sym2 gp = g(p);
                if (!gp.positive_definite())
                    fail(ErrorCode::singular_metric, "hodge_star: metric not positive definite");
                double area = std::sqrt(gp.det());
                return orientation * w(p) / area;
            },
            w.domain};
}

ScalarField codifferential(const OneFormField& beta, const MetricField& g, int orientation,
                           double h) {
    OneFormField starb = hodge_star(beta, g, orientation);
    TwoFormField dstarb = exterior_derivative(starb, h);
    ScalarField stardstarb = hodge_star(dstarb, g, orientation);
    return {[stardstarb](const ChartPoint& p) { return -stardstarb(p); }, beta.domain};
}

Mat2 orthonormal_coframe_at(const Sym2& g) {
    if (!(g.uu > 0.0) || !(g.det() > 1e-12))
        fail(ErrorCode::singular_metric, "orthonormal_coframe: metric not positive definite");
    // g = L L^T with L lower triangular; coframe matrix is L^T, so
    // eta1 = L11 du + L21 dv, eta2 = L22 dv and det e = sqrt(det g) > 0.
    double l11 = std::sqrt(g.uu);
    double l21 = g.uv / l11;
    double l22 = std::sqrt(g.det() / g.uu);
    return {{{l11, l21}, {0.0, l22}}};
}

CoframeField orthonormal_coframe(const MetricField& g) {
    return {[g](const ChartPoint& p) { return orthonormal_coframe_at(g(p)); }, g.domain, +1};
}

double integrate_2form(const TwoFormField& w, const Mesh& mesh) {
    if (mesh.nodes.empty()) fail(ErrorCode::argument, "integrate_2form: empty mesh");
    double s = 0.0;
    for (size_t i = 0; i < mesh.nodes.size(); ++i) s += mesh.weights[i] * w(mesh.nodes[i]);
    return s;
}

void export_mesh_csv(const Mesh& mesh, const std::string& path) {
    std::ofstream out(path);
    if (!out) fail(ErrorCode::io, "cannot open " + path);
    out << "chart,u,v,weight\n";
    char line[128];
    for (size_t i = 0; i < mesh.nodes.size(); ++i) {
        std::snprintf(line, sizeof(line), "%d,%.17g,%.17g,%.17g\n", mesh.nodes[i].chart,
                      mesh.nodes[i].u, mesh.nodes[i].v, mesh.weights[i]);
        out << line;
    }
    if (!out) fail(ErrorCode::io, "write failed: " + path);
}

} // namespace weylgeo
