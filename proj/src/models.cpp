#include "weylgeo/models.hpp"

#include <cmath>

#include "weylgeo/connections.hpp"

namespace weylgeo {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Truncated exponential series; arguments here are O(1e-3) so this converges
// to machine precision long before 20 terms.
Mat3 expm3(const Mat3& a) {
    Mat3 sum = Mat3::identity();
    Mat3 term = Mat3::identity();
    for (int k = 1; k <= 20; ++k) {
        term = term * a * (1.0 / k);
        sum = sum + term;
        if (term.max_abs() < 1e-300) break;
    }
    return sum;
}

} // namespace

SurfaceModel SurfaceModel::plane() {
    SurfaceModel m;
    m.kind_ = ModelKind::Plane;
    m.name_ = "plane";
    m.chi_ = 0;
    return m;
}

SurfaceModel SurfaceModel::torus() {
    SurfaceModel m;
    m.kind_ = ModelKind::Torus;
    m.name_ = "torus";
    m.chi_ = 0;
    return m;
}

SurfaceModel SurfaceModel::sphere(double radius) {
    if (!(radius > 0.0)) fail(ErrorCode::argument, "sphere radius must be positive");
    SurfaceModel m;
    m.kind_ = ModelKind::Sphere;
    m.name_ = "sphere";
    m.radius_ = radius;
    m.chi_ = 2;
    return m;
}

Domain SurfaceModel::chart_domain(int) const {
    Domain d;
    switch (kind_) {
        case ModelKind::Plane:
            d.u_min = -5.0;
            d.u_max = 5.0;
            d.v_min = -5.0;
            d.v_max = 5.0;
            break;
        case ModelKind::Torus:
            d.u_min = 0.0;
            d.u_max = 1.0;
            d.v_min = 0.0;
            d.v_max = 1.0;
            d.periodic_u = d.periodic_v = true;
            break;
        case ModelKind::Sphere:
            d.u_min = -8.0 * radius_;
            d.u_max = 8.0 * radius_;
            d.v_min = -8.0 * radius_;
            d.v_max = 8.0 * radius_;
            break;
    }
    return d;
}

Vec3 SurfaceModel::embed(const ChartPoint& p) const {
    if (kind_ != ModelKind::Sphere) fail(ErrorCode::argument, "model has no embedding");
    double r = radius_;
    double rho2 = p.u * p.u + p.v * p.v;
    double den = r * r + rho2;
    if (p.chart == 0) return {2.0 * r * p.u / den, 2.0 * r * p.v / den, (rho2 - r * r) / den};
    return {2.0 * r * p.u / den, -2.0 * r * p.v / den, (r * r - rho2) / den};
}

Mat32 SurfaceModel::embed_jacobian(const ChartPoint& p) const {
    if (kind_ != ModelKind::Sphere) fail(ErrorCode::argument, "model has no embedding");
    double r = radius_;
    double u = p.u, v = p.v;
    double den = r * r + u * u + v * v;
    double d2 = den * den;
    Mat32 jac;
    if (p.chart == 0) {
        jac.du = {2.0 * r * (r * r + v * v - u * u) / d2, -4.0 * r * u * v / d2,
                  4.0 * r * r * u / d2};
        jac.dv = {-4.0 * r * u * v / d2, 2.0 * r * (r * r + u * u - v * v) / d2,
                  4.0 * r * r * v / d2};
    } else {
        jac.du = {2.0 * r * (r * r + v * v - u * u) / d2, 4.0 * r * u * v / d2,
                  -4.0 * r * r * u / d2};
        jac.dv = {-4.0 * r * u * v / d2, -2.0 * r * (r * r + u * u - v * v) / d2,
                  -4.0 * r * r * v / d2};
    }
    return jac;
}

ChartPoint SurfaceModel::project(const Vec3& n, int chart) const {
    double r = radius_;
    ChartPoint p;
    p.chart = chart;
    if (chart == 0) {
        double den = 1.0 - n.z;
        if (den < 1e-14) fail(ErrorCode::domain, "projection pole reached in chart 0");
        p.u = r * n.x / den;
        p.v = r * n.y / den;
    } else {
        double den = 1.0 + n.z;
        if (den < 1e-14) fail(ErrorCode::domain, "projection pole reached in chart 1");
        p.u = r * n.x / den;
        p.v = -r * n.y / den;
    }
    return p;
}

int SurfaceModel::preferred_chart(const Vec3& n) const { return n.z <= 0.0 ? 0 : 1; }

ChartPoint SurfaceModel::transition(const ChartPoint& p) const {
    if (kind_ != ModelKind::Sphere) return p;
    double rho2 = p.u * p.u + p.v * p.v;
    if (rho2 < 1e-28) fail(ErrorCode::domain, "transition undefined at the chart origin");
    double s = radius_ * radius_ / rho2;
    return {s * p.u, -s * p.v, 1 - p.chart};
}

Mat2 SurfaceModel::transition_jacobian(const ChartPoint& p) const {
    if (kind_ != ModelKind::Sphere) return Mat2::identity();
    double u = p.u, v = p.v;
    double rho2 = u * u + v * v;
    if (rho2 < 1e-28) fail(ErrorCode::domain, "transition undefined at the chart origin");
    double s = radius_ * radius_ / (rho2 * rho2);
    return {{{s * (v * v - u * u), -2.0 * s * u * v}, {2.0 * s * u * v, s * (v * v - u * u)}}};
}

bool SurfaceModel::should_switch(const ChartPoint& p) const {
    if (kind_ != ModelKind::Sphere) return false;
    return p.u * p.u + p.v * p.v > 4.0 * radius_ * radius_;
}

std::pair<ChartPoint, Vec2> SurfaceModel::switch_chart(const ChartPoint& p,
                                                       const Vec2& velocity) const {
    Mat2 jac = transition_jacobian(p);
    return {transition(p), jac * velocity};
}

ChartPoint SurfaceModel::normalize_point(const ChartPoint& p) const {
    if (kind_ != ModelKind::Torus) return p;
    ChartPoint q = p;
    q.u -= std::floor(q.u);
    q.v -= std::floor(q.v);
    return q;
}

double SurfaceModel::point_distance(const ChartPoint& a, const ChartPoint& b) const {
    if (kind_ == ModelKind::Sphere) return (embed(a) - embed(b)).norm();
    if (kind_ == ModelKind::Torus) {
        double du = a.u - b.u, dv = a.v - b.v;
        du -= std::round(du);
        dv -= std::round(dv);
        return std::hypot(du, dv);
    }
    return std::hypot(a.u - b.u, a.v - b.v);
}

Mesh SurfaceModel::mesh(int resolution) const {
    if (resolution < 2) fail(ErrorCode::argument, "mesh resolution must be >= 2");
    Mesh m;
    if (kind_ == ModelKind::Plane || kind_ == ModelKind::Torus) {
        int n = resolution;
        double w = 1.0 / (double(n) * double(n));
        m.nodes.reserve(size_t(n) * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                m.nodes.push_back({(i + 0.5) / n, (j + 0.5) / n, 0});
                m.weights.push_back(w);
            }
        m.periodic_u = m.periodic_v = (kind_ == ModelKind::Torus);
        return m;
    }

    // Sphere: midpoint lon/lat grid on colatitude [eps, pi - eps], nodes
    // assigned to the chart where they sit inside the unit disk, plus one
    // analytic cap node per pole. weight * (metric area density) reproduces
    // r^2 sin(theta) d(theta) d(phi) exactly, so quadrature error is pure
    // midpoint error in theta.
    double r = radius_;
    double eps = kCapAngle;
    int n_theta = resolution;
    int n_phi = 2 * resolution;
    double dtheta = (kPi - 2.0 * eps) / n_theta;
    double dphi = 2.0 * kPi / n_phi;
    m.nodes.reserve(size_t(n_theta) * n_phi + 2);
    for (int i = 0; i < n_theta; ++i) {
        double theta = eps + (i + 0.5) * dtheta;
        double half = 0.5 * theta;
        int chart = (theta >= kPi / 2.0) ? 0 : 1;
        // chart-plane area density per d(theta) d(phi)
        double jac;
        if (chart == 0) {
            double c = std::cos(half) / std::sin(half);
            jac = 0.5 * r * r * c / (std::sin(half) * std::sin(half));
        } else {
            double t = std::tan(half);
            jac = 0.5 * r * r * t / (std::cos(half) * std::cos(half));
        }
        double weight = jac * dtheta * dphi;
        double sin_t = std::sin(theta), cos_t = std::cos(theta);
        for (int j = 0; j < n_phi; ++j) {
            double phi = (j + 0.5) * dphi;
            Vec3 n = {sin_t * std::cos(phi), sin_t * std::sin(phi), cos_t};
            m.nodes.push_back(project(n, chart));
            m.weights.push_back(weight);
        }
    }
    double cap_chart_area = kPi * r * r * std::tan(0.5 * eps) * std::tan(0.5 * eps);
    m.nodes.push_back({0.0, 0.0, 0});
    m.weights.push_back(cap_chart_area);
    m.nodes.push_back({0.0, 0.0, 1});
    m.weights.push_back(cap_chart_area);
    return m;
}

SurfaceModel make_model(const std::string& name, double radius) {
    if (name == "plane") return SurfaceModel::plane();
    if (name == "torus") return SurfaceModel::torus();
    if (name == "sphere") return SurfaceModel::sphere(radius);
    fail(ErrorCode::argument, "unknown model: " + name);
}

MetricField round_metric(const SurfaceModel& sphere) {
    if (sphere.kind() != ModelKind::Sphere)
        fail(ErrorCode::argument, "round_metric needs a sphere model");
    double r = sphere.radius();
    return {[r](const ChartPoint& p) {
                double den = r * r + p.u * p.u + p.v * p.v;
                double c = 4.0 * r * r * r * r / (den * den);
                return Sym2{c, 0.0, c};
            },
            sphere.chart_domain()};
}

ScalarField ambient_scalar(const SurfaceModel& sphere, std::function<double(const Vec3&)> f) {
    return {[sphere, f](const ChartPoint& p) { return f(sphere.embed(p)); },
            sphere.chart_domain()};
}

OneFormField ambient_oneform(const SurfaceModel& sphere,
                             std::function<Vec3(const Vec3&)> coefficients) {
    return {[sphere, coefficients](const ChartPoint& p) {
                Vec3 c = coefficients(sphere.embed(p));
                Mat32 jac = sphere.embed_jacobian(p);
                return Vec2{jac.du.dot(c), jac.dv.dot(c)};
            },
            sphere.chart_domain()};
}

SL3Matrix::SL3Matrix(const Mat3& m) : m_(m) {
    double d = m_.det();
    if (std::abs(d) < 1e-12) fail(ErrorCode::argument, "SL3Matrix: singular matrix");
    if (d < 0.0) {
        m_ = m_ * (-1.0);
        d = -d;
    }
    m_ = m_ * (1.0 / std::cbrt(d));
}

SL3Matrix SL3Matrix::diag(double a, double b, double c) {
    Mat3 m;
    m(0, 0) = a;
    m(1, 1) = b;
    m(2, 2) = c;
    return SL3Matrix(m);
}

double SL3Matrix::condition_number() const {
    double flat[9];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) flat[i * 3 + j] = m_(i, j);
    double sv[8];
    singular_values(flat, 3, 3, sv);
    if (sv[2] <= 0.0) return 1e300;
    return sv[0] / sv[2];
}

BeltramiMetric beltrami_metric(const SurfaceModel& sphere, const SL3Matrix& psi) {
    if (sphere.kind() != ModelKind::Sphere)
        fail(ErrorCode::argument, "beltrami_metric needs a sphere model");
    double r = sphere.radius();
    Mat3 m = psi.matrix();
    MetricField g;
    // Tangent map of x -> psi x / |psi x| composed with the unit embedding;
    // the pullback metric is r^2 J^T J, no intermediate chart involved.
    g.components = [sphere, m, r](const ChartPoint& p) {
        Vec3 z = m * sphere.embed(p);
        double zn = z.norm();
        Vec3 w = z * (1.0 / zn);
        Mat32 jac = sphere.embed_jacobian(p);
        Vec3 a = m * jac.du;
        Vec3 b = m * jac.dv;
        Vec3 ju = (a - w * w.dot(a)) * (1.0 / zn);
        Vec3 jv = (b - w * w.dot(b)) * (1.0 / zn);
        return Sym2{r * r * ju.dot(ju), r * r * ju.dot(jv), r * r * jv.dot(jv)};
    };
    g.domain = sphere.chart_domain();
    return {g, psi.condition_number() > 1e3};
}

MetricField beltrami_metric_fd(const SurfaceModel& sphere, const SL3Matrix& psi, double h) {
    Mat3 m = psi.matrix();
    MetricField round = round_metric(sphere);
    MetricField g;
    g.components = [sphere, m, round, h](const ChartPoint& p) {
        Vec3 w0 = (m * sphere.embed(p)).normalized();
        int target = sphere.preferred_chart(w0);
        auto phi = [&](const ChartPoint& q) {
            return sphere.project((m * sphere.embed(q)).normalized(), target);
        };
        ChartPoint up = p, um = p, vp = p, vm = p;
        up.u += h;
        um.u -= h;
        vp.v += h;
        vm.v -= h;
        ChartPoint fu_p = phi(up), fu_m = phi(um), fv_p = phi(vp), fv_m = phi(vm);
        Mat2 jac = {{{(fu_p.u - fu_m.u) / (2 * h), (fv_p.u - fv_m.u) / (2 * h)},
                     {(fu_p.v - fu_m.v) / (2 * h), (fv_p.v - fv_m.v) / (2 * h)}}};
        Sym2 target_g = round(phi(p));
        Mat2 pulled = jac.transpose() * target_g.matrix() * jac;
        return Sym2{pulled(0, 0), 0.5 * (pulled(0, 1) + pulled(1, 0)), pulled(1, 1)};
    };
    g.domain = sphere.chart_domain();
    return g;
}

std::pair<MetricField, MetricField> flat_torus_pair() {
    Domain d = SurfaceModel::torus().chart_domain();
    MetricField g1{[](const ChartPoint&) { return Sym2{1.0, 0.0, 1.0}; }, d};
    MetricField g2{[](const ChartPoint&) { return Sym2{2.0, 0.3, 1.0}; }, d};
    return {g1, g2};
}

DegreeResult degree_normal_bundle(const SurfaceModel& model, const MetricField& g,
                                  const OneFormField& beta, int resolution) {
    if (model.kind() == ModelKind::Plane)
        fail(ErrorCode::argument, "degree_normal_bundle needs a closed surface");
    ScalarField k = gauss_curvature(g);
    ScalarField db = codifferential(beta, g);
    TwoFormField integrand;
    integrand.density = [k, db, g](const ChartPoint& p) {
        return (db(p) - k(p)) * std::sqrt(g(p).det());
    };
    integrand.domain = g.domain;
    double raw = -integrate_2form(integrand, model.mesh(resolution)) / kPi;
    DegreeResult r;
    r.raw = raw;
    r.degree = int(std::lround(raw));
    r.precision_warning = std::abs(raw - r.degree) > 0.1;
    return r;
}

namespace {

// sl(3,R) basis: six off-diagonal units followed by diag(1,-1,0), diag(0,1,-1).
Mat3 sl3_basis(int k) {
    Mat3 e;
    static const int off[6][2] = {{0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 0}, {2, 1}};
    if (k < 6) {
        e(off[k][0], off[k][1]) = 1.0;
    } else if (k == 6) {
        e(0, 0) = 1.0;
        e(1, 1) = -1.0;
    } else {
        e(1, 1) = 1.0;
        e(2, 2) = -1.0;
    }
    return e;
}

Mat3 so3_basis(int k) {
    Mat3 e;
    if (k == 0) {
        e(0, 1) = 1.0;
        e(1, 0) = -1.0;
    } else if (k == 1) {
        e(0, 2) = 1.0;
        e(2, 0) = -1.0;
    } else {
        e(1, 2) = 1.0;
        e(2, 1) = -1.0;
    }
    return e;
}

std::array<ChartPoint, 12> rank_sample_points(double radius) {
    std::array<ChartPoint, 12> pts;
    for (int i = 0; i < 12; ++i) {
        double ang = 2.0 * kPi * i / 12.0;
        double rad = (i % 2 == 0) ? 0.45 : 0.8;
        pts[i] = {radius * rad * std::cos(ang), radius * rad * std::sin(ang), 0};
    }
    return pts;
}

void metric_samples(const SurfaceModel& sphere, const Mat3& psi, double col[36]) {
    BeltramiMetric bm = beltrami_metric(sphere, SL3Matrix(psi));
    auto pts = rank_sample_points(sphere.radius());
    for (int i = 0; i < 12; ++i) {
        Sym2 s = bm.metric(pts[i]);
        col[3 * i] = s.uu;
        col[3 * i + 1] = s.uv;
        col[3 * i + 2] = s.vv;
    }
}

} // namespace

FamilyRankResult family_rank(const SurfaceModel& sphere, const SL3Matrix& base, double fd_step) {
    double jacobian[36 * 8];
    for (int k = 0; k < 8; ++k) {
        Mat3 plus = base.matrix() * expm3(sl3_basis(k) * fd_step);
        Mat3 minus = base.matrix() * expm3(sl3_basis(k) * -fd_step);
        double fp[36], fm[36];
        metric_samples(sphere, plus, fp);
        metric_samples(sphere, minus, fm);
        for (int r = 0; r < 36; ++r) jacobian[r * 8 + k] = (fp[r] - fm[r]) / (2.0 * fd_step);
    }
    FamilyRankResult res;
    double sv[8];
    singular_values(jacobian, 36, 8, sv);
    for (int i = 0; i < 8; ++i) res.singular_values[i] = sv[i];
    if (sv[0] <= 0.0) {
        res.rank = 0;
        res.inconclusive = true;
        return res;
    }
    // Gram-route singular values resolve down to ~sqrt(eps) * sigma_max;
    // clamp below that so the gap detector never fires between two zeros.
    double floor_sv = 3e-8 * sv[0];
    int best = 0;
    double best_ratio = 0.0;
    for (int i = 0; i < 7; ++i) {
        double ratio = std::max(sv[i], floor_sv) / std::max(sv[i + 1], floor_sv);
        if (ratio > best_ratio) {
            best_ratio = ratio;
            best = i + 1;
        }
    }
    res.rank = best;
    res.gap_ratio = best_ratio;
    res.inconclusive = best_ratio < 10.0;
    return res;
}

double so3_direction_residual(const SurfaceModel& sphere, const SL3Matrix& base, double fd_step) {
    double worst = 0.0;
    for (int k = 0; k < 3; ++k) {
        Mat3 plus = base.matrix() * expm3(so3_basis(k) * fd_step);
        Mat3 minus = base.matrix() * expm3(so3_basis(k) * -fd_step);
        double fp[36], fm[36];
        metric_samples(sphere, plus, fp);
        metric_samples(sphere, minus, fm);
        for (int r = 0; r < 36; ++r)
            worst = std::max(worst, std::abs((fp[r] - fm[r]) / (2.0 * fd_step)));
    }
    return worst;
}

FInvariantResult f_invariant(const MetricField& g, const MetricField& h,
                             const OneFormField& beta, const OneFormField& alpha,
                             const SampleGrid& grid, double precondition_tol) {
    CoframeField coframe = orthonormal_coframe(g);
    ScalarField f;
    f.sample = [coframe, h](const ChartPoint& p) {
        Mat2 einv = coframe(p).inverse();
        Mat2 hf = einv.transpose() * h(p).matrix() * einv;
        double d = hf(0, 0) - hf(1, 1);
        return d * d + 4.0 * hf(0, 1) * hf(0, 1);
    };
    f.domain = g.domain;

    FInvariantResult out{f, 0.0, 0.0, false};

    ChristoffelField nabla = conformal_connection(g, beta);
    ScalarField pre = weyl_compatibility_residual(nabla, h, alpha);
    grid.for_each([&](const ChartPoint& p) {
        out.precondition_residual = std::max(out.precondition_residual, pre(p));
        Vec2 df = d_scalar(f, p);
        Vec2 ab = alpha(p) - beta(p);
        double fv = f(p);
        out.identity_residual = std::max(
            out.identity_residual,
            std::max(std::abs(df.x - 4.0 * fv * ab.x), std::abs(df.y - 4.0 * fv * ab.y)));
    });
    out.precondition_ok = out.precondition_residual <= precondition_tol;
    return out;
}

} // namespace weylgeo
