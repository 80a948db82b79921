#pragma once

// Small dense linear algebra for 2x2 / 3x3 problems plus a cyclic Jacobi
// eigensolver used for singular values of narrow Gram matrices (n <= 8).

#include <array>
#include <cmath>
#include <cstddef>

#include "weylgeo/errors.hpp"

namespace weylgeo {

struct Vec2 {
    double x = 0.0, y = 0.0;

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator-() const { return {-x, -y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double norm() const { return std::hypot(x, y); }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm() const { return std::sqrt(dot(*this)); }
    Vec3 normalized() const {
        double n = norm();
        return {x / n, y / n, z / n};
    }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

struct Mat2 {
    double a[2][2] = {{0.0, 0.0}, {0.0, 0.0}};

    static Mat2 identity() { return {{{1.0, 0.0}, {0.0, 1.0}}}; }
    static Mat2 rotation(double phi) {
        double c = std::cos(phi), s = std::sin(phi);
        return {{{c, -s}, {s, c}}};
    }

    double& operator()(int i, int j) { return a[i][j]; }
    double operator()(int i, int j) const { return a[i][j]; }

    double det() const { return a[0][0] * a[1][1] - a[0][1] * a[1][0]; }

    Mat2 transpose() const { return {{{a[0][0], a[1][0]}, {a[0][1], a[1][1]}}}; }

    Mat2 inverse() const {
        double d = det();
        if (std::abs(d) < 1e-300)
            fail(ErrorCode::singular_metric, "2x2 inverse: determinant underflow");
        double s = 1.0 / d;
        return {{{a[1][1] * s, -a[0][1] * s}, {-a[1][0] * s, a[0][0] * s}}};
    }

    Mat2 operator*(const Mat2& o) const {
        Mat2 r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                r.a[i][j] = a[i][0] * o.a[0][j] + a[i][1] * o.a[1][j];
        return r;
    }

    Vec2 operator*(const Vec2& v) const {
        return {a[0][0] * v.x + a[0][1] * v.y, a[1][0] * v.x + a[1][1] * v.y};
    }

    Mat2 operator+(const Mat2& o) const {
        return {{{a[0][0] + o.a[0][0], a[0][1] + o.a[0][1]},
                 {a[1][0] + o.a[1][0], a[1][1] + o.a[1][1]}}};
    }

    Mat2 operator-(const Mat2& o) const {
        return {{{a[0][0] - o.a[0][0], a[0][1] - o.a[0][1]},
                 {a[1][0] - o.a[1][0], a[1][1] - o.a[1][1]}}};
    }

    Mat2 operator*(double s) const {
        return {{{a[0][0] * s, a[0][1] * s}, {a[1][0] * s, a[1][1] * s}}};
    }

    double max_abs() const {
        double m = 0.0;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) m = std::max(m, std::abs(a[i][j]));
        return m;
    }
};

// Symmetric 2x2 tensor in chart coordinates (du^2, du dv, dv^2 coefficients).
struct Sym2 {
    double uu = 0.0, uv = 0.0, vv = 0.0;

    static Sym2 euclidean() { return {1.0, 0.0, 1.0}; }

    double det() const { return uu * vv - uv * uv; }
    double trace() const { return uu + vv; }

    Sym2 inverse(double det_floor = 1e-12) const {
        double d = det();
        if (d < det_floor)
            fail(ErrorCode::singular_metric, "metric determinant below floor");
        return {vv / d, -uv / d, uu / d};
    }

    bool positive_definite() const { return uu > 0.0 && det() > 0.0; }

    Mat2 matrix() const { return {{{uu, uv}, {uv, vv}}}; }

    Sym2 operator+(const Sym2& o) const { return {uu + o.uu, uv + o.uv, vv + o.vv}; }
    Sym2 operator-(const Sym2& o) const { return {uu - o.uu, uv - o.uv, vv - o.vv}; }
    Sym2 operator*(double s) const { return {uu * s, uv * s, vv * s}; }

    double max_abs() const {
        return std::max({std::abs(uu), std::abs(uv), std::abs(vv)});
    }
};

struct Mat3 {
    double a[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};

    static Mat3 identity() {
        Mat3 m;
        m.a[0][0] = m.a[1][1] = m.a[2][2] = 1.0;
        return m;
    }

    double& operator()(int i, int j) { return a[i][j]; }
    double operator()(int i, int j) const { return a[i][j]; }

    Mat3 operator*(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double s = 0.0;
                for (int k = 0; k < 3; ++k) s += a[i][k] * o.a[k][j];
                r.a[i][j] = s;
            }
        return r;
    }

    Vec3 operator*(const Vec3& v) const {
        return {a[0][0] * v.x + a[0][1] * v.y + a[0][2] * v.z,
                a[1][0] * v.x + a[1][1] * v.y + a[1][2] * v.z,
                a[2][0] * v.x + a[2][1] * v.y + a[2][2] * v.z};
    }

    Mat3 operator+(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r.a[i][j] = a[i][j] + o.a[i][j];
        return r;
    }

    Mat3 operator-(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r.a[i][j] = a[i][j] - o.a[i][j];
        return r;
    }

    Mat3 operator*(double s) const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r.a[i][j] = a[i][j] * s;
        return r;
    }

    Mat3 transpose() const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r.a[i][j] = a[j][i];
        return r;
    }

    double det() const {
        return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
               a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
               a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    }

    Mat3 inverse() const {
        double d = det();
        if (std::abs(d) < 1e-300) fail(ErrorCode::argument, "3x3 inverse: singular matrix");
        Mat3 r;
        r.a[0][0] = (a[1][1] * a[2][2] - a[1][2] * a[2][1]) / d;
        r.a[0][1] = (a[0][2] * a[2][1] - a[0][1] * a[2][2]) / d;
        r.a[0][2] = (a[0][1] * a[1][2] - a[0][2] * a[1][1]) / d;
        r.a[1][0] = (a[1][2] * a[2][0] - a[1][0] * a[2][2]) / d;
        r.a[1][1] = (a[0][0] * a[2][2] - a[0][2] * a[2][0]) / d;
        r.a[1][2] = (a[0][2] * a[1][0] - a[0][0] * a[1][2]) / d;
        r.a[2][0] = (a[1][0] * a[2][1] - a[1][1] * a[2][0]) / d;
        r.a[2][1] = (a[0][1] * a[2][0] - a[0][0] * a[2][1]) / d;
        r.a[2][2] = (a[0][0] * a[1][1] - a[0][1] * a[1][0]) / d;
        return r;
    }

    double max_abs() const {
        double m = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m = std::max(m, std::abs(a[i][j]));
        return m;
    }
};

// Cyclic Jacobi for symmetric n x n, n <= 8. Eigenvalues returned descending.
inline void jacobi_eigenvalues(double a[8][8], int n, double evals[8]) {
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
        double diag = 0.0;
        for (int p = 0; p < n; ++p) diag += a[p][p] * a[p][p];
        if (off <= 1e-30 * (diag + 1e-300)) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                if (a[p][q] == 0.0) continue;
                double tau = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                        : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = t * c;
                for (int k = 0; k < n; ++k) {
                    double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    for (int i = 0; i < n; ++i) evals[i] = a[i][i];
    // insertion sort, descending
    for (int i = 1; i < n; ++i) {
        double v = evals[i];
        int j = i - 1;
        while (j >= 0 && evals[j] < v) {
            evals[j + 1] = evals[j];
            --j;
        }
        evals[j + 1] = v;
    }
}

// Singular values of a tall matrix (row-major, rows x cols, cols <= 8) via the
// Gram matrix. Adequate down to sigma ~ 1e-8 * sigma_max, which is all the
// rank/planarity diagnostics here need.
inline void singular_values(const double* m, int rows, int cols, double out[8]) {
    if (cols > 8) fail(ErrorCode::argument, "singular_values: cols > 8");
    double gram[8][8] = {};
    for (int i = 0; i < cols; ++i)
        for (int j = i; j < cols; ++j) {
            double s = 0.0;
            for (int r = 0; r < rows; ++r) s += m[r * cols + i] * m[r * cols + j];
            gram[i][j] = gram[j][i] = s;
        }
    double evals[8];
    jacobi_eigenvalues(gram, cols, evals);
    for (int i = 0; i < cols; ++i) out[i] = std::sqrt(std::max(evals[i], 0.0));
}

} // namespace weylgeo
