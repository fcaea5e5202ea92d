#pragma once

#include <array>
#include <cmath>
#include <cstddef>

#include "kahler4/errors.hpp"

namespace kahler4 {

using Vec4 = std::array<double, 4>;
using Mat4 = std::array<std::array<double, 4>, 4>;
using Mat6 = std::array<std::array<double, 6>, 6>;

inline Mat4 mat4_zero() { return Mat4{}; }

inline Mat4 mat4_identity() {
    Mat4 m{};
    for (int i = 0; i < 4; ++i) m[i][i] = 1.0;
    return m;
}

inline Vec4 apply(const Mat4& m, const Vec4& v) {
    Vec4 r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i] += m[i][j] * v[j];
    return r;
}

inline Mat4 matmul(const Mat4& a, const Mat4& b) {
    Mat4 r{};
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k)
            for (int j = 0; j < 4; ++j) r[i][j] += a[i][k] * b[k][j];
    return r;
}

inline Mat4 transpose(const Mat4& a) {
    Mat4 r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i][j] = a[j][i];
    return r;
}

inline double dot(const Vec4& u, const Vec4& v) {
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2] + u[3] * v[3];
}

inline double bilinear(const Mat4& g, const Vec4& u, const Vec4& v) {
    double s = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) s += g[i][j] * u[i] * v[j];
    return s;
}

inline double max_abs(const Mat4& m) {
    double w = 0.0;
    for (const auto& row : m)
        for (double v : row) w = std::max(w, std::fabs(v));
    return w;
}

// Value used for pivoting; overload so the generic solver also works on jet scalars.
inline double pivot_magnitude(double x) { return std::fabs(x); }

// Solve A x = b by Gaussian elimination with partial pivoting. T needs +,-,*,/ and
// pivot_magnitude(T) -> double (ADL). Throws DegenerateMetric on a vanishing pivot.
template <class T, std::size_t N>
std::array<T, N> solve_linear(std::array<std::array<T, N>, N> a, std::array<T, N> b) {
    for (std::size_t col = 0; col < N; ++col) {
        std::size_t piv = col;
        double best = pivot_magnitude(a[col][col]);
        for (std::size_t r = col + 1; r < N; ++r) {
            double m = pivot_magnitude(a[r][col]);
            if (m > best) { best = m; piv = r; }
        }
        if (best < 1e-300) throw DegenerateMetric("singular linear system");
        if (piv != col) { std::swap(a[piv], a[col]); std::swap(b[piv], b[col]); }
        for (std::size_t r = col + 1; r < N; ++r) {
            T f = a[r][col] / a[col][col];
            for (std::size_t c = col; c < N; ++c) a[r][c] = a[r][c] - f * a[col][c];
            b[r] = b[r] - f * b[col];
        }
    }
    std::array<T, N> x{};
    for (std::size_t ri = N; ri-- > 0;) {
        T s = b[ri];
        for (std::size_t c = ri + 1; c < N; ++c) s = s - a[ri][c] * x[c];
        x[ri] = s / a[ri][ri];
    }
    return x;
}

inline Mat4 invert(const Mat4& a) {
    Mat4 inv{};
    for (int col = 0; col < 4; ++col) {
        std::array<double, 4> e{};
        e[col] = 1.0;
        std::array<std::array<double, 4>, 4> rows{};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) rows[i][j] = a[i][j];
        auto x = solve_linear<double, 4>(rows, e);
        for (int i = 0; i < 4; ++i) inv[i][col] = x[i];
    }
    return inv;
}

// Cholesky positive-definiteness probe.
inline bool positive_definite(const Mat4& g, double tol = 1e-12) {
    Mat4 l{};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = g[i][j];
            for (int k = 0; k < j; ++k) s -= l[i][k] * l[j][k];
            if (i == j) {
                if (s <= tol) return false;
                l[i][i] = std::sqrt(s);
            } else {
                l[i][j] = s / l[j][j];
            }
        }
    }
    return true;
}

// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending order.
template <std::size_t N>
std::array<double, N> sym_eigenvalues(std::array<std::array<double, N>, N> a) {
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < N; ++p)
            for (std::size_t q = p + 1; q < N; ++q) off += a[p][q] * a[p][q];
        if (off < 1e-30) break;
        for (std::size_t p = 0; p < N; ++p) {
            for (std::size_t q = p + 1; q < N; ++q) {
                if (std::fabs(a[p][q]) < 1e-300) continue;
                double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                double t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (std::size_t k = 0; k < N; ++k) {
                    double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < N; ++k) {
                    double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    std::array<double, N> ev{};
    for (std::size_t i = 0; i < N; ++i) ev[i] = a[i][i];
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = i + 1; j < N; ++j)
            if (ev[j] < ev[i]) std::swap(ev[i], ev[j]);
    return ev;
}

// Singular values of an m x 2 matrix via the 2x2 Gram matrix, descending order.
struct TwoColumnSingularValues {
    double sigma1;  // largest
    double sigma2;
};

template <class Rows>
TwoColumnSingularValues two_column_singular_values(const Rows& rows) {
    double g00 = 0.0, g01 = 0.0, g11 = 0.0;
    for (const auto& r : rows) {
        g00 += r[0] * r[0];
        g01 += r[0] * r[1];
        g11 += r[1] * r[1];
    }
    double tr = g00 + g11;
    double det = g00 * g11 - g01 * g01;
    double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
    double l1 = tr / 2.0 + disc;
    double l2 = std::max(0.0, tr / 2.0 - disc);
    return {std::sqrt(l1), std::sqrt(l2)};
}

}  // namespace kahler4
