#include "kahler4/tangent_algebra.hpp"

#include <cmath>

#include "kahler4/errors.hpp"

namespace kahler4 {

AdaptedFrame make_adapted_frame(const Mat4& g, const Mat4& J, const Vec4& d) {
    if (std::sqrt(dot(d, d)) < 1e-13) throw ZeroVector("distribution spanning vector is zero");
    if (!positive_definite(g)) throw DegenerateMetric("metric is not positive definite");

    AdaptedFrame fr;
    fr.g = g;
    double n1 = std::sqrt(bilinear(g, d, d));
    Vec4 e1{};
    for (int i = 0; i < 4; ++i) e1[i] = d[i] / n1;
    Vec4 e2 = apply(J, e1);

    // Seed e3 with the standard basis vector that keeps the most mass after
    // projecting out span(e1, e2); deterministic and well conditioned.
    Vec4 best{};
    double best_n2 = -1.0;
    for (int s = 0; s < 4; ++s) {
        Vec4 v{};
        v[s] = 1.0;
        double c1 = bilinear(g, v, e1), c2 = bilinear(g, v, e2);
        Vec4 w{};
        for (int i = 0; i < 4; ++i) w[i] = v[i] - c1 * e1[i] - c2 * e2[i];
        double n2 = bilinear(g, w, w);
        if (n2 > best_n2) {
            best_n2 = n2;
            best = w;
        }
    }
    if (best_n2 < 1e-20) throw DegenerateMetric("cannot complete adapted frame");
    Vec4 e3{};
    double n3 = std::sqrt(best_n2);
    for (int i = 0; i < 4; ++i) e3[i] = best[i] / n3;
    Vec4 e4 = apply(J, e3);

    fr.e = {e1, e2, e3, e4};
    return fr;
}

Tensor4 bianchi(const Tensor4& t) {
    Tensor4 b;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l)
                    b(i, j, k, l) = t(i, j, k, l) + t(j, k, i, l) + t(k, i, j, l);
    return b;
}

Mat4 ricci_contraction(const Tensor4& t, const Mat4& g) {
    if (!positive_definite(g)) throw DegenerateMetric("metric is not positive definite");
    Mat4 ginv = invert(g);
    Mat4 ric{};
    for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) {
            double s = 0.0;
            for (int i = 0; i < 4; ++i)
                for (int l = 0; l < 4; ++l) s += ginv[i][l] * t(i, j, k, l);
            ric[j][k] = s;
        }
    return ric;
}

Mat4 curvature_endomorphism(const Tensor4& t, int i, int j, const Mat4& g) {
    Mat4 ginv = invert(g);
    Mat4 a{};  // a[k][l]: A e_l = a[k][l] e_k
    for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) {
            double s = 0.0;
            for (int m = 0; m < 4; ++m) s += ginv[k][m] * t(i, j, l, m);
            a[k][l] = s;
        }
    return a;
}

Tensor4 endomorphism_act(const Mat4& a, const Tensor4& t) {
    Tensor4 r;
    for (int p = 0; p < 4; ++p)
        for (int q = 0; q < 4; ++q)
            for (int u = 0; u < 4; ++u)
                for (int s = 0; s < 4; ++s) {
                    double acc = 0.0;
                    for (int m = 0; m < 4; ++m)
                        acc += a[m][p] * t(m, q, u, s) + a[m][q] * t(p, m, u, s) +
                               a[m][u] * t(p, q, m, s) + a[m][s] * t(p, q, u, m);
                    r(p, q, u, s) = -acc;
                }
    return r;
}

Tensor4 derivation_act(const Tensor4& a, int i, int j, const Tensor4& t, const Mat4& g) {
    return endomorphism_act(curvature_endomorphism(a, i, j, g), t);
}

double dot_norm(const Tensor4& a, const Tensor4& b, const Mat4& g) {
    double w = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) w = std::max(w, derivation_act(a, i, j, b, g).max_abs());
    return w;
}

Mat4 endomorphism_act_two_form(const Mat4& a, const Mat4& w) {
    Mat4 r{};
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y) {
            double acc = 0.0;
            for (int m = 0; m < 4; ++m) acc += a[m][x] * w[m][y] + a[m][y] * w[x][m];
            r[x][y] = -acc;
        }
    return r;
}

Mat6 hodge_star6(int orientation) {
    // For the standard oriented orthonormal frame: *f1=f6, *f2=-f5, *f3=f4,
    // and the star is symmetric. Opposite orientation flips the sign.
    Mat6 s{};
    double o = orientation >= 0 ? 1.0 : -1.0;
    s[0][5] = s[5][0] = o;
    s[1][4] = s[4][1] = -o;
    s[2][3] = s[3][2] = o;
    return s;
}

std::array<std::array<double, 6>, 3> self_dual_basis(int orientation) {
    const double r = 1.0 / std::sqrt(2.0);
    Mat6 st = hodge_star6(orientation);
    std::array<std::array<double, 6>, 3> basis{};
    for (int i = 0; i < 3; ++i) {
        basis[i][i] = r;
        for (int j = 0; j < 6; ++j) basis[i][j] += r * st[i][j];
    }
    return basis;
}

std::array<std::array<double, 6>, 3> anti_self_dual_basis(int orientation) {
    const double r = 1.0 / std::sqrt(2.0);
    Mat6 st = hodge_star6(orientation);
    std::array<std::array<double, 6>, 3> basis{};
    for (int i = 0; i < 3; ++i) {
        basis[i][i] = r;
        for (int j = 0; j < 6; ++j) basis[i][j] -= r * st[i][j];
    }
    return basis;
}

LambdaOperator lambda_operator(const Tensor4& t, const Mat4& g, int orientation) {
    Mat4 id = mat4_identity();
    double dev = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) dev = std::max(dev, std::fabs(g[i][j] - id[i][j]));
    if (dev > 1e-9) throw DegenerateMetric("lambda_operator requires orthonormal-frame components");

    LambdaOperator op;
    op.orientation = orientation >= 0 ? 1 : -1;
    op.star = hodge_star6(op.orientation);
    for (int A = 0; A < 6; ++A)
        for (int B = 0; B < 6; ++B) {
            auto [i, j] = kTwoFormBasis[A];
            auto [k, l] = kTwoFormBasis[B];
            op.m[A][B] = t(i, j, l, k);  // last pair swapped: unit sphere -> +Id
        }
    return op;
}

Tensor4 lambda_to_tensor(const Mat6& m) {
    Tensor4 t;
    for (int A = 0; A < 6; ++A)
        for (int B = 0; B < 6; ++B) {
            auto [i, j] = kTwoFormBasis[A];
            auto [k, l] = kTwoFormBasis[B];
            double v = -m[A][B];  // t(i,j,k,l) with both pairs increasing
            t(i, j, k, l) = v;
            t(j, i, k, l) = -v;
            t(i, j, l, k) = -v;
            t(j, i, l, k) = v;
        }
    return t;
}

}  // namespace kahler4
