#include "kahler4/qch_model.hpp"

#include <cmath>

#include "kahler4/errors.hpp"

namespace kahler4 {

namespace {

// w(X, Y) = sym(JX, Y): w[i][l] = sum_m j[m][i] sym[m][l].
Mat4 two_form_from(const Mat4& j, const Mat4& sym) {
    Mat4 w = mat4_zero();
    for (int i = 0; i < 4; ++i)
        for (int l = 0; l < 4; ++l)
            for (int m = 0; m < 4; ++m) w[i][l] += j[m][i] * sym[m][l];
    return w;
}

Mat4 restrict_sym(const Mat4& g, const Mat4& p) {
    // g(pX, pY) = p^T g p.
    Mat4 gp = matmul(g, p);
    return matmul(transpose(p), gp);
}

StructureTensors from_frame_components(const Mat4& g_f, const Mat4& j_f) {
    StructureTensors s;
    s.p_d = mat4_zero();
    s.p_d[0][0] = s.p_d[1][1] = 1.0;
    s.p_e = mat4_zero();
    s.p_e[2][2] = s.p_e[3][3] = 1.0;
    s.h = restrict_sym(g_f, s.p_d);
    s.m = restrict_sym(g_f, s.p_e);
    s.omega = two_form_from(j_f, g_f);
    s.omega1 = two_form_from(j_f, s.h);
    s.omega2 = two_form_from(j_f, s.m);
    for (int i = 0; i < 4; ++i)
        for (int l = 0; l < 4; ++l) s.omega_bar[i][l] = s.omega2[i][l] - s.omega1[i][l];
    return s;
}

}  // namespace

Mat4 standard_j() {
    Mat4 j = mat4_zero();
    j[1][0] = 1.0;
    j[0][1] = -1.0;
    j[3][2] = 1.0;
    j[2][3] = -1.0;
    return j;
}

StructureTensors standard_structure_tensors() {
    return from_frame_components(mat4_identity(), standard_j());
}

StructureTensors structure_tensors(const AdaptedFrame& frame, const Mat4& g, const Mat4& j) {
    // Frame components: g_f[a][b] = g(e_a, e_b); J e_b = sum_a j_f[a][b] e_a,
    // read off against the g-orthonormal frame, j_f[a][b] = g(J e_b, e_a).
    Mat4 g_f, j_f;
    for (int a = 0; a < 4; ++a) {
        Vec4 je = apply(j, frame.e[a]);
        for (int b = 0; b < 4; ++b) {
            g_f[a][b] = bilinear(g, frame.e[a], frame.e[b]);
            j_f[b][a] = bilinear(g, je, frame.e[b]);
        }
    }
    return from_frame_components(g_f, j_f);
}

Tensor4 model_tensor(ModelKind kind, const Mat4& g, const Mat4& j, const StructureTensors& s) {
    Tensor4 t;
    const Mat4 w = two_form_from(j, g);
    const Mat4& h = s.h;
    const Mat4& w1 = s.omega1;
    for (int i = 0; i < 4; ++i)
        for (int jj = 0; jj < 4; ++jj)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    double v = 0.0;
                    switch (kind) {
                        case ModelKind::Pi:
                            v = 0.25 * (g[jj][k] * g[i][l] - g[i][k] * g[jj][l] +
                                        w[jj][k] * w[i][l] - w[i][k] * w[jj][l] -
                                        2.0 * w[i][jj] * w[k][l]);
                            break;
                        case ModelKind::Phi:
                            v = 0.125 * (g[jj][k] * h[i][l] - g[i][k] * h[jj][l] +
                                         g[i][l] * h[jj][k] - g[jj][l] * h[i][k] +
                                         w[jj][k] * w1[i][l] - w[i][k] * w1[jj][l] +
                                         w[i][l] * w1[jj][k] - w[jj][l] * w1[i][k] -
                                         2.0 * w[i][jj] * w1[k][l] - 2.0 * w[k][l] * w1[i][jj]);
                            break;
                        case ModelKind::Psi:
                            v = -w1[i][jj] * w1[k][l];
                            break;
                        case ModelKind::K:
                            break;
                    }
                    t(i, jj, k, l) = v;
                }
    if (kind == ModelKind::K) {
        Tensor4 pi = model_tensor(ModelKind::Pi, g, j, s);
        Tensor4 phi = model_tensor(ModelKind::Phi, g, j, s);
        Tensor4 psi = model_tensor(ModelKind::Psi, g, j, s);
        pi *= 1.0 / 6.0;
        phi *= -1.0;
        t = pi + phi;
        t += psi;
    }
    return t;
}

ModelTensors model_tensors(const Mat4& g, const Mat4& j, const StructureTensors& s) {
    ModelTensors m;
    m.pi = model_tensor(ModelKind::Pi, g, j, s);
    m.phi = model_tensor(ModelKind::Phi, g, j, s);
    m.psi = model_tensor(ModelKind::Psi, g, j, s);
    m.k = model_tensor(ModelKind::K, g, j, s);
    return m;
}

Tensor4 qch_curvature(const QCHCoeffs& coeffs, const ModelTensors& models) {
    Tensor4 r = models.pi;
    r *= coeffs.a;
    Tensor4 phi = models.phi;
    phi *= coeffs.b;
    Tensor4 psi = models.psi;
    psi *= coeffs.c;
    r += phi;
    r += psi;
    return r;
}

QCHCoeffs eq26_coeffs(double tau, double delta, double kappa) {
    QCHCoeffs c;
    c.a = tau / 6.0 - delta + kappa / 12.0;
    c.b = 2.0 * delta - kappa / 2.0;
    c.c = kappa / 2.0;
    return c;
}

Tensor4 eq26_curvature(double tau, double delta, double kappa, const ModelTensors& models) {
    return qch_curvature(eq26_coeffs(tau, delta, kappa), models);
}

double hsc(const Tensor4& r, const Mat4& j, const Vec4& x) {
    double n2 = 0.0;
    for (int i = 0; i < 4; ++i) n2 += x[i] * x[i];
    if (n2 < 1e-26) throw ZeroVector("hsc requires a nonzero direction");
    Vec4 jx = apply(j, x);
    double num = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int jj = 0; jj < 4; ++jj)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l)
                    num += r(i, jj, k, l) * x[i] * jx[jj] * jx[k] * x[l];
    return num / (n2 * n2);
}

FitResult fit_qch(const Tensor4& r_frame) {
    Mat4 j = standard_j();
    // Sample hsc at |X_D|^2 = 0, 1/2, 1: phi(t) = a + b t^2 + c t^4.
    Vec4 e1{1.0, 0.0, 0.0, 0.0};
    Vec4 e3{0.0, 0.0, 1.0, 0.0};
    const double inv_rt2 = 1.0 / std::sqrt(2.0);
    Vec4 mid{inv_rt2, 0.0, inv_rt2, 0.0};
    double h0 = hsc(r_frame, j, e3);   // a
    double h1 = hsc(r_frame, j, e1);   // a + b + c
    double hh = hsc(r_frame, j, mid);  // a + b/2 + c/4
    FitResult out;
    out.coeffs.a = h0;
    out.coeffs.c = 2.0 * (h1 + h0 - 2.0 * hh);
    out.coeffs.b = h1 - h0 - out.coeffs.c;
    ModelTensors models = model_tensors(mat4_identity(), j, standard_structure_tensors());
    Tensor4 diff = r_frame - qch_curvature(out.coeffs, models);
    out.residual = diff.max_abs();
    return out;
}

OppositeStructure opposite_structure(const Mat4& j, const StructureTensors& s) {
    Mat4 refl;
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) refl[i][k] = s.p_e[i][k] - s.p_d[i][k];
    OppositeStructure o;
    o.jbar = matmul(j, refl);
    return o;
}

double gray_residual(const Tensor4& r, const Mat4& jbar, int order) {
    if (order != 1 && order != 2) throw BadParameter("gray_residual order must be 1 or 2");
    double worst = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int jj = 0; jj < 4; ++jj)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    double t12 = 0.0;  // R(JbX, JbY, Z, U)
                    for (int p = 0; p < 4; ++p)
                        for (int q = 0; q < 4; ++q)
                            t12 += jbar[p][i] * jbar[q][jj] * r(p, q, k, l);
                    double d;
                    if (order == 1) {
                        d = t12 - r(i, jj, k, l);
                    } else {
                        double t13 = 0.0;  // R(JbX, Y, JbZ, U)
                        double t14 = 0.0;  // R(JbX, Y, Z, JbU)
                        for (int p = 0; p < 4; ++p)
                            for (int q = 0; q < 4; ++q) {
                                t13 += jbar[p][i] * jbar[q][k] * r(p, jj, q, l);
                                t14 += jbar[p][i] * jbar[q][l] * r(p, jj, k, q);
                            }
                        d = r(i, jj, k, l) - t12 - t13 - t14;
                    }
                    if (std::abs(d) > worst) worst = std::abs(d);
                }
    return worst;
}

WeylBlocks weyl_blocks(const Tensor4& r, const Mat4& g, const Mat4& j, const StructureTensors& s) {
    (void)j;
    (void)s;
    LambdaOperator lam = lambda_operator(r, g, +1);
    WeylBlocks out;
    out.tau = lam.scalar_curvature();

    auto sd = self_dual_basis(+1);
    auto ad = anti_self_dual_basis(+1);
    auto block = [&](const std::array<std::array<double, 6>, 3>& basis, int p, int q) {
        double v = 0.0;
        for (int a = 0; a < 6; ++a)
            for (int b = 0; b < 6; ++b) v += basis[p][a] * lam.m[a][b] * basis[q][b];
        return v;
    };

    std::array<std::array<double, 3>, 3> wp{}, wm{};
    for (int p = 0; p < 3; ++p)
        for (int q = 0; q < 3; ++q) {
            wp[p][q] = block(sd, p, q) - (p == q ? out.tau / 12.0 : 0.0);
            wm[p][q] = block(ad, p, q) - (p == q ? out.tau / 12.0 : 0.0);
        }
    out.w_minus_block = wm;
    out.kappa_j = 6.0 * wp[0][0];
    out.kappa_over_6 = wm[0][0];
    out.w2 = {wm[0][1], wm[0][2]};
    for (int p = 0; p < 2; ++p)
        for (int q = 0; q < 2; ++q)
            out.w3[p][q] = wm[p + 1][q + 1] + (p == q ? wm[0][0] / 2.0 : 0.0);

    Mat6 n{};
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) {
            double v = 0.0;
            for (int p = 0; p < 3; ++p)
                for (int q = 0; q < 3; ++q) v += ad[p][a] * wm[p][q] * ad[q][b];
            n[a][b] = v;
        }
    out.w_minus = lambda_to_tensor(n);
    return out;
}

QCHCoeffs swap_to_E(const QCHCoeffs& coeffs) {
    QCHCoeffs out;
    out.a = coeffs.a + coeffs.b + coeffs.c;
    out.b = -(coeffs.b + 2.0 * coeffs.c);
    out.c = coeffs.c;
    return out;
}

CurvatureScalars ricci_scalars(const QCHCoeffs& c) {
    CurvatureScalars s;
    s.lambda = 1.5 * c.a + 0.25 * c.b;
    s.mu = 1.5 * c.a + 1.25 * c.b + c.c;
    s.tau = 6.0 * c.a + 3.0 * c.b + 2.0 * c.c;
    s.kappa = 2.0 * c.c;
    s.delta = 0.5 * (c.b + c.c);
    return s;
}

}  // namespace kahler4
