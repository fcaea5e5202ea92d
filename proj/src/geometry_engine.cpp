#include "kahler4/geometry_engine.hpp"

#include <algorithm>
#include <cmath>

#include "kahler4/errors.hpp"

namespace kahler4 {

namespace {

constexpr int kURow[10] = {0, 0, 0, 0, 1, 1, 1, 2, 2, 3};
constexpr int kUCol[10] = {0, 1, 2, 3, 1, 2, 3, 2, 3, 3};
constexpr std::array<std::array<int, 3>, 4> kTriples = {{{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}};

JetMat4 metric_jets_at(const ChartSpec& spec, const Vec4& point, int order) {
    if (!point_in_domain(spec, point)) throw DomainError("point outside the declared domain");
    JetEnv env = jet_env_at(spec, point, order);
    JetMat4 g;
    for (int s = 0; s < 10; ++s) {
        Jet v = eval_jet(*spec.metric[s], env);
        g[kURow[s]][kUCol[s]] = v;
        g[kUCol[s]][kURow[s]] = v;
    }
    return g;
}

Mat4 values_of(const JetMat4& m) {
    Mat4 v{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) v[i][j] = m[i][j].value();
    return v;
}

JetMat4 jet_inverse(const JetMat4& m, int order) {
    JetMat4 inv;
    for (int col = 0; col < 4; ++col) {
        std::array<Jet, 4> rhs;
        for (int i = 0; i < 4; ++i) rhs[i] = Jet::constant(i == col ? 1.0 : 0.0, order);
        std::array<std::array<Jet, 4>, 4> a = m;
        auto x = solve_linear<Jet, 4>(a, rhs);
        for (int i = 0; i < 4; ++i) inv[i][col] = x[i];
    }
    return inv;
}

JetMat4 eval_matrix16(const std::array<ExprPtr, 16>& strings, const JetEnv& env) {
    JetMat4 m;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) m[r][c] = eval_jet(*strings[r * 4 + c], env);
    return m;
}

JetMat4 eval_omega6(const std::array<ExprPtr, 6>& strings, const JetEnv& env, int order) {
    static constexpr int kR[6] = {0, 0, 0, 1, 1, 2};
    static constexpr int kC[6] = {1, 2, 3, 2, 3, 3};
    JetMat4 m;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m[i][j] = Jet::constant(0.0, order);
    for (int s = 0; s < 6; ++s) {
        Jet v = eval_jet(*strings[s], env);
        m[kR[s]][kC[s]] = v;
        m[kC[s]][kR[s]] = -v;
    }
    return m;
}

// J[k][i] = sum_j Omega[i][j] ginv[j][k] (column i holds J d/dx_i).
JetMat4 j_from_omega_jets(const JetMat4& omega, const JetMat4& ginv) {
    JetMat4 j;
    for (int k = 0; k < 4; ++k)
        for (int i = 0; i < 4; ++i) {
            Jet s = omega[i][0] * ginv[0][k];
            for (int jj = 1; jj < 4; ++jj) s = s + omega[i][jj] * ginv[jj][k];
            j[k][i] = s;
        }
    return j;
}

// Fundamental form F[i][j] = g(J d_i, d_j) = sum_k J[k][i] g[k][j].
JetMat4 fundamental_form_jets(const JetMat4& j, const JetMat4& g) {
    JetMat4 f;
    for (int i = 0; i < 4; ++i)
        for (int jj = 0; jj < 4; ++jj) {
            Jet s = j[0][i] * g[0][jj];
            for (int k = 1; k < 4; ++k) s = s + j[k][i] * g[k][jj];
            f[i][jj] = s;
        }
    return f;
}

std::array<std::array<std::array<Jet, 4>, 4>, 4> christoffel_jets(const JetMat4& g,
                                                                  const JetMat4& ginv) {
    // Gamma^k_ij = (1/2) g^{kl} (d_i g_jl + d_j g_il - d_l g_ij), as jets one
    // order below the metric jets.
    std::array<std::array<std::array<Jet, 4>, 4>, 4> dg;  // dg[i][j][l] = d_i g_jl
    for (int i = 0; i < 4; ++i)
        for (int jj = 0; jj < 4; ++jj)
            for (int l = jj; l < 4; ++l) {
                dg[i][jj][l] = jet_derivative(g[jj][l], i);
                dg[i][l][jj] = dg[i][jj][l];
            }
    int order = dg[0][0][0].order();
    std::array<std::array<std::array<Jet, 4>, 4>, 4> gamma;
    Jet half = Jet::constant(0.5, order);
    for (int k = 0; k < 4; ++k)
        for (int i = 0; i < 4; ++i)
            for (int jj = i; jj < 4; ++jj) {
                Jet s = Jet::constant(0.0, order);
                for (int l = 0; l < 4; ++l)
                    s = s + ginv[k][l] * (dg[i][jj][l] + dg[jj][i][l] - dg[l][i][jj]);
                gamma[k][i][jj] = half * s;
                gamma[k][jj][i] = gamma[k][i][jj];
            }
    return gamma;
}

Vec4 dist_vector_at(const ChartSpec& spec, const Vec4& point) {
    if (!spec.dist) return Vec4{1.0, 0.0, 0.0, 0.0};
    auto env = value_env_at(spec, point);
    Vec4 d{};
    for (int i = 0; i < 4; ++i) d[i] = eval_value(*(*spec.dist)[i], env);
    return d;
}

Tensor4 frame_components(const Tensor4& t, const AdaptedFrame& fr) {
    Tensor4 out;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d) {
                    double s = 0.0;
                    for (int i = 0; i < 4; ++i)
                        for (int j = 0; j < 4; ++j)
                            for (int k = 0; k < 4; ++k)
                                for (int l = 0; l < 4; ++l)
                                    s += t(i, j, k, l) * fr.e[a][i] * fr.e[b][j] * fr.e[c][k] *
                                         fr.e[d][l];
                    out(a, b, c, d) = s;
                }
    return out;
}

}  // namespace

ConnectionCoeffs christoffel(const ChartSpec& spec, const Vec4& point) {
    JetMat4 g = metric_jets_at(spec, point, 2);
    if (!positive_definite(values_of(g)))
        throw DegenerateMetric("metric not positive definite at the point");
    JetMat4 ginv = jet_inverse(g, 2);
    auto gamma = christoffel_jets(g, ginv);
    ConnectionCoeffs out;
    for (int k = 0; k < 4; ++k)
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) out.gamma[k][i][j] = gamma[k][i][j].value();
    return out;
}

Mat4 complex_structure_from(const Mat4& g, const Mat4& omega) {
    if (!positive_definite(g)) throw DegenerateMetric("metric not positive definite");
    Mat4 ginv = invert(g);
    Mat4 j{};
    for (int k = 0; k < 4; ++k)
        for (int i = 0; i < 4; ++i) {
            double s = 0.0;
            for (int jj = 0; jj < 4; ++jj) s += omega[i][jj] * ginv[jj][k];
            j[k][i] = s;
        }
    Mat4 jj = matmul(j, j);
    double worst = 0.0;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            worst = std::max(worst, std::fabs(jj[r][c] + (r == c ? 1.0 : 0.0)));
    if (worst > 1e-8) throw IncompatiblePair("g and omega do not define a complex structure");
    return j;
}

GeometryAtPoint riemann_at(const ChartSpec& spec, const Vec4& point, int order) {
    if (order < 2 || order > 3) throw BadParameter("jet order must be 2 or 3");
    GeometryAtPoint geo;
    geo.point = point;
    geo.order = order;
    geo.g_jets = metric_jets_at(spec, point, order);
    geo.g = values_of(geo.g_jets);
    if (!positive_definite(geo.g))
        throw DegenerateMetric("metric not positive definite at the point");
    geo.ginv_jets = jet_inverse(geo.g_jets, order);
    geo.g_inv = values_of(geo.ginv_jets);

    geo.gamma_jets = christoffel_jets(geo.g_jets, geo.ginv_jets);
    for (int k = 0; k < 4; ++k)
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) geo.gamma.gamma[k][i][j] = geo.gamma_jets[k][i][j].value();

    // R_ijkl = g_lm (d_i Gamma^m_jk - d_j Gamma^m_ik
    //          + Gamma^m_ip Gamma^p_jk - Gamma^m_jp Gamma^p_ik),
    // pinned so the unit sphere has positive sectional curvature.
    const auto& ga = geo.gamma.gamma;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    double s = 0.0;
                    for (int m = 0; m < 4; ++m) {
                        double up = geo.gamma_jets[m][j][k].grad(i) - geo.gamma_jets[m][i][k].grad(j);
                        for (int p = 0; p < 4; ++p)
                            up += ga[m][i][p] * ga[p][j][k] - ga[m][j][p] * ga[p][i][k];
                        s += geo.g[l][m] * up;
                    }
                    geo.r(i, j, k, l) = s;
                }

    geo.ricci = ricci_contraction(geo.r, geo.g);
    geo.tau = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) geo.tau += geo.g_inv[i][j] * geo.ricci[i][j];

    JetEnv env = jet_env_at(spec, point, order);
    if (spec.omega) {
        geo.omega_jets = eval_omega6(*spec.omega, env, order);
        geo.j_jets = j_from_omega_jets(*geo.omega_jets, geo.ginv_jets);
        geo.j = complex_structure_from(geo.g, values_of(*geo.omega_jets));
    } else if (spec.j) {
        geo.j_jets = eval_matrix16(*spec.j, env);
        geo.j = values_of(*geo.j_jets);
    } else {
        throw BadParameter("chart needs 'omega' or 'j' to define the complex structure");
    }

    geo.frame = make_adapted_frame(geo.g, geo.j, dist_vector_at(spec, point));
    geo.s = structure_tensors(geo.frame, geo.g, geo.j);
    geo.r_frame = frame_components(geo.r, geo.frame);
    geo.fit = fit_qch(geo.r_frame);

    if (spec.jbar) {
        geo.jbar_jets = eval_matrix16(*spec.jbar, env);
        geo.jbar = values_of(*geo.jbar_jets);
    } else {
        // Jbar = J (p_E - p_D) with the projections rebuilt from the frame.
        Mat4 p_d{};
        for (int a = 0; a < 2; ++a) {
            Vec4 ge = apply(geo.g, geo.frame.e[a]);
            for (int i = 0; i < 4; ++i)
                for (int k = 0; k < 4; ++k) p_d[i][k] += geo.frame.e[a][i] * ge[k];
        }
        Mat4 refl{};
        for (int i = 0; i < 4; ++i)
            for (int k = 0; k < 4; ++k) refl[i][k] = (i == k ? 1.0 : 0.0) - 2.0 * p_d[i][k];
        geo.jbar = matmul(geo.j, refl);
    }
    return geo;
}

double j_algebra_residual(const GeometryAtPoint& geo) {
    double worst = 0.0;
    Mat4 jv = geo.j;
    Mat4 j2 = matmul(jv, jv);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            worst = std::max(worst, std::fabs(j2[r][c] + (r == c ? 1.0 : 0.0)));
    Mat4 pull = matmul(transpose(jv), matmul(geo.g, jv));
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) worst = std::max(worst, std::fabs(pull[r][c] - geo.g[r][c]));
    return worst;
}

double nabla_j_residual(const GeometryAtPoint& geo) {
    const JetMat4& j = *geo.j_jets;
    double worst = 0.0;

    // (nabla_i J)^k_j = d_i J^k_j + Gamma^k_ip J^p_j - Gamma^p_ij J^k_p.
    const auto& ga = geo.gamma.gamma;
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k)
            for (int jj = 0; jj < 4; ++jj) {
                double s = j[k][jj].grad(i);
                for (int p = 0; p < 4; ++p)
                    s += ga[k][i][p] * j[p][jj].value() - ga[p][i][jj] * j[k][p].value();
                worst = std::max(worst, std::fabs(s));
            }

    JetMat4 f = geo.omega_jets ? *geo.omega_jets : fundamental_form_jets(j, geo.g_jets);
    for (const auto& t : kTriples) {
        int i = t[0], jj = t[1], k = t[2];
        double d = f[jj][k].grad(i) + f[k][i].grad(jj) + f[i][jj].grad(k);
        worst = std::max(worst, std::fabs(d));
    }
    return worst;
}

double kahler_residual(const GeometryAtPoint& geo) {
    return std::max(j_algebra_residual(geo), nabla_j_residual(geo));
}

double semisym_residual(const GeometryAtPoint& geo) {
    return dot_norm(geo.r_frame, geo.r_frame, mat4_identity());
}

double rweyl_residual(const GeometryAtPoint& geo, const WeylBlocks& blocks) {
    return dot_norm(geo.r_frame, blocks.w_minus, mat4_identity());
}

LeeData lee_form_at(const ChartSpec& spec, const GeometryAtPoint& geo, Structure which) {
    JetMat4 f;
    if (which == Structure::J) {
        f = geo.omega_jets ? *geo.omega_jets : fundamental_form_jets(*geo.j_jets, geo.g_jets);
    } else {
        if (!geo.jbar_jets)
            throw BadParameter(
                "lee form of the opposite structure needs the chart's 'jbar' field");
        f = fundamental_form_jets(*geo.jbar_jets, geo.g_jets);
    }

    // dF = theta ^ F over the four coordinate 3-planes, solved as jets.
    int order = f[0][1].order() - 1;
    std::array<std::array<Jet, 4>, 4> a;
    std::array<Jet, 4> rhs;
    for (int t = 0; t < 4; ++t) {
        int i = kTriples[t][0], jj = kTriples[t][1], k = kTriples[t][2];
        rhs[t] = jet_derivative(f[jj][k], i) + jet_derivative(f[k][i], jj) +
                 jet_derivative(f[i][jj], k);
        for (int m = 0; m < 4; ++m) a[t][m] = Jet::constant(0.0, order);
        a[t][i] = a[t][i] + f[jj][k];
        a[t][jj] = a[t][jj] - f[i][k];
        a[t][k] = a[t][k] + f[i][jj];
    }
    std::array<Jet, 4> theta_jets;
    try {
        theta_jets = solve_linear<Jet, 4>(a, rhs);
    } catch (const DegenerateMetric&) {
        throw SingularWedgeMap("wedge map of the fundamental form is singular");
    }

    LeeData lee;
    for (int i = 0; i < 4; ++i) lee.theta[i] = theta_jets[i].value();

    for (int t = 0; t < 4; ++t) {
        int i = kTriples[t][0], jj = kTriples[t][1], k = kTriples[t][2];
        double wedge = lee.theta[i] * f[jj][k].value() - lee.theta[jj] * f[i][k].value() +
                       lee.theta[k] * f[i][jj].value();
        lee.solve_residual = std::max(lee.solve_residual, std::fabs(rhs[t].value() - wedge));
    }

    // Prefer the fixture's analytic theta for the differentiated quantities.
    std::array<Jet, 4> theta_for_deriv = theta_jets;
    if (which == Structure::Jbar && spec.theta) {
        JetEnv env = jet_env_at(spec, geo.point, geo.order);
        std::array<Jet, 4> analytic;
        for (int i = 0; i < 4; ++i) analytic[i] = eval_jet(*(*spec.theta)[i], env);
        lee.analytic_available = true;
        for (int i = 0; i < 4; ++i)
            lee.vs_analytic =
                std::max(lee.vs_analytic, std::fabs(analytic[i].value() - lee.theta[i]));
        theta_for_deriv = analytic;
    }

    for (int i = 0; i < 4; ++i)
        for (int jj = 0; jj < 4; ++jj)
            lee.norm2 += geo.g_inv[i][jj] * theta_for_deriv[i].value() * theta_for_deriv[jj].value();

    // delta theta = -g^{ij} (d_i theta_j - Gamma^k_ij theta_k).
    for (int i = 0; i < 4; ++i)
        for (int jj = 0; jj < 4; ++jj) {
            double cov = theta_for_deriv[jj].grad(i);
            for (int k = 0; k < 4; ++k)
                cov -= geo.gamma.gamma[k][i][jj] * theta_for_deriv[k].value();
            lee.delta_theta -= geo.g_inv[i][jj] * cov;
        }
    return lee;
}

double gauduchon_residual(const GeometryAtPoint& geo, const WeylBlocks& blocks,
                          const LeeData& lee) {
    double kappa = 6.0 * blocks.kappa_over_6;
    return std::fabs(kappa - geo.tau + 1.5 * (lee.norm2 + 2.0 * lee.delta_theta));
}

FoliationDefects foliation_residual(const GeometryAtPoint& geo, const LeeData& lee,
                                    const Vec4& zeta, const Vec4& x, const Vec4& y) {
    Vec4 nabla{};  // (nabla_X zeta)^k for the constant-coefficient extension
    for (int k = 0; k < 4; ++k)
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) nabla[k] += x[i] * geo.gamma.gamma[k][i][j] * zeta[j];
    double lhs = 2.0 * bilinear(geo.g, nabla, y);

    auto theta_fol = [&](const Vec4& v) {
        double s = 0.0;
        for (int i = 0; i < 4; ++i) s += lee.theta[i] * v[i];
        return -0.5 * s;
    };
    Vec4 jzeta = apply(geo.j, zeta);
    double omega_xy = bilinear(geo.g, apply(geo.j, x), y);
    double rot = theta_fol(jzeta) * omega_xy;
    double base = theta_fol(zeta) * bilinear(geo.g, x, y);

    FoliationDefects d;
    d.defect_a = std::fabs(lhs + rot + base);
    d.defect_b = std::fabs(lhs - rot + base);
    return d;
}

FoliationDefects foliation_suite_residual(const GeometryAtPoint& geo, const LeeData& lee) {
    FoliationDefects worst;
    for (int zi = 0; zi < 2; ++zi)
        for (int xi = 2; xi < 4; ++xi)
            for (int yi = 2; yi < 4; ++yi) {
                FoliationDefects d = foliation_residual(geo, lee, geo.frame.e[zi],
                                                        geo.frame.e[xi], geo.frame.e[yi]);
                worst.defect_a = std::max(worst.defect_a, d.defect_a);
                worst.defect_b = std::max(worst.defect_b, d.defect_b);
            }
    return worst;
}

}  // namespace kahler4
