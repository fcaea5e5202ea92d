#pragma once

#include <array>
#include <optional>

#include "kahler4/chart.hpp"
#include "kahler4/jet.hpp"
#include "kahler4/linalg.hpp"
#include "kahler4/qch_model.hpp"
#include "kahler4/tangent_algebra.hpp"
#include "kahler4/tensor4.hpp"

namespace kahler4 {

using JetMat4 = std::array<std::array<Jet, 4>, 4>;

// gamma[k][i][j] = Gamma^k_ij, symmetric in (i, j).
struct ConnectionCoeffs {
    std::array<std::array<std::array<double, 4>, 4>, 4> gamma{};
};

// Everything the check suites consume at one point, in both coordinate and
// adapted-frame components.
struct GeometryAtPoint {
    Vec4 point{};
    int order = 2;

    JetMat4 g_jets;   // symmetric metric jets
    JetMat4 ginv_jets;
    Mat4 g{}, g_inv{};
    ConnectionCoeffs gamma;
    std::array<std::array<std::array<Jet, 4>, 4>, 4> gamma_jets;  // order - 1

    Tensor4 r;      // lowered curvature, coordinate components
    Mat4 ricci{};
    double tau = 0.0;

    Mat4 j{};                  // complex structure value
    std::optional<JetMat4> j_jets;
    std::optional<JetMat4> omega_jets;

    AdaptedFrame frame;        // built from the dist field (when present)
    StructureTensors s;        // frame components of the splitting
    Tensor4 r_frame;           // R in frame components
    Mat4 jbar{};               // opposite structure, coordinate components
    std::optional<JetMat4> jbar_jets;

    FitResult fit;             // (a, b, c) and model deviation, from r_frame
};

struct LeeData {
    Vec4 theta{};
    double norm2 = 0.0;         // |theta|^2 via g^{-1}
    double delta_theta = 0.0;   // -g^{ij} (grad_i theta)_j
    double solve_residual = 0.0;    // || dOmega - theta ^ Omega || after solve
    double vs_analytic = 0.0;       // max |theta - analytic theta|, 0 if none
    bool analytic_available = false;
};

// Levi-Civita coefficients at a point from exact metric jets.
ConnectionCoeffs christoffel(const ChartSpec& spec, const Vec4& point);

// Full pointwise geometry. `order` is the jet order for the metric (2 or 3;
// 3 is needed when the Lee form must itself be differentiated numerically).
GeometryAtPoint riemann_at(const ChartSpec& spec, const Vec4& point, int order = 2);

// J = g^{-1} Omega; certifies J^2 = -Id, else IncompatiblePair.
Mat4 complex_structure_from(const Mat4& g, const Mat4& omega);

// Pointwise algebraic defect of the structure: max of ||J^2 + Id|| and
// ||g(J., J.) - g||.
double j_algebra_residual(const GeometryAtPoint& geo);

// Differential defect: max of ||nabla J|| and ||d omega||.
double nabla_j_residual(const GeometryAtPoint& geo);

// max of the two defects above.
double kahler_residual(const GeometryAtPoint& geo);

// dot_norm(R, R) in frame components.
double semisym_residual(const GeometryAtPoint& geo);

// dot_norm(R, W-) in frame components.
double rweyl_residual(const GeometryAtPoint& geo, const WeylBlocks& blocks);

enum class Structure { J, Jbar };

// Lee form of the requested structure from d Omega = theta ^ Omega, as a 4x4
// linear solve over jets. delta theta uses the fixture's analytic theta when
// available, else the solved jet-valued theta (which needs order 3 metric
// jets). Throws SingularWedgeMap if the wedge map is singular.
LeeData lee_form_at(const ChartSpec& spec, const GeometryAtPoint& geo, Structure which);

// | kappa(Jbar) - tau + (3/2)(|theta|^2 + 2 delta theta) |.
double gauduchon_residual(const GeometryAtPoint& geo, const WeylBlocks& blocks,
                          const LeeData& lee);

// Defect of the foliation identity for zeta in D, X, Y in E (all constant
// coordinate extensions), with theta_fol = -theta_lee/2:
//   a: 2 g(nabla_X zeta, Y) + theta_fol(J zeta) omega(X, Y) + theta_fol(zeta) g(X, Y)
//   b: 2 g(nabla_X zeta, Y) - theta_fol(J zeta) omega(X, Y) + theta_fol(zeta) g(X, Y)
// The two readings differ in the sign given to the rotated one-form; both are
// reported.
struct FoliationDefects {
    double defect_a = 0.0;
    double defect_b = 0.0;
};
FoliationDefects foliation_residual(const GeometryAtPoint& geo, const LeeData& lee,
                                    const Vec4& zeta, const Vec4& x, const Vec4& y);

// Convenience: worst defects over zeta in {e1, e2}, (X, Y) over {e3, e4} pairs.
FoliationDefects foliation_suite_residual(const GeometryAtPoint& geo, const LeeData& lee);

}  // namespace kahler4
