#pragma once

#include <array>

#include "kahler4/linalg.hpp"
#include "kahler4/tangent_algebra.hpp"
#include "kahler4/tensor4.hpp"

namespace kahler4 {

// Structure tensors of the splitting T = D + E in adapted-frame components:
// h, m are g restricted to D, E; omega1 = h(J.,.), omega2 = m(J.,.),
// omega = g(J.,.), omega_bar = g(Jbar.,.) = omega2 - omega1.
struct StructureTensors {
    Mat4 h, m;
    Mat4 omega1, omega2, omega, omega_bar;
    Mat4 p_d, p_e;
};

struct QCHCoeffs {
    double a = 0.0, b = 0.0, c = 0.0;
};

// Pointwise scalars of a QCH triple: Ricci eigenvalues lambda (on E) and mu
// (on D), scalar curvature tau, conformal scalar curvature kappa of Jbar,
// trace-free Ricci deviation delta.
struct CurvatureScalars {
    double lambda = 0.0, mu = 0.0, tau = 0.0, kappa = 0.0, delta = 0.0;
};

struct OppositeStructure {
    Mat4 jbar;
};

struct ModelTensors {
    Tensor4 pi, phi, psi, k;
};

enum class ModelKind { Pi, Phi, Psi, K };

// Anti-self-dual Weyl data of a curvature tensor in adapted-frame components.
// kappa_over_6 = W-(omega_bar, omega_bar) block corner, so kappa(Jbar) =
// 6 * kappa_over_6; kappa_j is the analogous self-dual corner, kappa(J).
struct WeylBlocks {
    double tau = 0.0;
    double kappa_over_6 = 0.0;
    double kappa_j = 0.0;
    std::array<double, 2> w2{};                 // coupling of omega_bar to its orthogonal complement
    std::array<std::array<double, 2>, 2> w3{};  // trace-free block on the complement
    std::array<std::array<double, 3>, 3> w_minus_block{};
    Tensor4 w_minus;  // reconstructed curvature-type tensor of the W- part
};

// Frame components of the splitting data. g and J are chart-coordinate values;
// the result is expressed in the frame (so p_d = diag(1,1,0,0) up to roundoff).
StructureTensors structure_tensors(const AdaptedFrame& frame, const Mat4& g, const Mat4& j);

// Standard-frame structure tensors (g = Id, J e1 = e2, J e3 = e4, D = <e1,e2>).
StructureTensors standard_structure_tensors();
Mat4 standard_j();

// Model curvature-type tensors built from (g, J, h): the constant-holomorphic
// part Pi, the mixed part Phi, the fiber part Psi = -omega1 x omega1, and
// K = Pi/6 - Phi + Psi (trace-free, anti-self-dual).
Tensor4 model_tensor(ModelKind kind, const Mat4& g, const Mat4& j, const StructureTensors& s);
ModelTensors model_tensors(const Mat4& g, const Mat4& j, const StructureTensors& s);

// R = a Pi + b Phi + c Psi.
Tensor4 qch_curvature(const QCHCoeffs& coeffs, const ModelTensors& models);

// Coefficients from the scalar invariants (tau, delta, kappa):
// a = tau/6 - delta + kappa/12, b = 2 delta - kappa/2, c = kappa/2.
QCHCoeffs eq26_coeffs(double tau, double delta, double kappa);
Tensor4 eq26_curvature(double tau, double delta, double kappa, const ModelTensors& models);

// Holomorphic sectional curvature R(X,JX,JX,X)/|X|^4 in frame components.
double hsc(const Tensor4& r, const Mat4& j, const Vec4& x);

// Fit (a,b,c) from hsc sampled at |X_D|^2 in {0, 1/2, 1} and report the sup
// deviation of R from the fitted model over all frame components.
struct FitResult {
    QCHCoeffs coeffs;
    double residual = 0.0;
};
FitResult fit_qch(const Tensor4& r_frame);

// Jbar = J (p_E - p_D): -J on D, +J on E; induces the opposite orientation.
OppositeStructure opposite_structure(const Mat4& j, const StructureTensors& s);

// Gray condition defect for Jbar. order 1: sup |R(JbX,JbY,Z,U) - R(X,Y,Z,U)|;
// order 2: sup |R(X,Y,Z,U) - R(JbX,JbY,Z,U) - R(JbX,Y,JbZ,U) - R(JbX,Y,Z,JbU)|.
double gray_residual(const Tensor4& r, const Mat4& jbar, int order);

// Self-dual/anti-self-dual Weyl data; frame components required.
WeylBlocks weyl_blocks(const Tensor4& r, const Mat4& g, const Mat4& j, const StructureTensors& s);

// Same triple read on the swapped splitting (D <-> E).
QCHCoeffs swap_to_E(const QCHCoeffs& coeffs);

// lambda = 3a/2 + b/4, mu = 3a/2 + 5b/4 + c, tau = 6a + 3b + 2c,
// kappa = 2c, delta = (b + c)/2.
CurvatureScalars ricci_scalars(const QCHCoeffs& coeffs);

}  // namespace kahler4
