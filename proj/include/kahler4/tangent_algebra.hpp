#pragma once

#include <array>

#include "kahler4/linalg.hpp"
#include "kahler4/tensor4.hpp"

namespace kahler4 {

// Orthonormal frame e1..e4 with e2 = J e1, e4 = J e3; e1, e2 span the
// distinguished distribution D. Vectors hold chart-coordinate components.
struct AdaptedFrame {
    std::array<Vec4, 4> e;
    Mat4 g;  // the metric the frame is orthonormal for
};

// Build the adapted frame from a metric, a compatible almost complex structure,
// and a spanning vector d of D: e1 = d/|d|, e2 = J e1, e3 the best-conditioned
// Gram-Schmidt completion, e4 = J e3.
AdaptedFrame make_adapted_frame(const Mat4& g, const Mat4& J, const Vec4& d);

// Cyclic sum over the first three slots (first Bianchi operator); zero on
// curvature tensors.
Tensor4 bianchi(const Tensor4& t);

// Ricci contraction c(T)_jk = g^{il} T_{ijkl}.
Mat4 ricci_contraction(const Tensor4& t, const Mat4& g);

// Endomorphism A = T(e_i, e_j) defined by g(A Z, W) = T(e_i, e_j, Z, W).
Mat4 curvature_endomorphism(const Tensor4& t, int i, int j, const Mat4& g);

// Action of the endomorphism A on a rank-4 tensor as a derivation:
// (A . T)(Z1..Z4) = -sum_s T(Z1, .., A Z_s, .., Z4).
Tensor4 endomorphism_act(const Mat4& a, const Tensor4& t);

// derivation_act(A, i, j, T, g) = endomorphism_act(curvature_endomorphism(A,i,j,g), T).
Tensor4 derivation_act(const Tensor4& a, int i, int j, const Tensor4& t, const Mat4& g);

// sup over index pairs i<j and all slots of |(A(e_i,e_j) . B)|.
double dot_norm(const Tensor4& a, const Tensor4& b, const Mat4& g);

// Same derivation action on a 2-form: (A . w)(X,Y) = -w(AX,Y) - w(X,AY).
Mat4 endomorphism_act_two_form(const Mat4& a, const Mat4& w);

// ---------------------------------------------------------------------------
// Operators on 2-forms. Fixed basis f1..f6 = e^1^e^2, e^1^e^3, e^1^e^4,
// e^2^e^3, e^2^e^4, e^3^e^4, orthonormal for <alpha,beta> = (1/2) sum a_ij b_ij.
// ---------------------------------------------------------------------------

inline constexpr std::array<std::array<int, 2>, 6> kTwoFormBasis = {{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

// Symmetric operator induced by a curvature-type tensor on 2-forms, together
// with the Hodge star of the chosen orientation. The sign convention maps the
// unit-curvature sphere tensor to +Id.
struct LambdaOperator {
    Mat6 m;           // operator matrix in the f-basis
    Mat6 star;        // Hodge star in the f-basis
    int orientation;  // +1: J-orientation; -1: opposite

    double trace() const {
        double s = 0.0;
        for (int i = 0; i < 6; ++i) s += m[i][i];
        return s;
    }
    double scalar_curvature() const { return 2.0 * trace(); }
};

// Requires the components of T and g to be given in an orthonormal frame
// (|g - Id| < 1e-9); throws DegenerateMetric otherwise. orientation in {+1,-1}.
LambdaOperator lambda_operator(const Tensor4& t, const Mat4& g, int orientation);

// Reconstruct the curvature-type tensor whose induced operator is m.
Tensor4 lambda_to_tensor(const Mat6& m);

// Hodge star on 2-forms for the standard orthonormal frame and given orientation.
Mat6 hodge_star6(int orientation);

// Orthonormal self-dual basis (f1+f6, f2-f5, f3+f4)/sqrt2 and anti-self-dual
// basis (f1-f6, f2+f5, f3-f4)/sqrt2 for orientation +1, as rows.
std::array<std::array<double, 6>, 3> self_dual_basis(int orientation);
std::array<std::array<double, 6>, 3> anti_self_dual_basis(int orientation);

}  // namespace kahler4
