#pragma once

#include <array>
#include <cmath>

namespace kahler4 {

// Fully covariant rank-4 tensor on a 4-dimensional tangent space.
class Tensor4 {
  public:
    Tensor4() : v_{} {}

    double& operator()(int i, int j, int k, int l) { return v_[((i * 4 + j) * 4 + k) * 4 + l]; }
    double operator()(int i, int j, int k, int l) const { return v_[((i * 4 + j) * 4 + k) * 4 + l]; }

    Tensor4& operator+=(const Tensor4& o) {
        for (int n = 0; n < 256; ++n) v_[n] += o.v_[n];
        return *this;
    }
    Tensor4& operator-=(const Tensor4& o) {
        for (int n = 0; n < 256; ++n) v_[n] -= o.v_[n];
        return *this;
    }
    Tensor4& operator*=(double s) {
        for (double& x : v_) x *= s;
        return *this;
    }

    friend Tensor4 operator+(Tensor4 a, const Tensor4& b) { return a += b; }
    friend Tensor4 operator-(Tensor4 a, const Tensor4& b) { return a -= b; }
    friend Tensor4 operator*(double s, Tensor4 t) { return t *= s; }

    double max_abs() const {
        double w = 0.0;
        for (double x : v_) w = std::max(w, std::fabs(x));
        return w;
    }

    // Largest violation of the curvature-type symmetries:
    // antisymmetry in (1,2) and (3,4), and symmetry under pair exchange.
    double symmetry_residual() const {
        double w = 0.0;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                for (int k = 0; k < 4; ++k)
                    for (int l = 0; l < 4; ++l) {
                        double t = (*this)(i, j, k, l);
                        w = std::max(w, std::fabs(t + (*this)(j, i, k, l)));
                        w = std::max(w, std::fabs(t + (*this)(i, j, l, k)));
                        w = std::max(w, std::fabs(t - (*this)(k, l, i, j)));
                    }
        return w;
    }

  private:
    std::array<double, 256> v_;
};

}  // namespace kahler4
