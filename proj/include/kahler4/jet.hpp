#pragma once

#include <array>
#include <cmath>
#include <map>
#include <string>

#include "kahler4/expr.hpp"

namespace kahler4 {

// Truncated Taylor data of a function of four variables: value, gradient,
// symmetric Hessian (10 slots, pairs i <= j), symmetric third derivatives
// (20 slots, triples i <= j <= k). `order` in {1, 2, 3} gates which slots are
// maintained; the per-slot formulas never depend on order, so a higher-order
// evaluation restricted to lower-order slots is bitwise identical.
class Jet {
  public:
    Jet() = default;
    explicit Jet(int order) : order_(order) {}

    static Jet constant(double v, int order);
    static Jet coordinate(int i, double v, int order);

    int order() const { return order_; }
    double value() const { return v_; }
    double grad(int i) const { return g_[i]; }
    double hess(int i, int j) const { return h_[hess_index(i, j)]; }
    double third(int i, int j, int k) const { return t_[third_index(i, j, k)]; }

    double& value_slot() { return v_; }
    double& grad_slot(int i) { return g_[i]; }
    double& hess_slot(int i, int j) { return h_[hess_index(i, j)]; }
    double& third_slot(int i, int j, int k) { return t_[third_index(i, j, k)]; }

    static int hess_index(int i, int j);
    static int third_index(int i, int j, int k);
    static constexpr int kHessSlots = 10;
    static constexpr int kThirdSlots = 20;
    static const std::array<std::array<int, 2>, kHessSlots>& hess_pairs();
    static const std::array<std::array<int, 3>, kThirdSlots>& third_triples();

    friend Jet operator+(const Jet& a, const Jet& b);
    friend Jet operator-(const Jet& a, const Jet& b);
    friend Jet operator-(const Jet& a);
    friend Jet operator*(const Jet& a, const Jet& b);
    friend Jet operator/(const Jet& a, const Jet& b);

    // u(g) for a univariate u with derivatives u1..u3 at g.value().
    Jet compose(double u0, double u1, double u2, double u3) const;

  private:
    int order_ = 1;
    double v_ = 0.0;
    std::array<double, 4> g_{};
    std::array<double, kHessSlots> h_{};
    std::array<double, kThirdSlots> t_{};
};

using JetEnv = std::map<std::string, Jet>;

// Pivoting hook so the generic linear solver accepts jet-valued systems.
inline double pivot_magnitude(const Jet& j) { return std::fabs(j.value()); }

// Evaluate an expression over jets. Same domain rules as eval_value.
Jet eval_jet(const Expr& e, const JetEnv& env);

// d/dx_i as a jet one order lower: value from grad, grad from hess,
// hess from third. Requires j.order() >= 2.
Jet jet_derivative(const Jet& j, int i);

// Named elementary functions applied to jets (also used by eval_jet).
Jet jet_function(const std::string& name, const Jet& x);

// Integer powers by repeated multiplication; negative n uses one division.
Jet jet_ipow(const Jet& x, long long n);

}  // namespace kahler4
