#include "kahler4/jet.hpp"

#include <algorithm>
#include <cmath>

#include "kahler4/errors.hpp"

namespace kahler4 {

namespace {

constexpr std::array<std::array<int, 2>, Jet::kHessSlots> kHessPairs = {{
    {0, 0}, {0, 1}, {0, 2}, {0, 3}, {1, 1}, {1, 2}, {1, 3}, {2, 2}, {2, 3}, {3, 3},
}};

constexpr std::array<std::array<int, 3>, Jet::kThirdSlots> kThirdTriples = {{
    {0, 0, 0}, {0, 0, 1}, {0, 0, 2}, {0, 0, 3}, {0, 1, 1}, {0, 1, 2}, {0, 1, 3},
    {0, 2, 2}, {0, 2, 3}, {0, 3, 3}, {1, 1, 1}, {1, 1, 2}, {1, 1, 3}, {1, 2, 2},
    {1, 2, 3}, {1, 3, 3}, {2, 2, 2}, {2, 2, 3}, {2, 3, 3}, {3, 3, 3},
}};

constexpr std::array<std::array<int, 4>, 4> make_hess_lookup() {
    std::array<std::array<int, 4>, 4> lut{};
    for (int s = 0; s < Jet::kHessSlots; ++s) {
        int i = kHessPairs[s][0], j = kHessPairs[s][1];
        lut[i][j] = s;
        lut[j][i] = s;
    }
    return lut;
}

constexpr auto kHessLookup = make_hess_lookup();

constexpr std::array<std::array<std::array<int, 4>, 4>, 4> make_third_lookup() {
    std::array<std::array<std::array<int, 4>, 4>, 4> lut{};
    for (int s = 0; s < Jet::kThirdSlots; ++s) {
        int idx[3] = {kThirdTriples[s][0], kThirdTriples[s][1], kThirdTriples[s][2]};
        int perm[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
        for (auto& p : perm) lut[idx[p[0]]][idx[p[1]]][idx[p[2]]] = s;
    }
    return lut;
}

constexpr auto kThirdLookup = make_third_lookup();

}  // namespace

int Jet::hess_index(int i, int j) { return kHessLookup[i][j]; }
int Jet::third_index(int i, int j, int k) { return kThirdLookup[i][j][k]; }

const std::array<std::array<int, 2>, Jet::kHessSlots>& Jet::hess_pairs() { return kHessPairs; }
const std::array<std::array<int, 3>, Jet::kThirdSlots>& Jet::third_triples() {
    return kThirdTriples;
}

Jet Jet::constant(double v, int order) {
    Jet j(order);
    j.v_ = v;
    return j;
}

Jet Jet::coordinate(int i, double v, int order) {
    Jet j(order);
    j.v_ = v;
    j.g_[i] = 1.0;
    return j;
}

Jet operator+(const Jet& a, const Jet& b) {
    Jet r(std::min(a.order_, b.order_));
    r.v_ = a.v_ + b.v_;
    for (int i = 0; i < 4; ++i) r.g_[i] = a.g_[i] + b.g_[i];
    for (int s = 0; s < Jet::kHessSlots; ++s) r.h_[s] = a.h_[s] + b.h_[s];
    for (int s = 0; s < Jet::kThirdSlots; ++s) r.t_[s] = a.t_[s] + b.t_[s];
    return r;
}

Jet operator-(const Jet& a, const Jet& b) {
    Jet r(std::min(a.order_, b.order_));
    r.v_ = a.v_ - b.v_;
    for (int i = 0; i < 4; ++i) r.g_[i] = a.g_[i] - b.g_[i];
    for (int s = 0; s < Jet::kHessSlots; ++s) r.h_[s] = a.h_[s] - b.h_[s];
    for (int s = 0; s < Jet::kThirdSlots; ++s) r.t_[s] = a.t_[s] - b.t_[s];
    return r;
}

Jet operator-(const Jet& a) {
    Jet r(a.order_);
    r.v_ = -a.v_;
    for (int i = 0; i < 4; ++i) r.g_[i] = -a.g_[i];
    for (int s = 0; s < Jet::kHessSlots; ++s) r.h_[s] = -a.h_[s];
    for (int s = 0; s < Jet::kThirdSlots; ++s) r.t_[s] = -a.t_[s];
    return r;
}

Jet operator*(const Jet& a, const Jet& b) {
    Jet r(std::min(a.order_, b.order_));
    r.v_ = a.v_ * b.v_;
    for (int i = 0; i < 4; ++i) r.g_[i] = a.g_[i] * b.v_ + a.v_ * b.g_[i];
    for (int s = 0; s < Jet::kHessSlots; ++s) {
        int i = kHessPairs[s][0], j = kHessPairs[s][1];
        r.h_[s] = a.h_[s] * b.v_ + a.g_[i] * b.g_[j] + a.g_[j] * b.g_[i] + a.v_ * b.h_[s];
    }
    for (int s = 0; s < Jet::kThirdSlots; ++s) {
        int i = kThirdTriples[s][0], j = kThirdTriples[s][1], k = kThirdTriples[s][2];
        r.t_[s] = a.t_[s] * b.v_ + a.hess(i, j) * b.g_[k] + a.hess(i, k) * b.g_[j] +
                  a.hess(j, k) * b.g_[i] + a.g_[i] * b.hess(j, k) + a.g_[j] * b.hess(i, k) +
                  a.g_[k] * b.hess(i, j) + a.v_ * b.t_[s];
    }
    return r;
}

Jet operator/(const Jet& a, const Jet& b) {
    double v = b.value();
    if (v == 0.0) throw DomainError("division by zero");
    Jet recip = b.compose(1.0 / v, -1.0 / (v * v), 2.0 / (v * v * v), -6.0 / (v * v * v * v));
    return a * recip;
}

Jet Jet::compose(double u0, double u1, double u2, double u3) const {
    Jet r(order_);
    r.v_ = u0;
    for (int i = 0; i < 4; ++i) r.g_[i] = u1 * g_[i];
    for (int s = 0; s < kHessSlots; ++s) {
        int i = kHessPairs[s][0], j = kHessPairs[s][1];
        r.h_[s] = u2 * g_[i] * g_[j] + u1 * h_[s];
    }
    for (int s = 0; s < kThirdSlots; ++s) {
        int i = kThirdTriples[s][0], j = kThirdTriples[s][1], k = kThirdTriples[s][2];
        r.t_[s] = u3 * g_[i] * g_[j] * g_[k] +
                  u2 * (hess(i, j) * g_[k] + hess(i, k) * g_[j] + hess(j, k) * g_[i]) +
                  u1 * t_[s];
    }
    return r;
}

Jet jet_function(const std::string& name, const Jet& x) {
    double v = x.value();
    if (name == "sin") {
        double s = std::sin(v), c = std::cos(v);
        return x.compose(s, c, -s, -c);
    }
    if (name == "cos") {
        double s = std::sin(v), c = std::cos(v);
        return x.compose(c, -s, -c, s);
    }
    if (name == "tan") {
        double t = std::tan(v);
        double d1 = 1.0 + t * t;
        double d2 = 2.0 * t * d1;
        double d3 = 2.0 * d1 * d1 + 2.0 * t * d2;
        return x.compose(t, d1, d2, d3);
    }
    if (name == "sinh") {
        double sh = std::sinh(v), ch = std::cosh(v);
        return x.compose(sh, ch, sh, ch);
    }
    if (name == "cosh") {
        double sh = std::sinh(v), ch = std::cosh(v);
        return x.compose(ch, sh, ch, sh);
    }
    if (name == "exp") {
        double e = std::exp(v);
        return x.compose(e, e, e, e);
    }
    if (name == "log") {
        if (v <= 0.0) throw DomainError("log requires a positive argument");
        return x.compose(std::log(v), 1.0 / v, -1.0 / (v * v), 2.0 / (v * v * v));
    }
    if (name == "sqrt") {
        if (v <= 0.0) throw DomainError("sqrt of a jet requires a positive argument");
        double s = std::sqrt(v);
        return x.compose(s, 0.5 / s, -0.25 / (s * v), 0.375 / (s * v * v));
    }
    if (name == "neg") return -x;
    throw UnknownIdentifier(name);
}

Jet jet_ipow(const Jet& x, long long n) {
    if (n == 0) return Jet::constant(1.0, x.order());
    bool invert = n < 0;
    unsigned long long m = invert ? static_cast<unsigned long long>(-(n + 1)) + 1ull
                                  : static_cast<unsigned long long>(n);
    Jet acc = x;
    for (unsigned long long i = 1; i < m; ++i) acc = acc * x;
    if (invert) return Jet::constant(1.0, x.order()) / acc;
    return acc;
}

namespace {

bool jet_is_constant(const Jet& j) {
    for (int i = 0; i < 4; ++i)
        if (j.grad(i) != 0.0) return false;
    for (auto& [i, jj] : Jet::hess_pairs())
        if (j.hess(i, jj) != 0.0) return false;
    for (auto& [i, jj, k] : Jet::third_triples())
        if (j.third(i, jj, k) != 0.0) return false;
    return true;
}

Jet jet_pow(const Jet& base, const Jet& expo) {
    if (jet_is_constant(expo)) {
        double p = expo.value();
        if (p == std::rint(p) && std::abs(p) <= 1e15) {
            long long n = static_cast<long long>(p);
            if (base.value() == 0.0 && n < 0) throw DomainError("zero base with negative power");
            return jet_ipow(base, n);
        }
        double v = base.value();
        if (v <= 0.0) throw DomainError("non-integer power requires a positive base");
        double u0 = std::pow(v, p);
        double u1 = p * std::pow(v, p - 1.0);
        double u2 = p * (p - 1.0) * std::pow(v, p - 2.0);
        double u3 = p * (p - 1.0) * (p - 2.0) * std::pow(v, p - 3.0);
        return base.compose(u0, u1, u2, u3);
    }
    if (base.value() <= 0.0) throw DomainError("variable power requires a positive base");
    return jet_function("exp", expo * jet_function("log", base));
}

}  // namespace

Jet eval_jet(const Expr& e, const JetEnv& env) {
    switch (e.kind) {
        case ExprKind::Number: {
            int order = env.empty() ? 3 : env.begin()->second.order();
            return Jet::constant(e.number, order);
        }
        case ExprKind::Ident: {
            auto it = env.find(e.name);
            if (it == env.end()) throw UnknownIdentifier(e.name);
            return it->second;
        }
        case ExprKind::Unary:
            return -eval_jet(*e.lhs, env);
        case ExprKind::Binary: {
            Jet a = eval_jet(*e.lhs, env);
            Jet b = eval_jet(*e.rhs, env);
            switch (e.op) {
                case '+': return a + b;
                case '-': return a - b;
                case '*': return a * b;
                case '/': return a / b;
                case '^': return jet_pow(a, b);
            }
            throw DomainError("unsupported operator");
        }
        case ExprKind::Call:
            return jet_function(e.name, eval_jet(*e.lhs, env));
    }
    throw DomainError("unreachable expression kind");
}

Jet jet_derivative(const Jet& j, int i) {
    if (j.order() < 2) throw BadParameter("jet_derivative requires order >= 2");
    Jet r(j.order() - 1);
    r.value_slot() = j.grad(i);
    for (int k = 0; k < 4; ++k) r.grad_slot(k) = j.hess(i, k);
    for (auto& [k, l] : Jet::hess_pairs()) r.hess_slot(k, l) = j.third(i, k, l);
    return r;
}

}  // namespace kahler4
