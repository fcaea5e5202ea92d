#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kahler4/expr.hpp"
#include "kahler4/jet.hpp"
#include "kahler4/linalg.hpp"

namespace kahler4 {

// One expected-verdict entry of a fixture: for verdict "pass" every sampled
// point must have residual < tol; for verdict "fail" every sampled point must
// have residual > tol (the check misses decisively, not marginally).
struct Expectation {
    std::string check;
    bool expect_pass = true;
    double tol = 0.0;
    std::string note;
};

// A coordinate chart with metric (and optional structure fields) given as
// expression strings over the four coordinates and named parameters.
struct ChartSpec {
    std::string name;
    std::array<std::string, 4> coords{};
    std::map<std::string, double> params;

    // Constraints expr > 0 that sampled points must satisfy.
    std::vector<ExprPtr> domain;

    // Upper triangle, row major: g11 g12 g13 g14 g22 g23 g24 g33 g34 g44.
    std::array<ExprPtr, 10> metric{};

    // Fundamental 2-form components (12, 13, 14, 23, 24, 34); J is then
    // recovered as g^{-1} Omega.
    std::optional<std::array<ExprPtr, 6>> omega;
    // Explicit complex structure, row major 4x4 (column i = J d/dx_i).
    std::optional<std::array<ExprPtr, 16>> j;
    // Explicit opposite structure, same layout.
    std::optional<std::array<ExprPtr, 16>> jbar;
    // Analytic Lee form of the opposite structure, when known.
    std::optional<std::array<ExprPtr, 4>> theta;
    // Vector field spanning the distinguished distribution D (with J of it).
    std::optional<std::array<ExprPtr, 4>> dist;

    std::array<std::array<double, 2>, 4> box{};
    Vec4 anchor{};

    std::vector<Expectation> expect;
};

// Parse a chart (or fixture resource) from JSON text. Unknown top-level keys
// are ignored. Throws BadParameter on schema violations and SyntaxError /
// UnknownIdentifier on bad expressions.
ChartSpec load_chart_json(const std::string& json_text);
ChartSpec load_chart_file(const std::string& path);

// Environment binding coordinates (as jets of the given order) and parameters
// (as constants) at a point.
JetEnv jet_env_at(const ChartSpec& spec, const Vec4& point, int order);
std::map<std::string, double> value_env_at(const ChartSpec& spec, const Vec4& point);

// True if every domain constraint evaluates > 0 at the point.
bool point_in_domain(const ChartSpec& spec, const Vec4& point);

// Structural validation: expressions evaluate at the anchor, the metric is
// positive definite there, optional fields have consistent shapes.
void validate_chart(const ChartSpec& spec);

}  // namespace kahler4
