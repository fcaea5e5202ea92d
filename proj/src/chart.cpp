#include "kahler4/chart.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "kahler4/errors.hpp"

namespace kahler4 {

namespace {

using nlohmann::ordered_json;

template <size_t N>
std::array<ExprPtr, N> parse_expr_array(const ordered_json& arr, const std::string& field) {
    if (!arr.is_array() || arr.size() != N)
        throw BadParameter("field '" + field + "' must be an array of " + std::to_string(N) +
                           " expression strings");
    std::array<ExprPtr, N> out;
    for (size_t i = 0; i < N; ++i) {
        if (!arr[i].is_string())
            throw BadParameter("field '" + field + "' entries must be strings");
        out[i] = parse(arr[i].get<std::string>());
    }
    return out;
}

}  // namespace

ChartSpec load_chart_json(const std::string& json_text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(json_text);
    } catch (const std::exception& ex) {
        throw BadParameter(std::string("chart JSON malformed: ") + ex.what());
    }
    if (!doc.is_object()) throw BadParameter("chart JSON must be an object");

    ChartSpec spec;
    spec.name = doc.value("name", std::string("chart"));

    if (doc.contains("coords")) {
        const auto& c = doc["coords"];
        if (!c.is_array() || c.size() != 4)
            throw BadParameter("field 'coords' must list 4 coordinate names");
        for (int i = 0; i < 4; ++i) spec.coords[i] = c[i].get<std::string>();
    } else {
        spec.coords = {"x1", "x2", "x3", "x4"};
    }

    if (doc.contains("params")) {
        if (!doc["params"].is_object()) throw BadParameter("field 'params' must be an object");
        for (auto& [k, v] : doc["params"].items()) {
            if (!v.is_number()) throw BadParameter("parameter '" + k + "' must be a number");
            spec.params[k] = v.get<double>();
        }
    }

    if (doc.contains("domain")) {
        if (!doc["domain"].is_array()) throw BadParameter("field 'domain' must be an array");
        for (const auto& d : doc["domain"]) {
            if (!d.is_string()) throw BadParameter("domain constraints must be strings");
            spec.domain.push_back(parse(d.get<std::string>()));
        }
    }

    if (!doc.contains("metric")) throw BadParameter("chart is missing the 'metric' field");
    spec.metric = parse_expr_array<10>(doc["metric"], "metric");

    if (doc.contains("omega")) spec.omega = parse_expr_array<6>(doc["omega"], "omega");
    if (doc.contains("j")) spec.j = parse_expr_array<16>(doc["j"], "j");
    if (doc.contains("jbar")) spec.jbar = parse_expr_array<16>(doc["jbar"], "jbar");
    if (doc.contains("theta")) spec.theta = parse_expr_array<4>(doc["theta"], "theta");
    if (doc.contains("dist")) spec.dist = parse_expr_array<4>(doc["dist"], "dist");

    if (doc.contains("box")) {
        const auto& b = doc["box"];
        if (!b.is_array() || b.size() != 4)
            throw BadParameter("field 'box' must list 4 [lo, hi] pairs");
        for (int i = 0; i < 4; ++i) {
            if (!b[i].is_array() || b[i].size() != 2)
                throw BadParameter("box entries must be [lo, hi] pairs");
            spec.box[i][0] = b[i][0].get<double>();
            spec.box[i][1] = b[i][1].get<double>();
            if (!(spec.box[i][0] <= spec.box[i][1]))
                throw BadParameter("box entries must satisfy lo <= hi");
        }
    } else {
        for (int i = 0; i < 4; ++i) spec.box[i] = {-1.0, 1.0};
    }

    if (doc.contains("anchor")) {
        const auto& a = doc["anchor"];
        if (!a.is_array() || a.size() != 4)
            throw BadParameter("field 'anchor' must list 4 coordinates");
        for (int i = 0; i < 4; ++i) spec.anchor[i] = a[i].get<double>();
    } else {
        for (int i = 0; i < 4; ++i) spec.anchor[i] = 0.5 * (spec.box[i][0] + spec.box[i][1]);
    }

    if (doc.contains("expect")) {
        if (!doc["expect"].is_array()) throw BadParameter("field 'expect' must be an array");
        for (const auto& e : doc["expect"]) {
            Expectation exp;
            exp.check = e.at("check").get<std::string>();
            std::string verdict = e.value("verdict", std::string("pass"));
            if (verdict != "pass" && verdict != "fail")
                throw BadParameter("expect verdict must be 'pass' or 'fail'");
            exp.expect_pass = verdict == "pass";
            if (!e.contains("tol")) throw BadParameter("expect entries must carry 'tol'");
            exp.tol = e.at("tol").get<double>();
            exp.note = e.value("note", std::string());
            spec.expect.push_back(std::move(exp));
        }
    }
    return spec;
}

ChartSpec load_chart_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw BadParameter("cannot open chart file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_chart_json(buf.str());
}

JetEnv jet_env_at(const ChartSpec& spec, const Vec4& point, int order) {
    JetEnv env;
    for (int i = 0; i < 4; ++i) env[spec.coords[i]] = Jet::coordinate(i, point[i], order);
    for (const auto& [k, v] : spec.params) env[k] = Jet::constant(v, order);
    return env;
}

std::map<std::string, double> value_env_at(const ChartSpec& spec, const Vec4& point) {
    std::map<std::string, double> env;
    for (int i = 0; i < 4; ++i) env[spec.coords[i]] = point[i];
    for (const auto& [k, v] : spec.params) env[k] = v;
    return env;
}

bool point_in_domain(const ChartSpec& spec, const Vec4& point) {
    auto env = value_env_at(spec, point);
    for (const auto& c : spec.domain) {
        try {
            if (!(eval_value(*c, env) > 0.0)) return false;
        } catch (const std::exception&) {
            return false;
        }
    }
    return true;
}

void validate_chart(const ChartSpec& spec) {
    if (!point_in_domain(spec, spec.anchor))
        throw BadParameter("anchor violates a domain constraint");
    auto env = value_env_at(spec, spec.anchor);
    Mat4 g{};
    static const int kRow[10] = {0, 0, 0, 0, 1, 1, 1, 2, 2, 3};
    static const int kCol[10] = {0, 1, 2, 3, 1, 2, 3, 2, 3, 3};
    for (int s = 0; s < 10; ++s) {
        double v = eval_value(*spec.metric[s], env);
        g[kRow[s]][kCol[s]] = v;
        g[kCol[s]][kRow[s]] = v;
    }
    if (!positive_definite(g)) throw DegenerateMetric("metric not positive definite at anchor");
    auto eval_all = [&](const auto& opt) {
        if (opt)
            for (const auto& e : *opt) (void)eval_value(*e, env);
    };
    eval_all(spec.omega);
    eval_all(spec.j);
    eval_all(spec.jbar);
    eval_all(spec.theta);
    eval_all(spec.dist);
    if (!spec.omega && !spec.j)
        throw BadParameter("chart needs 'omega' or 'j' to define the complex structure");
}

}  // namespace kahler4
