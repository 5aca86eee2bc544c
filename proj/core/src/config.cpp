#include "pbdg/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace pbdg {
namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::string& where,
                    const std::set<std::string>& allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            throw ConfigError("unknown key \"" + it.key() + "\" in " + where);
}

template <typename T>
T take(const json& obj, const char* key, T fallback) {
    if (!obj.contains(key)) return fallback;
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad value for \"") + key + "\": " + e.what());
    }
}

std::size_t take_count(const json& obj, const char* key, std::size_t fallback) {
    if (!obj.contains(key)) return fallback;
    const long long v = take<long long>(obj, key, 0);
    if (v < 0) throw ConfigError(std::string("\"") + key + "\" must be nonnegative");
    return static_cast<std::size_t>(v);
}

void validate_spec(const ProblemSpec& s) {
    auto want = [](bool ok, const std::string& msg) {
        if (!ok) throw ConfigError(msg);
    };
    want(s.growth == "none" || s.growth == "linear", "problem.growth: none | linear");
    want(s.nucleation == "none" || s.nucleation == "constant",
         "problem.nucleation: none | constant");
    want(s.breakage == "none" || s.breakage == "uniform_linear",
         "problem.breakage: none | uniform_linear");
    if (s.aggregation != "none") {
        try {
            builtin_beta(s.aggregation);
        } catch (const std::exception&) {
            throw ConfigError("problem.aggregation: unknown kernel \"" + s.aggregation + "\"");
        }
    }
    want(s.v0 > 0.0, "problem.v0 must be positive");
    if (!s.analytic_case.empty()) {
        try {
            make_analytic_case(s.analytic_case, s.v0, s.lambda0, s.lambda_inf);
        } catch (const std::exception& e) {
            throw ConfigError(std::string("problem.analytic_case: ") + e.what());
        }
    }
    want(s.boundary == "none" || s.boundary == "analytic", "problem.boundary: none | analytic");
    want(s.boundary != "analytic" || !s.analytic_case.empty(),
         "problem.boundary = analytic requires problem.analytic_case");

    const std::string& ik = s.initial.kind;
    want(ik == "exponential" || ik == "analytic" || ik == "tabulated",
         "problem.initial: exponential | analytic | tabulated");
    want(ik != "analytic" || !s.analytic_case.empty(),
         "problem.initial = analytic requires problem.analytic_case");
    if (ik == "tabulated") {
        want(!s.initial.table.empty(), "problem.initial_table must not be empty");
        for (std::size_t i = 0; i < s.initial.table.size(); ++i) {
            want(std::isfinite(s.initial.table[i].first) && s.initial.table[i].first >= 0.0 &&
                     std::isfinite(s.initial.table[i].second),
                 "problem.initial_table entries must be finite with v >= 0");
            want(i == 0 || s.initial.table[i].first > s.initial.table[i - 1].first,
                 "problem.initial_table v values must be ascending");
        }
    }

    want(s.mesh.type == "uniform" || s.mesh.type == "power" || s.mesh.type == "log",
         "mesh.type: uniform | power | log");
    want(s.mesh.v_max > 0.0, "mesh.v_max must be positive");
    want(s.mesh.cells >= 1, "mesh.cells must be at least 1");
    if (s.mesh.type == "power") want(s.mesh.exponent >= 1.0, "mesh.exponent must be >= 1");
    if (s.mesh.type == "log")
        want(s.mesh.v_lo > 0.0 && s.mesh.v_lo < s.mesh.v_max,
             "mesh.v_lo must lie in (0, v_max)");

    want(s.degree >= 1 && s.degree <= kMaxDegree, "dg.degree out of range");
    const RuleSpec def = default_rules(s.degree);
    want(s.rules.n_lobatto == 0 || (s.rules.n_lobatto >= def.n_lobatto && s.rules.n_lobatto <= 10),
         "dg.n_lobatto must be 0 (default) or in [degree+2, 10]");
    want(s.rules.tri_degree == 0 || (s.rules.tri_degree >= def.tri_degree && s.rules.tri_degree <= 10),
         "dg.tri_degree must be 0 (default) or in [2*degree+2, 10]");

    want(s.time.t_end > 0.0, "time.t_end must be positive");
    want(s.time.dt >= 0.0, "time.dt must be nonnegative");
    want(s.time.dt > 0.0 || s.time.dv_scale > 0.0,
         "time.dv_scale must be positive when time.dt = 0");
    want(s.time.rule == "fixed" || s.time.rule == "theorem", "time.rule: fixed | theorem");
    want(s.time.max_halvings >= 0, "time.max_halvings must be nonnegative");
    want(s.time.regrow_after >= 1, "time.regrow_after must be at least 1");

    want(s.limiter.s >= 0 && s.limiter.s <= s.degree, "limiter.s must lie in [0, degree]");
    want(s.limiter.n_lobatto == 0 ||
             (s.limiter.n_lobatto >= s.degree + 2 && s.limiter.n_lobatto <= 10),
         "limiter.n_lobatto must be 0 (default) or in [degree+2, 10]");
    want(s.output.samples_per_cell >= 1, "output.samples_per_cell must be at least 1");
}

}  // namespace

ProblemSpec parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("JSON parse error: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config root must be a JSON object");
    reject_unknown(j, "config", {"problem", "mesh", "dg", "time", "limiter", "output"});

    ProblemSpec s;
    const json empty = json::object();
    auto section = [&](const char* name) -> const json& {
        if (!j.contains(name)) return empty;
        if (!j.at(name).is_object())
            throw ConfigError(std::string("section \"") + name + "\" must be an object");
        return j.at(name);
    };

    {
        const json& p = section("problem");
        reject_unknown(p, "problem",
                       {"growth", "growth_scale", "nucleation", "nucleation_rate",
                        "aggregation", "aggregation_scale", "breakage", "breakage_scale",
                        "analytic_case", "v0", "lambda0", "lambda_inf", "boundary", "initial",
                        "initial_table"});
        s.growth = take<std::string>(p, "growth", s.growth);
        s.growth_scale = take<double>(p, "growth_scale", s.growth_scale);
        s.nucleation = take<std::string>(p, "nucleation", s.nucleation);
        s.nucleation_rate = take<double>(p, "nucleation_rate", s.nucleation_rate);
        s.aggregation = take<std::string>(p, "aggregation", s.aggregation);
        s.aggregation_scale = take<double>(p, "aggregation_scale", s.aggregation_scale);
        s.breakage = take<std::string>(p, "breakage", s.breakage);
        s.breakage_scale = take<double>(p, "breakage_scale", s.breakage_scale);
        s.analytic_case = take<std::string>(p, "analytic_case", s.analytic_case);
        s.v0 = take<double>(p, "v0", s.v0);
        s.lambda0 = take<double>(p, "lambda0", s.lambda0);
        s.lambda_inf = take<double>(p, "lambda_inf", s.lambda_inf);
        s.boundary = take<std::string>(p, "boundary", s.boundary);
        s.initial.kind = take<std::string>(p, "initial", s.initial.kind);
        if (p.contains("initial_table")) {
            try {
                s.initial.table =
                    p.at("initial_table").get<std::vector<std::pair<double, double>>>();
            } catch (const json::exception& e) {
                throw ConfigError(std::string("bad value for \"initial_table\": ") + e.what());
            }
        }
    }
    {
        const json& m = section("mesh");
        reject_unknown(m, "mesh", {"type", "v_max", "cells", "exponent", "v_lo"});
        s.mesh.type = take<std::string>(m, "type", s.mesh.type);
        s.mesh.v_max = take<double>(m, "v_max", s.mesh.v_max);
        s.mesh.cells = take_count(m, "cells", s.mesh.cells);
        s.mesh.exponent = take<double>(m, "exponent", s.mesh.exponent);
        s.mesh.v_lo = take<double>(m, "v_lo", s.mesh.v_lo);
    }
    {
        const json& d = section("dg");
        reject_unknown(d, "dg", {"degree", "n_lobatto", "tri_degree", "merge_elements"});
        s.degree = take<int>(d, "degree", s.degree);
        s.rules.n_lobatto = take<int>(d, "n_lobatto", s.rules.n_lobatto);
        s.rules.tri_degree = take<int>(d, "tri_degree", s.rules.tri_degree);
        s.merge_elements = take<bool>(d, "merge_elements", s.merge_elements);
    }
    {
        const json& t = section("time");
        reject_unknown(t, "time",
                       {"t_end", "dt", "dv_scale", "rule", "max_halvings", "regrow_after"});
        s.time.t_end = take<double>(t, "t_end", s.time.t_end);
        s.time.dt = take<double>(t, "dt", s.time.dt);
        s.time.dv_scale = take<double>(t, "dv_scale", s.time.dv_scale);
        s.time.rule = take<std::string>(t, "rule", s.time.rule);
        s.time.max_halvings = take<int>(t, "max_halvings", s.time.max_halvings);
        s.time.regrow_after = take<int>(t, "regrow_after", s.time.regrow_after);
    }
    {
        const json& l = section("limiter");
        reject_unknown(l, "limiter", {"enabled", "s", "dense_sampling", "n_lobatto"});
        s.limiter.enabled = take<bool>(l, "enabled", s.limiter.enabled);
        s.limiter.s = take<int>(l, "s", s.limiter.s);
        s.limiter.dense_sampling = take<bool>(l, "dense_sampling", s.limiter.dense_sampling);
        s.limiter.n_lobatto = take<int>(l, "n_lobatto", s.limiter.n_lobatto);
    }
    {
        const json& o = section("output");
        reject_unknown(o, "output", {"dir", "samples_per_cell"});
        s.output.dir = take<std::string>(o, "dir", s.output.dir);
        s.output.samples_per_cell = take<int>(o, "samples_per_cell", s.output.samples_per_cell);
    }

    validate_spec(s);
    return s;
}

ProblemSpec load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const ProblemSpec& s) {
    json j;
    j["problem"] = {{"growth", s.growth},
                    {"growth_scale", s.growth_scale},
                    {"nucleation", s.nucleation},
                    {"nucleation_rate", s.nucleation_rate},
                    {"aggregation", s.aggregation},
                    {"aggregation_scale", s.aggregation_scale},
                    {"breakage", s.breakage},
                    {"breakage_scale", s.breakage_scale},
                    {"analytic_case", s.analytic_case},
                    {"v0", s.v0},
                    {"lambda0", s.lambda0},
                    {"lambda_inf", s.lambda_inf},
                    {"boundary", s.boundary},
                    {"initial", s.initial.kind}};
    if (!s.initial.table.empty()) j["problem"]["initial_table"] = s.initial.table;
    j["mesh"] = {{"type", s.mesh.type},
                 {"v_max", s.mesh.v_max},
                 {"cells", s.mesh.cells},
                 {"exponent", s.mesh.exponent},
                 {"v_lo", s.mesh.v_lo}};
    j["dg"] = {{"degree", s.degree},
               {"n_lobatto", s.rules.n_lobatto},
               {"tri_degree", s.rules.tri_degree},
               {"merge_elements", s.merge_elements}};
    j["time"] = {{"t_end", s.time.t_end},
                 {"dt", s.time.dt},
                 {"dv_scale", s.time.dv_scale},
                 {"rule", s.time.rule},
                 {"max_halvings", s.time.max_halvings},
                 {"regrow_after", s.time.regrow_after}};
    j["limiter"] = {{"enabled", s.limiter.enabled},
                    {"s", s.limiter.s},
                    {"dense_sampling", s.limiter.dense_sampling},
                    {"n_lobatto", s.limiter.n_lobatto}};
    j["output"] = {{"dir", s.output.dir}, {"samples_per_cell", s.output.samples_per_cell}};
    return j.dump(2);
}

std::vector<std::string> benchmark_names() {
    return {"ex1-I",  "ex1-II", "ex1-III", "ex2",           "ex3-I",         "ex3-II",
            "ex3-III", "ex4-I",  "ex4-II",  "ex4-III",       "ex5-I",         "ex5-II",
            "ex5-III", "ex5-I-nolim", "ex5-II-nolim", "ex5-III-nolim"};
}

ProblemSpec benchmark_spec(const std::string& name) {
    ProblemSpec s;  // defaults already match the Example 1-3 setup
    s.output.dir = name;

    if (name == "ex1-I") {
        s.aggregation = "constant";
        s.analytic_case = "const-agg";
    } else if (name == "ex1-II") {
        s.aggregation = "additive";
        s.analytic_case = "additive-agg";
    } else if (name == "ex1-III") {
        s.breakage = "uniform_linear";
        s.analytic_case = "linear-breakage";
    } else if (name == "ex2") {
        s.aggregation = "constant";
        s.breakage = "uniform_linear";
        s.analytic_case = "agg-breakage";
        s.lambda0 = 3.0;
        s.lambda_inf = 4.0;
        s.initial.kind = "analytic";
    } else if (name == "ex3-I" || name == "ex3-II" || name == "ex3-III") {
        s.growth = "linear";
        s.aggregation = name == "ex3-III" ? "additive" : "constant";
        s.analytic_case = name == "ex3-I"    ? "growth-agg-1"
                          : name == "ex3-II" ? "growth-agg-2"
                                             : "growth-agg-3";
        s.boundary = "analytic";
        s.initial.kind = "analytic";
        // Domain sized per case so the solution tail clears the right boundary;
        // exponential growth of the mean size makes [0, 10] too small by t = 1.
        s.mesh.v_max = name == "ex3-I" ? 14.0 : name == "ex3-II" ? 20.0 : 25.0;
    } else if (name == "ex4-I" || name == "ex4-II" || name == "ex4-III") {
        s.aggregation = name == "ex4-I"    ? "free_molecule"
                        : name == "ex4-II" ? "brownian"
                                           : "gravitational";
        s.v0 = 0.15;
    } else if (name.rfind("ex5-", 0) == 0) {
        std::string variant = name.substr(4);
        const bool nolim = variant.size() > 6 && variant.substr(variant.size() - 6) == "-nolim";
        if (nolim) variant = variant.substr(0, variant.size() - 6);
        if (variant != "I" && variant != "II" && variant != "III")
            throw ConfigError("unknown benchmark name: " + name);
        s.aggregation = "constant";
        s.breakage = "uniform_linear";
        s.analytic_case = "agg-breakage";
        s.lambda0 = 1.0;
        s.lambda_inf = variant == "I" ? 0.5 : variant == "II" ? 1.0 : 2.0;
        s.initial.kind = "analytic";
        s.mesh.type = "log";
        s.mesh.v_max = 1e3;
        s.mesh.v_lo = 1e-3;
        s.mesh.cells = 11;
        s.degree = 4;
        s.time.t_end = 10.0;
        s.time.dt = 0.02;
        if (nolim) {
            s.limiter.enabled = false;
            s.time.max_halvings = 0;
        }
    } else {
        throw ConfigError("unknown benchmark name: " + name);
    }

    validate_spec(s);
    return s;
}

KernelSet make_kernels(const ProblemSpec& s) {
    KernelSet k;
    if (s.growth == "linear") {
        const double g = s.growth_scale;
        k.growth = [g](double v) { return g * v; };
        k.has_growth = true;
    }
    if (s.nucleation == "constant" && s.nucleation_rate != 0.0) {
        const double r = s.nucleation_rate;
        k.nucleation = [r](double) { return r; };
        k.has_nucleation = true;
    }
    if (s.aggregation != "none") {
        k.beta = builtin_beta(s.aggregation, s.aggregation_scale);
        k.has_aggregation = true;
    }
    if (s.breakage != "none") {
        auto [gamma, daughter] = builtin_breakage(s.breakage, s.breakage_scale);
        k.gamma = std::move(gamma);
        k.daughter = std::move(daughter);
        k.has_breakage = true;
    }
    if (s.boundary == "analytic") {
        const auto ref = reference_for(s);
        if (!ref || !ref->boundary)
            throw ConfigError("boundary = analytic requires a case with a boundary trace");
        k.inflow = ref->boundary;
    }
    return k;
}

std::optional<AnalyticCase> reference_for(const ProblemSpec& s) {
    if (s.analytic_case.empty()) return std::nullopt;
    try {
        return make_analytic_case(s.analytic_case, s.v0, s.lambda0, s.lambda_inf);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("analytic case: ") + e.what());
    }
}

Mesh make_mesh_from_spec(const MeshSpec& m) {
    try {
        if (m.type == "uniform") return build_power_mesh(m.v_max, m.cells, 1.0);
        if (m.type == "power") return build_power_mesh(m.v_max, m.cells, m.exponent);
        if (m.type == "log") return build_log_mesh(m.v_lo, m.v_max, m.cells);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("mesh: ") + e.what());
    }
    throw ConfigError("mesh.type: uniform | power | log");
}

}  // namespace pbdg
