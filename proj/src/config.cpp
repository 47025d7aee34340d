#include "strobe/config.hpp"

#include "strobe/errors.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace strobe {

using nlohmann::json;

LimitCycleMethod parse_method(const std::string& name) {
    if (name == "iterate") return LimitCycleMethod::Iterate;
    if (name == "spectral") return LimitCycleMethod::Spectral;
    throw ConfigError("unknown method \"" + name + "\" (expected iterate or spectral)");
}

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    if (!obj.is_object()) throw ConfigError(where + ": expected an object");
    for (const auto& [key, value] : obj.items())
        if (!allowed.count(key)) throw ConfigError(where + ": unknown key \"" + key + "\"");
}

double finite_number(const json& v, const std::string& where) {
    if (!v.is_number()) throw ConfigError(where + ": expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError(where + ": must be finite");
    return x;
}

std::string string_value(const json& v, const std::string& where) {
    if (!v.is_string()) throw ConfigError(where + ": expected a string");
    return v.get<std::string>();
}

SweepAxis parse_axis(const json& obj, const std::string& where) {
    if (!obj.is_object() || !obj.contains("name")) throw ConfigError(where + ": missing \"name\"");
    const std::string name = string_value(obj.at("name"), where + ".name");
    if (obj.contains("values")) {
        reject_unknown(obj, {"name", "values"}, where);
        const json& vals = obj.at("values");
        if (!vals.is_array() || vals.empty()) throw ConfigError(where + ".values: expected a non-empty array");
        SweepAxis a{name, {}};
        for (std::size_t k = 0; k < vals.size(); ++k)
            a.values.push_back(finite_number(vals[k], where + ".values[" + std::to_string(k) + "]"));
        return a;
    }
    reject_unknown(obj, {"name", "min", "max", "points"}, where);
    for (const char* key : {"min", "max", "points"})
        if (!obj.contains(key)) throw ConfigError(where + ": missing \"" + key + "\"");
    const json& pts = obj.at("points");
    if (!pts.is_number_integer() || pts.get<long long>() < 1)
        throw ConfigError(where + ".points: expected a positive integer");
    return SweepAxis::range(name, finite_number(obj.at("min"), where + ".min"),
                            finite_number(obj.at("max"), where + ".max"), pts.get<std::size_t>());
}

SweepConfig parse_sweep(const json& obj) {
    reject_unknown(obj, {"axes", "outputs", "method"}, "sweep");
    SweepConfig s;
    if (!obj.contains("axes") || !obj.at("axes").is_array()) throw ConfigError("sweep: missing array \"axes\"");
    const json& axes = obj.at("axes");
    for (std::size_t k = 0; k < axes.size(); ++k) s.axes.push_back(parse_axis(axes[k], "sweep.axes[" + std::to_string(k) + "]"));
    if (obj.contains("outputs")) {
        const json& outs = obj.at("outputs");
        if (!outs.is_array() || outs.empty()) throw ConfigError("sweep.outputs: expected a non-empty array");
        s.outputs.clear();
        for (const auto& o : outs) s.outputs.push_back(string_value(o, "sweep.outputs"));
    }
    if (obj.contains("method")) s.method = parse_method(string_value(obj.at("method"), "sweep.method"));
    return s;
}

analytic::Overrides parse_overrides(const json& obj) {
    reject_unknown(obj, {"lambda", "p", "eta", "xi"}, "analytic");
    analytic::Overrides o;
    auto get = [&](const char* key, std::optional<double>& out) {
        if (obj.contains(key)) out = finite_number(obj.at(key), std::string("analytic.") + key);
    };
    get("lambda", o.lambda);
    get("p", o.p);
    get("eta", o.eta);
    get("xi", o.xi);
    return o;
}

}  // namespace

RunConfig parse_config(const json& doc) {
    if (!doc.is_object()) throw ConfigError("config: expected an object");
    json engine = doc;
    RunConfig cfg;
    if (doc.contains("initial_state")) {
        const std::string s = string_value(doc.at("initial_state"), "initial_state");
        if (s == "ground")
            cfg.initial = InitialState::Ground;
        else if (s == "thermal_cold")
            cfg.initial = InitialState::ThermalCold;
        else
            throw ConfigError("initial_state: expected \"ground\" or \"thermal_cold\"");
        engine.erase("initial_state");
    }
    if (doc.contains("analytic")) {
        cfg.analytic = parse_overrides(doc.at("analytic"));
        engine.erase("analytic");
    }
    if (doc.contains("sweep")) {
        cfg.sweep = parse_sweep(doc.at("sweep"));
        engine.erase("sweep");
    }
    cfg.model = chain_model_from_json(engine);
    if (cfg.sweep) {
        SweepPlan plan{cfg.model, cfg.sweep->axes, {}, cfg.initial, cfg.sweep->outputs};
        plan.validate();
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(path + ": " + e.what());
    }
    try {
        return parse_config(doc);
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

}  // namespace strobe
