#include "strobe/chain_model.hpp"

#include "strobe/errors.hpp"
#include "strobe/qubit.hpp"

#include <cmath>
#include <limits>
#include <set>

namespace strobe {

using nlohmann::json;

std::string to_string(CouplingKind kind) {
    switch (kind) {
        case CouplingKind::PartialSwap: return "partial_swap";
        case CouplingKind::XX: return "xx";
        case CouplingKind::XXZ: return "xxz";
        case CouplingKind::XYZ: return "xyz";
    }
    return "unknown";
}

std::vector<double> linear_frequencies(double first, double last, std::size_t n) {
    if (n < 2) throw SpecError("linear_frequencies: need at least two sites");
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = first + (last - first) * static_cast<double>(i) / (n - 1);
    out.back() = last;
    return out;
}

EngineSpec ChainModel::to_spec() const {
    const std::size_t n = omegas.size();
    if (n < 2) throw SpecError("engine needs at least two sites");
    std::vector<SiteSpec> sites;
    sites.reserve(n);
    for (std::size_t i = 0; i < n; ++i) sites.push_back(SiteSpec::qubit(i, omegas[i]));

    auto bath = [](const std::string& ancilla, const std::string& site, double omega, const BathModel& m) {
        return BathSpec{qubit::hamiltonian(ancilla, omega), m.T, build_partial_swap(m.g, {ancilla, 2}, {site, 2}),
                        m.g};
    };

    CouplingSpec c;
    switch (coupling.kind) {
        case CouplingKind::PartialSwap: c = PartialSwapCoupling{coupling.g}; break;
        case CouplingKind::XX: c = XyzCoupling{coupling.Jx, coupling.Jx, 0.0}; break;
        case CouplingKind::XXZ: c = XyzCoupling{coupling.Jx, coupling.Jx, coupling.Jz}; break;
        case CouplingKind::XYZ: c = XyzCoupling{coupling.Jx, coupling.Jy, coupling.Jz}; break;
    }

    EngineSpec spec{std::move(sites),
                    bath(kColdLabel, site_label(0), cold_ancilla_omega(), cold),
                    bath(kHotLabel, site_label(n - 1), hot_ancilla_omega(), hot),
                    std::move(c),
                    tau_q,
                    tau_w};
    spec.validate();
    return spec;
}

// ------------------------------------------------------------------ parsing

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    if (!obj.is_object()) throw ConfigError(where + ": expected an object");
    for (const auto& [key, value] : obj.items())
        if (!allowed.count(key)) throw ConfigError(where + ": unknown key \"" + key + "\"");
}

double number(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key)) throw ConfigError(where + ": missing \"" + key + "\"");
    const json& v = obj.at(key);
    if (!v.is_number()) throw ConfigError(where + "." + key + ": expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError(where + "." + key + ": must be finite");
    return x;
}

std::optional<double> optional_number(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key)) return std::nullopt;
    return number(obj, key, where);
}

BathModel parse_bath(const json& obj, const std::string& where) {
    reject_unknown(obj, {"T", "g", "omega"}, where);
    if (!obj.contains("T")) throw ConfigError(where + ": missing \"T\"");
    BathModel b;
    b.T = parse_temperature(obj.at("T"), where + ".T");
    b.g = number(obj, "g", where);
    b.omega = optional_number(obj, "omega", where);
    return b;
}

CouplingModel parse_coupling(const json& obj) {
    const std::string where = "coupling";
    if (!obj.is_object()) throw ConfigError(where + ": expected an object");
    if (!obj.contains("type") || !obj.at("type").is_string()) throw ConfigError(where + ": missing string \"type\"");
    const std::string type = obj.at("type").get<std::string>();
    CouplingModel c;
    if (type == "partial_swap") {
        reject_unknown(obj, {"type", "g"}, where);
        c.kind = CouplingKind::PartialSwap;
        if (!obj.contains("g")) throw ConfigError(where + ": missing \"g\"");
        const json& g = obj.at("g");
        if (g.is_number()) {
            c.g = {number(obj, "g", where)};
        } else if (g.is_array() && !g.empty()) {
            for (const auto& x : g) {
                if (!x.is_number() || !std::isfinite(x.get<double>()))
                    throw ConfigError(where + ".g: expected finite numbers");
                c.g.push_back(x.get<double>());
            }
        } else {
            throw ConfigError(where + ".g: expected a number or a non-empty array");
        }
    } else if (type == "xx") {
        reject_unknown(obj, {"type", "Jx", "Jy", "Jz"}, where);
        c.kind = CouplingKind::XX;
        c.Jx = number(obj, "Jx", where);
        c.Jy = optional_number(obj, "Jy", where).value_or(c.Jx);
        c.Jz = optional_number(obj, "Jz", where).value_or(0.0);
        if (c.Jy != c.Jx) throw ConfigError(where + ": xx requires Jy == Jx (use type xyz)");
        if (c.Jz != 0.0) throw ConfigError(where + ": xx requires Jz == 0 (use type xxz)");
    } else if (type == "xxz") {
        reject_unknown(obj, {"type", "Jx", "Jy", "Jz"}, where);
        c.kind = CouplingKind::XXZ;
        c.Jx = number(obj, "Jx", where);
        c.Jy = optional_number(obj, "Jy", where).value_or(c.Jx);
        c.Jz = number(obj, "Jz", where);
        if (c.Jy != c.Jx) throw ConfigError(where + ": xxz requires Jy == Jx (use type xyz)");
    } else if (type == "xyz") {
        reject_unknown(obj, {"type", "Jx", "Jy", "Jz"}, where);
        c.kind = CouplingKind::XYZ;
        c.Jx = number(obj, "Jx", where);
        c.Jy = number(obj, "Jy", where);
        c.Jz = number(obj, "Jz", where);
    } else {
        throw ConfigError(where + ": unknown type \"" + type + "\"");
    }
    return c;
}

json temperature_json(double T) {
    if (std::isinf(T)) return "inf";
    return T;
}

}  // namespace

double parse_temperature(const json& value, const std::string& where) {
    if (value.is_string()) {
        if (value.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
        throw ConfigError(where + ": expected a number or \"inf\"");
    }
    if (!value.is_number()) throw ConfigError(where + ": expected a number or \"inf\"");
    const double T = value.get<double>();
    if (!(T > 0.0)) throw ConfigError(where + ": temperature must be positive");
    return T;
}

ChainModel chain_model_from_json(const json& doc) {
    reject_unknown(doc, {"sites", "coupling", "baths", "tau_q", "tau_w"}, "engine");
    ChainModel m;

    if (!doc.contains("sites") || !doc.at("sites").is_array()) throw ConfigError("engine: missing array \"sites\"");
    std::size_t i = 0;
    for (const auto& site : doc.at("sites")) {
        const std::string where = "sites[" + std::to_string(i++) + "]";
        reject_unknown(site, {"omega"}, where);
        m.omegas.push_back(number(site, "omega", where));
    }
    if (m.omegas.size() < 2) throw ConfigError("sites: need at least two sites");

    if (!doc.contains("coupling")) throw ConfigError("engine: missing \"coupling\"");
    m.coupling = parse_coupling(doc.at("coupling"));
    if (m.coupling.kind == CouplingKind::PartialSwap && m.coupling.g.size() != 1 &&
        m.coupling.g.size() != m.omegas.size() - 1)
        throw ConfigError("coupling.g: expected one value per bond (" + std::to_string(m.omegas.size() - 1) + ")");

    if (!doc.contains("baths")) throw ConfigError("engine: missing \"baths\"");
    const json& baths = doc.at("baths");
    reject_unknown(baths, {"cold", "hot"}, "baths");
    if (!baths.contains("cold") || !baths.contains("hot")) throw ConfigError("baths: need \"cold\" and \"hot\"");
    m.cold = parse_bath(baths.at("cold"), "baths.cold");
    m.hot = parse_bath(baths.at("hot"), "baths.hot");

    m.tau_q = number(doc, "tau_q", "engine");
    m.tau_w = number(doc, "tau_w", "engine");

    try {
        m.to_spec();
    } catch (const SpecError& e) {
        throw ConfigError(std::string("engine: ") + e.what());
    }
    return m;
}

json to_json(const ChainModel& m) {
    json doc;
    json sites = json::array();
    for (double w : m.omegas) sites.push_back({{"omega", w}});
    doc["sites"] = sites;

    json c;
    c["type"] = to_string(m.coupling.kind);
    switch (m.coupling.kind) {
        case CouplingKind::PartialSwap:
            if (m.coupling.g.size() == 1)
                c["g"] = m.coupling.g[0];
            else
                c["g"] = m.coupling.g;
            break;
        case CouplingKind::XX: c["Jx"] = m.coupling.Jx; break;
        case CouplingKind::XXZ:
            c["Jx"] = m.coupling.Jx;
            c["Jz"] = m.coupling.Jz;
            break;
        case CouplingKind::XYZ:
            c["Jx"] = m.coupling.Jx;
            c["Jy"] = m.coupling.Jy;
            c["Jz"] = m.coupling.Jz;
            break;
    }
    doc["coupling"] = c;

    auto bath = [](const BathModel& b) {
        json j{{"T", temperature_json(b.T)}, {"g", b.g}};
        if (b.omega) j["omega"] = *b.omega;
        return j;
    };
    doc["baths"] = {{"cold", bath(m.cold)}, {"hot", bath(m.hot)}};
    doc["tau_q"] = m.tau_q;
    doc["tau_w"] = m.tau_w;
    return doc;
}

}  // namespace strobe
