// chain_model.hpp - qubit-chain engine description and its JSON form.
//
// {
//   "sites": [{"omega": 0.75}, {"omega": 1.0}],
//   "coupling": {"type": "partial_swap", "g": 0.3},
//   "baths": {"cold": {"T": 0.4, "g": 0.3}, "hot": {"T": 0.8, "g": 0.3}},
//   "tau_q": 1.0, "tau_w": 1.0
// }
//
// coupling.type is one of partial_swap (g: number or per-bond array),
// xx (Jx, optional equal Jy), xxz (Jx, Jz), xyz (Jx, Jy, Jz). A bath may set
// "omega" to detune its ancilla from the boundary site; "T" accepts "inf".

#pragma once

#include "strobe/engine_spec.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace strobe {

enum class CouplingKind { PartialSwap, XX, XXZ, XYZ };

std::string to_string(CouplingKind kind);

struct CouplingModel {
    CouplingKind kind{CouplingKind::PartialSwap};
    std::vector<double> g;  // partial swap only
    double Jx{0.0};
    double Jy{0.0};
    double Jz{0.0};
};

struct BathModel {
    double T{1.0};
    double g{0.0};
    std::optional<double> omega;  // defaults to the boundary site frequency
};

struct ChainModel {
    std::vector<double> omegas;
    CouplingModel coupling;
    BathModel cold;
    BathModel hot;
    double tau_q{1.0};
    double tau_w{1.0};

    std::size_t size() const noexcept { return omegas.size(); }
    double cold_ancilla_omega() const { return cold.omega.value_or(omegas.front()); }
    double hot_ancilla_omega() const { return hot.omega.value_or(omegas.back()); }

    // Validated EngineSpec; throws SpecError.
    EngineSpec to_spec() const;
};

// Equally spaced frequencies from first to last.
std::vector<double> linear_frequencies(double first, double last, std::size_t n);

// Throws ConfigError on missing, malformed or unknown keys.
ChainModel chain_model_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const ChainModel& model);

// Parse a temperature that may be the string "inf".
double parse_temperature(const nlohmann::json& value, const std::string& where);

}  // namespace strobe
