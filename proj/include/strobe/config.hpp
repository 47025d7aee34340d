// config.hpp - run configuration files.
//
// An engine document (see chain_model.hpp) with three optional blocks:
//
//   "initial_state": "thermal_cold" | "ground",
//   "analytic": {"lambda": .., "p": .., "eta": .., "xi": ..},
//   "sweep": {
//     "axes": [{"name": "tau_q", "min": 0.75, "max": 30, "points": 40},
//              {"name": "N", "values": [3, 4, 5]}],
//     "outputs": ["W", "P", ...],
//     "method": "spectral" | "iterate"
//   }

#pragma once

#include "strobe/analytic.hpp"
#include "strobe/chain_model.hpp"
#include "strobe/sweep.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace strobe {

struct SweepConfig {
    std::vector<SweepAxis> axes;
    std::vector<std::string> outputs{default_outputs()};
    std::optional<LimitCycleMethod> method;
};

struct RunConfig {
    ChainModel model;
    InitialState initial{InitialState::ThermalCold};
    analytic::Overrides analytic;
    std::optional<SweepConfig> sweep;
};

// Throw ConfigError; load_config prefixes messages with the path.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);

LimitCycleMethod parse_method(const std::string& name);

}  // namespace strobe
