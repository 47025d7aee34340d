#include "strobe/config.hpp"
#include "strobe/errors.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

using namespace strobe;
using nlohmann::json;

namespace {

json base_doc() {
    return json::parse(R"({
      "sites": [{"omega": 0.75}, {"omega": 1.0}],
      "coupling": {"type": "partial_swap", "g": 0.3},
      "baths": {"cold": {"T": 0.4, "g": 0.3}, "hot": {"T": 0.8, "g": 0.3}},
      "tau_q": 1.0, "tau_w": 1.0
    })");
}

}  // namespace

TEST(Config, EngineOnlyDefaults) {
    const RunConfig cfg = parse_config(base_doc());
    EXPECT_EQ(cfg.model.omegas, (std::vector<double>{0.75, 1.0}));
    EXPECT_EQ(cfg.initial, InitialState::ThermalCold);
    EXPECT_FALSE(cfg.analytic.any());
    EXPECT_FALSE(cfg.sweep);
}

TEST(Config, InitialStateAndOverrides) {
    json doc = base_doc();
    doc["initial_state"] = "ground";
    doc["analytic"] = {{"lambda", 0.2}, {"p", 0.99}};
    const RunConfig cfg = parse_config(doc);
    EXPECT_EQ(cfg.initial, InitialState::Ground);
    EXPECT_EQ(*cfg.analytic.lambda, 0.2);
    EXPECT_EQ(*cfg.analytic.p, 0.99);
    EXPECT_FALSE(cfg.analytic.eta);

    doc["initial_state"] = "hot";
    EXPECT_THROW(parse_config(doc), ConfigError);
    doc["initial_state"] = "ground";
    doc["analytic"]["zeta"] = 1.0;
    EXPECT_THROW(parse_config(doc), ConfigError);
}

TEST(Config, RejectsUnknownKeysEverywhere) {
    json top = base_doc();
    top["tau"] = 1.0;
    EXPECT_THROW(parse_config(top), ConfigError);

    json site = base_doc();
    site["sites"][0]["freq"] = 1.0;
    EXPECT_THROW(parse_config(site), ConfigError);

    json bath = base_doc();
    bath["baths"]["cold"]["temperature"] = 1.0;
    EXPECT_THROW(parse_config(bath), ConfigError);

    json sweep = base_doc();
    sweep["sweep"] = {{"axes", json::array({{{"name", "tau_q"}, {"values", {1.0}}}})}, {"grid", 1}};
    EXPECT_THROW(parse_config(sweep), ConfigError);

    json axis = base_doc();
    axis["sweep"] = {{"axes", json::array({{{"name", "tau_q"}, {"values", {1.0}}, {"step", 1}}})}};
    EXPECT_THROW(parse_config(axis), ConfigError);
}

TEST(Config, SweepRangeAxis) {
    json doc = base_doc();
    doc["sweep"] = json::parse(R"({"axes": [{"name": "tau_q", "min": 1, "max": 2, "points": 5},
                                            {"name": "N", "values": [2, 3]}],
                                   "outputs": ["W", "P"], "method": "iterate"})");
    const RunConfig cfg = parse_config(doc);
    ASSERT_TRUE(cfg.sweep);
    ASSERT_EQ(cfg.sweep->axes.size(), 2u);
    EXPECT_EQ(cfg.sweep->axes[0].values, (std::vector<double>{1.0, 1.25, 1.5, 1.75, 2.0}));
    EXPECT_EQ(cfg.sweep->axes[1].values, (std::vector<double>{2.0, 3.0}));
    EXPECT_EQ(cfg.sweep->outputs, (std::vector<std::string>{"W", "P"}));
    EXPECT_EQ(*cfg.sweep->method, LimitCycleMethod::Iterate);
}

TEST(Config, SweepValidation) {
    auto with_sweep = [](const char* text) {
        json doc = base_doc();
        doc["sweep"] = json::parse(text);
        return doc;
    };
    EXPECT_THROW(parse_config(with_sweep(R"({"axes": [{"name": "tau_q", "min": 1, "max": 2, "points": 1}]})")),
                 ConfigError);
    EXPECT_NO_THROW(parse_config(with_sweep(R"({"axes": [{"name": "tau_q", "min": 1, "max": 1, "points": 1}]})")));
    EXPECT_THROW(parse_config(with_sweep(R"({"axes": [{"name": "tau_q", "min": 1, "max": 2, "points": 2.5}]})")),
                 ConfigError);
    EXPECT_THROW(parse_config(with_sweep(R"({"axes": [{"name": "temperature", "values": [1]}]})")), ConfigError);
    EXPECT_THROW(parse_config(with_sweep(R"({"axes": [{"name": "lambda", "values": [0.1]},
                                                      {"name": "tau_q", "values": [1]}]})")),
                 ConfigError);
    EXPECT_THROW(parse_config(with_sweep(R"({"axes": []})")), ConfigError);
    EXPECT_THROW(parse_config(with_sweep(R"({"axes": [{"name": "tau_q", "values": [1]},
                                                      {"name": "tau_w", "values": [1]},
                                                      {"name": "g", "values": [1]}]})")),
                 ConfigError);
    EXPECT_THROW(parse_config(with_sweep(R"({"axes": [{"name": "tau_q", "values": [1]}], "outputs": ["Wstar"]})")),
                 ConfigError);
    EXPECT_THROW(parse_config(with_sweep(R"({"axes": [{"name": "tau_q", "values": [1]}], "method": "newton"})")),
                 ConfigError);
}

TEST(Config, ShippedConfigsLoad) {
    std::size_t n = 0;
    for (const auto& entry : std::filesystem::directory_iterator(STROBE_CONFIG_DIR)) {
        if (entry.path().extension() != ".json") continue;
        EXPECT_NO_THROW(load_config(entry.path().string())) << entry.path();
        ++n;
    }
    EXPECT_GE(n, 5u);
}

TEST(Config, LoadErrorsNameThePath) {
    const std::string missing = "/nonexistent/config.json";
    try {
        load_config(missing);
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find(missing), std::string::npos);
    }
}

TEST(Config, MethodNames) {
    EXPECT_EQ(parse_method("spectral"), LimitCycleMethod::Spectral);
    EXPECT_EQ(parse_method("iterate"), LimitCycleMethod::Iterate);
    EXPECT_THROW(parse_method("power"), ConfigError);
}
