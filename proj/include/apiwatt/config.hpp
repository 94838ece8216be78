#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "apiwatt/apimetric.hpp"
#include "apiwatt/energy.hpp"
#include "apiwatt/error.hpp"
#include "apiwatt/evolution.hpp"

namespace apiwatt {

/// Analysis settings. The on-disk form is a JSON document; every key is
/// optional and falls back to the defaults below:
///
///     {
///       "alpha": 0.05,
///       "aggregation": "mean",                 // or "median"
///       "observation_unit": "per_sample",      // or "per_test_mean"
///       "ruapi_scope": "study",                // or "revision"
///       "top_k_tests": null,                   // or a positive integer
///       "api_rules": [{"prefix": "android.", "label": "android"}, ...],
///       "power_clock_offset_us": {"default": 0, "tests": {"pkg.Cls::m": 12.5}}
///     }
///
/// Clock offsets map trace time onto the power clock: power = trace + offset.
struct AnalysisConfig {
    std::vector<ApiRule> api_rules = ApiClassifier::android_platform().rules();
    double alpha = 0.05;
    Aggregation aggregation = Aggregation::Mean;
    ObservationUnit observation_unit = ObservationUnit::PerSample;
    RuapiScope ruapi_scope = RuapiScope::Study;
    std::optional<std::size_t> top_k_tests;
    double default_clock_offset_us = 0.0;
    std::map<std::string, double> clock_offset_us;

    ApiClassifier classifier() const { return ApiClassifier(api_rules); }

    double offset_for(const std::string& test) const {
        const auto it = clock_offset_us.find(test);
        return it == clock_offset_us.end() ? default_clock_offset_us : it->second;
    }

    CompareOptions compare_options() const {
        return {alpha, observation_unit, aggregation, top_k_tests, ruapi_scope};
    }

    void validate() const {
        if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
        if (top_k_tests && *top_k_tests == 0) throw ConfigError("top_k_tests must be positive");
        (void)classifier();  // rule checks
    }

    friend bool operator==(const AnalysisConfig&, const AnalysisConfig&) = default;
};

inline AnalysisConfig parse_config(std::string_view text) {
    using nlohmann::ordered_json;
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");

    AnalysisConfig c;
    try {
        for (const auto& [key, value] : j.items()) {
            if (key == "alpha") {
                c.alpha = value.get<double>();
            } else if (key == "aggregation") {
                const auto v = value.get<std::string>();
                if (v == "mean") c.aggregation = Aggregation::Mean;
                else if (v == "median") c.aggregation = Aggregation::Median;
                else throw ConfigError("aggregation must be 'mean' or 'median'");
            } else if (key == "observation_unit") {
                const auto v = value.get<std::string>();
                if (v == "per_sample") c.observation_unit = ObservationUnit::PerSample;
                else if (v == "per_test_mean") c.observation_unit = ObservationUnit::PerTestMean;
                else throw ConfigError("observation_unit must be 'per_sample' or 'per_test_mean'");
            } else if (key == "ruapi_scope") {
                const auto v = value.get<std::string>();
                if (v == "study") c.ruapi_scope = RuapiScope::Study;
                else if (v == "revision") c.ruapi_scope = RuapiScope::Revision;
                else throw ConfigError("ruapi_scope must be 'study' or 'revision'");
            } else if (key == "top_k_tests") {
                if (value.is_null()) c.top_k_tests.reset();
                else if (!value.is_number_unsigned()) throw ConfigError("top_k_tests must be a positive integer or null");
                else c.top_k_tests = value.get<std::size_t>();
            } else if (key == "api_rules") {
                c.api_rules.clear();
                for (const auto& r : value) {
                    for (const auto& [rk, rv] : r.items())
                        if (rk != "prefix" && rk != "label") throw ConfigError("unknown api_rules key '" + rk + "'");
                    c.api_rules.push_back({r.at("prefix").get<std::string>(), r.at("label").get<std::string>()});
                }
            } else if (key == "power_clock_offset_us") {
                for (const auto& [ok, ov] : value.items()) {
                    if (ok == "default") c.default_clock_offset_us = ov.get<double>();
                    else if (ok == "tests")
                        for (const auto& [test, off] : ov.items()) c.clock_offset_us[test] = off.get<double>();
                    else throw ConfigError("unknown power_clock_offset_us key '" + ok + "'");
                }
            } else {
                throw ConfigError("unknown config key '" + key + "'");
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("invalid config value: ") + e.what());
    }
    c.validate();
    return c;
}

/// Canonical text with every default spelled out.
inline std::string emit_config(const AnalysisConfig& c) {
    using nlohmann::ordered_json;
    ordered_json j;
    j["alpha"] = c.alpha;
    j["aggregation"] = c.aggregation == Aggregation::Mean ? "mean" : "median";
    j["observation_unit"] = c.observation_unit == ObservationUnit::PerSample ? "per_sample" : "per_test_mean";
    j["ruapi_scope"] = c.ruapi_scope == RuapiScope::Study ? "study" : "revision";
    j["top_k_tests"] = c.top_k_tests ? ordered_json(*c.top_k_tests) : ordered_json(nullptr);
    j["api_rules"] = ordered_json::array();
    for (const auto& r : c.api_rules) j["api_rules"].push_back({{"prefix", r.prefix}, {"label", r.label}});
    ordered_json tests = ordered_json::object();
    for (const auto& [t, off] : c.clock_offset_us) tests[t] = off;
    j["power_clock_offset_us"] = {{"default", c.default_clock_offset_us}, {"tests", tests}};
    return j.dump(2) + "\n";
}

}  // namespace apiwatt
