#pragma once

#include <map>
#include <string>
#include <vector>

#include "adhesion/scenario.hpp"

namespace adhesion {

namespace cfg {

/// Parsed configuration value. Numbers are stored as doubles; integer-typed
/// consumers check integrality at binding time.
struct Value {
    enum class Type { Number, Boolean, String, Array };
    Type type = Type::Number;
    double num = 0.0;
    bool boolean = false;
    std::string str;
    std::vector<Value> array;
    int line = 0;
    mutable bool touched = false;
};

/// Nested key-value table (TOML-style sections).
struct Table {
    std::map<std::string, Value> values;
    std::map<std::string, Table> children;
    int line = 0;
    mutable bool touched = false;
};

/// Parses the structured text config: `[section.sub]` headers, `key = value`
/// pairs, `#` comments, strings, booleans, numbers and (nested) arrays.
/// Throws ConfigError with the offending line number.
Table parse(const std::string& text);

} // namespace cfg

/// Builds a fully validated Scenario from config text. Missing keys fall
/// back to the standard test sequence (roller at 60 rpm, 10 N*m ramp at
/// 5 N*m/s from t=5 s, water on at 35 s, torque off at 65 s) on the default
/// rig parameters. Unknown keys are rejected with a ConfigError; invariant
/// violations are collected into a single ValidationError.
Scenario parse_scenario_config(const std::string& text);

/// Scenario produced by an empty config (all defaults).
Scenario default_scenario();

/// Reads and parses a scenario config file.
Scenario load_scenario_file(const std::string& path);

/// Profiles defined in the config's `profiles` table (by label), falling
/// back to the built-in calibrated set.
AdhesionCurveParams profile_from_config(const std::string& config_text, const std::string& label);

} // namespace adhesion
