#include "adhesion/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "adhesion/errors.hpp"

namespace adhesion {

namespace cfg {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

bool valid_key(const std::string& k) {
    if (k.empty()) return false;
    for (char c : k)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') return false;
    return true;
}

std::string strip_comment(const std::string& line) {
    bool in_str = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') in_str = !in_str;
        if (line[i] == '#' && !in_str) return line.substr(0, i);
    }
    return line;
}

class ValueParser {
public:
    ValueParser(const std::string& text, int line) : s_(text), line_(line) {}

    Value parse() {
        Value v = parse_value();
        skip_ws();
        if (pos_ != s_.size()) throw ConfigError("trailing characters after value", line_);
        return v;
    }

private:
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    Value parse_value() {
        skip_ws();
        if (pos_ >= s_.size()) throw ConfigError("missing value", line_);
        Value v;
        v.line = line_;
        const char c = s_[pos_];
        if (c == '"') {
            v.type = Value::Type::String;
            ++pos_;
            while (pos_ < s_.size() && s_[pos_] != '"') v.str += s_[pos_++];
            if (pos_ >= s_.size()) throw ConfigError("unterminated string", line_);
            ++pos_;
            return v;
        }
        if (c == '[') {
            v.type = Value::Type::Array;
            ++pos_;
            skip_ws();
            if (pos_ < s_.size() && s_[pos_] == ']') {
                ++pos_;
                return v;
            }
            while (true) {
                v.array.push_back(parse_value());
                skip_ws();
                if (pos_ < s_.size() && s_[pos_] == ',') {
                    ++pos_;
                    continue;
                }
                if (pos_ < s_.size() && s_[pos_] == ']') {
                    ++pos_;
                    return v;
                }
                throw ConfigError("expected ',' or ']' in array", line_);
            }
        }
        if (s_.compare(pos_, 4, "true") == 0) {
            v.type = Value::Type::Boolean;
            v.boolean = true;
            pos_ += 4;
            return v;
        }
        if (s_.compare(pos_, 5, "false") == 0) {
            v.type = Value::Type::Boolean;
            v.boolean = false;
            pos_ += 5;
            return v;
        }
        // number
        const char* start = s_.c_str() + pos_;
        char* end = nullptr;
        v.num = std::strtod(start, &end);
        if (end == start) throw ConfigError("cannot parse value", line_);
        v.type = Value::Type::Number;
        pos_ += static_cast<std::size_t>(end - start);
        return v;
    }

    const std::string& s_;
    std::size_t pos_ = 0;
    int line_;
};

} // namespace

Table parse(const std::string& text) {
    Table root;
    Table* current = &root;
    std::istringstream is(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(is, raw)) {
        ++line_no;
        const std::string line = trim(strip_comment(raw));
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("unterminated section header", line_no);
            const std::string path = trim(line.substr(1, line.size() - 2));
            if (path.empty()) throw ConfigError("empty section header", line_no);
            current = &root;
            std::size_t pos = 0;
            while (pos <= path.size()) {
                const std::size_t dot = path.find('.', pos);
                const std::string key =
                    trim(path.substr(pos, dot == std::string::npos ? dot : dot - pos));
                if (!valid_key(key)) throw ConfigError("invalid section name '" + key + "'", line_no);
                auto [it, inserted] = current->children.try_emplace(key);
                if (inserted) it->second.line = line_no;
                current = &it->second;
                if (dot == std::string::npos) break;
                pos = dot + 1;
            }
            continue;
        }

        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected 'key = value' or '[section]'", line_no);
        const std::string key = trim(line.substr(0, eq));
        if (!valid_key(key)) throw ConfigError("invalid key '" + key + "'", line_no);
        if (current->values.count(key) || current->children.count(key))
            throw ConfigError("duplicate key '" + key + "'", line_no);
        current->values.emplace(key, ValueParser(trim(line.substr(eq + 1)), line_no).parse());
    }
    return root;
}

} // namespace cfg

namespace {

using cfg::Table;
using cfg::Value;

const Table* child(const Table& t, const std::string& name) {
    auto it = t.children.find(name);
    if (it == t.children.end()) return nullptr;
    it->second.touched = true;
    return &it->second;
}

const Value* find_value(const Table& t, const std::string& key) {
    auto it = t.values.find(key);
    if (it == t.values.end()) return nullptr;
    it->second.touched = true;
    return &it->second;
}

double as_number(const Value& v, const std::string& key) {
    if (v.type != Value::Type::Number)
        throw ConfigError("'" + key + "' must be a number", v.line);
    return v.num;
}

void get(const Table& t, const std::string& key, double& out) {
    if (const Value* v = find_value(t, key)) out = as_number(*v, key);
}

void get(const Table& t, const std::string& key, int& out) {
    if (const Value* v = find_value(t, key)) {
        const double n = as_number(*v, key);
        if (std::abs(n - std::round(n)) > 1e-9)
            throw ConfigError("'" + key + "' must be an integer", v->line);
        out = static_cast<int>(std::llround(n));
    }
}

void get(const Table& t, const std::string& key, std::uint64_t& out) {
    if (const Value* v = find_value(t, key)) {
        const double n = as_number(*v, key);
        if (n < 0.0 || std::abs(n - std::round(n)) > 1e-9)
            throw ConfigError("'" + key + "' must be a non-negative integer", v->line);
        out = static_cast<std::uint64_t>(std::llround(n));
    }
}

void get(const Table& t, const std::string& key, bool& out) {
    if (const Value* v = find_value(t, key)) {
        if (v->type != Value::Type::Boolean)
            throw ConfigError("'" + key + "' must be true or false", v->line);
        out = v->boolean;
    }
}

void get(const Table& t, const std::string& key, std::string& out) {
    if (const Value* v = find_value(t, key)) {
        if (v->type != Value::Type::String)
            throw ConfigError("'" + key + "' must be a string", v->line);
        out = v->str;
    }
}

void collect_unknown(const Table& t, const std::string& prefix, std::vector<std::string>& out) {
    for (const auto& [key, value] : t.values) {
        if (!value.touched)
            out.push_back(prefix + key + " (line " + std::to_string(value.line) + ")");
    }
    for (const auto& [key, sub] : t.children) {
        if (!sub.touched) {
            out.push_back(prefix + key + " (line " + std::to_string(sub.line) + ")");
        } else {
            collect_unknown(sub, prefix + key + ".", out);
        }
    }
}

AdhesionCurveParams parse_profile(const Table& t, const std::string& label) {
    AdhesionCurveParams p;
    bool direct = t.values.count("c1") || t.values.count("c2") || t.values.count("c3");
    if (direct) {
        p.label = label;
        get(t, "c1", p.c1);
        get(t, "c2", p.c2);
        get(t, "c3", p.c3);
        return p;
    }
    double mu_peak = 0.0, v_peak = 0.0, sharpness = 5.0;
    get(t, "mu_peak", mu_peak);
    get(t, "v_peak", v_peak);
    get(t, "sharpness", sharpness);
    if (mu_peak <= 0.0 || v_peak <= 0.0)
        throw ConfigError("profile '" + label + "' needs c1/c2/c3 or mu_peak/v_peak", t.line);
    return calibrate_peak(label, mu_peak, v_peak, sharpness);
}

std::map<std::string, AdhesionCurveParams> parse_profiles(const Table& root) {
    std::map<std::string, AdhesionCurveParams> out;
    if (const Table* profiles = child(root, "profiles")) {
        for (const auto& [label, sub] : profiles->children) {
            sub.touched = true;
            out.emplace(label, parse_profile(sub, label));
        }
    }
    return out;
}

AdhesionCurveParams lookup_profile(const std::map<std::string, AdhesionCurveParams>& custom,
                                   const std::string& label) {
    if (auto it = custom.find(label); it != custom.end()) return it->second;
    return profiles::by_label(label);
}

} // namespace

Scenario default_scenario() {
    Scenario s;
    s.name = "scenario";
    s.schedule.segments = {{0.0, profiles::dry()}};
    s.schedule.transition_time = 0.0;
    s.wet_profile = profiles::wet();
    s.wet_transition_time = 3.0;
    s.events = {{5.0, EventAction::TorqueOn},
                {35.0, EventAction::WetOn},
                {65.0, EventAction::TorqueOff},
                {70.0, EventAction::End}};
    return s;
}

Scenario parse_scenario_config(const std::string& text) {
    const Table root = cfg::parse(text);
    Scenario s = default_scenario();
    const auto custom_profiles = parse_profiles(root);

    get(root, "name", s.name);
    std::string strategy;
    get(root, "strategy", strategy);
    if (!strategy.empty()) s.strategy = strategy_from_string(strategy);
    get(root, "seed", s.seed);
    get(root, "dt_plant", s.dt_plant);
    get(root, "dt_ctrl", s.dt_ctrl);
    get(root, "v_max", s.v_max);
    s.sg.v_max = s.v_max;
    s.flc.v_max = s.v_max;

    if (const Table* timeline = child(root, "timeline")) {
        get(*timeline, "roller_speed_rpm", s.roller_speed_rpm);
        get(*timeline, "torque_final", s.torque_final);
        get(*timeline, "torque_gradient", s.torque_gradient);
        if (const Value* ev = find_value(*timeline, "events")) {
            if (ev->type != Value::Type::Array)
                throw ConfigError("'events' must be an array of [time, action] pairs", ev->line);
            s.events.clear();
            for (const Value& e : ev->array) {
                if (e.type != Value::Type::Array || e.array.size() != 2 ||
                    e.array[0].type != Value::Type::Number ||
                    e.array[1].type != Value::Type::String)
                    throw ConfigError("each event must be [time, \"action\"]", e.line);
                try {
                    s.events.push_back(
                        {e.array[0].num, event_action_from_string(e.array[1].str)});
                } catch (const ValidationError& err) {
                    throw ConfigError(err.what(), e.line);
                }
            }
        }
    }

    if (const Table* rig = child(root, "rig")) {
        get(*rig, "r_W", s.rig.r_W);
        get(*rig, "r_R", s.rig.r_R);
        get(*rig, "Rg_W", s.rig.Rg_W);
        get(*rig, "Rg_R", s.rig.Rg_R);
        get(*rig, "J_W", s.rig.J_W);
        get(*rig, "J_R", s.rig.J_R);
        get(*rig, "beta_W", s.rig.beta_W);
        get(*rig, "beta_R", s.rig.beta_R);
        get(*rig, "F_N", s.rig.F_N);
        get(*rig, "tau_drive", s.rig.tau_drive);
    }

    if (const Table* slip = child(root, "slip_control")) {
        get(*slip, "activation", s.slip_activation);
        get(*slip, "kp", s.slip_kp);
        get(*slip, "ki", s.slip_ki);
    }

    if (const Table* sensors = child(root, "sensors")) {
        get(*sensors, "noise_amp", s.sensor.noise_amp);
        get(*sensors, "quantize", s.sensor.quantize);
        get(*sensors, "pulses_per_rev", s.sensor.pulses_per_rev);
    }

    if (const Table* roller = child(root, "roller")) {
        get(*roller, "bandwidth", s.roller_bandwidth);
    }

    if (const Table* schedule = child(root, "schedule")) {
        get(*schedule, "transition_time", s.schedule.transition_time);
        if (const Value* segs = find_value(*schedule, "segments")) {
            if (segs->type != Value::Type::Array)
                throw ConfigError("'segments' must be an array of [time, label] pairs",
                                  segs->line);
            s.schedule.segments.clear();
            for (const Value& e : segs->array) {
                if (e.type != Value::Type::Array || e.array.size() != 2 ||
                    e.array[0].type != Value::Type::Number ||
                    e.array[1].type != Value::Type::String)
                    throw ConfigError("each segment must be [time, \"label\"]", e.line);
                try {
                    s.schedule.segments.push_back(
                        {e.array[0].num, lookup_profile(custom_profiles, e.array[1].str)});
                } catch (const ValidationError& err) {
                    throw ConfigError(err.what(), e.line);
                }
            }
        }
    }

    if (const Table* wet = child(root, "wet")) {
        std::string label;
        get(*wet, "profile", label);
        if (!label.empty()) {
            try {
                s.wet_profile = lookup_profile(custom_profiles, label);
            } catch (const ValidationError& err) {
                throw ConfigError(err.what(), wet->line);
            }
        }
        get(*wet, "transition_time", s.wet_transition_time);
    }

    if (const Table* constant = child(root, "constant")) {
        get(*constant, "v_slip_set", s.constant_v_slip);
    }
    if (const Table* po = child(root, "po")) {
        get(*po, "delta_a", s.po.delta_a);
        get(*po, "period", s.po.period);
        get(*po, "t_threshold", s.po.t_threshold);
        get(*po, "a_max", s.po.a_max);
        get(*po, "tau_filter", s.po.tau_filter);
    }
    if (const Table* sg = child(root, "sg")) {
        get(*sg, "alpha", s.sg.alpha);
        get(*sg, "tau_v", s.sg.tau_v);
        get(*sg, "tau_mu", s.sg.tau_mu);
        get(*sg, "eval_every", s.sg.eval_every);
        get(*sg, "k_clamp", s.sg.k_clamp);
        get(*sg, "slew_rate", s.sg.slew_rate);
    }
    if (const Table* flc = child(root, "flc")) {
        get(*flc, "x1_T", s.flc.x1_T);
        get(*flc, "x2_T", s.flc.x2_T);
        get(*flc, "x1_v", s.flc.x1_v);
        get(*flc, "x2_v", s.flc.x2_v);
        get(*flc, "y1", s.flc.y1);
        get(*flc, "y2", s.flc.y2);
        get(*flc, "tau_filter", s.flc.tau_filter);
        get(*flc, "eval_every", s.flc.eval_every);
        if (const Value* table = find_value(*flc, "rule_table")) {
            if (table->type != Value::Type::Array || table->array.size() != 5)
                throw ConfigError("'rule_table' must be 5 rows of 5 labels", table->line);
            for (int r = 0; r < 5; ++r) {
                const Value& row = table->array[r];
                if (row.type != Value::Type::Array || row.array.size() != 5)
                    throw ConfigError("'rule_table' must be 5 rows of 5 labels", row.line);
                for (int c = 0; c < 5; ++c) {
                    if (row.array[c].type != Value::Type::String)
                        throw ConfigError("rule table entries must be label strings",
                                          row.array[c].line);
                    try {
                        s.flc.rule_table[r][c] = fuzzy_label_from_string(row.array[c].str);
                    } catch (const ConfigError&) {
                        throw ConfigError("bad rule label '" + row.array[c].str + "'",
                                          row.array[c].line);
                    }
                }
            }
        }
    }
    if (const Table* pso = child(root, "pso")) {
        get(*pso, "np", s.pso.np);
        get(*pso, "w", s.pso.w);
        get(*pso, "c1", s.pso.c1);
        get(*pso, "c2", s.pso.c2);
        if (const Value* b = find_value(*pso, "v_bounds")) {
            if (b->type != Value::Type::Array || b->array.size() != 2 ||
                b->array[0].type != Value::Type::Number ||
                b->array[1].type != Value::Type::Number)
                throw ConfigError("'v_bounds' must be [min, max]", b->line);
            s.pso.v_min = b->array[0].num;
            s.pso.v_max_bound = b->array[1].num;
        }
        get(*pso, "reset_dT", s.pso.reset_dT);
        get(*pso, "reset_dv", s.pso.reset_dv);
        get(*pso, "seed", s.pso.rng_seed);
        get(*pso, "start_delay", s.pso.start_delay);
        get(*pso, "settle_window", s.pso.settle_window);
        get(*pso, "probe_window", s.pso.probe_window);
        get(*pso, "probe_dv", s.pso.probe_dv);
        get(*pso, "iteration_cap", s.pso.iteration_cap);
        get(*pso, "convergence_spread", s.pso.convergence_spread);
        get(*pso, "tau_filter", s.pso.tau_filter);
    }

    std::vector<std::string> unknown;
    collect_unknown(root, "", unknown);
    if (!unknown.empty()) {
        std::string msg = "unknown configuration keys:";
        for (const auto& k : unknown) msg += "\n  - " + k;
        throw ConfigError(msg);
    }

    s.validate();
    return s;
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << is.rdbuf();
    return parse_scenario_config(buf.str());
}

AdhesionCurveParams profile_from_config(const std::string& config_text,
                                        const std::string& label) {
    const Table root = cfg::parse(config_text);
    const auto custom = parse_profiles(root);
    // only the profiles table matters here; other keys are not an error
    return lookup_profile(custom, label);
}

} // namespace adhesion
