// Flat `key = value` run configuration with command-line
// overrides. Every key that ends up in a run is echoed with its origin so a
// run can be reproduced from its log.

#pragma once

#include "dotsim/analysis.hpp"
#include "dotsim/error.hpp"
#include "dotsim/integrator.hpp"
#include "dotsim/qca.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace dotsim::cli {

enum class Command { Simulate, Compare, Bench, Sweep, Qca };

constexpr std::string_view to_string(Command c) noexcept {
    switch (c) {
        case Command::Simulate: return "simulate";
        case Command::Compare: return "compare";
        case Command::Bench: return "bench";
        case Command::Sweep: return "sweep";
        case Command::Qca: return "qca";
    }
    return "unknown";
}

inline Command parse_command(std::string_view name) {
    for (auto c : {Command::Simulate, Command::Compare, Command::Bench, Command::Sweep, Command::Qca}) {
        if (to_string(c) == name) {
            return c;
        }
    }
    throw Error(ErrorKind::InvalidArgument, "unknown command '" + std::string(name) + "'");
}

// Where the control cell of a QCA circuit gets its state.
enum class ControlSource { Bit0, Bit1, Simulate };

enum class Origin { File, Flag, Default };

constexpr std::string_view to_string(Origin o) noexcept {
    switch (o) {
        case Origin::File: return "config";
        case Origin::Flag: return "flag";
        case Origin::Default: return "default";
    }
    return "?";
}

struct EchoedSetting {
    std::string key;
    std::string value;
    Origin origin;
};

struct RunConfig {
    Command command{Command::Simulate};
    Scenario scenario;
    std::filesystem::path out_dir{"."};
    bool emit_svg{false};
    std::optional<TimeWindow> window;
    std::vector<SweepAxis> axes;
    std::string netlist_path;
    bool netlist_from_file{false};  // relative paths then resolve against the config's directory
    double eta{1.0};
    double tau_d{1.0};
    double p_threshold{qca::kDefaultThreshold};
    std::string control_node{"c"};
    ControlSource control_source{ControlSource::Bit0};
    int repeats{5};
    bool scenario_used{true};
    std::vector<EchoedSetting> settings;
};

// --------------------------------------------------------------------------
// Raw key/value handling

struct RawValue {
    std::string text;
    Origin origin;
    int line{0};
};

using RawSettings = std::map<std::string, RawValue>;

inline std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

inline std::pair<std::string, std::string> split_assignment(std::string_view line, const std::string& where) {
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
        throw Error(ErrorKind::TypeMismatch, where + ": expected 'key = value'");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
        throw Error(ErrorKind::TypeMismatch, where + ": empty key");
    }
    return {key, value};
}

inline void read_settings(std::istream& in, RawSettings& out) {
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        if (trim(line).empty()) {
            continue;
        }
        auto [key, value] = split_assignment(line, "line " + std::to_string(line_no));
        out[key] = {value, Origin::File, line_no};
    }
}

inline void apply_overrides(const std::vector<std::string>& overrides, RawSettings& out) {
    for (const auto& o : overrides) {
        auto [key, value] = split_assignment(o, "override '" + o + "'");
        out[key] = {value, Origin::Flag, 0};
    }
}

inline double parse_number(const std::string& key, const std::string& text) {
    double v = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    if (!text.empty() && *begin == '+') {
        ++begin;
    }
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{} || ptr != end || text.empty()) {
        throw Error(ErrorKind::TypeMismatch, "'" + key + "' expects a number, got '" + text + "'");
    }
    return v;
}

inline long long parse_integer(const std::string& key, const std::string& text) {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        throw Error(ErrorKind::TypeMismatch, "'" + key + "' expects an integer, got '" + text + "'");
    }
    return v;
}

// "name: v1, v2, ..."
inline SweepAxis parse_axis(const std::string& key, const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
        throw Error(ErrorKind::TypeMismatch, "'" + key + "' expects '<parameter>: v1, v2, ...'");
    }
    SweepAxis axis;
    axis.parameter = parse_axis_parameter(trim(std::string_view(text).substr(0, colon)));
    std::istringstream list(text.substr(colon + 1));
    for (std::string item; std::getline(list, item, ',');) {
        axis.values.push_back(parse_number(key, trim(item)));
    }
    if (axis.values.empty()) {
        throw Error(ErrorKind::TypeMismatch, "'" + key + "' lists no values");
    }
    return axis;
}

inline std::string format_setting(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

// --------------------------------------------------------------------------
// Validation

namespace detail {

inline const std::set<std::string>& scenario_keys() {
    static const std::set<std::string> keys{
        "k",        "omega_coulomb", "omega_drive", "rabi_ratio", "phase",
        "envelope", "tau",           "formulation", "initial",    "alpha0",
        "phi0",     "lambda0",       "t_end",       "dt",         "sample_stride",
    };
    return keys;
}

inline std::set<std::string> allowed_keys(Command c) {
    std::set<std::string> keys = scenario_keys();
    switch (c) {
        case Command::Simulate: keys.insert({"window_start", "window_end"}); break;
        case Command::Compare: break;
        case Command::Bench: keys.insert("repeats"); break;
        case Command::Sweep: keys.insert({"window_start", "window_end", "sweep_axis1", "sweep_axis2"}); break;
        case Command::Qca:
            keys.insert({"netlist", "eta", "tau_d", "control_node", "control_state", "p_threshold"});
            break;
    }
    return keys;
}

inline std::set<std::string> all_known_keys() {
    std::set<std::string> keys;
    for (auto c : {Command::Simulate, Command::Compare, Command::Bench, Command::Sweep, Command::Qca}) {
        auto k = allowed_keys(c);
        keys.insert(k.begin(), k.end());
    }
    return keys;
}

class Reader {
public:
    Reader(const RawSettings& raw, RunConfig& cfg) : raw_(raw), cfg_(cfg) {}

    bool has(const std::string& key) const { return raw_.count(key) != 0; }

    void require(const std::string& key) {
        if (!has(key)) {
            missing_.push_back(key);
        }
    }

    const std::vector<std::string>& missing() const { return missing_; }

    double number(const std::string& key, double fallback) {
        if (auto it = raw_.find(key); it != raw_.end()) {
            const double v = parse_number(key, it->second.text);
            echo(key, it->second.text, it->second.origin);
            return v;
        }
        echo(key, format_setting(fallback), Origin::Default);
        return fallback;
    }

    long long integer(const std::string& key, long long fallback) {
        if (auto it = raw_.find(key); it != raw_.end()) {
            const long long v = parse_integer(key, it->second.text);
            echo(key, it->second.text, it->second.origin);
            return v;
        }
        echo(key, std::to_string(fallback), Origin::Default);
        return fallback;
    }

    std::string word(const std::string& key, const std::string& fallback,
                     std::initializer_list<std::string_view> choices = {}) {
        std::string v = fallback;
        Origin origin = Origin::Default;
        if (auto it = raw_.find(key); it != raw_.end()) {
            v = it->second.text;
            origin = it->second.origin;
        }
        if (choices.size() != 0 &&
            std::find(choices.begin(), choices.end(), std::string_view(v)) == choices.end()) {
            std::string list;
            for (auto c : choices) {
                list += (list.empty() ? "" : "|") + std::string(c);
            }
            throw Error(ErrorKind::TypeMismatch, "'" + key + "' must be one of " + list + ", got '" + v + "'");
        }
        echo(key, v, origin);
        return v;
    }

    std::optional<std::string> optional_text(const std::string& key) {
        if (auto it = raw_.find(key); it != raw_.end()) {
            echo(key, it->second.text, it->second.origin);
            return it->second.text;
        }
        return std::nullopt;
    }

private:
    void echo(const std::string& key, const std::string& value, Origin origin) {
        cfg_.settings.push_back({key, value, origin});
    }

    const RawSettings& raw_;
    RunConfig& cfg_;
    std::vector<std::string> missing_;
};

inline void throw_if_missing(const Reader& r) {
    if (r.missing().empty()) {
        return;
    }
    std::string list;
    for (const auto& k : r.missing()) {
        list += (list.empty() ? "" : ", ") + k;
    }
    throw Error(ErrorKind::MissingKey, "missing required keys: " + list);
}

inline void read_scenario(Reader& r, RunConfig& cfg, bool required) {
    if (required) {
        r.require("omega_coulomb");
        r.require("rabi_ratio");
    }
    throw_if_missing(r);

    Scenario& sc = cfg.scenario;
    sc.params.k = r.number("k", 1.0);
    sc.params.omega_coulomb = r.number("omega_coulomb", 0.0);
    sc.params.omega_drive = r.number("omega_drive", 10.0);
    sc.params.rabi_ratio = r.number("rabi_ratio", 0.0);
    sc.params.phase = r.number("phase", 0.0);

    const std::string env = r.word("envelope", "constant", {"constant", "tanh"});
    if (env == "tanh") {
        r.require("tau");
        throw_if_missing(r);
        sc.envelope = TanhRise{r.number("tau", 1.0)};
    } else {
        if (r.has("tau")) {
            throw Error(ErrorKind::UnknownKey, "'tau' is only meaningful with envelope = tanh");
        }
        sc.envelope = ConstantEnvelope{};
    }

    const std::string form = r.word("formulation", "amplitude", {"amplitude", "angle"});
    sc.formulation = form == "angle" ? Formulation::Angle : Formulation::Amplitude;

    const std::string init = r.word("initial", "left", {"left", "right", "custom"});
    if (init == "custom") {
        r.require("alpha0");
        r.require("phi0");
        throw_if_missing(r);
        AngleState s;
        s.alpha = r.number("alpha0", 0.0);
        s.phi = r.number("phi0", 0.0);
        s.lambda = r.number("lambda0", 0.0);
        sc.initial = s;
    } else {
        for (const char* key : {"alpha0", "phi0", "lambda0"}) {
            if (r.has(key)) {
                throw Error(ErrorKind::UnknownKey, "'" + std::string(key) + "' needs initial = custom");
            }
        }
        sc.initial = init == "right" ? InitialCondition{RightDot{}} : InitialCondition{LeftDot{}};
    }

    const auto* rise = std::get_if<TanhRise>(&sc.envelope);
    const double default_t_end = rise ? 15.0 * rise->tau : 50.0;
    sc.t_end = r.number("t_end", default_t_end);
    sc.dt = r.number("dt", 1e-3);
    const long long stride = r.integer("sample_stride", 10);
    if (stride < 1) {
        throw Error(ErrorKind::InvalidArgument, "sample_stride must be >= 1");
    }
    sc.sample_stride = static_cast<std::size_t>(stride);
    sc.validate();
}

inline void read_window(Reader& r, RunConfig& cfg) {
    const bool has_start = r.has("window_start");
    const bool has_end = r.has("window_end");
    if (!has_start && !has_end) {
        return;
    }
    TimeWindow w;
    w.t_start = r.number("window_start", 0.0);
    w.t_end = r.number("window_end", cfg.scenario.t_end);
    cfg.window = w;
}

}  // namespace detail

/// Builds a validated RunConfig from raw settings. Throws MissingKey,
/// UnknownKey or TypeMismatch on bad input.
inline RunConfig parse_config(Command command, const RawSettings& raw) {
    RunConfig cfg;
    cfg.command = command;

    const auto allowed = detail::allowed_keys(command);
    const auto known = detail::all_known_keys();
    for (const auto& [key, value] : raw) {
        if (allowed.count(key)) {
            continue;
        }
        if (known.count(key)) {
            throw Error(ErrorKind::UnknownKey,
                        "'" + key + "' is not valid for the " + std::string(to_string(command)) + " command");
        }
        throw Error(ErrorKind::UnknownKey, "unknown key '" + key + "'");
    }

    detail::Reader r(raw, cfg);
    switch (command) {
        case Command::Simulate:
            detail::read_scenario(r, cfg, true);
            detail::read_window(r, cfg);
            break;
        case Command::Compare:
            detail::read_scenario(r, cfg, true);
            break;
        case Command::Bench: {
            detail::read_scenario(r, cfg, true);
            const long long repeats = r.integer("repeats", 5);
            if (repeats < 3) {
                throw Error(ErrorKind::InvalidArgument, "repeats must be >= 3");
            }
            cfg.repeats = static_cast<int>(repeats);
            break;
        }
        case Command::Sweep: {
            r.require("sweep_axis1");
            detail::read_scenario(r, cfg, true);
            cfg.axes.push_back(parse_axis("sweep_axis1", *r.optional_text("sweep_axis1")));
            if (auto second = r.optional_text("sweep_axis2")) {
                cfg.axes.push_back(parse_axis("sweep_axis2", *second));
            }
            detail::read_window(r, cfg);
            for (const auto& axis : cfg.axes) {
                for (std::size_t i = 0; i < axis.values.size(); ++i) {
                    with_axis_value(cfg.scenario, axis.parameter, axis.values[i]).validate();
                }
            }
            break;
        }
        case Command::Qca: {
            r.require("netlist");
            const bool simulate = r.has("control_state") && raw.at("control_state").text == "simulate";
            if (!simulate) {
                detail::throw_if_missing(r);
                for (const auto& key : detail::scenario_keys()) {
                    if (r.has(key)) {
                        throw Error(ErrorKind::UnknownKey,
                                    "'" + key + "' is only used with control_state = simulate");
                    }
                }
            }
            cfg.netlist_path = *r.optional_text("netlist");
            cfg.netlist_from_file = raw.at("netlist").origin == Origin::File;
            cfg.eta = r.number("eta", 1.0);
            cfg.tau_d = r.number("tau_d", 1.0);
            cfg.p_threshold = r.number("p_threshold", qca::kDefaultThreshold);
            cfg.control_node = r.word("control_node", "c");
            const std::string src = r.word("control_state", "0", {"0", "1", "simulate"});
            cfg.control_source = src == "simulate" ? ControlSource::Simulate
                                 : src == "1"      ? ControlSource::Bit1
                                                   : ControlSource::Bit0;
            cfg.scenario_used = simulate;
            if (simulate) {
                detail::read_scenario(r, cfg, true);
            }
            if (!(cfg.eta >= 0.0 && cfg.eta <= 1.0)) {
                throw Error(ErrorKind::InvalidArgument, "eta must lie in [0, 1]");
            }
            if (!(cfg.tau_d > 0.0)) {
                throw Error(ErrorKind::InvalidArgument, "tau_d must be > 0");
            }
            break;
        }
    }
    return cfg;
}

inline RawSettings load_settings(const std::optional<std::filesystem::path>& path,
                                 const std::vector<std::string>& overrides) {
    RawSettings raw;
    if (path) {
        std::ifstream in(*path);
        if (!in) {
            throw Error(ErrorKind::MissingKey, "cannot open config file '" + path->string() + "'");
        }
        read_settings(in, raw);
    }
    apply_overrides(overrides, raw);
    return raw;
}

inline RawSettings settings_from_text(const std::string& text, const std::vector<std::string>& overrides = {}) {
    RawSettings raw;
    std::istringstream in(text);
    read_settings(in, raw);
    apply_overrides(overrides, raw);
    return raw;
}

}  // namespace dotsim::cli
