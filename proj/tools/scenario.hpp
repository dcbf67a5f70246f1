#pragma once

// Flat key=value scenario files, overrides and validation into runnable inputs.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rotator/rotator.hpp"

namespace rotator::cli {

struct ScenarioConfig
{
    std::string model = "rotator";  // rotator | sphere
    std::string family = "fundamental+";
    double m = 1.0;
    double l = 1.0;
    double q = 0.5;
    Vec3 axis{1.0, 0.0, 0.0};
    double phase = 0.0;
    std::string profile = "const:1";
    std::optional<double> duration;
    std::optional<double> dt;
    bool stabilize = false;
    double abort_threshold = 1e-6;
    std::size_t sample_every = 1;
    std::string out_dir = ".";
    std::string name = "run";
    std::uint64_t seed = 42;
    Vec4 w{1.0, 0.0, 0.0, 0.0};
    Vec4 q0{1.0, 1.0, 0.0, 0.0};
    Vec4 qdot0{0.0, 0.0, 1.0, 0.0};
};

inline std::vector<std::string> const& config_keys()
{
    static std::vector<std::string> const keys{
        "model", "family", "m", "l", "Q", "axis", "phase", "profile", "T", "dt", "stabilize",
        "abort_threshold", "sample_every", "out_dir", "name", "seed", "w", "q0", "qdot0"};
    return keys;
}

namespace detail {

inline std::string trim(std::string const& s)
{
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline double to_number(std::string const& field, std::string const& text)
{
    std::size_t used = 0;
    double v = 0.0;
    try
    {
        v = std::stod(text, &used);
    }
    catch (std::exception const&)
    {
        used = 0;
    }
    if (used == 0 || used != text.size() || !std::isfinite(v))
        throw ConfigError(field, "expected a finite number, got '" + text + "'");
    return v;
}

inline std::vector<double> to_numbers(std::string const& field, std::string const& text, std::size_t n)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(to_number(field, trim(item)));
    if (out.size() != n)
        throw ConfigError(field, "expected " + std::to_string(n) + " comma-separated numbers");
    return out;
}

inline std::uint64_t to_count(std::string const& field, std::string const& text)
{
    if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
        throw ConfigError(field, "expected a non-negative integer, got '" + text + "'");
    try
    {
        return std::stoull(text);
    }
    catch (std::exception const&)
    {
        throw ConfigError(field, "integer out of range: '" + text + "'");
    }
}

inline bool to_bool(std::string const& field, std::string const& text)
{
    if (text == "true" || text == "1" || text == "on" || text == "yes")
        return true;
    if (text == "false" || text == "0" || text == "off" || text == "no")
        return false;
    throw ConfigError(field, "expected true/false, got '" + text + "'");
}

}  // namespace detail

//! Sets one key from its text form. Unknown keys are rejected.
inline void apply_setting(ScenarioConfig& cfg, std::string const& key, std::string const& raw)
{
    using namespace detail;
    std::string value = trim(raw);
    if (key == "model")
    {
        if (value != "rotator" && value != "sphere")
            throw ConfigError(key, "must be 'rotator' or 'sphere'");
        cfg.model = value;
    }
    else if (key == "family")
        cfg.family = value;
    else if (key == "m")
        cfg.m = to_number(key, value);
    else if (key == "l")
        cfg.l = to_number(key, value);
    else if (key == "Q")
        cfg.q = to_number(key, value);
    else if (key == "axis")
    {
        auto v = to_numbers(key, value, 3);
        cfg.axis = {v[0], v[1], v[2]};
    }
    else if (key == "phase")
        cfg.phase = to_number(key, value);
    else if (key == "profile")
        cfg.profile = value;
    else if (key == "T")
        cfg.duration = to_number(key, value);
    else if (key == "dt")
        cfg.dt = to_number(key, value);
    else if (key == "stabilize")
        cfg.stabilize = to_bool(key, value);
    else if (key == "abort_threshold")
        cfg.abort_threshold = to_number(key, value);
    else if (key == "sample_every")
        cfg.sample_every = to_count(key, value);
    else if (key == "out_dir")
        cfg.out_dir = value;
    else if (key == "name")
        cfg.name = value;
    else if (key == "seed")
        cfg.seed = to_count(key, value);
    else if (key == "w" || key == "q0" || key == "qdot0")
    {
        auto v = to_numbers(key, value, 4);
        Vec4 vec{v[0], v[1], v[2], v[3]};
        (key == "w" ? cfg.w : key == "q0" ? cfg.q0 : cfg.qdot0) = vec;
    }
    else
        throw ConfigError(key, "unknown configuration key");
}

//! Reads `key = value` lines; '#' starts a comment.
inline void load_config(ScenarioConfig& cfg, std::istream& in)
{
    std::string line;
    int number = 0;
    while (std::getline(in, line))
    {
        ++number;
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        line = detail::trim(line);
        if (line.empty())
            continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(number), "expected 'key = value'");
        apply_setting(cfg, detail::trim(line.substr(0, eq)), line.substr(eq + 1));
    }
}

inline void load_config_file(ScenarioConfig& cfg, std::string const& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("config", "cannot open '" + path + "'");
    load_config(cfg, in);
}

//! Text form of every key, for manifests.
inline std::map<std::string, std::string> describe(ScenarioConfig const& cfg)
{
    auto num = [](double v) { return format_number(v); };
    auto vec = [&](auto const& v, int n) {
        std::string s;
        for (int i = 0; i < n; ++i)
            s += (i ? "," : "") + num(v[i]);
        return s;
    };
    return {{"model", cfg.model},
            {"family", cfg.family},
            {"m", num(cfg.m)},
            {"l", num(cfg.l)},
            {"Q", num(cfg.q)},
            {"axis", vec(cfg.axis, 3)},
            {"phase", num(cfg.phase)},
            {"profile", cfg.profile},
            {"T", cfg.duration ? num(*cfg.duration) : "auto"},
            {"dt", cfg.dt ? num(*cfg.dt) : "auto"},
            {"stabilize", cfg.stabilize ? "true" : "false"},
            {"abort_threshold", num(cfg.abort_threshold)},
            {"sample_every", std::to_string(cfg.sample_every)},
            {"name", cfg.name},
            {"seed", std::to_string(cfg.seed)},
            {"w", vec(cfg.w, 4)},
            {"q0", vec(cfg.q0, 4)},
            {"qdot0", vec(cfg.qdot0, 4)}};
}

struct Scenario
{
    ScenarioConfig config;
    RotatorSpec spec;
    std::optional<GaugeProfile> profile;
    State initial;
    IntegratorOptions options;
    //! Rotation period when the angular velocity is constant, else 0.
    double period = 0.0;
};

/*!
 * Validates a rotator scenario. Without explicit T/dt, phenomenological runs
 * cover 10 periods at period/1000; fundamental runs cover T = 20 at dt = 1e-3.
 */
inline Scenario resolve(ScenarioConfig const& cfg)
{
    if (cfg.model != "rotator")
        throw ConfigError("model", "expected 'rotator' here");
    if (!(cfg.m > 0.0))
        throw ConfigError("m", "mass must be positive");
    if (!(cfg.l > 0.0))
        throw ConfigError("l", "length must be positive");
    if (cfg.dt && !(*cfg.dt > 0.0))
        throw ConfigError("dt", "step must be positive");
    if (cfg.duration && !(*cfg.duration >= 0.0))
        throw ConfigError("T", "duration must be non-negative");
    if (!(cfg.abort_threshold > 0.0))
        throw ConfigError("abort_threshold", "must be positive");
    if (cfg.sample_every == 0)
        throw ConfigError("sample_every", "must be at least 1");

    Family family = [&] {
        try
        {
            return Family::parse(cfg.family);
        }
        catch (std::exception const& e)
        {
            throw ConfigError("family", e.what());
        }
    }();
    std::optional<RotatorSpec> spec;
    try
    {
        spec.emplace(cfg.m, cfg.l, family);
    }
    catch (std::exception const& e)
    {
        throw ConfigError("family", e.what());
    }

    std::optional<GaugeProfile> profile;
    if (spec->is_fundamental())
    {
        try
        {
            profile = GaugeProfile::parse(cfg.profile);
            gauge_rapidity(*spec, profile->omega(0.0));
        }
        catch (std::exception const& e)
        {
            throw ConfigError("profile", e.what());
        }
    }

    State s0;
    try
    {
        s0 = build_initial_state(*spec, cfg.q, cfg.axis, cfg.phase);
    }
    catch (std::exception const& e)
    {
        throw ConfigError(spec->is_fundamental() ? "axis" : "Q", e.what());
    }

    double period = 0.0;
    if (!spec->is_fundamental())
        period = 2.0 * M_PI / std::abs(angular_velocity(*spec, {casimir_mass(*spec, s0), casimir_spin(*spec, s0)}));
    else if (cfg.profile.rfind("const:", 0) == 0 && profile->omega(0.0) != 0.0)
        period = 2.0 * M_PI / std::abs(profile->omega(0.0));

    IntegratorOptions opts;
    bool phen = !spec->is_fundamental();
    opts.duration = cfg.duration.value_or(phen ? 10.0 * period : 20.0);
    opts.dt = cfg.dt.value_or(phen ? period / 1000.0 : 1e-3);
    opts.stabilize = cfg.stabilize;
    opts.abort_threshold = cfg.abort_threshold;
    opts.sample_every = cfg.sample_every;
    return Scenario{cfg, *spec, profile, s0, opts, period};
}

//! Output directory: explicit flag, else ROTATOR_OUT_DIR, else the config value.
inline std::string output_directory(ScenarioConfig const& cfg, bool flag_given)
{
    if (!flag_given)
        if (char const* env = std::getenv("ROTATOR_OUT_DIR"); env && *env)
            return env;
    return cfg.out_dir;
}

}  // namespace rotator::cli
