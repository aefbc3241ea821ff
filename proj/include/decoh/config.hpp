#pragma once

// Run configuration: a TOML (or JSON) document with blocks
//   [gas] [[states]] [rate] [evolve] [scan] [invert] [oracle] [output]
// Values keep the units they were written in; conversion to SI happens in
// to_gas() / to_model(). Validation reports every problem at once.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <optional>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include "decoh/scattering.hpp"
#include "decoh/toml.hpp"
#include "decoh/units.hpp"

namespace decoh {

using json = nlohmann::ordered_json;

struct ConfigIssue {
    std::string location;
    std::string message;
};

class ConfigValidationError : public ConfigError {
public:
    explicit ConfigValidationError(std::vector<ConfigIssue> issues)
        : ConfigError(render(issues)), issues_(std::move(issues)) {}
    const std::vector<ConfigIssue>& issues() const noexcept { return issues_; }

private:
    static std::string render(const std::vector<ConfigIssue>& issues) {
        std::string s = std::to_string(issues.size()) + " configuration error(s):";
        for (const auto& i : issues) s += "\n  " + i.location + ": " + i.message;
        return s;
    }
    std::vector<ConfigIssue> issues_;
};

struct GasBlock {
    double temperature = 0;
    std::string temperature_unit = "K";
    double density = 0;
    std::string density_unit = "cm^-3";
    double atom_mass = 0;
    double particle_mass = 0;
    std::string mass_unit = "g/mol";
    friend bool operator==(const GasBlock&, const GasBlock&) = default;
};

struct ResonanceBlock {
    double position = 0;  // G
    double width = 0;     // G
    double strength = 0;  // state length unit
    friend bool operator==(const ResonanceBlock&, const ResonanceBlock&) = default;
};

struct StateBlock {
    std::string name;
    std::string length_unit = "bohr";
    double alpha = 0;
    double beta = 0;
    std::vector<ResonanceBlock> resonances;
    friend bool operator==(const StateBlock&, const StateBlock&) = default;
};

struct RateBlock {
    std::string state_a, state_b;
    double field = 0;
    double eta0 = 1;
    friend bool operator==(const RateBlock&, const RateBlock&) = default;
};

struct EvolveBlock {
    std::string state_a, state_b;
    double field = 0;
    double t_max = 1;  // s
    std::int64_t steps = 100;
    double eta0 = 1;
    double rho_aa = 0.5, rho_bb = 0.5, rho_ab = 0.5;
    double epsilon = 0.1;
    friend bool operator==(const EvolveBlock&, const EvolveBlock&) = default;
};

struct ScanBlock {
    std::string state_a, state_b;
    double field_lo = 0, field_hi = 0;
    std::int64_t base_points = 256;
    std::int64_t refine_depth = 12;
    double suppression_threshold = 1e-2;
    double eta0 = 1;
    friend bool operator==(const ScanBlock&, const ScanBlock&) = default;
};

struct InvertBlock {
    std::string reference;
    std::string truth;         // model used by synth; optional for invert
    std::string measurements;  // CSV path; empty -> synthesize from truth
    std::string rule = "smooth";
    std::optional<double> anchor;  // reference length unit (bohr)
    double field_lo = 0, field_hi = 0;
    std::int64_t points = 500;
    double noise_sigma = 0;     // s^-1
    double noise_fraction = 0;  // of median noiseless rate; used when noise_sigma is 0
    std::uint64_t seed = 0;
    double eta0 = 1;
    double beta_unknown = 0;  // bohr, used when measurements carry no zeta0
    friend bool operator==(const InvertBlock&, const InvertBlock&) = default;
};

struct OracleBlock {
    double kappa_range = 1;
    double range = 10;  // bohr
    double absorber_fraction = 0;  // W / V0
    friend bool operator==(const OracleBlock&, const OracleBlock&) = default;
};

struct OutputBlock {
    std::string directory = ".";
    std::int64_t precision = 17;
    friend bool operator==(const OutputBlock&, const OutputBlock&) = default;
};

struct RunConfig {
    GasBlock gas;
    std::vector<StateBlock> states;
    std::optional<RateBlock> rate;
    std::optional<EvolveBlock> evolve;
    std::optional<ScanBlock> scan;
    std::optional<InvertBlock> invert;
    std::optional<OracleBlock> oracle;
    OutputBlock output;
    friend bool operator==(const RunConfig&, const RunConfig&) = default;

    const StateBlock* find_state(const std::string& name) const {
        for (const auto& s : states)
            if (s.name == name) return &s;
        return nullptr;
    }
};

inline GasParameters to_gas(const GasBlock& g) {
    return build_gas_parameters_si(g.temperature * UnitContext::to_si(parse_temperature_unit(g.temperature_unit)),
                                   g.density * UnitContext::to_si(parse_density_unit(g.density_unit)),
                                   g.atom_mass * UnitContext::to_si(parse_mass_unit(g.mass_unit)),
                                   g.particle_mass * UnitContext::to_si(parse_mass_unit(g.mass_unit)));
}

inline StateScatteringModel to_model(const StateBlock& s) {
    const double unit = UnitContext::to_si(parse_length_unit(s.length_unit));
    StateScatteringModel m;
    m.label = s.name;
    m.background = {s.alpha * unit, s.beta * unit};
    for (const auto& r : s.resonances) m.resonances.push_back({r.position, r.width, r.strength * unit});
    return m;
}

namespace detail {

// Reads typed fields from one json object, recording issues instead of throwing.
class BlockReader {
public:
    BlockReader(const json& obj, std::string pointer, const tomlio::Document* doc, std::string source,
                std::vector<ConfigIssue>& issues)
        : obj_(obj), ptr_(std::move(pointer)), doc_(doc), source_(std::move(source)), issues_(issues) {}

    std::string location(const std::string& key = {}) const {
        const std::string p = key.empty() ? ptr_ : ptr_ + "/" + key;
        if (doc_) {
            auto it = doc_->lines.find(p);
            if (it == doc_->lines.end()) it = doc_->lines.find(ptr_);
            if (it != doc_->lines.end()) return source_ + ":" + std::to_string(it->second) + " (" + p + ")";
        }
        return source_ + ":" + (p.empty() ? "/" : p);
    }
    void issue(const std::string& key, const std::string& msg) { issues_.push_back({location(key), msg}); }

    template <typename T>
    void read(const char* key, T& out, bool required) {
        if (!obj_.contains(key)) {
            if (required) issue({}, std::string("missing key '") + key + "'");
            unread_.insert(key);
            return;
        }
        const json& v = obj_.at(key);
        try {
            if constexpr (std::is_same_v<T, double>) {
                if (!v.is_number()) throw std::invalid_argument("expected a number");
                out = v.get<double>();
            } else if constexpr (std::is_same_v<T, std::int64_t>) {
                if (!v.is_number_integer()) throw std::invalid_argument("expected an integer");
                out = v.get<std::int64_t>();
            } else if constexpr (std::is_same_v<T, std::uint64_t>) {
                if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0))
                    throw std::invalid_argument("expected a non-negative integer");
                out = v.get<std::uint64_t>();
            } else if constexpr (std::is_same_v<T, std::string>) {
                if (!v.is_string()) throw std::invalid_argument("expected a string");
                out = v.get<std::string>();
            } else if constexpr (std::is_same_v<T, std::optional<double>>) {
                if (!v.is_number()) throw std::invalid_argument("expected a number");
                out = v.get<double>();
            }
        } catch (const std::exception& e) {
            issue(key, e.what());
            unread_.insert(key);
        }
    }

    template <typename Unit, typename Parser>
    void check_unit(const char* key, const std::string& value, Parser parse) {
        try {
            (void)static_cast<Unit>(parse(value));
        } catch (const ConfigError& e) {
            issue(key, e.what());
        }
    }

    // Absent or mistyped keys are already reported; defaults are valid.
    void positive(const char* key, double v) {
        if (!unread_.count(key) && !(v > 0)) issue(key, "must be > 0");
    }

    const json& obj() const { return obj_; }
    const std::string& pointer() const { return ptr_; }

private:
    const json& obj_;
    std::string ptr_;
    const tomlio::Document* doc_;
    std::string source_;
    std::vector<ConfigIssue>& issues_;
    std::set<std::string> unread_;
};

inline const json* block(const json& root, const char* name, std::vector<ConfigIssue>& issues,
                         const std::string& source) {
    if (!root.contains(name)) return nullptr;
    const json& b = root.at(name);
    if (!b.is_object()) {
        issues.push_back({source + ":/" + name, "must be a table"});
        return nullptr;
    }
    return &b;
}

}  // namespace detail

/// Builds and validates a RunConfig from a parsed document. `doc` supplies
/// line numbers when the input was TOML.
inline RunConfig config_from_json(const json& root, const std::string& source, const tomlio::Document* doc = nullptr) {
    std::vector<ConfigIssue> issues;
    RunConfig cfg;
    using detail::BlockReader;
    if (!root.is_object()) throw ConfigValidationError({{source, "top level must be a table"}});

    static const std::vector<std::string> known{"gas", "states", "rate", "evolve", "scan", "invert", "oracle", "output"};
    for (auto it = root.begin(); it != root.end(); ++it)
        if (std::find(known.begin(), known.end(), it.key()) == known.end())
            issues.push_back({source + ":/" + it.key(), "unknown block '" + it.key() + "'"});

    if (const json* g = detail::block(root, "gas", issues, source)) {
        BlockReader r(*g, "/gas", doc, source, issues);
        auto& b = cfg.gas;
        r.read("temperature", b.temperature, true);
        r.read("temperature_unit", b.temperature_unit, false);
        r.read("density", b.density, true);
        r.read("density_unit", b.density_unit, false);
        r.read("atom_mass", b.atom_mass, true);
        r.read("particle_mass", b.particle_mass, true);
        r.read("mass_unit", b.mass_unit, false);
        r.positive("temperature", b.temperature);
        r.positive("density", b.density);
        r.positive("atom_mass", b.atom_mass);
        r.positive("particle_mass", b.particle_mass);
        r.check_unit<TemperatureUnit>("temperature_unit", b.temperature_unit, parse_temperature_unit);
        r.check_unit<DensityUnit>("density_unit", b.density_unit, parse_density_unit);
        r.check_unit<MassUnit>("mass_unit", b.mass_unit, parse_mass_unit);
    } else {
        issues.push_back({source + ":/", "missing block [gas]"});
    }

    if (root.contains("states")) {
        const json& arr = root.at("states");
        if (!arr.is_array()) {
            issues.push_back({source + ":/states", "must be an array of tables ([[states]])"});
        } else {
            std::map<std::string, std::string> seen;  // name -> location
            for (std::size_t i = 0; i < arr.size(); ++i) {
                const std::string ptr = "/states/" + std::to_string(i);
                if (!arr[i].is_object()) {
                    issues.push_back({source + ":" + ptr, "state must be a table"});
                    continue;
                }
                BlockReader r(arr[i], ptr, doc, source, issues);
                StateBlock s;
                r.read("name", s.name, true);
                r.read("length_unit", s.length_unit, false);
                r.read("alpha", s.alpha, true);
                r.read("beta", s.beta, false);
                r.check_unit<LengthUnit>("length_unit", s.length_unit, parse_length_unit);
                if (s.beta < 0) r.issue("beta", "loss part must be >= 0");
                if (auto it = seen.find(s.name); it != seen.end() && !s.name.empty())
                    r.issue("name", "duplicate state name '" + s.name + "' (first defined at " + it->second + ")");
                else
                    seen[s.name] = r.location("name");
                if (arr[i].contains("resonances")) {
                    const json& res = arr[i].at("resonances");
                    if (!res.is_array()) r.issue("resonances", "must be an array of tables");
                    for (std::size_t j = 0; res.is_array() && j < res.size(); ++j) {
                        const std::string rptr = ptr + "/resonances/" + std::to_string(j);
                        if (!res[j].is_object()) {
                            issues.push_back({source + ":" + rptr, "resonance must be a table"});
                            continue;
                        }
                        BlockReader rr(res[j], rptr, doc, source, issues);
                        ResonanceBlock rb;
                        rr.read("position", rb.position, true);
                        rr.read("width", rb.width, true);
                        rr.read("strength", rb.strength, true);
                        rr.positive("width", rb.width);
                        if (rb.strength < 0) rr.issue("strength", "must be >= 0");
                        if (!s.resonances.empty() && !(rb.position > s.resonances.back().position))
                            rr.issue("position", "resonance positions must be strictly increasing");
                        s.resonances.push_back(rb);
                    }
                }
                cfg.states.push_back(std::move(s));
            }
        }
    }

    auto require_state = [&](detail::BlockReader& r, const char* key, const std::string& name) {
        if (!name.empty() && !cfg.find_state(name)) r.issue(key, "unknown state '" + name + "'");
    };

    if (const json* b = detail::block(root, "rate", issues, source)) {
        BlockReader r(*b, "/rate", doc, source, issues);
        RateBlock x;
        r.read("state_a", x.state_a, true);
        r.read("state_b", x.state_b, true);
        r.read("field", x.field, false);
        r.read("eta0", x.eta0, false);
        require_state(r, "state_a", x.state_a);
        require_state(r, "state_b", x.state_b);
        if (!(x.eta0 > 0 && x.eta0 <= 1)) r.issue("eta0", "must lie in (0, 1]");
        cfg.rate = x;
    }
    if (const json* b = detail::block(root, "evolve", issues, source)) {
        BlockReader r(*b, "/evolve", doc, source, issues);
        EvolveBlock x;
        r.read("state_a", x.state_a, true);
        r.read("state_b", x.state_b, true);
        r.read("field", x.field, false);
        r.read("t_max", x.t_max, false);
        r.read("steps", x.steps, false);
        r.read("eta0", x.eta0, false);
        r.read("rho_aa", x.rho_aa, false);
        r.read("rho_bb", x.rho_bb, false);
        r.read("rho_ab", x.rho_ab, false);
        r.read("epsilon", x.epsilon, false);
        require_state(r, "state_a", x.state_a);
        require_state(r, "state_b", x.state_b);
        r.positive("t_max", x.t_max);
        if (x.steps < 1) r.issue("steps", "must be >= 1");
        if (!(x.eta0 > 0 && x.eta0 <= 1)) r.issue("eta0", "must lie in (0, 1]");
        if (!(x.epsilon > 0 && x.epsilon < 1)) r.issue("epsilon", "must lie in (0, 1)");
        r.positive("rho_ab", x.rho_ab);
        cfg.evolve = x;
    }
    if (const json* b = detail::block(root, "scan", issues, source)) {
        BlockReader r(*b, "/scan", doc, source, issues);
        ScanBlock x;
        r.read("state_a", x.state_a, true);
        r.read("state_b", x.state_b, true);
        r.read("field_lo", x.field_lo, true);
        r.read("field_hi", x.field_hi, true);
        r.read("base_points", x.base_points, false);
        r.read("refine_depth", x.refine_depth, false);
        r.read("suppression_threshold", x.suppression_threshold, false);
        r.read("eta0", x.eta0, false);
        require_state(r, "state_a", x.state_a);
        require_state(r, "state_b", x.state_b);
        if (!(x.field_lo < x.field_hi)) r.issue("field_hi", "must exceed field_lo");
        if (x.base_points < 16) r.issue("base_points", "must be >= 16");
        if (x.refine_depth < 0 || x.refine_depth > 40) r.issue("refine_depth", "must lie in [0, 40]");
        r.positive("suppression_threshold", x.suppression_threshold);
        if (!(x.eta0 > 0 && x.eta0 <= 1)) r.issue("eta0", "must lie in (0, 1]");
        cfg.scan = x;
    }
    if (const json* b = detail::block(root, "invert", issues, source)) {
        BlockReader r(*b, "/invert", doc, source, issues);
        InvertBlock x;
        r.read("reference", x.reference, true);
        r.read("truth", x.truth, false);
        r.read("measurements", x.measurements, false);
        r.read("rule", x.rule, false);
        r.read("anchor", x.anchor, false);
        r.read("field_lo", x.field_lo, false);
        r.read("field_hi", x.field_hi, false);
        r.read("points", x.points, false);
        r.read("noise_sigma", x.noise_sigma, false);
        r.read("noise_fraction", x.noise_fraction, false);
        r.read("seed", x.seed, false);
        r.read("eta0", x.eta0, false);
        r.read("beta_unknown", x.beta_unknown, false);
        require_state(r, "reference", x.reference);
        require_state(r, "truth", x.truth);
        if (x.rule != "flat" && x.rule != "smooth") r.issue("rule", "must be \"flat\" or \"smooth\"");
        if (x.measurements.empty()) {
            if (x.truth.empty()) r.issue({}, "needs either 'measurements' or a 'truth' state to synthesize from");
            if (!(x.field_lo < x.field_hi)) r.issue("field_hi", "must exceed field_lo");
            if (x.points < 3) r.issue("points", "must be >= 3");
        }
        if (x.noise_sigma < 0) r.issue("noise_sigma", "must be >= 0");
        if (x.noise_fraction < 0) r.issue("noise_fraction", "must be >= 0");
        if (!(x.eta0 > 0 && x.eta0 <= 1)) r.issue("eta0", "must lie in (0, 1]");
        if (x.beta_unknown < 0) r.issue("beta_unknown", "must be >= 0");
        cfg.invert = x;
    }
    if (const json* b = detail::block(root, "oracle", issues, source)) {
        BlockReader r(*b, "/oracle", doc, source, issues);
        OracleBlock x;
        r.read("kappa_range", x.kappa_range, false);
        r.read("range", x.range, false);
        r.read("absorber_fraction", x.absorber_fraction, false);
        if (x.kappa_range < 0) r.issue("kappa_range", "must be >= 0");
        r.positive("range", x.range);
        if (x.absorber_fraction < 0) r.issue("absorber_fraction", "must be >= 0");
        cfg.oracle = x;
    }
    if (const json* b = detail::block(root, "output", issues, source)) {
        BlockReader r(*b, "/output", doc, source, issues);
        r.read("directory", cfg.output.directory, false);
        r.read("precision", cfg.output.precision, false);
        if (cfg.output.precision < 1 || cfg.output.precision > 17) r.issue("precision", "must lie in [1, 17]");
    }

    if (!issues.empty()) throw ConfigValidationError(std::move(issues));
    return cfg;
}

inline json to_json(const RunConfig& c) {
    json root = json::object();
    root["gas"] = {{"temperature", c.gas.temperature},   {"temperature_unit", c.gas.temperature_unit},
                   {"density", c.gas.density},           {"density_unit", c.gas.density_unit},
                   {"atom_mass", c.gas.atom_mass},       {"particle_mass", c.gas.particle_mass},
                   {"mass_unit", c.gas.mass_unit}};
    json states = json::array();
    for (const auto& s : c.states) {
        json js = {{"name", s.name}, {"length_unit", s.length_unit}, {"alpha", s.alpha}, {"beta", s.beta}};
        json res = json::array();
        for (const auto& r : s.resonances)
            res.push_back({{"position", r.position}, {"width", r.width}, {"strength", r.strength}});
        js["resonances"] = res;
        states.push_back(js);
    }
    root["states"] = states;
    if (c.rate)
        root["rate"] = {{"state_a", c.rate->state_a}, {"state_b", c.rate->state_b}, {"field", c.rate->field},
                        {"eta0", c.rate->eta0}};
    if (c.evolve) {
        const auto& e = *c.evolve;
        root["evolve"] = {{"state_a", e.state_a}, {"state_b", e.state_b}, {"field", e.field}, {"t_max", e.t_max},
                          {"steps", e.steps},     {"eta0", e.eta0},       {"rho_aa", e.rho_aa}, {"rho_bb", e.rho_bb},
                          {"rho_ab", e.rho_ab},   {"epsilon", e.epsilon}};
    }
    if (c.scan) {
        const auto& s = *c.scan;
        root["scan"] = {{"state_a", s.state_a},
                        {"state_b", s.state_b},
                        {"field_lo", s.field_lo},
                        {"field_hi", s.field_hi},
                        {"base_points", s.base_points},
                        {"refine_depth", s.refine_depth},
                        {"suppression_threshold", s.suppression_threshold},
                        {"eta0", s.eta0}};
    }
    if (c.invert) {
        const auto& v = *c.invert;
        json j = {{"reference", v.reference}, {"truth", v.truth},     {"measurements", v.measurements},
                  {"rule", v.rule},           {"field_lo", v.field_lo}, {"field_hi", v.field_hi},
                  {"points", v.points},       {"noise_sigma", v.noise_sigma}, {"noise_fraction", v.noise_fraction},
                  {"seed", v.seed},           {"eta0", v.eta0},       {"beta_unknown", v.beta_unknown}};
        if (v.anchor) j["anchor"] = *v.anchor;
        root["invert"] = j;
    }
    if (c.oracle)
        root["oracle"] = {{"kappa_range", c.oracle->kappa_range}, {"range", c.oracle->range},
                          {"absorber_fraction", c.oracle->absorber_fraction}};
    root["output"] = {{"directory", c.output.directory}, {"precision", c.output.precision}};
    return root;
}

inline std::string serialize_toml(const RunConfig& c) { return tomlio::dump(to_json(c)); }

enum class ConfigFormat { toml, json };

inline RunConfig parse_config(std::string_view text, ConfigFormat format, const std::string& source = "<config>") {
    if (format == ConfigFormat::json) {
        json root;
        try {
            root = json::parse(text);
        } catch (const json::parse_error& e) {
            throw ConfigValidationError({{source, e.what()}});
        }
        return config_from_json(root, source);
    }
    tomlio::Document doc;
    try {
        doc = tomlio::parse(text);
    } catch (const tomlio::ParseError& e) {
        throw ConfigValidationError({{source + ":" + std::to_string(e.line()), e.what()}});
    }
    return config_from_json(doc.root, source, &doc);
}

inline RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    const auto format = path.extension() == ".json" ? ConfigFormat::json : ConfigFormat::toml;
    return parse_config(buf.str(), format, path.string());
}

}  // namespace decoh
