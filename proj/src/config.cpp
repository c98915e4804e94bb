#include "hallmhd/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <charconv>
#include <climits>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace hallmhd {

namespace {

// A section is a list of (key, reader, writer) bindings onto one struct.
struct Binding {
    std::function<void(const YAML::Node&, const std::string&)> read;
    std::function<std::string()> write;
};
using Section = std::vector<std::pair<std::string, Binding>>;

double read_double(const YAML::Node& node, const std::string& key) {
    if (!node.IsScalar()) throw ValidationError("config key " + key + " must be a number");
    const std::string text = node.Scalar();
    double value = 0.0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || end != text.data() + text.size())
        throw ValidationError("config key " + key + " must be a number, got '" + text + "'");
    return value;
}

long long read_integer(const YAML::Node& node, const std::string& key) {
    if (!node.IsScalar()) throw ValidationError("config key " + key + " must be an integer");
    const std::string text = node.Scalar();
    long long value = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || end != text.data() + text.size())
        throw ValidationError("config key " + key + " must be an integer, got '" + text + "'");
    return value;
}

Binding bind(double& x) {
    return {[&x](const YAML::Node& n, const std::string& k) { x = read_double(n, k); },
            [&x] { return shortest_double(x); }};
}

Binding bind(int& x) {
    return {[&x](const YAML::Node& n, const std::string& k) {
                const long long v = read_integer(n, k);
                if (v < INT_MIN || v > INT_MAX) throw ValidationError("config key " + k + " is out of range");
                x = static_cast<int>(v);
            },
            [&x] { return std::to_string(x); }};
}

Binding bind(std::uint64_t& x) {
    return {[&x](const YAML::Node& n, const std::string& k) {
                if (!n.IsScalar()) throw ValidationError("config key " + k + " must be an integer");
                const std::string text = n.Scalar();
                std::uint64_t v = 0;
                const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
                if (ec != std::errc() || end != text.data() + text.size())
                    throw ValidationError("config key " + k + " must be a non-negative integer, got '" + text + "'");
                x = v;
            },
            [&x] { return std::to_string(x); }};
}

Binding bind(std::string& x) {
    return {[&x](const YAML::Node& n, const std::string& k) {
                if (!n.IsScalar()) throw ValidationError("config key " + k + " must be a string");
                x = n.Scalar();
            },
            [&x] { return x; }};
}

Binding bind_profile(TransitionProfile& p) {
    return {[&p](const YAML::Node& n, const std::string& k) {
                if (!n.IsScalar()) throw ValidationError("config key " + k + " must be a string");
                p = parse_transition_profile(n.Scalar());
            },
            [&p] { return to_string(p); }};
}

// dt accepts a number or the word auto
Binding bind_dt(SchemeConfig& s) {
    return {[&s](const YAML::Node& n, const std::string& k) {
                if (n.IsScalar() && n.Scalar() == "auto") {
                    s.auto_dt = true;
                } else {
                    s.auto_dt = false;
                    s.dt = read_double(n, k);
                }
            },
            [&s] { return s.auto_dt ? std::string("auto") : shortest_double(s.dt); }};
}

std::vector<std::pair<std::string, Section>> sections(RunConfig& c) {
    return {
        {"grid",
         {{"n", bind(c.grid.n)},
          {"box_side", bind(c.grid.box_side)},
          {"max_dk_over_epsilon", bind(c.grid.max_dk_over_epsilon)}}},
        {"recipe", {{"epsilon", bind(c.recipe.epsilon)}, {"profile", bind_profile(c.recipe.profile)}}},
        {"params", {{"mu", bind(c.params.mu)}, {"nu", bind(c.params.nu)}, {"alpha", bind(c.params.alpha)}}},
        {"scheme",
         {{"dt", bind_dt(c.scheme)},
          {"T", bind(c.scheme.T)},
          {"cfl_advect", bind(c.scheme.cfl_advect)},
          {"cfl_hall", bind(c.scheme.cfl_hall)},
          {"dt_cap", bind(c.scheme.dt_cap)},
          {"blowup_factor", bind(c.scheme.blowup_factor)},
          {"eta_relative", bind(c.scheme.eta_relative)}}},
        {"condition", {{"constant_C", bind(c.condition.constant_C)}, {"delta", bind(c.condition.delta)}}},
        {"perturbation", {{"v0_l2", bind(c.perturbation.v0_l2)}, {"c0_l2", bind(c.perturbation.c0_l2)}}},
        {"verify",
         {{"random_states", bind(c.verify.random_states)},
          {"structure_tol", bind(c.verify.structure_tol)},
          {"background_tol", bind(c.verify.background_tol)},
          {"identity_tol", bind(c.verify.identity_tol)},
          {"i3_gap_tol", bind(c.verify.i3_gap_tol)},
          {"cancel_tol", bind(c.verify.cancel_tol)},
          {"shape_tol", bind(c.verify.shape_tol)},
          {"reformulation_T", bind(c.verify.reformulation_T)},
          {"reformulation_tol", bind(c.verify.reformulation_tol)},
          {"commutator_band", bind(c.verify.commutator_band)}}},
        {"io",
         {{"output_path", bind(c.io.output_path)},
          {"observer_stride", bind(c.io.observer_stride)},
          {"checkpoint_stride", bind(c.io.checkpoint_stride)},
          {"seed", bind(c.io.seed)}}},
    };
}

}  // namespace

std::string shortest_double(double x) {
    if (std::isnan(x)) return ".nan";
    if (std::isinf(x)) return x > 0 ? ".inf" : "-.inf";
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    std::string s(buf, end);
    // keep numbers recognisable as floats
    if (s.find_first_of(".eE") == std::string::npos) s += ".0";
    return s;
}

RunConfig parse_config(const std::string& yaml_text) {
    YAML::Node root;
    try {
        root = YAML::Load(yaml_text);
    } catch (const YAML::Exception& e) {
        throw ValidationError(std::string("config is not valid YAML: ") + e.what());
    }
    RunConfig config;
    if (root.IsNull()) return config;
    if (!root.IsMap()) throw ValidationError("config must be a mapping of sections");
    auto secs = sections(config);
    std::set<std::string> seen_sections;
    for (const auto& top : root) {
        const std::string name = top.first.as<std::string>();
        if (!seen_sections.insert(name).second) throw ValidationError("duplicate config section '" + name + "'");
        auto it = std::find_if(secs.begin(), secs.end(), [&](const auto& s) { return s.first == name; });
        if (it == secs.end()) throw ValidationError("unknown config section '" + name + "'");
        const YAML::Node& body = top.second;
        if (body.IsNull()) continue;
        if (!body.IsMap()) throw ValidationError("config section '" + name + "' must be a mapping");
        std::set<std::string> seen;
        for (const auto& kv : body) {
            const std::string key = kv.first.as<std::string>();
            const std::string path = name + "." + key;
            auto b = std::find_if(it->second.begin(), it->second.end(), [&](const auto& e) { return e.first == key; });
            if (b == it->second.end()) throw ValidationError("unknown config key '" + path + "'");
            if (!seen.insert(key).second) throw ValidationError("duplicate config key '" + path + "'");
            b->second.read(kv.second, path);
        }
    }
    return config;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

std::string emit_config(const RunConfig& config) {
    RunConfig copy = config;
    YAML::Emitter out;
    out << YAML::BeginMap;
    for (auto& [name, section] : sections(copy)) {
        out << YAML::Key << name << YAML::Value << YAML::BeginMap;
        for (auto& [key, binding] : section) out << YAML::Key << key << YAML::Value << binding.write();
        out << YAML::EndMap;
    }
    out << YAML::EndMap;
    return std::string(out.c_str()) + "\n";
}

void save_config(const std::filesystem::path& path, const RunConfig& config) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << emit_config(config);
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

bool operator==(const RunConfig& a, const RunConfig& b) { return emit_config(a) == emit_config(b); }

void validate(const RunConfig& c) {
    auto need = [](bool ok, const std::string& what) {
        if (!ok) throw ValidationError("config: " + what);
    };
    need(c.grid.n >= 8 && c.grid.n % 2 == 0, "grid.n must be even and at least 8");
    need(c.grid.box_side > 0.0 && std::isfinite(c.grid.box_side), "grid.box_side must be positive");
    need(c.grid.max_dk_over_epsilon > 0.0, "grid.max_dk_over_epsilon must be positive");
    need(c.recipe.epsilon > 0.0 && c.recipe.epsilon < max_admissible_epsilon(),
         "recipe.epsilon must lie in (0, " + shortest_double(max_admissible_epsilon()) + ")");
    validate(c.params);
    need(c.scheme.auto_dt || (c.scheme.dt > 0.0 && std::isfinite(c.scheme.dt)), "scheme.dt must be positive or auto");
    validate(scheme_params(c));
    need(c.scheme.eta_relative > 0.0, "scheme.eta_relative must be positive");
    need(c.condition.constant_C > 0.0, "condition.constant_C must be positive");
    need(c.condition.delta > 0.0, "condition.delta must be positive");
    need(c.perturbation.v0_l2 >= 0.0 && c.perturbation.c0_l2 >= 0.0, "perturbation norms must be non-negative");
    need(c.verify.random_states >= 1, "verify.random_states must be at least 1");
    need(c.verify.reformulation_T >= 0.0, "verify.reformulation_T must be non-negative");
    need(c.verify.commutator_band >= 1.0, "verify.commutator_band must be at least 1");
    need(!c.io.output_path.empty(), "io.output_path must not be empty");
    need(c.io.observer_stride >= 1, "io.observer_stride must be at least 1");
    need(c.io.checkpoint_stride >= 0, "io.checkpoint_stride must be non-negative");
}

GridSpec make_grid(const RunConfig& config) { return make_grid(config.grid.n, config.grid.box_side); }

DataRecipe make_recipe(const RunConfig& config) { return make_recipe(config.recipe.epsilon, config.recipe.profile); }

ResolutionPolicy resolution_policy(const RunConfig& config, bool for_run) {
    return {config.grid.max_dk_over_epsilon, for_run};
}

SchemeParams scheme_params(const RunConfig& config) {
    SchemeParams s;
    s.dt = config.scheme.auto_dt ? 0.0 : config.scheme.dt;
    s.T = config.scheme.T;
    s.cfl_advect = config.scheme.cfl_advect;
    s.cfl_hall = config.scheme.cfl_hall;
    s.dt_cap = config.scheme.dt_cap;
    s.blowup_factor = config.scheme.blowup_factor;
    s.sample_stride = INT_MAX;
    return s;
}

}  // namespace hallmhd
