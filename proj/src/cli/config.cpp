#include "susy/cli.hpp"
#include "susy/errors.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace susy::cli {

namespace {

void check_keys(const YAML::Node& node, const std::set<std::string>& allowed, const std::string& where)
{
    if (!node.IsMap()) throw ConfigurationError(where + ": expected a mapping");
    for (const auto& kv : node) {
        const auto key = kv.first.as<std::string>();
        if (!allowed.count(key)) throw ConfigurationError(where + ": unknown key '" + key + "'");
    }
}

template <class T>
T get_or(const YAML::Node& n, const char* key, T fallback, const std::string& where)
{
    if (!n[key]) return fallback;
    try {
        return n[key].as<T>();
    } catch (const YAML::Exception&) {
        throw ConfigurationError(where + "." + key + ": wrong type");
    }
}

BaseKind parse_base(const std::string& s)
{
    if (s == "free" || s == "free_line") return BaseKind::FreeLine;
    if (s == "box") return BaseKind::Box;
    if (s == "oscillator") return BaseKind::Oscillator;
    throw ConfigurationError("base: expected one of free | box | oscillator, got '" + s + "'");
}

Action parse_action(const std::string& s)
{
    if (s == "remove") return Action::RemoveLevel;
    if (s == "create") return Action::CreateLevel;
    if (s == "isospectral") return Action::Isospectral;
    throw ConfigurationError("chain.action: expected remove | create | isospectral, got '" + s + "'");
}

Range parse_range(const YAML::Node& n, const std::string& where, Range fallback)
{
    if (!n) return fallback;
    check_keys(n, {"min", "max", "count"}, where);
    Range r;
    r.min = get_or(n, "min", fallback.min, where);
    r.max = get_or(n, "max", fallback.max, where);
    r.count = get_or(n, "count", fallback.count, where);
    if (r.count < 1) throw ConfigurationError(where + ".count must be positive");
    if (r.count > 1 && !(r.max > r.min)) throw ConfigurationError(where + ": max must exceed min");
    return r;
}

Range default_window(BaseKind k)
{
    switch (k) {
    case BaseKind::Box: return {0.05, 0.95, 19};
    case BaseKind::Oscillator: return {-2.0, 2.0, 9};
    case BaseKind::FreeLine: return {-3.0, 3.0, 13};
    }
    return {};
}

} // namespace

MethodChoice parse_method(const std::string& s)
{
    if (s == "closed" || s == "closed-form") return MethodChoice::Closed;
    if (s == "theorem" || s == "theorem-route") return MethodChoice::Theorem;
    if (s == "oracle") return MethodChoice::Oracle;
    throw ConfigurationError("method: expected closed | theorem | oracle, got '" + s + "'");
}

std::string to_string(MethodChoice m)
{
    switch (m) {
    case MethodChoice::Closed: return "closed";
    case MethodChoice::Theorem: return "theorem";
    case MethodChoice::Oracle: return "oracle";
    }
    return "?";
}

ModelConfig load_config_text(const std::string& text)
{
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::Exception& e) {
        throw ConfigurationError(std::string("config: ") + e.what());
    }
    if (!root || root.IsNull()) throw ConfigurationError("config: empty document");
    check_keys(root,
               {"base", "chain", "transparent", "oscillator_pair", "window", "time", "method", "compare_with",
                "tolerance", "energy", "regularized", "oracle", "seed", "override_admissibility"},
               "config");
    ModelConfig c;
    c.source_text = text;
    if (!root["base"]) throw ConfigurationError("config: 'base' is required");
    c.base = parse_base(root["base"].as<std::string>());

    const int shortcuts = (root["chain"] ? 1 : 0) + (root["transparent"] ? 1 : 0) + (root["oscillator_pair"] ? 1 : 0);
    if (shortcuts > 1) throw ConfigurationError("config: use only one of chain | transparent | oscillator_pair");

    if (const auto ch = root["chain"]) {
        if (!ch.IsSequence()) throw ConfigurationError("chain: expected a list");
        int i = 0;
        for (const auto& e : ch) {
            const std::string where = "chain[" + std::to_string(i++) + "]";
            check_keys(e, {"family", "a", "b", "n", "k", "sign", "action"}, where);
            ChainEntry ce;
            ce.family = get_or<std::string>(e, "family", "", where);
            ce.a = get_or(e, "a", 0.0, where);
            ce.b = get_or(e, "b", 0.0, where);
            ce.n = get_or(e, "n", get_or(e, "k", 0, where), where);
            ce.sign = get_or(e, "sign", 1, where);
            if (!e["action"]) throw ConfigurationError(where + ": 'action' is required");
            ce.action = parse_action(e["action"].as<std::string>());
            static const std::set<std::string> families{"trig_box", "cosh", "sinh", "hermite", "plane_exp"};
            if (!families.count(ce.family))
                throw ConfigurationError(where + ".family: expected trig_box | cosh | sinh | hermite | plane_exp");
            c.chain.push_back(ce);
        }
    }
    if (const auto tr = root["transparent"]) {
        check_keys(tr, {"a", "b"}, "transparent");
        if (c.base != BaseKind::FreeLine) throw ConfigurationError("transparent: requires base: free");
        const auto a = get_or<std::vector<double>>(tr, "a", {}, "transparent");
        auto b = get_or<std::vector<double>>(tr, "b", {}, "transparent");
        if (a.empty()) throw ConfigurationError("transparent.a: at least one wavenumber is required");
        if (b.empty()) b.assign(a.size(), 0.0);
        if (b.size() != a.size()) throw ConfigurationError("transparent: a and b differ in length");
        std::vector<int> idx(a.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
        std::sort(idx.begin(), idx.end(), [&](int i, int j) { return a[i] < a[j]; });
        for (std::size_t p = 0; p < idx.size(); ++p)
            c.chain.push_back({p % 2 == 0 ? "cosh" : "sinh", a[idx[p]], b[idx[p]], 0, 1, Action::CreateLevel});
    }
    if (const auto op = root["oscillator_pair"]) {
        if (c.base != BaseKind::Oscillator) throw ConfigurationError("oscillator_pair: requires base: oscillator");
        const int k = op.as<int>();
        if (k < 0) throw ConfigurationError("oscillator_pair: level index must be non-negative");
        c.chain.push_back({"hermite", 0, 0, k, 1, Action::RemoveLevel});
        c.chain.push_back({"hermite", 0, 0, k + 1, 1, Action::RemoveLevel});
    }

    const Range dw = default_window(c.base);
    if (const auto w = root["window"]) {
        check_keys(w, {"x", "y"}, "window");
        c.x = parse_range(w["x"], "window.x", dw);
        c.y = parse_range(w["y"], "window.y", c.x);
    } else {
        c.x = c.y = dw;
    }
    if (const auto t = root["time"]) {
        check_keys(t, {"real", "wick"}, "time");
        c.time = ComplexTime(get_or(t, "real", 0.0, "time"), get_or(t, "wick", 0.0, "time"));
    } else {
        c.time = ComplexTime::wick(c.base == BaseKind::Box ? 0.05 : 0.5);
    }
    if (c.time.is_zero()) throw ConfigurationError("time: t = 0 is not allowed");
    if (c.time.wick_part < 0.0) throw ConfigurationError("time.wick must be non-negative");
    if (root["method"]) c.method = parse_method(root["method"].as<std::string>());
    if (root["compare_with"]) c.compare_with = parse_method(root["compare_with"].as<std::string>());
    c.tolerance = get_or(root, "tolerance", 1e-4, "config");
    c.energy = get_or(root, "energy", -1.0, "config");
    c.regularized = get_or(root, "regularized", false, "config");
    c.seed = get_or<std::uint64_t>(root, "seed", 0, "config");
    c.override_admissibility = get_or(root, "override_admissibility", false, "config");
    if (const auto o = root["oracle"]) {
        check_keys(o, {"a", "b", "spacing", "states"}, "oracle");
        if (o["a"]) c.oracle.a = o["a"].as<double>();
        if (o["b"]) c.oracle.b = o["b"].as<double>();
        if (o["spacing"]) c.oracle.spacing = o["spacing"].as<double>();
        if (o["states"]) c.oracle.states = o["states"].as<int>();
        if ((c.oracle.spacing && !(*c.oracle.spacing > 0.0)) || (c.oracle.states && *c.oracle.states < 1))
            throw ConfigurationError("oracle: spacing and states must be positive");
    }
    return c;
}

ModelConfig load_config_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigurationError("config: cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_config_text(ss.str());
}

std::optional<DarbouxChain> build_chain(const ModelConfig& cfg)
{
    if (cfg.chain.empty()) return std::nullopt;
    std::vector<BasisFunction> fs;
    std::vector<Action> as;
    for (const auto& e : cfg.chain) {
        if (e.family == "trig_box") {
            if (cfg.base != BaseKind::Box) throw ConfigurationError("chain: trig_box requires base: box");
            fs.push_back(BasisFunction::trig_box(e.n));
        } else if (e.family == "cosh") {
            fs.push_back(BasisFunction::cosh(e.a, e.b));
        } else if (e.family == "sinh") {
            fs.push_back(BasisFunction::sinh(e.a, e.b));
        } else if (e.family == "hermite") {
            if (cfg.base != BaseKind::Oscillator) throw ConfigurationError("chain: hermite requires base: oscillator");
            fs.push_back(BasisFunction::hermite_gaussian(e.n));
        } else {
            fs.push_back(BasisFunction::plane_exp(e.sign, e.a));
        }
        as.push_back(e.action);
    }
    return DarbouxChain(cfg.base, std::move(fs), std::move(as), {cfg.override_admissibility});
}

std::string config_hash(const ModelConfig& cfg)
{
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : cfg.source_text) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace susy::cli
