#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "owcsa/config.hpp"
#include "owcsa/errors.hpp"

namespace owcsa {

namespace {

std::string trim(std::string_view s)
{
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::string lower(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

struct Quantity {
    double value;
    std::string unit;
};

Quantity split_quantity(const std::string& key, const std::string& text)
{
    double v = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || !std::isfinite(v))
        throw ConfigError(fmt::format("'{}': expected a number, got '{}'", key, text));
    return {v, trim(std::string_view(ptr, static_cast<std::size_t>(last - ptr)))};
}

using Units = std::vector<std::pair<std::string, double>>;

double with_units(const std::string& key, const std::string& text, const Units& units)
{
    auto q = split_quantity(key, text);
    for (const auto& [name, scale] : units)
        if (q.unit == name)
            return q.value * scale;
    std::string allowed;
    for (const auto& [name, scale] : units)
        allowed += (allowed.empty() ? "" : ", ") + (name.empty() ? std::string("(none)") : name);
    throw ConfigError(fmt::format("'{}': unknown unit '{}' (allowed: {})", key, q.unit, allowed));
}

const Units kAngle = {{"", kPi / 180}, {"deg", kPi / 180}, {"rad", 1.0}};
const Units kArea = {{"", 1.0}, {"m2", 1.0}, {"cm2", 1e-4}, {"mm2", 1e-6}};
const Units kLength = {{"", 1.0}, {"m", 1.0}, {"cm", 1e-2}, {"mm", 1e-3}};
const Units kPower = {{"", 1.0}, {"W", 1.0}, {"mW", 1e-3}, {"uW", 1e-6}};
const Units kFrequency = {{"", 1.0}, {"Hz", 1.0}, {"kHz", 1e3}, {"MHz", 1e6}, {"GHz", 1e9}};
const Units kPsd = {{"", 1.0}, {"W/Hz", 1.0}};
const Units kPlain = {{"", 1.0}};

void require(bool ok, const std::string& key, const std::string& constraint)
{
    if (!ok)
        throw ConfigError(fmt::format("'{}' must be {}", key, constraint));
}

double positive(const std::string& key, const std::string& text, const Units& units)
{
    const double v = with_units(key, text, units);
    require(v > 0.0, key, "> 0");
    return v;
}

long long integer(const std::string& key, const std::string& text, long long lo, long long hi)
{
    long long v = 0;
    auto t = trim(text);
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size()) {
        // accept integral values written as floating point, e.g. 1e6
        auto q = split_quantity(key, t);
        require(q.unit.empty() && q.value == std::floor(q.value) && std::abs(q.value) < 9e15, key, "an integer");
        v = static_cast<long long>(q.value);
    }
    require(v >= lo && v <= hi, key, fmt::format("an integer in [{}, {}]", lo, hi));
    return v;
}

std::uint64_t unsigned64(const std::string& key, const std::string& text)
{
    std::uint64_t v = 0;
    auto t = trim(text);
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    require(ec == std::errc() && ptr == t.data() + t.size(), key, "an unsigned 64-bit integer");
    return v;
}

template <class E>
E choice(const std::string& key, const std::string& text, std::initializer_list<E> options)
{
    std::string allowed;
    for (E e : options) {
        if (text == to_string(e))
            return e;
        allowed += (allowed.empty() ? "" : "|") + std::string(to_string(e));
    }
    throw ConfigError(fmt::format("'{}' must be one of {}, got '{}'", key, allowed, text));
}

struct Key {
    const char* section;
    const char* name;
    std::function<void(RunConfig&, const std::string&)> set;
    std::function<std::string(const RunConfig&)> get;
};

std::string deg(double rad) { return fmt::format("{:.15g} deg", rad * 180 / kPi); }

const std::vector<Key>& registry()
{
    static const std::vector<Key> keys = {
        {"system", "semi_angle",
         [](RunConfig& c, const std::string& v) {
             const double a = with_units("semi_angle", v, kAngle);
             require(a > 0 && a < kPi / 2, "semi_angle", "in (0, 90) deg");
             c.led.semi_angle_half_power = a;
         },
         [](const RunConfig& c) { return deg(c.led.semi_angle_half_power); }},
        {"system", "fov",
         [](RunConfig& c, const std::string& v) {
             const double a = with_units("fov", v, kAngle);
             require(a > 0 && a <= kPi / 2 * (1 + 1e-15), "fov", "in (0, 90] deg");
             c.pd.field_of_view = std::min(a, kPi / 2);
         },
         [](const RunConfig& c) { return deg(c.pd.field_of_view); }},
        {"system", "area", [](RunConfig& c, const std::string& v) { c.pd.area = positive("area", v, kArea); },
         [](const RunConfig& c) { return fmt::format("{} m2", c.pd.area); }},
        {"system", "responsivity",
         [](RunConfig& c, const std::string& v) { c.pd.responsivity = positive("responsivity", v, kPlain); },
         [](const RunConfig& c) { return fmt::format("{}", c.pd.responsivity); }},
        {"system", "ts", [](RunConfig& c, const std::string& v) { c.pd.filter_gain = positive("ts", v, kPlain); },
         [](const RunConfig& c) { return fmt::format("{}", c.pd.filter_gain); }},
        {"system", "zeta",
         [](RunConfig& c, const std::string& v) { c.pd.lens_refractive_index = positive("zeta", v, kPlain); },
         [](const RunConfig& c) { return fmt::format("{}", c.pd.lens_refractive_index); }},
        {"system", "eta",
         [](RunConfig& c, const std::string& v) { c.power.oe_conversion = positive("eta", v, kPlain); },
         [](const RunConfig& c) { return fmt::format("{}", c.power.oe_conversion); }},
        {"system", "pt",
         [](RunConfig& c, const std::string& v) { c.power.tx_optical_power = positive("pt", v, kPower); },
         [](const RunConfig& c) { return fmt::format("{} W", c.power.tx_optical_power); }},
        {"system", "n0", [](RunConfig& c, const std::string& v) { c.power.noise_psd = positive("n0", v, kPsd); },
         [](const RunConfig& c) { return fmt::format("{} W/Hz", c.power.noise_psd); }},
        {"system", "bandwidth",
         [](RunConfig& c, const std::string& v) { c.power.bandwidth = positive("bandwidth", v, kFrequency); },
         [](const RunConfig& c) { return fmt::format("{} Hz", c.power.bandwidth); }},
        {"system", "height", [](RunConfig& c, const std::string& v) { c.cell.height = positive("height", v, kLength); },
         [](const RunConfig& c) { return fmt::format("{} m", c.cell.height); }},
        {"system", "radius", [](RunConfig& c, const std::string& v) { c.cell.radius = positive("radius", v, kLength); },
         [](const RunConfig& c) { return fmt::format("{} m", c.cell.radius); }},

        {"traffic", "users",
         [](RunConfig& c, const std::string& v) {
             c.traffic.population = static_cast<int>(integer("users", v, 1, std::numeric_limits<int>::max()));
         },
         [](const RunConfig& c) { return fmt::format("{}", c.traffic.population); }},
        {"traffic", "pa",
         [](RunConfig& c, const std::string& v) {
             const double p = with_units("pa", v, kPlain);
             require(p >= 0 && p <= 1, "pa", "in [0, 1]");
             c.traffic.activation_prob = p;
         },
         [](const RunConfig& c) { return fmt::format("{}", c.traffic.activation_prob); }},

        {"outage", "threshold",
         [](RunConfig& c, const std::string& v) {
             auto q = split_quantity("threshold", v);
             if (q.unit == "dB") {
                 c.query.threshold = std::pow(10.0, q.value / 10.0);
             } else {
                 require(q.unit.empty(), "threshold", "linear or in dB");
                 require(q.value > 0, "threshold", "> 0 when linear");
                 c.query.threshold = q.value;
             }
         },
         [](const RunConfig& c) { return fmt::format("{}", c.query.threshold); }},
        {"outage", "receiver",
         [](RunConfig& c, const std::string& v) {
             c.query.mode = choice("receiver", v, {ReceiverMode::capture, ReceiverMode::classical});
         },
         [](const RunConfig& c) { return std::string(to_string(c.query.mode)); }},
        {"outage", "mixture",
         [](RunConfig& c, const std::string& v) {
             c.query.mixture = choice("mixture", v, {Mixture::paper, Mixture::conditional});
         },
         [](const RunConfig& c) { return std::string(to_string(c.query.mixture)); }},
        {"outage", "n_active",
         [](RunConfig& c, const std::string& v) {
             c.n_active = static_cast<int>(integer("n_active", v, 1, std::numeric_limits<int>::max()));
         },
         [](const RunConfig& c) { return fmt::format("{}", c.n_active); }},

        {"quadrature", "cf_nodes",
         [](RunConfig& c, const std::string& v) {
             c.quadrature.cf_nodes = static_cast<int>(integer("cf_nodes", v, 16, 1 << 26));
         },
         [](const RunConfig& c) { return fmt::format("{}", c.quadrature.cf_nodes); }},
        {"quadrature", "inversion_t_max",
         [](RunConfig& c, const std::string& v) {
             c.quadrature.inversion_t_max = positive("inversion_t_max", v, kPlain);
         },
         [](const RunConfig& c) { return fmt::format("{}", c.quadrature.inversion_t_max); }},
        {"quadrature", "inversion_nodes",
         [](RunConfig& c, const std::string& v) {
             c.quadrature.inversion_nodes = static_cast<int>(integer("inversion_nodes", v, 16, 1 << 28));
         },
         [](const RunConfig& c) { return fmt::format("{}", c.quadrature.inversion_nodes); }},
        {"quadrature", "lambda_nodes",
         [](RunConfig& c, const std::string& v) {
             c.quadrature.lambda_nodes = static_cast<int>(integer("lambda_nodes", v, 16, 1 << 24));
         },
         [](const RunConfig& c) { return fmt::format("{}", c.quadrature.lambda_nodes); }},
        {"quadrature", "rel_tol",
         [](RunConfig& c, const std::string& v) {
             const double t = with_units("rel_tol", v, kPlain);
             require(t > 0 && t <= 1e-2, "rel_tol", "in (0, 1e-2]");
             c.quadrature.rel_tol = t;
         },
         [](const RunConfig& c) { return fmt::format("{}", c.quadrature.rel_tol); }},
        {"quadrature", "grid_points",
         [](RunConfig& c, const std::string& v) {
             c.quadrature.grid_points = static_cast<int>(integer("grid_points", v, 16, 1 << 24));
         },
         [](const RunConfig& c) { return fmt::format("{}", c.quadrature.grid_points); }},
        {"quadrature", "interference_path",
         [](RunConfig& c, const std::string& v) {
             c.quadrature.interference_path =
                 choice("interference_path", v,
                        {InterferencePath::automatic, InterferencePath::inversion, InterferencePath::convolution});
         },
         [](const RunConfig& c) { return std::string(to_string(c.quadrature.interference_path)); }},

        {"mc", "trials",
         [](RunConfig& c, const std::string& v) { c.mc.trials = integer("trials", v, 1, 1LL << 40); },
         [](const RunConfig& c) { return fmt::format("{}", c.mc.trials); }},
        {"mc", "seed", [](RunConfig& c, const std::string& v) { c.mc.seed = unsigned64("seed", v); },
         [](const RunConfig& c) { return fmt::format("{}", c.mc.seed); }},
        {"mc", "stream_id", [](RunConfig& c, const std::string& v) { c.mc.stream_id = unsigned64("stream_id", v); },
         [](const RunConfig& c) { return fmt::format("{}", c.mc.stream_id); }},
        {"mc", "threads",
         [](RunConfig& c, const std::string& v) { c.mc.threads = static_cast<int>(integer("threads", v, 0, 4096)); },
         nullptr},

        {"output", "out",
         [](RunConfig& c, const std::string& v) {
             require(!v.empty(), "out", "a path or '-'");
             c.out = v;
         },
         nullptr},
    };
    return keys;
}

const Key* find_key(const std::string& name)
{
    for (const auto& k : registry())
        if (name == k.name)
            return &k;
    return nullptr;
}

} // namespace

SystemModel RunConfig::model() const
{
    return SystemModel(led, pd, cell, power);
}

std::vector<std::pair<std::string, std::string>> RunConfig::resolved() const
{
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& k : registry())
        if (k.get)
            out.emplace_back(fmt::format("{}.{}", k.section, k.name), k.get(*this));
    return out;
}

std::vector<std::pair<std::string, std::string>> config_keys()
{
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& k : registry())
        out.emplace_back(k.section, k.name);
    return out;
}

void apply_setting(RunConfig& config, const std::string& key, const std::string& value)
{
    const Key* k = find_key(key);
    if (!k)
        throw ConfigError(fmt::format("unknown key '{}'", key));
    k->set(config, trim(value));
}

RunConfig parse_config(const std::string& text, const std::string& source)
{
    RunConfig cfg;
    std::istringstream in(text);
    std::string line, section;
    std::set<std::string> seen;
    for (int lineno = 1; std::getline(in, line); ++lineno) {
        auto where = [&] { return fmt::format("{}:{}: ", source, lineno); };
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        const std::string s = trim(line);
        if (s.empty())
            continue;
        if (s.front() == '[') {
            if (s.back() != ']')
                throw ConfigError(where() + "unterminated section header");
            section = lower(trim(std::string_view(s).substr(1, s.size() - 2)));
            const auto& keys = registry();
            if (std::none_of(keys.begin(), keys.end(), [&](const Key& k) { return section == k.section; }))
                throw ConfigError(where() + fmt::format("unknown section [{}]", section));
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError(where() + "expected 'key = value'");
        const std::string key = lower(trim(std::string_view(s).substr(0, eq)));
        const std::string value = trim(std::string_view(s).substr(eq + 1));
        const Key* k = find_key(key);
        if (!k)
            throw ConfigError(where() + fmt::format("unknown key '{}'", key));
        if (!section.empty() && section != k->section)
            throw ConfigError(where() + fmt::format("key '{}' belongs in [{}], not [{}]", key, k->section, section));
        if (!seen.insert(key).second)
            throw ConfigError(where() + fmt::format("duplicate key '{}'", key));
        try {
            k->set(cfg, value);
        } catch (const ConfigError& e) {
            throw ConfigError(where() + e.what());
        }
    }
    try {
        (void)cfg.model();
    } catch (const DomainError& e) {
        throw ConfigError(source + ": " + e.what());
    }
    return cfg;
}

RunConfig load_config(const std::string& path)
{
    std::ifstream f(path);
    if (!f)
        throw ConfigError(fmt::format("cannot read config file '{}'", path));
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str(), path);
}

} // namespace owcsa
