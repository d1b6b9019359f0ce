#include "simadc/config.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "simadc/csv.hpp"
#include "simadc/errors.hpp"

namespace simadc {

namespace {

MagnetConfig default_magnet() {
    MagnetConfig m;
    m.length_x = 20.0e-9;
    m.length_y = 10.0e-9;
    m.thickness = 1.35e-9;
    m.ms = 600.3e3;
    m.alpha = 0.012;
    m.ku2 = 15.3e3;
    m.ki = 1.0e-5;
    m.t_me = 5.0e-9;
    m.alpha_me = 0.05 / constants::c_light;
    m.temperature = 300.0;
    return m;
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

struct KeyContext {
    std::string source;
    std::string key;
    int line = 0;

    std::string where() const {
        return "'" + key + "' (" + source + ":" + num_str(line) + ")";
    }
};

double parse_double(const std::string& value, const KeyContext& ctx) {
    const char* s = value.c_str();
    char* end = nullptr;
    errno = 0;
    const double x = std::strtod(s, &end);
    if (end == s || *end != '\0' || errno == ERANGE || !std::isfinite(x))
        throw ConfigError("expected a finite number for " + ctx.where());
    return x;
}

long long parse_integer(const std::string& value, const KeyContext& ctx) {
    const double x = parse_double(value, ctx);
    const double r = std::llround(x);
    if (std::abs(x - r) > 1e-9 * std::max(1.0, std::abs(r)))
        throw ConfigError("expected an integer for " + ctx.where());
    return std::llround(x);
}

std::vector<double> parse_double_list(const std::string& value, const KeyContext& ctx) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const std::string t = trim(item);
        if (t.empty()) throw ConfigError("empty list element for " + ctx.where());
        out.push_back(parse_double(t, ctx));
    }
    if (out.empty()) throw ConfigError("expected a non-empty list for " + ctx.where());
    return out;
}

void validate(const SimConfig& cfg) {
    auto require = [](bool ok, const std::string& what) {
        if (!ok) throw ConfigError(what);
    };
    require(cfg.integ.dt > 0.0 && cfg.integ.dt <= 1.0e-12, "dt must lie in (0, 1 ps]");
    require(cfg.integ.renorm_tol > 0.0, "renorm_tol must be positive");
    require(cfg.t_l0 > 0.0, "t_l0 must be positive");
    require(cfg.dwell_hi > cfg.dwell_lo, "dwell_hi must exceed dwell_lo");
    require(cfg.dwell_duration > 0.0, "dwell_duration must be positive");
    require(cfg.dwell_record_every >= cfg.integ.dt, "dwell_record_every must be at least dt");
    require(cfg.record_every >= cfg.integ.dt, "record_every must be at least dt");
    require(cfg.trace_duration >= 0.0, "trace_duration must be non-negative");
    require(!cfg.trace_voltages.empty(), "trace_voltages must not be empty");
    require(cfg.sweep_points >= 3, "sweep_points must be at least 3");
    require(cfg.t_pulse >= 0.0 && cfg.t_settle >= 0.0, "pulse times must be non-negative");
    require(cfg.n_trials >= 1, "n_trials must be at least 1");
    require(cfg.psw_points >= 2, "psw_points must be at least 2");
    require(cfg.psw_v_stop > cfg.psw_v_start, "psw_v_stop must exceed psw_v_start");
    require(cfg.arrhenius_barriers.size() >= 3, "arrhenius_barriers needs at least 3 values");
    for (double b : cfg.arrhenius_barriers)
        require(b > 0.0, "arrhenius_barriers must be positive");
    require(cfg.arrhenius_duration > 0.0, "arrhenius_duration must be positive");
    require(cfg.arrhenius_record_every >= cfg.integ.dt,
            "arrhenius_record_every must be at least dt");
}

}  // namespace

SimConfig parse_config(const std::string& text, const std::string& source_name) {
    SimConfig cfg;
    cfg.magnet = default_magnet();

    using Handler = std::function<void(const std::string&, const KeyContext&)>;
    auto dbl = [](double& slot) {
        double* p = &slot;
        return [p](const std::string& v, const KeyContext& c) { *p = parse_double(v, c); };
    };
    const std::map<std::string, Handler> handlers = {
        {"length_x", dbl(cfg.magnet.length_x)},
        {"length_y", dbl(cfg.magnet.length_y)},
        {"thickness", dbl(cfg.magnet.thickness)},
        {"ms", dbl(cfg.magnet.ms)},
        {"alpha", dbl(cfg.magnet.alpha)},
        {"ku2", dbl(cfg.magnet.ku2)},
        {"ki", dbl(cfg.magnet.ki)},
        {"t_me", dbl(cfg.magnet.t_me)},
        {"alpha_me", dbl(cfg.magnet.alpha_me)},
        {"temperature", dbl(cfg.magnet.temperature)},
        {"gamma", dbl(cfg.magnet.gamma)},
        {"e_b_over_kt",
         [&cfg](const std::string& v, const KeyContext& c) { cfg.e_b_over_kt = parse_double(v, c); }},
        {"dt", dbl(cfg.integ.dt)},
        {"renorm_tol", dbl(cfg.integ.renorm_tol)},
        {"r_p", dbl(cfg.device.mtj.r_p)},
        {"r_ap", dbl(cfg.device.mtj.r_ap)},
        {"r_ref", dbl(cfg.device.sense.r_ref)},
        {"v_read", dbl(cfg.device.sense.v_read)},
        {"v_threshold", dbl(cfg.device.sense.v_threshold)},
        {"input_polarity", dbl(cfg.device.input_polarity)},
        {"f_clk", dbl(cfg.adc.f_clk)},
        {"t_s", dbl(cfg.adc.t_s)},
        {"v_min", dbl(cfg.adc.v_min)},
        {"v_max", dbl(cfg.adc.v_max)},
        {"bits",
         [&cfg](const std::string& v, const KeyContext& c) {
             cfg.adc.bits = static_cast<int>(parse_integer(v, c));
         }},
        {"t_l0", dbl(cfg.t_l0)},
        {"dwell_hi", dbl(cfg.dwell_hi)},
        {"dwell_lo", dbl(cfg.dwell_lo)},
        {"dwell_duration", dbl(cfg.dwell_duration)},
        {"dwell_record_every", dbl(cfg.dwell_record_every)},
        {"record_every", dbl(cfg.record_every)},
        {"trace_duration", dbl(cfg.trace_duration)},
        {"trace_voltages",
         [&cfg](const std::string& v, const KeyContext& c) {
             cfg.trace_voltages = parse_double_list(v, c);
         }},
        {"sweep_points",
         [&cfg](const std::string& v, const KeyContext& c) {
             cfg.sweep_points = static_cast<int>(parse_integer(v, c));
         }},
        {"t_pulse", dbl(cfg.t_pulse)},
        {"t_settle", dbl(cfg.t_settle)},
        {"n_trials",
         [&cfg](const std::string& v, const KeyContext& c) {
             const long long n = parse_integer(v, c);
             if (n < 0) throw ConfigError("n_trials must be non-negative for " + c.where());
             cfg.n_trials = static_cast<std::uint64_t>(n);
         }},
        {"psw_v_start", dbl(cfg.psw_v_start)},
        {"psw_v_stop", dbl(cfg.psw_v_stop)},
        {"psw_points",
         [&cfg](const std::string& v, const KeyContext& c) {
             cfg.psw_points = static_cast<int>(parse_integer(v, c));
         }},
        {"arrhenius_barriers",
         [&cfg](const std::string& v, const KeyContext& c) {
             cfg.arrhenius_barriers = parse_double_list(v, c);
         }},
        {"arrhenius_duration", dbl(cfg.arrhenius_duration)},
        {"arrhenius_record_every", dbl(cfg.arrhenius_record_every)},
    };

    std::set<std::string> seen;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string stripped = trim(raw);
        if (stripped.empty()) continue;

        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected key=value at " + source_name + ":" + num_str(line));
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        const KeyContext ctx{source_name, key, line};
        if (key.empty())
            throw ConfigError("missing key at " + source_name + ":" + num_str(line));

        const auto it = handlers.find(key);
        if (it == handlers.end()) throw ConfigError("unknown config key " + ctx.where());
        if (!seen.insert(key).second) throw ConfigError("duplicate config key " + ctx.where());
        if (value.empty()) throw ConfigError("missing value for " + ctx.where());
        it->second(value, ctx);
    }

    make_magnet(cfg);  // validates geometry and material parameters
    cfg.device.validate();
    cfg.adc.validate();
    validate(cfg);
    return cfg;
}

SimConfig load_config(const std::string& path) {
    return parse_config(read_text_file(path), path);
}

Magnet make_magnet(const SimConfig& cfg) {
    MagnetConfig m = cfg.magnet;
    if (cfg.e_b_over_kt) {
        if (!(*cfg.e_b_over_kt > 0.0)) throw ConfigError("e_b_over_kt must be positive");
        if (!(m.temperature > 0.0))
            throw ConfigError("e_b_over_kt requires a positive temperature");
        const double volume = m.length_x * m.length_y * m.thickness;
        if (!(volume > 0.0)) throw ConfigError("e_b_over_kt requires a positive volume");
        m.ku2 = *cfg.e_b_over_kt * constants::k_boltzmann * m.temperature / volume;
    }
    return Magnet(m);
}

std::vector<std::pair<std::string, std::string>> config_entries(const SimConfig& cfg) {
    std::vector<std::pair<std::string, std::string>> out;
    auto add = [&out](const std::string& k, const std::string& v) { out.emplace_back(k, v); };
    auto list_str = [](const std::vector<double>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) s += ',';
            s += num_str(v[i]);
        }
        return s;
    };
    add("length_x", num_str(cfg.magnet.length_x));
    add("length_y", num_str(cfg.magnet.length_y));
    add("thickness", num_str(cfg.magnet.thickness));
    add("ms", num_str(cfg.magnet.ms));
    add("alpha", num_str(cfg.magnet.alpha));
    add("ku2", num_str(make_magnet(cfg).config().ku2));
    add("ki", num_str(cfg.magnet.ki));
    add("t_me", num_str(cfg.magnet.t_me));
    add("alpha_me", num_str(cfg.magnet.alpha_me));
    add("temperature", num_str(cfg.magnet.temperature));
    add("gamma", num_str(cfg.magnet.gamma));
    if (cfg.e_b_over_kt) add("e_b_over_kt", num_str(*cfg.e_b_over_kt));
    add("dt", num_str(cfg.integ.dt));
    add("renorm_tol", num_str(cfg.integ.renorm_tol));
    add("r_p", num_str(cfg.device.mtj.r_p));
    add("r_ap", num_str(cfg.device.mtj.r_ap));
    add("r_ref", num_str(cfg.device.sense.r_ref));
    add("v_read", num_str(cfg.device.sense.v_read));
    add("v_threshold", num_str(cfg.device.sense.v_threshold));
    add("input_polarity", num_str(cfg.device.input_polarity));
    add("f_clk", num_str(cfg.adc.f_clk));
    add("t_s", num_str(cfg.adc.t_s));
    add("v_min", num_str(cfg.adc.v_min));
    add("v_max", num_str(cfg.adc.v_max));
    add("bits", num_str(cfg.adc.bits));
    add("t_l0", num_str(cfg.t_l0));
    add("dwell_hi", num_str(cfg.dwell_hi));
    add("dwell_lo", num_str(cfg.dwell_lo));
    add("dwell_duration", num_str(cfg.dwell_duration));
    add("dwell_record_every", num_str(cfg.dwell_record_every));
    add("record_every", num_str(cfg.record_every));
    add("trace_duration", num_str(cfg.trace_duration));
    add("trace_voltages", list_str(cfg.trace_voltages));
    add("sweep_points", num_str(cfg.sweep_points));
    add("t_pulse", num_str(cfg.t_pulse));
    add("t_settle", num_str(cfg.t_settle));
    add("n_trials", num_str(cfg.n_trials));
    add("psw_v_start", num_str(cfg.psw_v_start));
    add("psw_v_stop", num_str(cfg.psw_v_stop));
    add("psw_points", num_str(cfg.psw_points));
    add("arrhenius_barriers", list_str(cfg.arrhenius_barriers));
    add("arrhenius_duration", num_str(cfg.arrhenius_duration));
    add("arrhenius_record_every", num_str(cfg.arrhenius_record_every));
    return out;
}

}  // namespace simadc
