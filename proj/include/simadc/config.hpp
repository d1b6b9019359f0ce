#pragma once

#include <optional>
#include <string>
#include <vector>

#include "simadc/adc.hpp"
#include "simadc/device.hpp"
#include "simadc/llg.hpp"
#include "simadc/magnet.hpp"

namespace simadc {

// Everything a run needs, resolved from one flat key=value file. Every key
// is optional; defaults describe the low-barrier reference device. Unknown
// keys are errors so typos cannot silently fall back to defaults.
struct SimConfig {
    MagnetConfig magnet;
    std::optional<double> e_b_over_kt;  // when set, overrides ku2 = e_b_over_kt * kT / V
    IntegratorParams integ;             // seed comes from the CLI, not the file
    DeviceParams device;
    AdcParams adc;

    double t_l0 = 0.5e-9;  // attempt-time prefactor for lifetime estimates

    double dwell_hi = 0.5;
    double dwell_lo = -0.5;
    double dwell_duration = 1.0e-5;
    double dwell_record_every = 1.0e-10;

    double record_every = 1.0e-9;  // trace sampling cadence
    double trace_duration = 500.0e-9;
    std::vector<double> trace_voltages{-0.8, 0.0, 0.8};

    int sweep_points = 9;

    double t_pulse = 10.0e-9;
    double t_settle = 10.0e-9;
    std::uint64_t n_trials = 1000;
    double psw_v_start = 0.0;
    double psw_v_stop = 1.6;
    int psw_points = 9;

    std::vector<double> arrhenius_barriers{0.5, 1.0, 1.5, 2.0};  // units of kT
    double arrhenius_duration = 2.0e-5;
    double arrhenius_record_every = 1.0e-11;
};

// Parses `text` as key=value lines ('#' starts a comment, blank lines are
// ignored) and validates the result. Throws ConfigError naming the offending
// key and line on any parse or validation failure. `source_name` labels the
// input in error messages.
SimConfig parse_config(const std::string& text, const std::string& source_name);

// parse_config over the contents of `path`; unreadable files raise IoError.
SimConfig load_config(const std::string& path);

// Builds the validated magnet, applying the e_b_over_kt override if present.
Magnet make_magnet(const SimConfig& cfg);

// The effective settings as ordered (key, value) pairs, covering every
// recognized key; used for the run manifest.
std::vector<std::pair<std::string, std::string>> config_entries(const SimConfig& cfg);

}  // namespace simadc
