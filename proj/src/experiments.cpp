#include "simadc/experiments.hpp"

#include <chrono>
#include <filesystem>
#include <json.hpp>

#include "simadc/adc.hpp"
#include "simadc/config.hpp"
#include "simadc/csv.hpp"
#include "simadc/errors.hpp"
#include "simadc/parallel.hpp"
#include "simadc/telegraph.hpp"

#ifndef SIMADC_VERSION
#define SIMADC_VERSION "dev"
#endif

namespace simadc {

namespace {

namespace fs = std::filesystem;

struct Artifact {
    std::string name;
    std::string text;
};

std::string trace_csv(const TraceRecord& trace) {
    Csv csv({"t_s", "m_x", "m_y", "m_z"});
    for (std::size_t k = 0; k < trace.size(); ++k)
        csv.add_row({num_str(trace.t[k]), num_str(trace.mx[k]), num_str(trace.my[k]),
                     num_str(trace.mz[k])});
    return csv.to_text();
}

std::vector<Artifact> run_trace_kind(const SimConfig& cfg, const ExperimentSpec& spec) {
    const Magnet magnet = make_magnet(cfg);
    const std::vector<double>& volts = cfg.trace_voltages;
    std::vector<TraceRecord> traces(volts.size());
    run_indexed(volts.size(), spec.workers, [&](std::size_t j) {
        const double v_me = me_voltage_from_input(cfg.device, volts[j]);
        traces[j] = simulate_trace(magnet, cfg.integ, default_initial_state().m, v_me,
                                   cfg.trace_duration, cfg.record_every, j);
    });

    std::vector<Artifact> artifacts;
    for (std::size_t j = 0; j < volts.size(); ++j)
        artifacts.push_back({"trace_" + num_str(static_cast<std::uint64_t>(j)) + "_" +
                                 num_str(volts[j]) + "V.csv",
                             trace_csv(traces[j])});
    return artifacts;
}

std::vector<Artifact> run_sweep_kind(const SimConfig& cfg, const ExperimentSpec& spec,
                                     int n_points) {
    const Magnet magnet = make_magnet(cfg);
    const TransferCurve curve =
        sweep_transfer_curve(magnet, cfg.device, cfg.adc, cfg.integ, n_points, spec.workers);

    Csv transfer({"v_in", "mean_mx", "c_out", "code"});
    for (const auto& p : curve.points)
        transfer.add_row({num_str(p.v_in), num_str(p.mean_mx), num_str(p.c_out),
                          num_str(p.code)});

    Csv metrics({"slope", "intercept", "nrmsd_percent", "n_points", "t_s", "f_clk", "seed"});
    metrics.add_row({num_str(curve.fit.slope), num_str(curve.fit.intercept),
                     num_str(curve.nrmsd_percent), num_str(n_points), num_str(cfg.adc.t_s),
                     num_str(cfg.adc.f_clk), num_str(spec.master_seed)});

    return {{"transfer.csv", transfer.to_text()}, {"metrics.csv", metrics.to_text()}};
}

std::vector<Artifact> run_dwell_kind(const SimConfig& cfg) {
    const Magnet magnet = make_magnet(cfg);
    const TraceRecord trace =
        simulate_trace(magnet, cfg.integ, default_initial_state().m, 0.0, cfg.dwell_duration,
                       cfg.dwell_record_every, 0);
    const DwellStats stats = extract_dwells(trace, cfg.dwell_hi, cfg.dwell_lo);

    Csv csv({"state", "dwell_s"});
    for (double d : stats.up_dwells) csv.add_row({"up", num_str(d)});
    for (double d : stats.down_dwells) csv.add_row({"down", num_str(d)});
    return {{"dwells.csv", csv.to_text()}};
}

std::vector<Artifact> run_arrhenius_kind(const SimConfig& cfg, const ExperimentSpec& spec) {
    if (!(cfg.magnet.temperature > 0.0))
        throw ConfigError("the lifetime ladder requires a positive temperature");
    const double kt = constants::k_boltzmann * cfg.magnet.temperature;
    const double volume = cfg.magnet.length_x * cfg.magnet.length_y * cfg.magnet.thickness;

    const std::vector<double>& barriers = cfg.arrhenius_barriers;
    std::vector<double> dwell_means(barriers.size(), 0.0);
    run_indexed(barriers.size(), spec.workers, [&](std::size_t i) {
        MagnetConfig mc = cfg.magnet;
        mc.ku2 = barriers[i] * kt / volume;
        const Magnet magnet(mc);
        const TraceRecord trace =
            simulate_trace(magnet, cfg.integ, default_initial_state().m, 0.0,
                           cfg.arrhenius_duration, cfg.arrhenius_record_every, i);
        const DwellStats stats = extract_dwells(trace, cfg.dwell_hi, cfg.dwell_lo);
        if (!stats.sufficient)
            throw SimulationError("too few switching events at " + num_str(barriers[i]) +
                                  " kT; extend arrhenius_duration");
        dwell_means[i] = mean_dwell(stats);
    });

    Csv ladder({"e_b_over_kt", "mean_dwell_s"});
    std::vector<double> e_b(barriers.size());
    for (std::size_t i = 0; i < barriers.size(); ++i) {
        e_b[i] = barriers[i] * kt;
        ladder.add_row({num_str(barriers[i]), num_str(dwell_means[i])});
    }

    const ArrheniusFit fit = fit_arrhenius(e_b, dwell_means, cfg.magnet.temperature);
    Csv fit_csv({"t_l0_fit_s", "slope_fit", "r_squared", "temperature_k"});
    fit_csv.add_row({num_str(fit.t_l0_fit), num_str(fit.slope_fit), num_str(fit.r_squared),
                     num_str(cfg.magnet.temperature)});

    return {{"arrhenius.csv", ladder.to_text()}, {"arrhenius_fit.csv", fit_csv.to_text()}};
}

std::vector<Artifact> run_psw_kind(const SimConfig& cfg, const ExperimentSpec& spec) {
    std::vector<double> volts;
    if (spec.voltages) {
        volts = *spec.voltages;
        if (volts.size() < 2) throw ConfigError("a switching sweep needs at least 2 voltages");
    } else {
        volts.resize(static_cast<std::size_t>(cfg.psw_points));
        const double dv =
            (cfg.psw_v_stop - cfg.psw_v_start) / static_cast<double>(cfg.psw_points - 1);
        for (int j = 0; j < cfg.psw_points; ++j)
            volts[static_cast<std::size_t>(j)] = cfg.psw_v_start + j * dv;
        volts.back() = cfg.psw_v_stop;
    }

    const Magnet magnet = make_magnet(cfg);
    Csv csv({"v_pulse", "p_switch", "ci_lo", "ci_hi", "n_trials"});
    for (std::size_t j = 0; j < volts.size(); ++j) {
        const SwitchingPoint p =
            switching_probability(magnet, cfg.integ, volts[j], cfg.t_pulse, cfg.t_settle,
                                  cfg.n_trials, j * cfg.n_trials, spec.workers);
        csv.add_row({num_str(p.v_pulse), num_str(p.p_switch), num_str(p.ci_lo),
                     num_str(p.ci_hi), num_str(p.n_trials)});
    }
    return {{"switching.csv", csv.to_text()}};
}

std::vector<Artifact> run_report_kind(const SimConfig& cfg) {
    const Magnet magnet = make_magnet(cfg);
    const DemagFactors n = magnet.demag_factors();
    const Vec3 x{1.0, 0.0, 0.0};
    const Vec3 z{0.0, 0.0, 1.0};

    Csv derived({"quantity", "value"});
    derived.add_row({"volume_m3", num_str(magnet.volume())});
    derived.add_row({"e_b_joule", num_str(magnet.energy_barrier())});
    if (cfg.magnet.temperature > 0.0) {
        derived.add_row({"e_b_over_kt", num_str(magnet.energy_barrier_over_kt())});
        derived.add_row(
            {"mean_lifetime_s",
             num_str(mean_lifetime(magnet.energy_barrier(), cfg.t_l0, cfg.magnet.temperature))});
    }
    derived.add_row({"n_x", num_str(n.nx)});
    derived.add_row({"n_y", num_str(n.ny)});
    derived.add_row({"n_z", num_str(n.nz)});
    derived.add_row({"h_demag_x_at_mx_a_per_m", num_str(magnet.demag_field(x).x)});
    derived.add_row({"h_uniaxial_x_at_mx_a_per_m", num_str(magnet.uniaxial_field(x).x)});
    derived.add_row(
        {"h_interface_z_at_mz_a_per_m", num_str(magnet.interface_anisotropy_field(z).z)});
    derived.add_row({"h_me_per_volt_a_per_m", num_str(magnet.me_field(1.0).x)});
    derived.add_row({"sigma_thermal_a_per_m", num_str(thermal_field_sigma(magnet, cfg.integ.dt))});

    Csv device({"state", "r_mtj_ohm", "v_node_v", "i_read_a", "state_bit"});
    const Vec3 pin = cfg.device.mtj.m_pinned;
    for (const auto& [label, m] : {std::pair<const char*, Vec3>{"P", pin},
                                   std::pair<const char*, Vec3>{"AP", -pin}}) {
        const double r = mtj_resistance(cfg.device.mtj, m);
        device.add_row({label, num_str(r), num_str(sense_node_voltage(cfg.device.sense, r)),
                        num_str(read_current(cfg.device.sense, r)),
                        num_str(read_state(cfg.device.sense, r))});
    }

    return {{"derived.csv", derived.to_text()}, {"device_report.csv", device.to_text()}};
}

const char* kPlotTraces = R"PY(#!/usr/bin/env python3
"""Plot every trace_*.csv in this directory as m_x versus time."""
import csv
import glob
import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

here = os.path.dirname(os.path.abspath(__file__))
files = sorted(glob.glob(os.path.join(here, "trace_*.csv")))
if not files:
    raise SystemExit("no trace_*.csv found next to this script")

fig, axes = plt.subplots(len(files), 1, sharex=True,
                         figsize=(9, 2.0 * len(files)), squeeze=False)
for ax, path in zip(axes[:, 0], files):
    t, mx = [], []
    with open(path) as f:
        for row in csv.DictReader(f):
            t.append(float(row["t_s"]) * 1e9)
            mx.append(float(row["m_x"]))
    ax.plot(t, mx, lw=0.7)
    ax.set_ylim(-1.15, 1.15)
    ax.set_ylabel("m_x")
    ax.set_title(os.path.basename(path), fontsize=8)
axes[-1, 0].set_xlabel("t (ns)")
fig.tight_layout()
out = os.path.join(here, "traces.png")
fig.savefig(out, dpi=150)
print(out)
)PY";

const char* kPlotTransfer = R"PY(#!/usr/bin/env python3
"""Plot the transfer curve (counts and mean m_x versus input voltage)."""
import csv
import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

here = os.path.dirname(os.path.abspath(__file__))
v, mx, c = [], [], []
with open(os.path.join(here, "transfer.csv")) as f:
    for row in csv.DictReader(f):
        v.append(float(row["v_in"]))
        mx.append(float(row["mean_mx"]))
        c.append(float(row["c_out"]))

fig, (ax1, ax2) = plt.subplots(2, 1, sharex=True, figsize=(7, 7))
ax1.plot(v, c, "o", ms=4)
metrics = os.path.join(here, "metrics.csv")
if os.path.exists(metrics):
    with open(metrics) as f:
        m = next(csv.DictReader(f))
    slope, intercept = float(m["slope"]), float(m["intercept"])
    ax1.plot([v[0], v[-1]],
             [slope * v[0] + intercept, slope * v[-1] + intercept],
             "-", lw=1, label="least-squares fit, NRMSD %.2f%%" % float(m["nrmsd_percent"]))
    ax1.legend()
ax1.set_ylabel("C_OUT")
ax2.plot(v, mx, "s-", ms=4)
ax2.set_ylabel("mean m_x")
ax2.set_xlabel("v_in (V)")
fig.tight_layout()
out = os.path.join(here, "transfer.png")
fig.savefig(out, dpi=150)
print(out)
)PY";

const char* kPlotDwells = R"PY(#!/usr/bin/env python3
"""Histogram the dwell times of the two telegraph states."""
import csv
import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

here = os.path.dirname(os.path.abspath(__file__))
dwells = {"up": [], "down": []}
with open(os.path.join(here, "dwells.csv")) as f:
    for row in csv.DictReader(f):
        dwells[row["state"]].append(float(row["dwell_s"]) * 1e9)

fig, ax = plt.subplots(figsize=(7, 5))
for state, values in dwells.items():
    if values:
        ax.hist(values, bins=40, alpha=0.6, label="%s (n=%d)" % (state, len(values)))
ax.set_xlabel("dwell (ns)")
ax.set_ylabel("count")
ax.legend()
fig.tight_layout()
out = os.path.join(here, "dwells.png")
fig.savefig(out, dpi=150)
print(out)
)PY";

const char* kPlotArrhenius = R"PY(#!/usr/bin/env python3
"""Plot mean dwell versus barrier height with the fitted lifetime law."""
import csv
import math
import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

here = os.path.dirname(os.path.abspath(__file__))
x, y = [], []
with open(os.path.join(here, "arrhenius.csv")) as f:
    for row in csv.DictReader(f):
        x.append(float(row["e_b_over_kt"]))
        y.append(float(row["mean_dwell_s"]) * 1e9)

fig, ax = plt.subplots(figsize=(7, 5))
ax.semilogy(x, y, "o", ms=5, label="measured")
fit_path = os.path.join(here, "arrhenius_fit.csv")
if os.path.exists(fit_path):
    with open(fit_path) as f:
        fit = next(csv.DictReader(f))
    t_l0, slope = float(fit["t_l0_fit_s"]), float(fit["slope_fit"])
    xs = [x[0] + (x[-1] - x[0]) * i / 99.0 for i in range(100)]
    ax.semilogy(xs, [t_l0 * 1e9 * math.exp(slope * v) for v in xs], "-", lw=1,
                label="fit: t_l0=%.3g ns, slope=%.3f" % (t_l0 * 1e9, slope))
ax.set_xlabel("E_B / kT")
ax.set_ylabel("mean dwell (ns)")
ax.legend()
fig.tight_layout()
out = os.path.join(here, "arrhenius.png")
fig.savefig(out, dpi=150)
print(out)
)PY";

const char* kPlotSwitching = R"PY(#!/usr/bin/env python3
"""Plot switching probability versus pulse voltage with confidence bars."""
import csv
import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

here = os.path.dirname(os.path.abspath(__file__))
v, p, lo, hi = [], [], [], []
with open(os.path.join(here, "switching.csv")) as f:
    for row in csv.DictReader(f):
        v.append(float(row["v_pulse"]))
        p.append(float(row["p_switch"]))
        lo.append(float(row["p_switch"]) - float(row["ci_lo"]))
        hi.append(float(row["ci_hi"]) - float(row["p_switch"]))

fig, ax = plt.subplots(figsize=(7, 5))
ax.errorbar(v, p, yerr=[lo, hi], fmt="o-", ms=4, capsize=3)
ax.set_xlabel("pulse voltage (V)")
ax.set_ylabel("switching probability")
ax.set_ylim(-0.05, 1.05)
fig.tight_layout()
out = os.path.join(here, "switching.png")
fig.savefig(out, dpi=150)
print(out)
)PY";

// Known artifact name -> plot script that consumes it. trace CSVs are
// matched by prefix.
std::vector<Artifact> plot_scripts_for(const std::vector<std::string>& artifact_names) {
    bool traces = false, transfer = false, dwells = false, arrhenius = false, switching = false;
    for (const auto& name : artifact_names) {
        if (name.rfind("trace_", 0) == 0) traces = true;
        if (name == "transfer.csv") transfer = true;
        if (name == "dwells.csv") dwells = true;
        if (name == "arrhenius.csv") arrhenius = true;
        if (name == "switching.csv") switching = true;
    }
    std::vector<Artifact> scripts;
    if (traces) scripts.push_back({"plot_traces.py", kPlotTraces});
    if (transfer) scripts.push_back({"plot_transfer.py", kPlotTransfer});
    if (dwells) scripts.push_back({"plot_dwells.py", kPlotDwells});
    if (arrhenius) scripts.push_back({"plot_arrhenius.py", kPlotArrhenius});
    if (switching) scripts.push_back({"plot_switching.py", kPlotSwitching});
    return scripts;
}

void write_artifacts(const fs::path& dir, const std::vector<Artifact>& artifacts) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
    for (const auto& a : artifacts) write_text_file((dir / a.name).string(), a.text);
}

}  // namespace

void run_experiment(const ExperimentSpec& spec) {
    const auto t0 = std::chrono::steady_clock::now();

    SimConfig cfg = load_config(spec.config_path);
    cfg.integ.seed = spec.master_seed;
    if (spec.workers < 1) throw ConfigError("workers must be at least 1");
    if (spec.bits) {
        cfg.adc.bits = *spec.bits;
        cfg.adc.validate();
    }
    if (spec.t_s) {
        cfg.adc.t_s = *spec.t_s;
        cfg.adc.validate();
    }
    if (spec.duration) {
        if (!(*spec.duration > 0.0)) throw ConfigError("duration must be positive");
        cfg.trace_duration = *spec.duration;
        cfg.dwell_duration = *spec.duration;
        cfg.arrhenius_duration = *spec.duration;
    }
    if (spec.voltages && spec.kind == "trace") cfg.trace_voltages = *spec.voltages;

    std::vector<Artifact> artifacts;
    if (spec.kind == "trace") {
        artifacts = run_trace_kind(cfg, spec);
    } else if (spec.kind == "sweep") {
        artifacts = run_sweep_kind(cfg, spec, cfg.sweep_points);
    } else if (spec.kind == "adc") {
        artifacts = run_sweep_kind(cfg, spec, cfg.adc.sweep_points());
    } else if (spec.kind == "dwell") {
        artifacts = run_dwell_kind(cfg);
    } else if (spec.kind == "arrhenius") {
        artifacts = run_arrhenius_kind(cfg, spec);
    } else if (spec.kind == "psw") {
        artifacts = run_psw_kind(cfg, spec);
    } else if (spec.kind == "report") {
        artifacts = run_report_kind(cfg);
    } else {
        throw ConfigError("unknown experiment kind '" + spec.kind + "'");
    }

    std::vector<std::string> names;
    for (const auto& a : artifacts) names.push_back(a.name);
    for (const auto& s : plot_scripts_for(names)) artifacts.push_back(s);

    const fs::path dir(spec.out_dir);
    write_artifacts(dir, artifacts);

    const double wall_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    nlohmann::ordered_json manifest;
    manifest["experiment"] = spec.kind;
    manifest["config_path"] = spec.config_path;
    nlohmann::ordered_json cfg_json = nlohmann::ordered_json::object();
    for (const auto& [key, value] : config_entries(cfg)) cfg_json[key] = value;
    manifest["config"] = cfg_json;
    manifest["seed"] = spec.master_seed;
    manifest["workers"] = spec.workers;
    manifest["code_version"] = SIMADC_VERSION;
    manifest["wall_time_s"] = wall_s;
    nlohmann::ordered_json files = nlohmann::ordered_json::array();
    for (const auto& a : artifacts)
        files.push_back({{"file", a.name}, {"fnv1a64", fnv1a64_hex(a.text)}});
    manifest["artifacts"] = files;
    write_text_file((dir / "manifest.json").string(), manifest.dump(2) + "\n");
}

void emit_plot_scripts(const std::string& out_dir) {
    const fs::path dir(out_dir);
    std::error_code ec;
    if (!fs::is_directory(dir, ec))
        throw IoError("not a directory: " + out_dir);

    std::vector<std::string> names;
    for (const auto& entry : fs::directory_iterator(dir, ec))
        if (entry.is_regular_file()) names.push_back(entry.path().filename().string());
    if (ec) throw IoError("cannot list " + out_dir + ": " + ec.message());

    const std::vector<Artifact> scripts = plot_scripts_for(names);
    if (scripts.empty())
        throw IoError("no plottable artifacts in " + out_dir +
                      "; expected one of: trace_*.csv, transfer.csv, dwells.csv, "
                      "arrhenius.csv, switching.csv");
    for (const auto& s : scripts) write_text_file((dir / s.name).string(), s.text);
}

}  // namespace simadc
