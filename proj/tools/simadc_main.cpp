#include <cstdio>
#include <exception>
#include <vector>

#include <CLI11.hpp>

#include "simadc/errors.hpp"
#include "simadc/experiments.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitSimulation = 2;
constexpr int kExitIo = 3;

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Voltage-controlled stochastic nanomagnet and counter-ADC simulator"};
    app.require_subcommand(1);
    app.footer("Exit codes: 0 success, 1 config error, 2 simulation error, 3 I/O error.\n"
               "CLI flags override config-file keys.");

    simadc::ExperimentSpec spec;
    double duration = 0.0;
    double t_s = 0.0;
    int bits = 0;
    std::vector<double> voltages;

    auto add_common = [&spec](CLI::App* sub) {
        sub->add_option("--config", spec.config_path, "key=value parameter file")
            ->required();
        sub->add_option("--seed", spec.master_seed, "master RNG seed (default 42)");
        sub->add_option("--workers", spec.workers,
                        "threads for independent tasks; never changes results");
        sub->add_option("--out", spec.out_dir, "output directory (default 'out')");
    };

    CLI::App* trace = app.add_subcommand(
        "trace", "Record magnetization trajectories at fixed input voltages");
    add_common(trace);
    trace->add_option("--duration", duration, "trace length in seconds");
    trace->add_option("--voltages", voltages, "comma-separated input voltages")
        ->delimiter(',');

    CLI::App* sweep = app.add_subcommand(
        "sweep", "Sweep input voltage and record mean m_x and counts");
    add_common(sweep);
    sweep->add_option("--ts", t_s, "conversion window in seconds");

    CLI::App* adc = app.add_subcommand(
        "adc", "Full conversion sweep at 2^bits + 1 voltages with LUT codes");
    add_common(adc);
    adc->add_option("--bits", bits, "ADC resolution in bits");
    adc->add_option("--ts", t_s, "conversion window in seconds");

    CLI::App* dwell = app.add_subcommand(
        "dwell", "Extract telegraph dwell times from a zero-bias trace");
    add_common(dwell);
    dwell->add_option("--duration", duration, "trace length in seconds");

    CLI::App* arrhenius = app.add_subcommand(
        "arrhenius", "Measure mean dwell versus barrier height and fit the lifetime law");
    add_common(arrhenius);
    arrhenius->add_option("--duration", duration, "trace length per barrier in seconds");

    CLI::App* psw = app.add_subcommand(
        "psw", "Pulsed switching-probability sweep on the high-barrier device");
    add_common(psw);
    psw->add_option("--voltages", voltages, "comma-separated pulse voltages")
        ->delimiter(',');

    CLI::App* report = app.add_subcommand(
        "report", "Print derived magnet quantities and the P/AP readout table");
    add_common(report);

    CLI::App* plots = app.add_subcommand(
        "plots", "Write plot scripts for artifacts already in the output directory");
    plots->add_option("--out", spec.out_dir, "directory holding experiment artifacts");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    CLI::App* sub = app.get_subcommands().front();
    spec.kind = sub->get_name();
    auto option_given = [sub](const std::string& name) {
        const CLI::Option* opt = sub->get_option_no_throw(name);
        return opt != nullptr && opt->count() > 0;
    };
    if (option_given("--duration")) spec.duration = duration;
    if (option_given("--ts")) spec.t_s = t_s;
    if (option_given("--bits")) spec.bits = bits;
    if (option_given("--voltages")) spec.voltages = voltages;

    try {
        if (spec.kind == "plots") {
            simadc::emit_plot_scripts(spec.out_dir);
        } else {
            simadc::run_experiment(spec);
        }
        return kExitOk;
    } catch (const simadc::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const simadc::IoError& e) {
        std::fprintf(stderr, "I/O error: %s\n", e.what());
        return kExitIo;
    } catch (const simadc::SimulationError& e) {
        std::fprintf(stderr, "simulation error: %s\n", e.what());
        return kExitSimulation;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitSimulation;
    }
}
