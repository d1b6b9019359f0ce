// End-to-end acceptance gate. Each check prints one [PASS]/[FAIL] line with
// the measured values and the pinned limits; the exit code is nonzero when
// any check fails. Pass --long to include the slow eight-bit linearity run.
#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <numbers>
#include <string>
#include <vector>

#include "simadc/adc.hpp"
#include "simadc/config.hpp"
#include "simadc/constants.hpp"
#include "simadc/llg.hpp"
#include "simadc/parallel.hpp"
#include "simadc/stats.hpp"
#include "simadc/telegraph.hpp"

using namespace simadc;

namespace {

int checks_failed = 0;

std::string strf(const char* fmt, ...) {
    char buf[512];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, args);
    va_end(args);
    return buf;
}

void report(const char* id, const char* name, bool ok, const std::string& detail) {
    std::printf("[%s] %-3s %s: %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++checks_failed;
}

SimConfig base_config() { return parse_config("", "acceptance"); }

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// 1: at zero input the telegraph signal must be balanced for every seed.
void check_zero_bias_balance() {
    const SimConfig cfg = base_config();
    const Magnet magnet = make_magnet(cfg);
    std::vector<double> means;
    double worst = 0.0;
    for (std::uint64_t seed = 42; seed < 50; ++seed) {
        IntegratorParams p = cfg.integ;
        p.seed = seed;
        const ConversionResult r = convert(0.0, magnet, cfg.device, cfg.adc, p, 0);
        means.push_back(r.mean_mx);
        worst = std::max(worst, std::fabs(r.mean_mx));
    }
    double mean = 0.0;
    for (double m : means) mean += m;
    mean /= static_cast<double>(means.size());
    double var = 0.0;
    for (double m : means) var += (m - mean) * (m - mean);
    const double sd = std::sqrt(var / static_cast<double>(means.size() - 1));
    report("1", "zero-bias balance over 8 seeds", worst <= 0.05 && sd <= 0.03,
           strf("max |mean m_x| %.4f (limit 0.05), seed-to-seed sd %.4f (limit 0.03)", worst,
                sd));
}

// 2: mean m_x must fall monotonically as the input voltage rises, with the
// -0.4 V end clearly magnetized toward +x.
void check_transfer_direction() {
    const SimConfig cfg = base_config();
    const Magnet magnet = make_magnet(cfg);
    const TransferCurve curve =
        sweep_transfer_curve(magnet, cfg.device, cfg.adc, cfg.integ, 9, 1);
    double worst_rise = -1.0;
    for (std::size_t i = 1; i < curve.points.size(); ++i)
        worst_rise = std::max(worst_rise,
                              curve.points[i].mean_mx - curve.points[i - 1].mean_mx);
    const double low_end = curve.points.front().mean_mx;
    report("2", "mean m_x falls monotonically with input", worst_rise <= 0.05 && low_end > 0.2,
           strf("largest adjacent rise %.4f (limit 0.05), mean m_x at -0.4 V %.3f (need > 0.2)",
                worst_rise, low_end));
}

// 3: four-bit conversion linearity, and a longer window must be more linear
// than a shorter one.
void check_linearity(bool long_run) {
    const SimConfig cfg = base_config();
    const Magnet magnet = make_magnet(cfg);
    std::vector<double> slow, fast;
    for (std::uint64_t seed = 42; seed < 50; ++seed) {
        IntegratorParams p = cfg.integ;
        p.seed = seed;
        AdcParams win = cfg.adc;
        slow.push_back(
            sweep_transfer_curve(magnet, cfg.device, win, p, 17, 1).nrmsd_percent);
        win.t_s = 1.0e-6;
        fast.push_back(
            sweep_transfer_curve(magnet, cfg.device, win, p, 17, 1).nrmsd_percent);
    }
    const double med_slow = median(slow);
    const double med_fast = median(fast);
    report("3", "17-point linearity over 8 seeds", med_slow <= 5.0 && med_slow < med_fast,
           strf("median NRMSD %.2f%% at 10 us (limit 5%%), %.2f%% at 1 us (must be larger)",
                med_slow, med_fast));
    if (!long_run) return;
    AdcParams wide = cfg.adc;
    wide.bits = 8;
    const TransferCurve curve = sweep_transfer_curve(magnet, cfg.device, wide, cfg.integ,
                                                     wide.sweep_points(), 1);
    report("3L", "257-point eight-bit linearity", curve.nrmsd_percent <= 4.0,
           strf("NRMSD %.2f%% (limit 4%%)", curve.nrmsd_percent));
}

// 4: mean dwell versus barrier height must follow the exponential lifetime
// law with a physical attempt-time prefactor.
void check_lifetime_law() {
    SimConfig cfg = base_config();
    cfg.magnet.length_x = 15.0e-9;
    cfg.magnet.length_y = 15.0e-9;
    const double kt = constants::k_boltzmann * cfg.magnet.temperature;
    const double volume = cfg.magnet.length_x * cfg.magnet.length_y * cfg.magnet.thickness;
    const std::vector<double> barriers{0.5, 1.0, 1.5, 2.0};
    std::vector<double> e_b(barriers.size()), dwell_means(barriers.size());
    for (std::size_t i = 0; i < barriers.size(); ++i) {
        MagnetConfig mc = cfg.magnet;
        mc.ku2 = barriers[i] * kt / volume;
        const Magnet magnet(mc);
        const TraceRecord trace = simulate_trace(magnet, cfg.integ,
                                                 default_initial_state().m, 0.0, 2.0e-5,
                                                 5.0e-11, i);
        const DwellStats stats = extract_dwells(trace, 0.8, -0.8);
        e_b[i] = barriers[i] * kt;
        dwell_means[i] = mean_dwell(stats);
    }
    const ArrheniusFit fit = fit_arrhenius(e_b, dwell_means, cfg.magnet.temperature);
    const bool ok = fit.slope_fit >= 0.7 && fit.slope_fit <= 1.3 &&
                    fit.t_l0_fit >= 0.05e-9 && fit.t_l0_fit <= 2.0e-9;
    report("4", "lifetime law across 0.5-2 kT", ok,
           strf("slope %.3f (band 0.7-1.3), prefactor %.3f ns (band 0.05-2), r^2 %.4f",
                fit.slope_fit, fit.t_l0_fit * 1e9, fit.r_squared));
}

// 5: the high-barrier device must show a monotone switching sigmoid pinned
// at 0 and 1.
void check_switching_sigmoid() {
    const SimConfig cfg = parse_config(
        "length_x = 150e-9\n"
        "length_y = 60e-9\n"
        "thickness = 2.5e-9\n"
        "e_b_over_kt = 40\n",
        "acceptance");
    const Magnet magnet = make_magnet(cfg);
    std::vector<SwitchingPoint> points;
    for (std::uint64_t j = 0; j < 9; ++j) {
        const double v = 1.6 * static_cast<double>(j) / 8.0;
        points.push_back(switching_probability(magnet, cfg.integ, v, cfg.t_pulse,
                                               cfg.t_settle, cfg.n_trials,
                                               j * cfg.n_trials, 1));
    }
    bool ordered = true;
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            if (points[j].ci_hi < points[i].ci_lo) ordered = false;
    const double p_rest = points.front().p_switch;
    const double p_top = points.back().p_switch;
    report("5", "switching probability sigmoid", ordered && p_rest < 0.01 && p_top > 0.99,
           strf("p(0 V) %.4f (limit < 0.01), p(1.6 V) %.4f (limit > 0.99), "
                "monotone within 95%% intervals: %s",
                p_rest, p_top, ordered ? "yes" : "no"));
}

// 6a: undamped precession about a static field must match the analytic
// period to 0.1 percent.
void check_precession_period() {
    MagnetConfig mc;
    mc.length_x = 10e-9;
    mc.length_y = 10e-9;
    mc.thickness = 10e-9;
    mc.ms = 600.3e3;
    mc.alpha = 0.0;
    mc.ku2 = 0.0;
    mc.ki = 0.0;
    mc.t_me = 5e-9;
    mc.alpha_me = 0.05 / constants::c_light;
    mc.temperature = 0.0;
    const Magnet cube(mc);

    const double v_me = 0.4;
    const double h = cube.me_field(v_me).x;
    const double period = 2.0 * std::numbers::pi / (cube.config().gamma * h);

    IntegratorParams params;
    HeunIntegrator integ(cube, params, 0);
    MagState s;
    s.m = {0.0, 0.0, 1.0};
    double prev_my = 0.0, prev_t = 0.0, first_cross = -1.0, last_cross = -1.0;
    int crossings = 0;
    const std::int64_t steps = std::llround(3.0 * period / params.dt);
    for (std::int64_t i = 0; i < steps; ++i) {
        const MagState nxt = integ.step(s, v_me);
        if (i > 0 && prev_my < 0.0 && nxt.m.y >= 0.0) {
            const double tc = prev_t - prev_my * params.dt / (nxt.m.y - prev_my);
            if (first_cross < 0.0) first_cross = tc;
            last_cross = tc;
            ++crossings;
        }
        prev_my = nxt.m.y;
        prev_t = nxt.t;
        s = nxt;
    }
    double rel_err = 1.0;
    if (crossings >= 2) {
        const double measured = (last_cross - first_cross) / (crossings - 1);
        rel_err = std::fabs(measured - period) / period;
    }
    report("6a", "free precession period", crossings >= 2 && rel_err < 1e-3,
           strf("relative error %.2e over %d cycles (limit 1e-3)", rel_err, crossings));
}

// 6b: the corrector must keep |m| within 1e-6 of unit length before the
// per-step renormalization.
void check_length_drift() {
    const SimConfig cfg = base_config();
    const Magnet magnet = make_magnet(cfg);
    HeunIntegrator integ(magnet, cfg.integ, 0);
    MagState s = default_initial_state();
    double max_drift = 0.0;
    for (int i = 0; i < 100000; ++i) {
        double drift = 0.0;
        s = integ.step_diagnostic(s, 0.0, drift);
        max_drift = std::max(max_drift, std::fabs(drift));
    }
    report("6b", "per-step length drift", max_drift < 1e-6,
           strf("max |m|-1 before renormalization %.3e over 1e5 steps (limit 1e-6)",
                max_drift));
}

// 6c: sampled thermal field variance must match the analytic sigma^2.
void check_thermal_variance() {
    const SimConfig cfg = base_config();
    const Magnet magnet = make_magnet(cfg);
    const double sigma = thermal_field_sigma(magnet, cfg.integ.dt);
    ThermalFieldSampler sampler(magnet, cfg.integ.dt, Xoshiro256pp::stream(42, 7));
    const std::size_t n = 100000;
    double sum[3] = {0, 0, 0}, sumsq[3] = {0, 0, 0};
    for (std::size_t i = 0; i < n; ++i) {
        const Vec3 h = sampler.sample();
        const double v[3] = {h.x, h.y, h.z};
        for (int k = 0; k < 3; ++k) {
            sum[k] += v[k];
            sumsq[k] += v[k] * v[k];
        }
    }
    double worst = 0.0;
    for (int k = 0; k < 3; ++k) {
        const double mean = sum[k] / static_cast<double>(n);
        const double var = sumsq[k] / static_cast<double>(n) - mean * mean;
        worst = std::max(worst, std::fabs(var / (sigma * sigma) - 1.0));
    }
    report("6c", "thermal field variance", worst < 0.02,
           strf("worst relative variance error %.4f over 1e5 draws (limit 0.02)", worst));
}

// 6d: results must be bit-identical for any worker count.
void check_worker_determinism() {
    SimConfig cfg = base_config();
    cfg.adc.t_s = 1.0e-6;
    const Magnet magnet = make_magnet(cfg);
    const TransferCurve ref =
        sweep_transfer_curve(magnet, cfg.device, cfg.adc, cfg.integ, 9, 1);
    bool identical = true;
    for (int workers : {2, 4}) {
        const TransferCurve curve =
            sweep_transfer_curve(magnet, cfg.device, cfg.adc, cfg.integ, 9, workers);
        for (std::size_t i = 0; i < ref.points.size(); ++i) {
            if (curve.points[i].v_in != ref.points[i].v_in ||
                curve.points[i].mean_mx != ref.points[i].mean_mx ||
                curve.points[i].c_out != ref.points[i].c_out ||
                curve.points[i].code != ref.points[i].code)
                identical = false;
        }
    }

    const std::vector<double> volts{-0.8, 0.0, 0.8};
    std::vector<TraceRecord> serial(volts.size()), parallel(volts.size());
    auto run_traces = [&](std::vector<TraceRecord>& out, int workers) {
        run_indexed(volts.size(), workers, [&](std::size_t j) {
            out[j] = simulate_trace(magnet, cfg.integ, default_initial_state().m, volts[j],
                                    1.0e-7, 1.0e-10, j);
        });
    };
    run_traces(serial, 1);
    run_traces(parallel, 4);
    for (std::size_t j = 0; j < volts.size(); ++j) {
        if (serial[j].mx != parallel[j].mx || serial[j].my != parallel[j].my ||
            serial[j].mz != parallel[j].mz)
            identical = false;
    }
    report("6d", "worker-count determinism", identical,
           identical ? "9-point sweep and 3 traces bit-identical for 1, 2, 4 workers"
                     : "results differ across worker counts");
}

// 7: the readout chain must map AP to 1 and P to 0 through the divider and
// comparator, with read currents in the tens of nanoamps.
void check_readout_contract() {
    SimConfig cfg = base_config();
    cfg.device.validate();
    const MtjParams& mtj = cfg.device.mtj;
    const SenseParams& sense = cfg.device.sense;

    const double r_p = mtj_resistance(mtj, mtj.m_pinned);
    const double r_ap = mtj_resistance(mtj, -mtj.m_pinned);
    const int bit_p = read_state(sense, r_p);
    const int bit_ap = read_state(sense, r_ap);
    const double v_p = sense_node_voltage(sense, r_p);
    const double v_ap = sense_node_voltage(sense, r_ap);
    const double i_p = read_current(sense, r_p);
    const double i_ap = read_current(sense, r_ap);

    const bool states_ok = bit_p == 0 && bit_ap == 1;
    const bool divider_ok = std::fabs(v_p + v_ap - sense.v_read) < 1e-12 &&
                            std::fabs(sense.r_ref - std::sqrt(r_p * r_ap)) < 1e-3;
    const bool currents_ok = i_p > 1e-8 && i_p < 1e-7 && i_ap > 1e-8 && i_ap < 1e-7;
    report("7", "readout contract", states_ok && divider_ok && currents_ok,
           strf("P bit %d (need 0), AP bit %d (need 1), read currents %.1f / %.1f nA "
                "(band 10-100), node voltages sum to v_read: %s",
                bit_p, bit_ap, i_p * 1e9, i_ap * 1e9, divider_ok ? "yes" : "no"));
}

// 8a: normalized deviation metric against the hand-computed value.
void check_deviation_oracle() {
    const double value = nrmsd({0.0, 1.0, 2.0}, {0.0, 1.0, 0.0});
    const double expected = 100.0 * std::sqrt(2.0 / 9.0);
    const bool ok = std::fabs(value - expected) < 1e-12;
    report("8a", "deviation metric oracle", ok,
           strf("nrmsd %.14f vs hand value %.14f", value, expected));
}

// 8b: fast state counting against a naive recount of 1e6 samples.
void check_counting_oracle() {
    Xoshiro256pp rng(12345);
    std::vector<int> stream(1000000);
    for (auto& s : stream) s = static_cast<int>(rng.next() & 1u);
    std::uint64_t naive = 0;
    for (int s : stream) naive += static_cast<std::uint64_t>(s);
    const std::uint64_t fast_full = count_states(stream, stream.size());
    std::uint64_t naive_prefix = 0;
    for (std::size_t i = 0; i < 123456; ++i) naive_prefix += static_cast<std::uint64_t>(stream[i]);
    const std::uint64_t fast_prefix = count_states(stream, 123456);
    const bool ok = fast_full == naive && fast_prefix == naive_prefix;
    report("8b", "state counting oracle", ok,
           strf("%llu of 1e6 states counted, naive recount %s",
                static_cast<unsigned long long>(fast_full), ok ? "identical" : "differs"));
}

// 8c: closed-form demag factors against direct solid-angle quadrature.
namespace quadrature {

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double t = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double p1 = 0.0;
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            p1 = t;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (t * p1 - p0) / (t * t - 1.0);
            const double step = p1 / dp;
            t -= step;
            if (std::abs(step) < 1e-15) break;
        }
        x[i] = -t;
        x[n - 1 - i] = t;
        w[i] = w[n - 1 - i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
}

double solid_angle_rect(double x, double y, double h, double a, double b) {
    const double u[2] = {-x, a - x};
    const double v[2] = {-y, b - y};
    double omega = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const double r = std::sqrt(u[i] * u[i] + v[j] * v[j] + h * h);
            const double term = std::atan(u[i] * v[j] / (h * r));
            omega += ((i + j) % 2 == 0 ? term : -term);
        }
    return omega;
}

// N_z as the volume-averaged solid angle one z-face subtends over 2*pi.
double nz_numeric(double a, double b, double c) {
    constexpr int kNodes = 64;
    std::vector<double> t, w;
    gauss_legendre(kNodes, t, w);
    double integral = 0.0;
    for (int i = 0; i < kNodes; ++i) {
        const double x = 0.5 * a * (t[i] + 1.0);
        for (int j = 0; j < kNodes; ++j) {
            const double y = 0.5 * b * (t[j] + 1.0);
            double inner = 0.0;
            for (int k = 0; k < kNodes; ++k) {
                const double z = 0.5 * c * (t[k] + 1.0);
                inner += w[k] * solid_angle_rect(x, y, z, a, b);
            }
            integral += w[i] * w[j] * inner;
        }
    }
    integral *= 0.125 * a * b * c;
    return integral / (2.0 * std::numbers::pi * a * b * c);
}

}  // namespace quadrature

void check_demag_oracle() {
    const double lx = 20e-9, ly = 10e-9, lz = 1.35e-9;
    const DemagFactors closed = prism_demag_factors(lx, ly, lz);
    const DemagFactors numeric{quadrature::nz_numeric(ly, lz, lx),
                               quadrature::nz_numeric(lz, lx, ly),
                               quadrature::nz_numeric(lx, ly, lz)};
    const double worst =
        std::max({std::fabs(closed.nx - numeric.nx), std::fabs(closed.ny - numeric.ny),
                  std::fabs(closed.nz - numeric.nz)});
    const double trace = closed.nx + closed.ny + closed.nz;
    const bool ok = worst < 1e-4 && std::fabs(trace - 1.0) < 1e-12;
    report("8c", "demag factor oracle", ok,
           strf("worst |closed - quadrature| %.2e (limit 1e-4), nx+ny+nz - 1 = %.2e", worst,
                trace - 1.0));
}

// 8d: lifetime fit must recover exact exponential data.
void check_lifetime_fit_oracle() {
    const double kt = constants::k_boltzmann * 300.0;
    const double t_l0 = 0.5e-9;
    std::vector<double> e_b, dwell;
    for (double b : {1.0, 2.0, 3.0, 4.0}) {
        e_b.push_back(b * kt);
        dwell.push_back(t_l0 * std::exp(b));
    }
    const ArrheniusFit fit = fit_arrhenius(e_b, dwell, 300.0);
    const bool ok = std::fabs(fit.slope_fit - 1.0) < 1e-9 &&
                    std::fabs(fit.t_l0_fit / t_l0 - 1.0) < 1e-9 &&
                    fit.r_squared > 1.0 - 1e-12;
    report("8d", "lifetime fit oracle", ok,
           strf("slope %.12f, prefactor %.6f ns, r^2 %.14f", fit.slope_fit,
                fit.t_l0_fit * 1e9, fit.r_squared));
}

}  // namespace

int main(int argc, char** argv) {
    bool long_run = false;
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--long") == 0) long_run = true;

    check_zero_bias_balance();
    check_transfer_direction();
    check_linearity(long_run);
    check_lifetime_law();
    check_switching_sigmoid();
    check_precession_period();
    check_length_drift();
    check_thermal_variance();
    check_worker_determinism();
    check_readout_contract();
    check_deviation_oracle();
    check_counting_oracle();
    check_demag_oracle();
    check_lifetime_fit_oracle();

    if (checks_failed > 0) {
        std::printf("%d checks failed\n", checks_failed);
        return 1;
    }
    std::printf("all checks passed\n");
    return 0;
}
