#include "simadc/adc.hpp"

#include <algorithm>
#include <cmath>

#include "simadc/errors.hpp"
#include "simadc/parallel.hpp"

namespace simadc {

void AdcParams::validate() const {
    if (!(f_clk > 0.0)) throw ConfigError("f_clk must be positive");
    if (!(t_s > 0.0)) throw ConfigError("t_s must be positive");
    const double raw = f_clk * t_s;
    const double rounded = std::llround(raw);
    if (rounded < 1.0 || std::abs(raw - rounded) > 1e-6 * rounded)
        throw ConfigError("f_clk * t_s must be a positive integer sample count");
    if (!(v_min < v_max)) throw ConfigError("v_min must be less than v_max");
    if (bits < 1) throw ConfigError("bits must be at least 1");
    if (bits > 30) throw ConfigError("bits must be at most 30");
}

std::uint64_t AdcParams::n_samples() const {
    validate();
    return static_cast<std::uint64_t>(std::llround(f_clk * t_s));
}

std::uint64_t count_states(const std::vector<int>& state_stream, std::uint64_t n_samples) {
    if (state_stream.size() < n_samples)
        throw ConfigError("state stream shorter than the requested sample count");
    std::uint64_t ones = 0;
    for (std::uint64_t i = 0; i < n_samples; ++i) ones += state_stream[i] != 0;
    return ones;
}

ConversionResult convert(double v_in, const Magnet& magnet, const DeviceParams& dev,
                         const AdcParams& adc, const IntegratorParams& params,
                         std::uint64_t stream_index) {
    if (v_in < adc.v_min || v_in > adc.v_max)
        throw ConfigError("v_in outside the configured [v_min, v_max] range");
    const std::uint64_t n = adc.n_samples();
    const double clock_period = 1.0 / adc.f_clk;

    const MagState start = default_initial_state();
    const TraceRecord trace = simulate_trace(magnet, params, start.m,
                                             me_voltage_from_input(dev, v_in), adc.t_s,
                                             clock_period, stream_index);
    if (trace.size() != n + 1)
        throw SimulationError("conversion sampling misaligned with the clock grid");

    ConversionResult out;
    double mx_sum = 0.0;
    for (std::uint64_t k = 1; k <= n; ++k) {
        const Vec3 m{trace.mx[k], trace.my[k], trace.mz[k]};
        out.c_out += read_state(dev.sense, mtj_resistance(dev.mtj, m));
        mx_sum += m.x;
    }
    out.mean_mx = mx_sum / static_cast<double>(n);
    return out;
}

int CodeLut::code_for(double count) const {
    const auto it = std::upper_bound(boundaries.begin(), boundaries.end(), count);
    return static_cast<int>(it - boundaries.begin());
}

CodeLut calibrate_lut(const LinearFit& fit, int bits, double v_min, double v_max) {
    if (bits < 1 || bits > 30) throw ConfigError("bits must lie in [1, 30]");
    if (!(v_min < v_max)) throw ConfigError("v_min must be less than v_max");
    if (!(fit.slope > 0.0))
        throw SimulationError("LUT calibration needs a rising count-vs-voltage fit");
    const int n_codes = 1 << bits;
    const double dv = (v_max - v_min) / static_cast<double>(n_codes - 1);
    CodeLut lut;
    lut.bits = bits;
    lut.boundaries.reserve(static_cast<std::size_t>(n_codes) - 1);
    for (int k = 0; k + 1 < n_codes; ++k) {
        const double v_mid = v_min + (static_cast<double>(k) + 0.5) * dv;
        lut.boundaries.push_back(fit.at(v_mid));
    }
    return lut;
}

TransferCurve sweep_transfer_curve(const Magnet& magnet, const DeviceParams& dev,
                                   const AdcParams& adc, const IntegratorParams& params,
                                   int n_points, int workers) {
    if (n_points < 3) throw ConfigError("a sweep needs at least 3 points");
    adc.validate();

    std::vector<double> volts(static_cast<std::size_t>(n_points));
    const double dv = (adc.v_max - adc.v_min) / static_cast<double>(n_points - 1);
    for (int i = 0; i < n_points; ++i) volts[static_cast<std::size_t>(i)] = adc.v_min + i * dv;
    volts.back() = adc.v_max;

    std::vector<ConversionResult> results(volts.size());
    run_indexed(volts.size(), workers, [&](std::size_t i) {
        results[i] = convert(volts[i], magnet, dev, adc, params, i);
    });

    TransferCurve curve;
    std::vector<double> counts(volts.size());
    for (std::size_t i = 0; i < volts.size(); ++i) {
        counts[i] = static_cast<double>(results[i].c_out);
        curve.points.push_back({volts[i], results[i].mean_mx, results[i].c_out, 0});
    }
    curve.fit = least_squares(volts, counts);
    curve.nrmsd_percent = nrmsd(volts, counts);

    const CodeLut lut = calibrate_lut(curve.fit, adc.bits, adc.v_min, adc.v_max);
    for (auto& p : curve.points) p.code = lut.code_for(static_cast<double>(p.c_out));
    return curve;
}

}  // namespace simadc
