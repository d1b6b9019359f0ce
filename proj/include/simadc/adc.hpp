#pragma once

#include <cstdint>
#include <vector>

#include "simadc/device.hpp"
#include "simadc/llg.hpp"
#include "simadc/magnet.hpp"
#include "simadc/stats.hpp"

namespace simadc {

// Conversion parameters: the state is sampled at f_clk for t_s per input
// voltage, and the sweep covers [v_min, v_max] with 2^bits + 1 points.
struct AdcParams {
    double f_clk = 1.0e9;
    double t_s = 1.0e-5;
    double v_min = -0.4;
    double v_max = 0.4;
    int bits = 4;

    // Samples per conversion window; throws ConfigError unless f_clk * t_s
    // is a positive integer and the other invariants hold.
    std::uint64_t n_samples() const;
    void validate() const;
    int sweep_points() const { return (1 << bits) + 1; }
};

// Ones among the first n_samples entries. Throws ConfigError when the stream
// is shorter than n_samples.
std::uint64_t count_states(const std::vector<int>& state_stream, std::uint64_t n_samples);

struct ConversionResult {
    double mean_mx = 0.0;
    std::uint64_t c_out = 0;
};

// One conversion: integrate for t_s at the ME bias mapped from v_in, sample
// the readout at every clock edge, and count STATE = 1 edges. mean_mx is
// averaged over the same samples. The trajectory starts from the default
// initial state and uses RNG stream (params.seed, stream_index).
ConversionResult convert(double v_in, const Magnet& magnet, const DeviceParams& dev,
                         const AdcParams& adc, const IntegratorParams& params,
                         std::uint64_t stream_index);

struct TransferPoint {
    double v_in = 0.0;
    double mean_mx = 0.0;
    std::uint64_t c_out = 0;
    int code = 0;
};

struct TransferCurve {
    std::vector<TransferPoint> points;  // sorted by v_in
    LinearFit fit;                      // least-squares line of c_out vs v_in
    double nrmsd_percent = 0.0;
};

// Monotone total map from counts to output codes. Bin boundaries are the
// fitted line's predicted counts at the midpoints between adjacent code
// voltages.
struct CodeLut {
    int bits = 0;
    std::vector<double> boundaries;  // ascending, size 2^bits - 1

    int code_for(double count) const;
};

// Builds the count -> code table from a fitted transfer line over
// [v_min, v_max]. Throws SimulationError when the fit slope is not positive.
CodeLut calibrate_lut(const LinearFit& fit, int bits, double v_min, double v_max);

// Evaluates convert() at n_points equally spaced voltages in [v_min, v_max]
// (point i uses stream index i), fits the count-vs-voltage line, attaches the
// NRMSD, and assigns codes through a LUT calibrated on the fit.
TransferCurve sweep_transfer_curve(const Magnet& magnet, const DeviceParams& dev,
                                   const AdcParams& adc, const IntegratorParams& params,
                                   int n_points, int workers);

}  // namespace simadc
