#pragma once

#include <cstdint>
#include <vector>

#include "simadc/llg.hpp"
#include "simadc/magnet.hpp"

namespace simadc {

// Complete dwell intervals of a two-state telegraph signal extracted from a
// trace; partial dwells at the ends are excluded.
struct DwellStats {
    std::vector<double> up_dwells;    // seconds spent above the upper threshold
    std::vector<double> down_dwells;  // seconds spent below the lower threshold
    double mean_up = 0.0;
    double mean_down = 0.0;
    std::size_t n_transitions = 0;
    bool sufficient = false;  // at least one complete dwell was observed
};

// Two-threshold (Schmitt) state detection on m_x: the state becomes UP when
// m_x > hi and DOWN when m_x < lo, so sub-threshold precession does not
// register as switching. Requires hi > lo.
DwellStats extract_dwells(const TraceRecord& trace, double hi = 0.5, double lo = -0.5);

// Mean over all complete dwells of both states; 0 when there are none.
double mean_dwell(const DwellStats& stats);

struct ArrheniusFit {
    double t_l0_fit = 0.0;   // seconds
    double slope_fit = 0.0;  // 1 when lifetimes follow exp(E_B / kT) exactly
    double r_squared = 0.0;
};

// Least-squares fit of ln(mean_dwell) against e_b / kT. Requires at least
// three points with positive dwells and a non-degenerate barrier range.
ArrheniusFit fit_arrhenius(const std::vector<double>& e_b_joule,
                           const std::vector<double>& mean_dwell_s, double temperature);

struct WilsonInterval {
    double lo = 0.0;
    double hi = 0.0;
};

// 95% Wilson score interval for a binomial proportion.
WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials);

struct SwitchingPoint {
    double v_pulse = 0.0;
    double p_switch = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    std::uint64_t n_trials = 0;
};

// Pulse experiment: every trial starts antiparallel to the pinned direction
// (m = -x with a small tilt), sees v_pulse on the ME terminal for t_pulse,
// relaxes at zero bias for t_settle, and counts as switched when the final
// m_x is positive. Trial i uses RNG stream (params.seed, stream_offset + i),
// so points of a sweep stay independent for any worker count.
SwitchingPoint switching_probability(const Magnet& magnet, const IntegratorParams& params,
                                     double v_pulse, double t_pulse, double t_settle,
                                     std::uint64_t n_trials, std::uint64_t stream_offset,
                                     int workers);

}  // namespace simadc
