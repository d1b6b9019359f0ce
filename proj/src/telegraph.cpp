#include "simadc/telegraph.hpp"

#include <cmath>

#include "simadc/errors.hpp"
#include "simadc/parallel.hpp"
#include "simadc/stats.hpp"

namespace simadc {

DwellStats extract_dwells(const TraceRecord& trace, double hi, double lo) {
    if (!(hi > lo)) throw ConfigError("upper dwell threshold must exceed the lower one");

    DwellStats stats;
    int state = 0;  // +1 up, -1 down, 0 not yet established
    double last_transition = 0.0;
    bool have_transition = false;
    for (std::size_t k = 0; k < trace.size(); ++k) {
        const double v = trace.mx[k];
        const int s = v > hi ? 1 : (v < lo ? -1 : 0);
        if (s == 0 || s == state) continue;
        if (state != 0) {
            if (have_transition) {
                const double dwell = trace.t[k] - last_transition;
                // the dwell that just ended was spent in `state`
                (state > 0 ? stats.up_dwells : stats.down_dwells).push_back(dwell);
            }
            last_transition = trace.t[k];
            have_transition = true;
            ++stats.n_transitions;
        }
        state = s;
    }

    auto mean_of = [](const std::vector<double>& v) {
        if (v.empty()) return 0.0;
        double s = 0.0;
        for (double x : v) s += x;
        return s / static_cast<double>(v.size());
    };
    stats.mean_up = mean_of(stats.up_dwells);
    stats.mean_down = mean_of(stats.down_dwells);
    stats.sufficient = stats.n_transitions >= 2;
    return stats;
}

double mean_dwell(const DwellStats& stats) {
    const std::size_t n = stats.up_dwells.size() + stats.down_dwells.size();
    if (n == 0) return 0.0;
    double s = 0.0;
    for (double x : stats.up_dwells) s += x;
    for (double x : stats.down_dwells) s += x;
    return s / static_cast<double>(n);
}

ArrheniusFit fit_arrhenius(const std::vector<double>& e_b_joule,
                           const std::vector<double>& mean_dwell_s, double temperature) {
    if (e_b_joule.size() != mean_dwell_s.size())
        throw ConfigError("barrier and dwell lists must have equal length");
    if (e_b_joule.size() < 3) throw ConfigError("lifetime fit needs at least 3 points");
    if (!(temperature > 0.0)) throw ConfigError("temperature must be positive");

    const double kt = constants::k_boltzmann * temperature;
    std::vector<double> x;
    std::vector<double> y;
    x.reserve(e_b_joule.size());
    y.reserve(e_b_joule.size());
    for (std::size_t i = 0; i < e_b_joule.size(); ++i) {
        if (!(mean_dwell_s[i] > 0.0)) throw ConfigError("mean dwells must be positive");
        x.push_back(e_b_joule[i] / kt);
        y.push_back(std::log(mean_dwell_s[i]));
    }

    const LinearFit fit = least_squares(x, y);
    ArrheniusFit out;
    out.t_l0_fit = std::exp(fit.intercept);
    out.slope_fit = fit.slope;
    out.r_squared = r_squared(x, y, fit);
    return out;
}

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials) {
    if (trials == 0) throw ConfigError("Wilson interval needs at least one trial");
    if (successes > trials) throw ConfigError("successes cannot exceed trials");
    constexpr double z = 1.959963984540054;  // 97.5th percentile of the standard normal
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {center - half, center + half};
}

SwitchingPoint switching_probability(const Magnet& magnet, const IntegratorParams& params,
                                     double v_pulse, double t_pulse, double t_settle,
                                     std::uint64_t n_trials, std::uint64_t stream_offset,
                                     int workers) {
    if (n_trials == 0) throw ConfigError("switching experiment needs at least one trial");
    if (t_pulse < 0.0 || t_settle < 0.0) throw ConfigError("pulse times must be non-negative");

    const std::uint64_t n_pulse = static_cast<std::uint64_t>(std::llround(t_pulse / params.dt));
    const std::uint64_t n_settle = static_cast<std::uint64_t>(std::llround(t_settle / params.dt));
    const Vec3 m0 = normalized({-1.0, 1e-3, 0.0});

    std::vector<unsigned char> switched(n_trials, 0);
    run_indexed(n_trials, workers, [&](std::size_t i) {
        HeunIntegrator integ(magnet, params, stream_offset + i);
        MagState state{m0, 0.0};
        for (std::uint64_t k = 0; k < n_pulse; ++k) state = integ.step(state, v_pulse);
        for (std::uint64_t k = 0; k < n_settle; ++k) state = integ.step(state, 0.0);
        switched[i] = state.m.x > 0.0 ? 1 : 0;
    });

    std::uint64_t successes = 0;
    for (unsigned char s : switched) successes += s;

    SwitchingPoint point;
    point.v_pulse = v_pulse;
    point.n_trials = n_trials;
    point.p_switch = static_cast<double>(successes) / static_cast<double>(n_trials);
    const WilsonInterval ci = wilson_interval(successes, n_trials);
    point.ci_lo = ci.lo;
    point.ci_hi = ci.hi;
    return point;
}

}  // namespace simadc
