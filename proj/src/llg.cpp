#include "simadc/llg.hpp"

#include <cmath>

#include "simadc/errors.hpp"

namespace simadc {

MagState default_initial_state() { return {normalized({1.0, 1e-3, 0.0}), 0.0}; }

Vec3 llg_rhs(const Magnet& magnet, const Vec3& m, const Vec3& h_eff) {
    const double alpha = magnet.config().alpha;
    const double pref = -magnet.config().gamma / (1.0 + alpha * alpha);
    const Vec3 mxh = cross(m, h_eff);
    return pref * (mxh + alpha * cross(m, mxh));
}

double thermal_field_sigma(const Magnet& magnet, double dt) {
    const MagnetConfig& cfg = magnet.config();
    const double kt = constants::k_boltzmann * cfg.temperature;
    return std::sqrt(2.0 * cfg.alpha * kt /
                     (constants::mu0 * cfg.gamma * cfg.ms * magnet.volume() * dt));
}

ThermalFieldSampler::ThermalFieldSampler(const Magnet& magnet, double dt, Xoshiro256pp rng)
    : sigma_(thermal_field_sigma(magnet, dt)), gauss_(rng) {}

namespace {

double checked_dt(double dt) {
    if (!(dt > 0.0) || dt > 1.0e-12) throw ConfigError("integrator dt must lie in (0, 1 ps]");
    return dt;
}

}  // namespace

HeunIntegrator::HeunIntegrator(const Magnet& magnet, const IntegratorParams& params,
                               std::uint64_t stream_index)
    : magnet_(&magnet),
      dt_(checked_dt(params.dt)),
      thermal_(magnet, dt_, Xoshiro256pp::stream(params.seed, stream_index)) {}

MagState HeunIntegrator::advance(const MagState& state, double v_me, double* pre_renorm_drift) {
    const Vec3 h_th = thermal_.sample();  // held fixed through both stages

    const Vec3 f0 = llg_rhs(*magnet_, state.m, magnet_->effective_field(state.m, v_me, h_th));
    const Vec3 m_pred = state.m + dt_ * f0;
    const Vec3 f1 = llg_rhs(*magnet_, m_pred, magnet_->effective_field(m_pred, v_me, h_th));

    Vec3 m_new = state.m + (0.5 * dt_) * (f0 + f1);
    if (!finite(m_new))
        throw SimulationError("magnetization blew up (non-finite state); reduce dt");
    if (pre_renorm_drift) *pre_renorm_drift = norm(m_new) - 1.0;

    ++step_count_;
    return {normalized(m_new), state.t + dt_};
}

MagState HeunIntegrator::step(const MagState& state, double v_me) {
    return advance(state, v_me, nullptr);
}

MagState HeunIntegrator::step_diagnostic(const MagState& state, double v_me,
                                         double& pre_renorm_drift) {
    return advance(state, v_me, &pre_renorm_drift);
}

TraceRecord simulate_trace(const Magnet& magnet, const IntegratorParams& params, const Vec3& m0,
                           double v_me, double duration, double record_every,
                           std::uint64_t stream_index) {
    if (duration < 0.0) throw ConfigError("trace duration must be non-negative");
    if (!(record_every >= params.dt))
        throw ConfigError("record_every must be at least the integration step");

    HeunIntegrator integ(magnet, params, stream_index);
    const double dt = params.dt;
    const std::uint64_t n_steps = static_cast<std::uint64_t>(std::llround(duration / dt));
    const std::uint64_t n_records =
        static_cast<std::uint64_t>(std::floor(duration / record_every + 1e-9));

    TraceRecord trace;
    trace.t.reserve(n_records + 1);
    trace.mx.reserve(n_records + 1);
    trace.my.reserve(n_records + 1);
    trace.mz.reserve(n_records + 1);

    MagState state{normalized(m0), 0.0};
    auto record = [&trace](const MagState& s) {
        trace.t.push_back(s.t);
        trace.mx.push_back(s.m.x);
        trace.my.push_back(s.m.y);
        trace.mz.push_back(s.m.z);
    };
    record(state);

    std::uint64_t next_record = 1;
    std::uint64_t next_record_step =
        (n_records >= 1) ? static_cast<std::uint64_t>(std::llround(record_every / dt)) : 0;
    for (std::uint64_t i = 1; i <= n_steps; ++i) {
        state = integ.step(state, v_me);
        if (next_record <= n_records && i == next_record_step) {
            record(state);
            ++next_record;
            next_record_step =
                static_cast<std::uint64_t>(std::llround(next_record * record_every / dt));
        }
    }
    trace.final_state = state;
    return trace;
}

}  // namespace simadc
