#pragma once

#include <cstdint>
#include <vector>

#include "simadc/magnet.hpp"
#include "simadc/rng.hpp"
#include "simadc/vec3.hpp"

namespace simadc {

struct IntegratorParams {
    double dt = 0.5e-12;       // integration step, s; hard upper bound 1 ps
    std::uint64_t seed = 42;   // master seed; trials derive streams from it
    double renorm_tol = 1e-6;  // allowed |m| drift per step before renormalization
};

struct MagState {
    Vec3 m{1.0, 0.0, 0.0};
    double t = 0.0;
};

// Default start: easy axis +x with a small y tilt so that T = 0 dynamics are
// not pinned at the stationary point.
MagState default_initial_state();

struct TraceRecord {
    std::vector<double> t;
    std::vector<double> mx;
    std::vector<double> my;
    std::vector<double> mz;
    MagState final_state;

    std::size_t size() const { return t.size(); }
};

// Explicit Landau-Lifshitz form of the equation of motion:
//   dm/dt = -(gamma / (1 + alpha^2)) [ m x H + alpha m x (m x H) ]
Vec3 llg_rhs(const Magnet& magnet, const Vec3& m, const Vec3& h_eff);

// Per-component thermal field amplitude. The Brown white-noise variance in
// A/m is 2 alpha kT / (mu0 |gamma| Ms V dt); each component is an
// independent standard-normal draw scaled by sigma.
class ThermalFieldSampler {
public:
    ThermalFieldSampler(const Magnet& magnet, double dt, Xoshiro256pp rng);

    double sigma() const { return sigma_; }
    Vec3 sample() {
        if (sigma_ == 0.0) return {};
        return {sigma_ * gauss_.next(), sigma_ * gauss_.next(), sigma_ * gauss_.next()};
    }

private:
    double sigma_ = 0.0;
    GaussianSampler gauss_;
};

double thermal_field_sigma(const Magnet& magnet, double dt);

// Heun predictor-corrector stepper for one trajectory. The thermal field is
// drawn once per step and held through both stages (Stratonovich), and m is
// renormalized after the corrector. One integrator owns one RNG stream, so a
// trace is fully determined by (config, params, stream_index).
class HeunIntegrator {
public:
    HeunIntegrator(const Magnet& magnet, const IntegratorParams& params,
                   std::uint64_t stream_index = 0);

    // Advances state by dt at bias v_me. Throws SimulationError on blow-up.
    MagState step(const MagState& state, double v_me);

    // Same as step() but reports |m| - 1 of the corrector output before
    // renormalization, for drift diagnostics.
    MagState step_diagnostic(const MagState& state, double v_me, double& pre_renorm_drift);

    double sigma_thermal() const { return thermal_.sigma(); }
    double dt() const { return dt_; }

private:
    MagState advance(const MagState& state, double v_me, double* pre_renorm_drift);

    const Magnet* magnet_;
    double dt_;
    std::uint64_t step_count_ = 0;
    ThermalFieldSampler thermal_;
};

// Integrates for `duration` at constant v_me, recording every `record_every`
// seconds (>= dt). Sample k is taken at the step closest to k*record_every;
// sample 0 is the initial state. Duration 0 yields just the initial sample.
TraceRecord simulate_trace(const Magnet& magnet, const IntegratorParams& params, const Vec3& m0,
                           double v_me, double duration, double record_every,
                           std::uint64_t stream_index = 0);

}  // namespace simadc
