#pragma once

#include "simadc/constants.hpp"
#include "simadc/vec3.hpp"

namespace simadc {

// Free-layer geometry and material parameters. Lengths in meters, ms in A/m,
// ku2 in J/m^3, ki in J/m^2, alpha_me in s/m, temperature in K, gamma in
// m/(A*s). The easy axis is x, the film normal is z.
struct MagnetConfig {
    double length_x = 0.0;
    double length_y = 0.0;
    double thickness = 0.0;
    double ms = 0.0;
    double alpha = 0.0;
    double ku2 = 0.0;
    double ki = 0.0;
    double t_me = 0.0;
    double alpha_me = 0.0;
    double temperature = 0.0;
    double gamma = constants::gamma_default;
};

struct DemagFactors {
    double nx = 0.0;
    double ny = 0.0;
    double nz = 0.0;
};

// Demagnetizing factors of a uniformly magnetized rectangular prism with
// edge lengths (lx, ly, lz), from the closed-form prism expressions.
// nx + ny + nz = 1 for any geometry.
DemagFactors prism_demag_factors(double lx, double ly, double lz);

// A validated magnet with all geometry-derived quantities precomputed.
// Immutable after construction; every field accessor is a pure function.
class Magnet {
public:
    explicit Magnet(const MagnetConfig& cfg);  // throws ConfigError on invalid parameters

    const MagnetConfig& config() const { return cfg_; }
    const DemagFactors& demag_factors() const { return n_; }
    double volume() const { return volume_; }

    // E_B = K_u2 * V
    double energy_barrier() const { return cfg_.ku2 * volume_; }
    double energy_barrier_over_kt() const;

    // H_d = -Ms * (Nx mx, Ny my, Nz mz)
    Vec3 demag_field(const Vec3& m) const {
        return {-cfg_.ms * n_.nx * m.x, -cfg_.ms * n_.ny * m.y, -cfg_.ms * n_.nz * m.z};
    }

    // H_k = (2 K_u2 / (mu0 Ms)) m_x x^
    Vec3 uniaxial_field(const Vec3& m) const { return {uniaxial_coeff_ * m.x, 0.0, 0.0}; }

    // H_i = (2 K_i / (mu0 Ms t)) m_z z^
    Vec3 interface_anisotropy_field(const Vec3& m) const {
        return {0.0, 0.0, interface_coeff_ * m.z};
    }

    // H_ME = (alpha_ME / mu0) (V_ME / t_ME) x^, linear in the applied voltage
    Vec3 me_field(double v_me) const { return {me_coeff_ * v_me, 0.0, 0.0}; }

    Vec3 effective_field(const Vec3& m, double v_me, const Vec3& h_thermal) const {
        return demag_field(m) + uniaxial_field(m) + interface_anisotropy_field(m) +
               me_field(v_me) + h_thermal;
    }

private:
    MagnetConfig cfg_;
    DemagFactors n_;
    double volume_ = 0.0;
    double uniaxial_coeff_ = 0.0;
    double interface_coeff_ = 0.0;
    double me_coeff_ = 0.0;
};

// Neel-Arrhenius mean lifetime t_l0 * exp(E_B / kT).
double mean_lifetime(double e_b, double t_l0, double temperature);

}  // namespace simadc
