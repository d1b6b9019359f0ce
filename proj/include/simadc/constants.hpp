#pragma once

namespace simadc::constants {

inline constexpr double mu0 = 1.25663706212e-6;          // vacuum permeability, T*m/A
inline constexpr double k_boltzmann = 1.380649e-23;      // J/K
inline constexpr double c_light = 2.99792458e8;          // m/s
inline constexpr double gamma_default = 2.21e5;          // gyromagnetic ratio, m/(A*s)

}  // namespace simadc::constants
