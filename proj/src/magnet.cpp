#include "simadc/magnet.hpp"

#include <cmath>
#include <string>

#include "simadc/errors.hpp"

namespace simadc {

namespace {

// Closed-form N along the 2c edge of a prism with half-edges (a, b, c).
double prism_nz_half_edges(double a, double b, double c) {
    const double abc = std::sqrt(a * a + b * b + c * c);
    const double ab = std::sqrt(a * a + b * b);
    const double bc = std::sqrt(b * b + c * c);
    const double ac = std::sqrt(a * a + c * c);

    double t = 0.0;
    t += (b * b - c * c) / (2.0 * b * c) * std::log((abc - a) / (abc + a));
    t += (a * a - c * c) / (2.0 * a * c) * std::log((abc - b) / (abc + b));
    t += b / (2.0 * c) * std::log((ab + a) / (ab - a));
    t += a / (2.0 * c) * std::log((ab + b) / (ab - b));
    t += c / (2.0 * a) * std::log((bc - b) / (bc + b));
    t += c / (2.0 * b) * std::log((ac - a) / (ac + a));
    t += 2.0 * std::atan2(a * b, c * abc);
    t += (a * a * a + b * b * b - 2.0 * c * c * c) / (3.0 * a * b * c);
    t += (a * a + b * b - 2.0 * c * c) / (3.0 * a * b * c) * abc;
    t += c / (a * b) * (ac + bc);
    t -= (ab * ab * ab + bc * bc * bc + ac * ac * ac) / (3.0 * a * b * c);
    return t / M_PI;
}

void require(bool ok, const std::string& what) {
    if (!ok) throw ConfigError("invalid magnet parameters: " + what);
}

}  // namespace

DemagFactors prism_demag_factors(double lx, double ly, double lz) {
    const double a = lx / 2.0, b = ly / 2.0, c = lz / 2.0;
    DemagFactors n;
    n.nx = prism_nz_half_edges(b, c, a);
    n.ny = prism_nz_half_edges(c, a, b);
    n.nz = prism_nz_half_edges(a, b, c);
    return n;
}

Magnet::Magnet(const MagnetConfig& cfg) : cfg_(cfg) {
    require(cfg.length_x > 0 && cfg.length_y > 0 && cfg.thickness > 0, "lengths must be positive");
    require(cfg.ms > 0, "ms must be positive");
    require(cfg.alpha >= 0 && cfg.alpha < 1, "alpha must lie in [0, 1)");
    require(cfg.ku2 >= 0, "ku2 must be non-negative");
    require(cfg.ki >= 0, "ki must be non-negative");
    require(cfg.t_me > 0, "t_me must be positive");
    require(cfg.temperature >= 0, "temperature must be non-negative");
    require(cfg.gamma > 0, "gamma must be positive");

    volume_ = cfg.length_x * cfg.length_y * cfg.thickness;
    n_ = prism_demag_factors(cfg.length_x, cfg.length_y, cfg.thickness);
    uniaxial_coeff_ = 2.0 * cfg.ku2 / (constants::mu0 * cfg.ms);
    interface_coeff_ = 2.0 * cfg.ki / (constants::mu0 * cfg.ms * cfg.thickness);
    me_coeff_ = cfg.alpha_me / (constants::mu0 * cfg.t_me);
}

double Magnet::energy_barrier_over_kt() const {
    return energy_barrier() / (constants::k_boltzmann * cfg_.temperature);
}

double mean_lifetime(double e_b, double t_l0, double temperature) {
    if (t_l0 <= 0) throw ConfigError("mean_lifetime: t_l0 must be positive");
    if (temperature <= 0) throw ConfigError("mean_lifetime: temperature must be positive");
    return t_l0 * std::exp(e_b / (constants::k_boltzmann * temperature));
}

}  // namespace simadc
