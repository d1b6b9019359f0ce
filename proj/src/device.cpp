#include "simadc/device.hpp"

#include <cmath>

#include "simadc/errors.hpp"

namespace simadc {

void DeviceParams::validate() {
    if (!(mtj.r_p > 0.0) || !(mtj.r_ap > mtj.r_p))
        throw ConfigError("device resistances must satisfy 0 < r_p < r_ap");
    const double pin_norm = norm(mtj.m_pinned);
    if (std::abs(pin_norm - 1.0) > 1e-9)
        throw ConfigError("pinned-layer direction must be a unit vector");
    if (sense.r_ref == 0.0) sense.r_ref = std::sqrt(mtj.r_p * mtj.r_ap);
    if (!(sense.r_ref > mtj.r_p) || !(sense.r_ref < mtj.r_ap))
        throw ConfigError("r_ref must lie strictly between r_p and r_ap");
    if (!(sense.v_read > 0.0)) throw ConfigError("v_read must be positive");
    if (sense.v_threshold == 0.0) sense.v_threshold = 0.5 * sense.v_read;
    if (!(sense.v_threshold > 0.0) || !(sense.v_threshold < sense.v_read))
        throw ConfigError("v_threshold must lie strictly between 0 and v_read");
    if (input_polarity != 1.0 && input_polarity != -1.0)
        throw ConfigError("input_polarity must be +1 or -1");
}

double mtj_resistance(const MtjParams& mtj, const Vec3& m) {
    const double g_p = 1.0 / mtj.r_p;
    const double g_ap = 1.0 / mtj.r_ap;
    const double cos_theta = dot(m, mtj.m_pinned);
    const double g = 0.5 * (g_p + g_ap) + 0.5 * (g_p - g_ap) * cos_theta;
    return 1.0 / g;
}

double sense_node_voltage(const SenseParams& sense, double r_mtj) {
    return sense.v_read * r_mtj / (r_mtj + sense.r_ref);
}

int read_state(const SenseParams& sense, double r_mtj) {
    return sense_node_voltage(sense, r_mtj) > sense.v_threshold ? 1 : 0;
}

double read_current(const SenseParams& sense, double r_mtj) {
    return sense.v_read / (sense.r_ref + r_mtj);
}

}  // namespace simadc
