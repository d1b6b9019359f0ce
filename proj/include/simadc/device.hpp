#pragma once

#include "simadc/vec3.hpp"

namespace simadc {

// Tunnel-junction resistance contrast. The pinned layer sets the reference
// direction for the P/AP states; resistances in ohms.
struct MtjParams {
    double r_p = 1.0e6;
    double r_ap = 3.0e6;
    Vec3 m_pinned{1.0, 0.0, 0.0};
};

// Readout divider: the junction in series with a reference resistor under a
// fixed read voltage, digitized by an ideal comparator at v_threshold.
struct SenseParams {
    double r_ref = 0.0;       // 0 = derive sqrt(r_p * r_ap) at validation
    double v_read = 0.17;
    double v_threshold = 0.0; // 0 = derive v_read / 2 at validation
};

struct DeviceParams {
    MtjParams mtj;
    SenseParams sense;
    double input_polarity = -1.0;  // maps ADC input volts onto the ME terminal

    // Fills derived defaults (r_ref, v_threshold) and checks invariants.
    // Throws ConfigError on violation.
    void validate();
};

// Conductance interpolation between the P and AP extremes:
// G = (G_p + G_ap)/2 + (G_p - G_ap)/2 * cos(theta), cos(theta) = m . m_pinned.
double mtj_resistance(const MtjParams& mtj, const Vec3& m);

// Divider node voltage v_read * r_mtj / (r_mtj + r_ref); rises with r_mtj so
// the AP state reads high.
double sense_node_voltage(const SenseParams& sense, double r_mtj);

// 1 when the node voltage exceeds v_threshold, else 0 (ties read 0).
int read_state(const SenseParams& sense, double r_mtj);

double read_current(const SenseParams& sense, double r_mtj);

inline double me_voltage_from_input(const DeviceParams& dev, double v_in) {
    return dev.input_polarity * v_in;
}

}  // namespace simadc
