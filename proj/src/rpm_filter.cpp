#include "evprop/rpm_filter.hpp"

#include <cmath>

namespace evprop {

double freq_to_omega(double f_blade_hz, int n_blades) {
    return 2.0 * M_PI * f_blade_hz / static_cast<double>(n_blades);
}

RpmKfState rpm_kf_step(RpmKfState state, double measurement, double dt_s,
                       const RpmKfParams& params) {
    if (!state.initialized) {
        state.omega_hat = measurement;
        state.variance = params.r_meas;
        state.initialized = true;
        return state;
    }
    state.variance += params.q_process * dt_s;
    const double innovation = measurement - state.omega_hat;
    const double sigma = std::sqrt(state.variance + params.r_meas);
    if (std::abs(innovation) > params.gate_sigma * sigma) {
        state.variance *= 2.0;
        return state;
    }
    const double gain = state.variance / (state.variance + params.r_meas);
    state.omega_hat += gain * innovation;
    state.variance *= 1.0 - gain;
    return state;
}

} // namespace evprop
