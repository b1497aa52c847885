#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace evprop {

// Blade-passage frequency to motor angular rate for an n_blades propeller.
double freq_to_omega(double f_blade_hz, int n_blades);

constexpr double omega_to_rpm(double omega_rad_s) { return omega_rad_s * 60.0 / (2.0 * M_PI); }

struct RpmKfParams {
    double q_process = 2000.0; // (rad/s)^2 per s
    double r_meas = 4.0;       // (rad/s)^2
    double gate_sigma = 5.0;   // innovation gate in standard deviations
};

struct RpmKfState {
    double omega_hat = 0.0;
    double variance = 0.0;
    bool initialized = false;
};

// Scalar Kalman step for one motor's angular rate. The state initializes
// from the first measurement. Gated innovations skip the update and double
// the variance so a persistent step eventually passes.
RpmKfState rpm_kf_step(RpmKfState state, double measurement, double dt_s,
                       const RpmKfParams& params);

// Smoothed per-motor rates at one pipeline step, indexed by propeller 1..4
// as slots 0..3.
struct RpmEstimate {
    int64_t t_us = 0;
    std::array<double, 4> omega{};   // rad/s
    std::array<bool, 4> valid{};
};

} // namespace evprop
