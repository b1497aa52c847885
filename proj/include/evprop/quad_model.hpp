#pragma once

#include <array>

#include <Eigen/Core>

namespace evprop {

struct QuadrotorParams {
    double mass = 1.0;    // kg
    double c_f = 9.02e-6; // thrust coefficient, N per (rad/s)^2
    double k_roll = 1e-5; // roll differential gain, (rad/s) per (rad/s)^2
    Eigen::Vector3d gravity{0.0, 0.0, -9.81};
    // Propeller indices (1..4) on each side of the roll axis. 1 is top-right
    // in the image, numbering continues counterclockwise, so the image-right
    // motors are {1, 4}.
    std::array<int, 2> right_motors{1, 4};
    std::array<int, 2> left_motors{2, 3};
    int n_blades = 2;
    double prop_diagonal_m = 0.40; // motor-to-motor diagonal
    double disc_radius_m = 0.12;   // propeller disc radius
};

// T = c_f * sum(omega_i^2). omega is indexed by propeller slot 0..3.
double total_thrust(const std::array<double, 4>& omega, double c_f);

// Body roll rate from the left-right motor imbalance:
// w_x = k_roll * (sum_right omega^2 - sum_left omega^2).
double roll_rate_from_rpm(const std::array<double, 4>& omega, double k_roll,
                          const std::array<int, 2>& right_motors,
                          const std::array<int, 2>& left_motors);

} // namespace evprop
