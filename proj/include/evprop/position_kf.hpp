#pragma once

#include <Eigen/Core>

namespace evprop {

using Vector6d = Eigen::Matrix<double, 6, 1>;
using Matrix6d = Eigen::Matrix<double, 6, 6>;

struct PositionKfParams {
    double q_pos = 0.01;  // position process noise rate, m^2/s
    double q_vel = 0.5;   // velocity process noise rate, (m/s)^2/s
    double sigma_lat = 0.05;  // lateral measurement noise, m
    double sigma_depth = 0.3; // depth-axis measurement noise, m
    double gate_chi2 = 11.3449; // 99% quantile of chi-square with 3 dof

    Matrix6d q_rate() const {
        Vector6d d;
        d << q_pos, q_pos, q_pos, q_vel, q_vel, q_vel;
        return d.asDiagonal();
    }
    Eigen::Matrix3d r_meas() const {
        return Eigen::Vector3d(sigma_lat * sigma_lat, sigma_lat * sigma_lat,
                               sigma_depth * sigma_depth)
            .asDiagonal();
    }
};

// [p, v] state with covariance. Initialized from the first accepted
// position measurement.
struct PositionState {
    Vector6d x = Vector6d::Zero();
    Matrix6d p = Matrix6d::Identity();
    bool initialized = false;

    Eigen::Vector3d position() const { return x.head<3>(); }
    Eigen::Vector3d velocity() const { return x.tail<3>(); }
};

// Seeds the state from the first position measurement (zero velocity, broad
// covariance).
void position_initialize(PositionState& state, const Eigen::Vector3d& z,
                         const PositionKfParams& params);

// Constant-acceleration double integrator driven by tilt-corrected thrust:
// a = (T/m) b_z + g, x <- F x + u, P <- F P F^T + Q dt.
void position_predict(PositionState& state, double thrust, const Eigen::Vector3d& b_z,
                      double mass, const Eigen::Vector3d& gravity, double dt,
                      const PositionKfParams& params);

// Kalman update with H = [I 0] and a Joseph-form covariance step. Returns
// false when the innovation fails the chi-square gate (update skipped).
bool position_update(PositionState& state, const Eigen::Vector3d& z,
                     const PositionKfParams& params);

} // namespace evprop
