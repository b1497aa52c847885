#pragma once

#include <optional>

#include <Eigen/Core>

namespace evprop {

struct OrientationKfParams {
    double q_ori = 0.05;  // process noise rate per axis, 1/s
    double sigma_m = 0.05; // disc-normal measurement noise per axis
    double gate_chi2 = 11.3449; // 99% quantile of chi-square with 3 dof

    Eigen::Matrix3d q_rate() const { return Eigen::Matrix3d::Identity() * q_ori; }
    Eigen::Matrix3d r_meas() const { return Eigen::Matrix3d::Identity() * (sigma_m * sigma_m); }
};

// Unit thrust axis b_z in the world frame with covariance. Before the first
// measurement the state holds the hover prior (0, 0, 1).
struct OrientationState {
    Eigen::Vector3d b_z = Eigen::Vector3d::UnitZ();
    Eigen::Matrix3d p = Eigen::Matrix3d::Identity() * 0.1;
    bool initialized = false;
};

// Constant angular velocity propagation: omega_body is rotated into the
// world frame by the minimal rotation taking (0,0,1) to b_z (yaw-free, so an
// omega component along b_z has no effect), then
// b_z <- normalize(b_z + (omega_w x b_z) dt), P <- P + Q dt.
void orientation_predict(OrientationState& state, const Eigen::Vector3d& omega_body, double dt,
                         const OrientationKfParams& params);

// Kalman update with H = I3, Joseph covariance, renormalized b_z. Returns
// false when the innovation fails the chi-square gate.
bool orientation_update(OrientationState& state, const Eigen::Vector3d& normal_meas,
                        const OrientationKfParams& params);

struct Attitude {
    double roll = 0.0;  // rad
    double pitch = 0.0; // rad
};

// Yaw-free decomposition: roll = asin(-b_y), pitch = atan2(b_x, b_z).
// Undefined when the thrust axis points at or below the horizon (b_z,z <= 0).
std::optional<Attitude> attitude_from_bz(const Eigen::Vector3d& b_z);

// Inverse reconstruction b = (cos(roll) sin(pitch), -sin(roll),
// cos(roll) cos(pitch)).
Eigen::Vector3d bz_from_attitude(const Attitude& attitude);

} // namespace evprop
