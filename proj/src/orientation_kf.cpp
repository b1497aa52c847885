#include "evprop/orientation_kf.hpp"

#include <cmath>

#include <Eigen/Dense>
#include <Eigen/Geometry>

namespace evprop {

void orientation_predict(OrientationState& state, const Eigen::Vector3d& omega_body, double dt,
                         const OrientationKfParams& params) {
    const Eigen::Quaterniond rot =
        Eigen::Quaterniond::FromTwoVectors(Eigen::Vector3d::UnitZ(), state.b_z);
    const Eigen::Vector3d omega_w = rot * omega_body;
    state.b_z = (state.b_z + omega_w.cross(state.b_z) * dt).normalized();
    state.p += params.q_rate() * dt;
    state.p = ((state.p + state.p.transpose()) / 2.0).eval();
}

bool orientation_update(OrientationState& state, const Eigen::Vector3d& normal_meas,
                        const OrientationKfParams& params) {
    const Eigen::Matrix3d r = params.r_meas();
    const Eigen::Vector3d innovation = normal_meas - state.b_z;
    const Eigen::Matrix3d s = state.p + r;
    const Eigen::Matrix3d s_inv = s.inverse();
    const double mahal2 = innovation.dot(s_inv * innovation);
    if (mahal2 > params.gate_chi2) return false;

    const Eigen::Matrix3d gain = state.p * s_inv;
    state.b_z += gain * innovation;
    const Eigen::Matrix3d ikh = Eigen::Matrix3d::Identity() - gain;
    state.p = ikh * state.p * ikh.transpose() + gain * r * gain.transpose();
    state.p = ((state.p + state.p.transpose()) / 2.0).eval();
    state.b_z.normalize();
    state.initialized = true;
    return true;
}

std::optional<Attitude> attitude_from_bz(const Eigen::Vector3d& b_z) {
    if (b_z.z() <= 0.0) return std::nullopt;
    Attitude a;
    a.roll = std::asin(std::clamp(-b_z.y(), -1.0, 1.0));
    a.pitch = std::atan2(b_z.x(), b_z.z());
    return a;
}

Eigen::Vector3d bz_from_attitude(const Attitude& attitude) {
    const double cr = std::cos(attitude.roll), sr = std::sin(attitude.roll);
    return {cr * std::sin(attitude.pitch), -sr, cr * std::cos(attitude.pitch)};
}

} // namespace evprop
