#include "evprop/position_kf.hpp"

#include <Eigen/Dense>

namespace evprop {

void position_predict(PositionState& state, double thrust, const Eigen::Vector3d& b_z,
                      double mass, const Eigen::Vector3d& gravity, double dt,
                      const PositionKfParams& params) {
    const Eigen::Vector3d a = (thrust / mass) * b_z + gravity;
    Matrix6d f = Matrix6d::Identity();
    f.topRightCorner<3, 3>() = Eigen::Matrix3d::Identity() * dt;
    Vector6d u;
    u.head<3>() = 0.5 * a * dt * dt;
    u.tail<3>() = a * dt;
    state.x = f * state.x + u;
    state.p = f * state.p * f.transpose() + params.q_rate() * dt;
    state.p = ((state.p + state.p.transpose()) / 2.0).eval();
}

void position_initialize(PositionState& state, const Eigen::Vector3d& z,
                         const PositionKfParams& params) {
    state.x.head<3>() = z;
    state.x.tail<3>().setZero();
    state.p.setZero();
    state.p.topLeftCorner<3, 3>() = params.r_meas() * 4.0;
    state.p.bottomRightCorner<3, 3>() = Eigen::Matrix3d::Identity() * 4.0;
    state.initialized = true;
}

bool position_update(PositionState& state, const Eigen::Vector3d& z,
                     const PositionKfParams& params) {
    const Eigen::Matrix3d r = params.r_meas();
    Eigen::Matrix<double, 3, 6> h = Eigen::Matrix<double, 3, 6>::Zero();
    h.leftCols<3>() = Eigen::Matrix3d::Identity();
    const Eigen::Vector3d innovation = z - h * state.x;
    const Eigen::Matrix3d s = h * state.p * h.transpose() + r;
    const Eigen::Matrix3d s_inv = s.inverse();
    const double mahal2 = innovation.dot(s_inv * innovation);
    if (mahal2 > params.gate_chi2) return false;

    const Eigen::Matrix<double, 6, 3> gain = state.p * h.transpose() * s_inv;
    state.x += gain * innovation;
    const Matrix6d ikh = Matrix6d::Identity() - gain * h;
    state.p = ikh * state.p * ikh.transpose() + gain * r * gain.transpose();
    state.p = ((state.p + state.p.transpose()) / 2.0).eval();
    return true;
}

} // namespace evprop
