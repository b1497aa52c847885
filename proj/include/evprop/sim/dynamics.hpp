#pragma once

#include <array>
#include <cstdint>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace evprop::sim {

struct DynamicsParams {
    double mass = 1.0;
    Eigen::Vector3d gravity{0.0, 0.0, -9.81};
    double beta = 0.5; // angular velocity decay rate, 1/s
};

struct SimState {
    Eigen::Vector3d p = Eigen::Vector3d::Zero();
    Eigen::Vector3d v = Eigen::Vector3d::Zero();
    Eigen::Quaterniond q = Eigen::Quaterniond::Identity(); // body to world
    Eigen::Vector3d omega_body = Eigen::Vector3d::Zero();
    std::array<double, 4> motor_omega{};  // rad/s, propeller slots 1..4
    std::array<double, 4> rotor_angle{};  // rad, blade phase continuity
    int64_t t_us = 0;
};

// One RK4 step of the rigid-body model
//   p' = v, v' = R(q) (0,0,T/m) + g, q' = 1/2 q x (0, w), w' = -beta w.
// Thrust is held constant over the step; the quaternion is renormalized.
// dt_s should be at most 1 ms.
SimState integrate_dynamics(const SimState& state, double thrust, double dt_s,
                            const DynamicsParams& params);

} // namespace evprop::sim
