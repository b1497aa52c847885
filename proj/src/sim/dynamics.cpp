#include "evprop/sim/dynamics.hpp"

namespace evprop::sim {

namespace {

// Integration state with plain vector arithmetic; the quaternion is handled
// as raw coefficients and renormalized after the full step.
struct Ds {
    Eigen::Vector3d p, v, w;
    Eigen::Vector4d q; // (w, x, y, z)

    Ds operator+(const Ds& o) const { return {p + o.p, v + o.v, w + o.w, q + o.q}; }
    Ds operator*(double s) const { return {p * s, v * s, w * s, q * s}; }
};

Ds derivative(const Ds& s, double thrust, const DynamicsParams& params) {
    const Eigen::Quaterniond q(s.q(0), s.q(1), s.q(2), s.q(3));
    Ds d;
    d.p = s.v;
    d.v = q * Eigen::Vector3d(0.0, 0.0, thrust / params.mass) + params.gravity;
    const Eigen::Quaterniond omega_q(0.0, s.w.x(), s.w.y(), s.w.z());
    const Eigen::Quaterniond qdot = q * omega_q;
    d.q = 0.5 * Eigen::Vector4d(qdot.w(), qdot.x(), qdot.y(), qdot.z());
    d.w = -params.beta * s.w;
    return d;
}

} // namespace

SimState integrate_dynamics(const SimState& state, double thrust, double dt_s,
                            const DynamicsParams& params) {
    Ds s{state.p, state.v, state.omega_body,
         Eigen::Vector4d(state.q.w(), state.q.x(), state.q.y(), state.q.z())};
    const Ds k1 = derivative(s, thrust, params);
    const Ds k2 = derivative(s + k1 * (dt_s / 2.0), thrust, params);
    const Ds k3 = derivative(s + k2 * (dt_s / 2.0), thrust, params);
    const Ds k4 = derivative(s + k3 * dt_s, thrust, params);
    const Ds next = s + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (dt_s / 6.0);

    SimState out = state;
    out.p = next.p;
    out.v = next.v;
    out.omega_body = next.w;
    out.q = Eigen::Quaterniond(next.q(0), next.q(1), next.q(2), next.q(3)).normalized();
    for (int i = 0; i < 4; ++i) out.rotor_angle[i] += state.motor_omega[i] * dt_s;
    out.t_us = state.t_us + static_cast<int64_t>(dt_s * 1e6 + 0.5);
    return out;
}

} // namespace evprop::sim
