#include "evprop/sim/profiles.hpp"

#include <cmath>
#include <stdexcept>

namespace evprop::sim {

namespace {

struct Command {
    double thrust;                  // N
    Eigen::Vector3d omega_body;     // rad/s
};

Command command_at(const std::string& profile, double t, const QuadrotorParams& quad) {
    const double mg = quad.mass * quad.gravity.norm();
    if (profile == "hover") {
        return {mg, Eigen::Vector3d::Zero()};
    }
    if (profile == "lateral_sweep") {
        constexpr double amp = 8.0 * M_PI / 180.0, f = 0.25;
        const double phi = amp * std::sin(2.0 * M_PI * f * t);
        const double phi_dot = amp * 2.0 * M_PI * f * std::cos(2.0 * M_PI * f * t);
        return {mg / std::cos(phi), Eigen::Vector3d(phi_dot, 0.0, 0.0)};
    }
    if (profile == "vertical_bob") {
        constexpr double amp = 0.22, f = 0.2;
        return {mg * (1.0 + amp * std::sin(2.0 * M_PI * f * t)), Eigen::Vector3d::Zero()};
    }
    if (profile == "aggressive") {
        constexpr double roll_amp = 12.0 * M_PI / 180.0, roll_f = 0.4;
        constexpr double pitch_amp = 6.0 * M_PI / 180.0, pitch_f = 0.3;
        constexpr double bob_amp = 0.08, bob_f = 0.15;
        const double phi = roll_amp * std::sin(2.0 * M_PI * roll_f * t);
        const double phi_dot = roll_amp * 2.0 * M_PI * roll_f * std::cos(2.0 * M_PI * roll_f * t);
        const double theta_dot =
            pitch_amp * 2.0 * M_PI * pitch_f * std::cos(2.0 * M_PI * pitch_f * t + M_PI / 3.0);
        const double thrust =
            mg * (1.0 + bob_amp * std::sin(2.0 * M_PI * bob_f * t)) / std::cos(phi);
        return {thrust, Eigen::Vector3d(phi_dot, theta_dot, 0.0)};
    }
    throw std::invalid_argument("scripted_flight: unknown profile '" + profile + "'");
}

// Split total squared speed so the right-left imbalance realizes the
// commanded roll rate under the shared model.
std::array<double, 4> solve_motors(double thrust, double roll_rate, const QuadrotorParams& quad) {
    const double total_sq = thrust / quad.c_f;
    const double delta = roll_rate / quad.k_roll;
    const double right_sq = std::max((total_sq + delta) / 4.0, 0.0);
    const double left_sq = std::max((total_sq - delta) / 4.0, 0.0);
    std::array<double, 4> motors{};
    for (int i : quad.right_motors) motors[i - 1] = std::sqrt(right_sq);
    for (int i : quad.left_motors) motors[i - 1] = std::sqrt(left_sq);
    return motors;
}

} // namespace

std::vector<SimState> scripted_flight(const std::string& profile, int64_t duration_us,
                                      const QuadrotorParams& quad, const DynamicsParams& dynamics,
                                      int64_t control_dt_us, const Eigen::Vector3d& start_position) {
    command_at(profile, 0.0, quad); // validate the name before any work

    SimState state;
    state.p = start_position;
    for (int i = 0; i < 4; ++i) state.rotor_angle[i] = i * M_PI / 4.0;

    const int64_t n_steps = duration_us / control_dt_us;
    std::vector<SimState> trajectory;
    trajectory.reserve(static_cast<size_t>(n_steps));
    constexpr double kSubStep = 1e-3;
    const int n_sub = static_cast<int>(control_dt_us / 1000);

    for (int64_t k = 0; k < n_steps; ++k) {
        const double t = static_cast<double>(k * control_dt_us) * 1e-6;
        const Command cmd = command_at(profile, t, quad);
        state.motor_omega = solve_motors(cmd.thrust, cmd.omega_body.x(), quad);
        state.omega_body = cmd.omega_body;
        trajectory.push_back(state);

        const double thrust = total_thrust(state.motor_omega, quad.c_f);
        for (int s = 0; s < n_sub; ++s) {
            state = integrate_dynamics(state, thrust, kSubStep, dynamics);
        }
    }
    return trajectory;
}

} // namespace evprop::sim
