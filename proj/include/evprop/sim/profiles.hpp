#pragma once

#include <string>
#include <vector>

#include "evprop/quad_model.hpp"
#include "evprop/sim/dynamics.hpp"

namespace evprop::sim {

// Open-loop scripted maneuvers. Motor speeds realize the commanded thrust
// and roll differential through the shared quadrotor model, so the commanded
// body roll rate always equals k_roll * (right - left) of the squared motor
// speeds. Profiles:
//   hover         constant collective at the hover point
//   lateral_sweep sinusoidal roll with altitude-holding thrust
//   vertical_bob  sinusoidal collective, level attitude
//   aggressive    faster roll sweep plus pitch rate and mild bob
// Returns the state trajectory sampled at control steps, one entry per
// control_dt_us of duration (motor speeds apply to the step that starts at
// each sample). Throws std::invalid_argument for an unknown profile name.
std::vector<SimState> scripted_flight(const std::string& profile, int64_t duration_us,
                                      const QuadrotorParams& quad, const DynamicsParams& dynamics,
                                      int64_t control_dt_us = 10000,
                                      const Eigen::Vector3d& start_position = {0.0, 0.0, 4.0});

} // namespace evprop::sim
