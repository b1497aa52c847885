#pragma once

#include <string>
#include <vector>

#include "evprop/camera.hpp"
#include "evprop/sim/profiles.hpp"
#include "evprop/sim/render.hpp"

namespace evprop::sim {

struct SimulationResult {
    EventBuffer events;
    std::vector<SimState> trajectory; // one sample per control step
};

// Full synthetic sequence: scripted flight, per-step event rendering from the
// spinning blades, then background noise over the whole span. Deterministic
// for a given configuration and seed.
SimulationResult simulate(const std::string& profile, int64_t duration_us,
                          const QuadrotorParams& quad, const DynamicsParams& dynamics,
                          const GeneratorConfig& gen, const CameraIntrinsics& k,
                          const Extrinsics& extrinsics, const Pose& observer,
                          int64_t control_dt_us = 10000);

// Ground-truth CSV: t_us,omega1..4,px,py,pz,vx,vy,vz,qw,qx,qy,qz.
void write_ground_truth_csv(const std::string& path, const std::vector<SimState>& trajectory);

// Observer-pose CSV on the same timing: t_us,px,py,pz,qw,qx,qy,qz.
void write_observer_csv(const std::string& path, const std::vector<SimState>& trajectory,
                        const Pose& observer);

} // namespace evprop::sim
