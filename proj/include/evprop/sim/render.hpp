#pragma once

#include <random>

#include "evprop/camera.hpp"
#include "evprop/quad_model.hpp"
#include "evprop/sim/dynamics.hpp"
#include "evprop/types.hpp"

namespace evprop::sim {

struct GeneratorConfig {
    double prop_radius = 0.12;    // m
    int n_blades = 2;
    double blade_width = 0.5;     // rad, angular extent of one blade
    double hub_radius_frac = 0.25; // blade starts at this fraction of the radius
    double events_per_crossing = 1.0; // events emitted per pixel crossing
    double contrast_threshold = 0.2;  // sensor log-intensity threshold C;
                                      // density scales with 0.2 / C
    double noise_rate = 0.2;      // background events per second per pixel
    uint64_t seed = 1;
};

// Body-frame motor positions for a motor-to-motor diagonal d, matching the
// image-quadrant numbering at zero yaw under a downward camera:
// 1 (+,+), 2 (-,+), 3 (-,-), 4 (+,-).
std::array<Eigen::Vector3d, 4> motor_positions(double diagonal_m);

// Events from the spinning blade edges of all four propellers over
// [state.t_us, state.t_us + interval_us). Blade leading/trailing edges are
// swept in sub-steps sized so the tip moves under a pixel; each edge sample
// that crosses into a new pixel emits events there (+1 leading, -1 trailing).
// The target translates at state.v within the interval; events land in
// sensor bounds or are dropped. Output is time sorted.
EventBuffer render_propeller_events(const SimState& state, int64_t interval_us,
                                    const Pose& observer, const Extrinsics& extrinsics,
                                    const CameraIntrinsics& k, const QuadrotorParams& quad,
                                    const GeneratorConfig& cfg, std::mt19937_64& rng);

// Superimposes uniform Poisson background noise over the sensor on
// [t_begin_us, t_end_us), merged so the result stays time sorted.
EventBuffer add_background_noise(const EventBuffer& events, const CameraIntrinsics& k,
                                 const GeneratorConfig& cfg, int64_t t_begin_us,
                                 int64_t t_end_us, std::mt19937_64& rng);

} // namespace evprop::sim
