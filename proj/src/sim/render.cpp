#include "evprop/sim/render.hpp"

#include <algorithm>
#include <cmath>

namespace evprop::sim {

std::array<Eigen::Vector3d, 4> motor_positions(double diagonal_m) {
    const double l = diagonal_m / (2.0 * std::sqrt(2.0));
    return {Eigen::Vector3d(l, l, 0.0), Eigen::Vector3d(-l, l, 0.0),
            Eigen::Vector3d(-l, -l, 0.0), Eigen::Vector3d(l, -l, 0.0)};
}

EventBuffer render_propeller_events(const SimState& state, int64_t interval_us,
                                    const Pose& observer, const Extrinsics& extrinsics,
                                    const CameraIntrinsics& k, const QuadrotorParams& quad,
                                    const GeneratorConfig& cfg, std::mt19937_64& rng) {
    EventBuffer out;
    const auto motors = motor_positions(quad.prop_diagonal_m);
    const Eigen::Matrix3d r_wb = state.q.toRotationMatrix();
    // World -> camera as one rotation + translation.
    const Eigen::Matrix3d r_cw =
        (extrinsics.rotation.conjugate() * observer.orientation.conjugate()).toRotationMatrix();
    const Eigen::Vector3d t_cw =
        -(r_cw * observer.position) -
        extrinsics.rotation.conjugate().toRotationMatrix() * extrinsics.translation;

    const double density = cfg.events_per_crossing * (0.2 / cfg.contrast_threshold);
    const int whole = static_cast<int>(std::floor(density));
    const double frac = density - whole;
    std::bernoulli_distribution extra(frac);
    const double focal = std::max(k.fx, k.fy);
    const double hub = cfg.hub_radius_frac * cfg.prop_radius;

    for (int m = 0; m < 4; ++m) {
        const double omega = state.motor_omega[m];
        const Eigen::Vector3d arm_w = r_wb * motors[m];
        const Eigen::Vector3d center_c0 = r_cw * (state.p + arm_w) + t_cw;
        if (center_c0.z() < 0.1) continue;

        const double speed_px = (std::abs(omega) * cfg.prop_radius + state.v.norm()) * focal /
                                center_c0.z();
        int64_t dt_us = speed_px > 1.0 ? static_cast<int64_t>(0.5e6 / speed_px) : interval_us;
        dt_us = std::clamp<int64_t>(dt_us, 20, std::max<int64_t>(interval_us, 1));

        const double edge_px = (cfg.prop_radius - hub) * focal / center_c0.z();
        const int n_r = std::clamp(static_cast<int>(std::ceil(1.5 * edge_px)), 4, 64);
        const int n_edges = cfg.n_blades * 2;

        // Last pixel per (edge, radial sample); INT32_MIN marks off-frame.
        std::vector<int32_t> prev_px(static_cast<size_t>(n_edges) * n_r, INT32_MIN);
        std::vector<int32_t> prev_py(prev_px.size(), INT32_MIN);

        for (int64_t tau_us = 0;; tau_us += dt_us) {
            tau_us = std::min(tau_us, interval_us);
            const double tau = static_cast<double>(tau_us) * 1e-6;
            const Eigen::Vector3d disc_center_w = state.p + state.v * tau + arm_w;
            const Eigen::Vector3d disc_center_c = r_cw * disc_center_w + t_cw;
            for (int b = 0; b < cfg.n_blades; ++b) {
                const double blade_angle = state.rotor_angle[m] + omega * tau +
                                           b * 2.0 * M_PI / cfg.n_blades;
                for (int e = 0; e < 2; ++e) {
                    const double theta = e == 0 ? blade_angle : blade_angle - cfg.blade_width;
                    const Eigen::Vector3d dir_c =
                        r_cw * (r_wb * Eigen::Vector3d(std::cos(theta), std::sin(theta), 0.0));
                    for (int s = 0; s < n_r; ++s) {
                        const double radius =
                            hub + (s + 0.5) / n_r * (cfg.prop_radius - hub);
                        const Eigen::Vector3d p_c = disc_center_c + radius * dir_c;
                        const size_t slot = static_cast<size_t>(b * 2 + e) * n_r + s;
                        if (p_c.z() <= 0.05) {
                            prev_px[slot] = INT32_MIN;
                            continue;
                        }
                        const Eigen::Vector2d px = project(p_c, k);
                        const int32_t ix = static_cast<int32_t>(std::floor(px.x()));
                        const int32_t iy = static_cast<int32_t>(std::floor(px.y()));
                        if (ix == prev_px[slot] && iy == prev_py[slot]) continue;
                        const bool first = prev_px[slot] == INT32_MIN;
                        prev_px[slot] = ix;
                        prev_py[slot] = iy;
                        if (first || tau_us == 0) continue; // crossings only
                        if (ix < 0 || iy < 0 || ix >= k.width || iy >= k.height) continue;
                        int n_events = whole + (frac > 0.0 && extra(rng) ? 1 : 0);
                        const int8_t pol = e == 0 ? 1 : -1;
                        // Keep stamps inside [t_us, t_us + interval).
                        const int64_t stamp = state.t_us + std::min(tau_us, interval_us - 1);
                        for (int c = 0; c < n_events; ++c) {
                            out.push_back(Event{stamp, static_cast<uint16_t>(ix),
                                                static_cast<uint16_t>(iy), pol});
                        }
                    }
                }
            }
            if (tau_us >= interval_us) break;
        }
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const Event& a, const Event& b) { return a.t < b.t; });
    return out;
}

EventBuffer add_background_noise(const EventBuffer& events, const CameraIntrinsics& k,
                                 const GeneratorConfig& cfg, int64_t t_begin_us,
                                 int64_t t_end_us, std::mt19937_64& rng) {
    if (cfg.noise_rate <= 0.0 || t_end_us <= t_begin_us) return events;
    const double duration_s = static_cast<double>(t_end_us - t_begin_us) * 1e-6;
    const double lambda = cfg.noise_rate * k.width * k.height * duration_s;
    std::poisson_distribution<int64_t> count_dist(lambda);
    const int64_t count = count_dist(rng);

    std::uniform_int_distribution<int64_t> t_dist(t_begin_us, t_end_us - 1);
    std::uniform_int_distribution<int> x_dist(0, k.width - 1), y_dist(0, k.height - 1);
    std::bernoulli_distribution pol_dist(0.5);
    EventBuffer noise(static_cast<size_t>(count));
    for (auto& e : noise) {
        e = Event{t_dist(rng), static_cast<uint16_t>(x_dist(rng)),
                  static_cast<uint16_t>(y_dist(rng)), pol_dist(rng) ? int8_t{1} : int8_t{-1}};
    }
    std::sort(noise.begin(), noise.end(), [](const Event& a, const Event& b) { return a.t < b.t; });

    EventBuffer merged(events.size() + noise.size());
    std::merge(events.begin(), events.end(), noise.begin(), noise.end(), merged.begin(),
               [](const Event& a, const Event& b) { return a.t < b.t; });
    return merged;
}

} // namespace evprop::sim
