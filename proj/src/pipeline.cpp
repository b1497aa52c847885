#include "evprop/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <omp.h>

#include "evprop/accumulate.hpp"
#include "evprop/cc_detector.hpp"
#include "evprop/chunking.hpp"
#include "evprop/cluster_detector.hpp"
#include "evprop/freq_estimator.hpp"
#include "evprop/p1e.hpp"
#include "evprop/quad_model.hpp"
#include "evprop/stc_filter.hpp"

namespace evprop {

Pose ObserverSeries::at(int64_t t) const {
    if (poses.empty()) return {};
    const auto it = std::lower_bound(t_us.begin(), t_us.end(), t);
    size_t i = static_cast<size_t>(it - t_us.begin());
    if (i == t_us.size()) return poses.back();
    if (i > 0 && t - t_us[i - 1] < t_us[i] - t) --i;
    return poses[i];
}

ObserverSeries load_observer_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open");
    ObserverSeries out;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path + ": empty file");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string field;
        std::vector<double> v;
        while (std::getline(ss, field, ',')) v.push_back(std::stod(field));
        if (v.size() != 8) throw std::runtime_error(path + ": expected 8 columns");
        out.t_us.push_back(static_cast<int64_t>(v[0]));
        Pose p;
        p.position = Eigen::Vector3d(v[1], v[2], v[3]);
        p.orientation = Eigen::Quaterniond(v[4], v[5], v[6], v[7]).normalized();
        out.poses.push_back(p);
    }
    return out;
}

EstimationPipeline::EstimationPipeline(const PipelineConfig& config)
    : cfg_(config), freq_(config.freq_params()), tracker_(config.tracker) {}

EstimateRecord EstimationPipeline::process_chunk(const EventChunk& chunk, const Pose& observer) {
    EstimateRecord rec;
    rec.t_us = chunk.t_end;
    const double dt = static_cast<double>(chunk.duration_us()) * 1e-6;

    const EventChunk filtered = stc_filter(chunk, cfg_.stc);

    std::vector<Detection> detections;
    if (cfg_.detector == "cluster") {
        detections = detect_cluster(filtered, cfg_.detect);
    } else {
        const EventFrame frame = accumulate_frame(filtered, cfg_.camera.width, cfg_.camera.height);
        detections = detect_cc(frame, cfg_.detect);
    }

    tracker_.step(detections);
    const auto& tracks = tracker_.tracks();
    rec.n_tracks = static_cast<int>(tracks.size());
    const auto assignment = assigner_.update(tracks);

    // Per-track ROI signals; coasting tracks keep their last box around the
    // predicted position so brief detection dropouts do not reset the window.
    std::map<int, std::optional<double>> track_freq;
    for (const Track& t : tracks) {
        Detection box = t.last_detection;
        if (t.frames_missing > 0) {
            const Eigen::Vector2d pos = track_position(t);
            const double dx = pos.x() - t.centroid.x();
            const double dy = pos.y() - t.centroid.y();
            box.x_min += static_cast<int>(dx);
            box.x_max += static_cast<int>(dx);
            box.y_min += static_cast<int>(dy);
            box.y_max += static_cast<int>(dy);
        }
        auto [it, inserted] = roi_buffers_.try_emplace(t.id, RoiBinBuffer(cfg_.roi));
        it->second.append(extract_roi_events(filtered, box), chunk.t_start, chunk.t_end);
        if (it->second.filled()) {
            track_freq[t.id] = estimate_frequency(it->second.window(), freq_);
        }
    }
    // Drop buffers of dead tracks.
    for (auto it = roi_buffers_.begin(); it != roi_buffers_.end();) {
        const bool alive = std::any_of(tracks.begin(), tracks.end(),
                                       [&](const Track& t) { return t.id == it->first; });
        it = alive ? std::next(it) : roi_buffers_.erase(it);
    }

    // Advance the per-propeller rate filters.
    std::array<bool, 4> measured{};
    if (assignment) {
        for (const auto& [track_id, prop] : assignment->track_to_prop) {
            const auto freq_it = track_freq.find(track_id);
            if (freq_it == track_freq.end() || !freq_it->second) continue;
            const double omega_meas = freq_to_omega(*freq_it->second, cfg_.quad.n_blades);
            rpm_[prop - 1] = rpm_kf_step(rpm_[prop - 1], omega_meas, dt, cfg_.rpm_kf);
            measured[prop - 1] = true;
        }
    }
    for (int p = 0; p < 4; ++p) {
        if (!measured[p] && rpm_[p].initialized) {
            rpm_[p].variance += cfg_.rpm_kf.q_process * dt; // coast
        }
        if (rpm_[p].initialized) {
            held_omega_[p] = rpm_[p].omega_hat;
            held_valid_[p] = true;
        }
        rec.omega[p] = held_omega_[p];
        rec.rpm_valid[p] = measured[p] && rpm_[p].initialized;
    }
    const bool all_motors = held_valid_[0] && held_valid_[1] && held_valid_[2] && held_valid_[3];

    // Orientation first: its output feeds this chunk's position prediction.
    if (orientation_.initialized && all_motors) {
        const double roll_rate = roll_rate_from_rpm(held_omega_, cfg_.quad.k_roll,
                                                    cfg_.quad.right_motors, cfg_.quad.left_motors);
        orientation_predict(orientation_, Eigen::Vector3d(roll_rate, 0.0, 0.0), dt,
                            cfg_.orientation_kf);
    }
    const Detection* best = nullptr;
    for (const Detection& d : detections) {
        if (!best || d.area > best->area) best = &d;
    }
    if (best) {
        std::vector<Eigen::Vector2d> points;
        for (const Event& e : filtered.events) {
            if (e.x >= best->x_min && e.x <= best->x_max && e.y >= best->y_min &&
                e.y <= best->y_max) {
                points.emplace_back(e.x, e.y);
            }
        }
        if (const auto conic = fit_conic_direct(points)) {
            if (const auto cands = p1e_disc_normal(*conic, cfg_.camera, cfg_.quad.disc_radius_m)) {
                const Eigen::Vector3d prior =
                    orientation_.initialized ? orientation_.b_z : Eigen::Vector3d::UnitZ();
                const std::array<Eigen::Vector3d, 2> world_normals = {
                    cam_dir_to_world((*cands)[0].normal, cfg_.extrinsics, observer),
                    cam_dir_to_world((*cands)[1].normal, cfg_.extrinsics, observer)};
                const Eigen::Vector3d meas = disambiguate_normal(world_normals, prior);
                if (!orientation_update(orientation_, meas, cfg_.orientation_kf)) {
                    rec.ori_rejected = 1;
                }
            }
        }
    }

    // Position filter: thrust along the filtered axis, hover default before
    // the first orientation fix.
    const double gravity_mag = cfg_.quad.gravity.norm();
    const double thrust =
        all_motors ? total_thrust(held_omega_, cfg_.quad.c_f) : cfg_.quad.mass * gravity_mag;
    const Eigen::Vector3d b_z_eff =
        orientation_.initialized ? orientation_.b_z : Eigen::Vector3d::UnitZ();
    if (position_.initialized) {
        position_predict(position_, thrust, b_z_eff, cfg_.quad.mass, cfg_.quad.gravity, dt,
                         cfg_.position_kf);
    }

    const auto center_px = quad_center(tracks);
    if (center_px) {
        double span = 0.0;
        for (size_t i = 0; i < tracks.size(); ++i) {
            for (size_t j = i + 1; j < tracks.size(); ++j) {
                span = std::max(span,
                                (track_position(tracks[i]) - track_position(tracks[j])).norm());
            }
        }
        const auto depth = depth_from_span(span, cfg_.quad.prop_diagonal_m, cfg_.camera.fx,
                                           cfg_.min_span_px);
        if (depth) {
            const Eigen::Vector3d p_cam = backproject(*center_px, *depth, cfg_.camera);
            const Eigen::Vector3d z = cam_to_world(p_cam, cfg_.extrinsics, observer);
            if (!position_.initialized) {
                position_initialize(position_, z, cfg_.position_kf);
            } else if (!position_update(position_, z, cfg_.position_kf)) {
                rec.pos_rejected = 1;
            }
        }
    }

    rec.position = position_.position();
    rec.velocity = position_.velocity();
    rec.pos_valid = position_.initialized;
    rec.b_z = orientation_.b_z;
    rec.ori_valid = orientation_.initialized;
    if (const auto att = attitude_from_bz(orientation_.b_z)) {
        rec.roll = att->roll;
        rec.pitch = att->pitch;
    }
    return rec;
}

EstimationRun run_estimation(const PipelineConfig& config, const EventBuffer& events,
                             const ObserverSeries& observer) {
    if (config.threads > 0) omp_set_num_threads(config.threads);

    std::vector<EventChunk> chunks;
    if (!events.empty()) {
        chunks = chunk_events(events, config.chunk_dt_us, 0);
    } else if (!observer.t_us.empty()) {
        // No events: tile the observer time base so records still come out.
        for (int64_t t = observer.t_us.front(); t <= observer.t_us.back();
             t += config.chunk_dt_us) {
            EventChunk c;
            c.t_start = t;
            c.t_end = t + config.chunk_dt_us;
            chunks.push_back(c);
        }
    }

    EstimationRun run;
    run.records.reserve(chunks.size());
    EstimationPipeline pipeline(config);
    const auto wall_start = std::chrono::steady_clock::now();
    for (const EventChunk& chunk : chunks) {
        const auto t0 = std::chrono::steady_clock::now();
        run.records.push_back(pipeline.process_chunk(chunk, observer.at(chunk.t_start)));
        const auto t1 = std::chrono::steady_clock::now();
        run.stats.total_ms += std::chrono::duration<double, std::milli>(t1 - t0).count();
        run.stats.events_in += chunk.events.size();
        ++run.stats.chunks;
    }
    const auto wall_end = std::chrono::steady_clock::now();
    run.stats.wall_seconds = std::chrono::duration<double>(wall_end - wall_start).count();
    if (!chunks.empty()) {
        run.stats.stream_seconds =
            static_cast<double>(chunks.back().t_end - chunks.front().t_start) * 1e-6;
    }
    return run;
}

void write_estimates_csv(const std::string& path, const std::vector<EstimateRecord>& records) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    out << "t_us,omega1,omega2,omega3,omega4,rpm1,rpm2,rpm3,rpm4,"
           "valid1,valid2,valid3,valid4,px,py,pz,vx,vy,vz,bzx,bzy,bzz,roll,pitch,"
           "pos_valid,ori_valid,pos_rejected,ori_rejected,n_tracks\n";
    char buf[32];
    auto put = [&](std::string& line, double v) {
        std::snprintf(buf, sizeof(buf), ",%.9g", v);
        line += buf;
    };
    for (const EstimateRecord& r : records) {
        std::string line = std::to_string(r.t_us);
        for (double w : r.omega) put(line, w);
        for (double w : r.omega) put(line, omega_to_rpm(w));
        for (uint8_t v : r.rpm_valid) line += "," + std::to_string(static_cast<int>(v));
        for (int i = 0; i < 3; ++i) put(line, r.position(i));
        for (int i = 0; i < 3; ++i) put(line, r.velocity(i));
        for (int i = 0; i < 3; ++i) put(line, r.b_z(i));
        put(line, r.roll);
        put(line, r.pitch);
        line += "," + std::to_string(static_cast<int>(r.pos_valid));
        line += "," + std::to_string(static_cast<int>(r.ori_valid));
        line += "," + std::to_string(static_cast<int>(r.pos_rejected));
        line += "," + std::to_string(static_cast<int>(r.ori_rejected));
        line += "," + std::to_string(r.n_tracks);
        out << line << '\n';
    }
    if (!out) throw std::runtime_error(path + ": write failed");
}

void write_run_log(const std::string& path, const PipelineConfig& config,
                   const StageStats& stats) {
    std::ofstream out(path, std::ios::app);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    out << "detector=" << config.detector << " chunks=" << stats.chunks
        << " events_in=" << stats.events_in << " wall_s=" << stats.wall_seconds
        << " stream_s=" << stats.stream_seconds << " realtime_x=" << stats.realtime_factor()
        << " mean_chunk_ms=" << (stats.chunks ? stats.total_ms / stats.chunks : 0.0) << '\n';
}

} // namespace evprop
