#pragma once

#include <map>
#include <string>
#include <vector>

#include "evprop/config.hpp"
#include "evprop/metrics.hpp"
#include "evprop/position_kf.hpp"
#include "evprop/orientation_kf.hpp"
#include "evprop/roi_signal.hpp"
#include "evprop/rpm_filter.hpp"
#include "evprop/tracker.hpp"

namespace evprop {

// One output row per chunk (see write_estimates_csv for the column order).
struct EstimateRecord {
    int64_t t_us = 0; // chunk end
    std::array<double, 4> omega{};
    std::array<uint8_t, 4> rpm_valid{};
    Eigen::Vector3d position = Eigen::Vector3d::Zero();
    Eigen::Vector3d velocity = Eigen::Vector3d::Zero();
    Eigen::Vector3d b_z = Eigen::Vector3d::UnitZ();
    double roll = 0.0;
    double pitch = 0.0;
    uint8_t pos_valid = 0;
    uint8_t ori_valid = 0;
    uint8_t pos_rejected = 0; // gated measurement this chunk
    uint8_t ori_rejected = 0;
    int n_tracks = 0;
};

// Observer poses sampled over time; lookup returns the nearest entry.
struct ObserverSeries {
    std::vector<int64_t> t_us;
    std::vector<Pose> poses;

    Pose at(int64_t t) const;
};

ObserverSeries load_observer_csv(const std::string& path);

// Chunk-sequential estimation engine: STC filter, detection, tracking,
// per-propeller frequency, then the coupled orientation/position filters.
// The orientation result of a chunk feeds that same chunk's position
// prediction.
class EstimationPipeline {
public:
    explicit EstimationPipeline(const PipelineConfig& config);

    EstimateRecord process_chunk(const EventChunk& chunk, const Pose& observer);

    const PositionState& position_state() const { return position_; }
    const OrientationState& orientation_state() const { return orientation_; }
    const Tracker& tracker() const { return tracker_; }

private:
    PipelineConfig cfg_;
    FreqEstimatorParams freq_;
    Tracker tracker_;
    PropAssigner assigner_;
    std::map<int, RoiBinBuffer> roi_buffers_; // by track id
    std::array<RpmKfState, 4> rpm_;           // by propeller slot
    std::array<double, 4> held_omega_{};      // last valid rate per motor
    std::array<bool, 4> held_valid_{};
    PositionState position_;
    OrientationState orientation_;
};

struct StageStats {
    double filter_ms = 0.0;
    double detect_ms = 0.0;
    double track_rpm_ms = 0.0;
    double estimate_ms = 0.0;
    double total_ms = 0.0;
    size_t events_in = 0;
    size_t events_filtered = 0;
    size_t chunks = 0;
    double wall_seconds = 0.0;
    double stream_seconds = 0.0;

    double realtime_factor() const {
        return wall_seconds > 0.0 ? stream_seconds / wall_seconds : 0.0;
    }
};

struct EstimationRun {
    std::vector<EstimateRecord> records;
    StageStats stats;
};

// Full run over an event stream. Chunk boundaries snap to multiples of
// chunk_dt_us; with an empty stream the observer series provides the time
// base and every record carries invalid flags.
EstimationRun run_estimation(const PipelineConfig& config, const EventBuffer& events,
                             const ObserverSeries& observer);

void write_estimates_csv(const std::string& path, const std::vector<EstimateRecord>& records);
void write_run_log(const std::string& path, const PipelineConfig& config, const StageStats& stats);

} // namespace evprop
