#pragma once

#include <cstdint>
#include <limits>
#include <string>

#include "evprop/camera.hpp"
#include "evprop/detect.hpp"
#include "evprop/freq_estimator.hpp"
#include "evprop/orientation_kf.hpp"
#include "evprop/position_kf.hpp"
#include "evprop/quad_model.hpp"
#include "evprop/roi_signal.hpp"
#include "evprop/rpm_filter.hpp"
#include "evprop/sim/render.hpp"
#include "evprop/tracker.hpp"
#include "evprop/types.hpp"

namespace evprop {

// Everything tunable in one place, loadable from a flat key = value file
// with dotted section keys (e.g. "rpm.window_us = 100000"). Unknown keys are
// an error. One seed drives all randomness.
struct PipelineConfig {
    // Default mount: camera under the observer looking straight down
    // (180 deg about x), observer hovering 10 m up.
    PipelineConfig() {
        extrinsics.rotation = Eigen::Quaterniond(0.0, 1.0, 0.0, 0.0);
        extrinsics.translation = Eigen::Vector3d(0.0, 0.0, -0.05);
        observer.position = Eigen::Vector3d(0.0, 0.0, 10.0);
    }

    int64_t chunk_dt_us = 10000;
    uint64_t seed = 1;
    int threads = 0; // 0 keeps the OpenMP default

    StcFilterParams stc;
    std::string detector = "cc"; // cc | cluster
    DetectorParams detect;
    TrackerParams tracker;

    RoiSignalParams roi;
    double f_min_hz = 50.0;
    double f_max_hz = 1000.0;
    double min_snr = 3.0;
    RpmKfParams rpm_kf;

    CameraIntrinsics camera;
    Extrinsics extrinsics;
    Pose observer; // default observer pose, used by the simulator

    QuadrotorParams quad;
    PositionKfParams position_kf;
    OrientationKfParams orientation_kf;
    double min_span_px = 2.0;

    sim::DynamicsParams dynamics;
    sim::GeneratorConfig generator;

    int64_t warmup_us = 300000;
    // Metrics gates; NaN disables a gate.
    double mape_max_pct = std::numeric_limits<double>::quiet_NaN();
    double pos_rmse_max_lat_m = std::numeric_limits<double>::quiet_NaN();
    double pos_rmse_max_depth_m = std::numeric_limits<double>::quiet_NaN();
    double vel_rmse_max_mps = std::numeric_limits<double>::quiet_NaN();
    double roll_rmse_max_deg = std::numeric_limits<double>::quiet_NaN();
    double pitch_rmse_max_deg = std::numeric_limits<double>::quiet_NaN();

    FreqEstimatorParams freq_params() const {
        FreqEstimatorParams p;
        p.sample_rate_hz = 1e6 / static_cast<double>(roi.bin_width_us);
        p.f_min_hz = f_min_hz;
        p.f_max_hz = f_max_hz;
        p.min_snr = min_snr;
        return p;
    }

    // Propagates the top-level seed into the seeded sub-components and
    // renormalizes loaded quaternions.
    void finalize();
};

PipelineConfig parse_config_text(const std::string& text, const std::string& origin = "<config>");
PipelineConfig load_config(const std::string& path);

// Canonical text form (every key, fixed order); parse(dump(c)) == c.
std::string config_to_text(const PipelineConfig& config);

// FNV-1a 64 of the canonical text, hex encoded; recorded in manifests.
std::string config_hash(const PipelineConfig& config);

} // namespace evprop
