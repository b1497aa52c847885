#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace evprop {

// Nearest-timestamp pairing of two sorted series within +/- max_gap_us.
// Every estimate pairs with its nearest ground-truth sample; unpaired
// estimates are counted into *dropped. Throws std::runtime_error when no
// pair exists at all.
std::vector<std::pair<size_t, size_t>> align_series(std::span<const int64_t> est_t,
                                                    std::span<const int64_t> gt_t,
                                                    int64_t max_gap_us = 5000,
                                                    size_t* dropped = nullptr);

struct ErrorStats {
    double mae = 0.0;
    double rmse = 0.0;
    double mape = 0.0; // percent
    std::optional<double> correlation; // undefined when a series is constant
    size_t n = 0;
};

ErrorStats error_stats(std::span<const double> est, std::span<const double> gt);

struct WindowBin {
    int64_t k = 0;      // one-second bin [k, k+1)
    double mean_abs = 0.0;
    size_t n = 0;
};

// Windowed mean absolute error per 1 s bin of absolute sequence time.
std::vector<WindowBin> windowed_error(std::span<const int64_t> t_us, std::span<const double> est,
                                      std::span<const double> gt);

// Per-propeller series on a common time base; valid flags gate pairing.
struct RpmSeries {
    std::vector<int64_t> t_us;
    std::array<std::vector<double>, 4> omega;
    std::array<std::vector<uint8_t>, 4> valid;
};

struct StateSeries {
    std::vector<int64_t> t_us;
    std::vector<Eigen::Vector3d> position;
    std::vector<Eigen::Vector3d> velocity;
    std::vector<double> roll;  // rad
    std::vector<double> pitch; // rad
    std::vector<uint8_t> valid;
};

struct RpmMetricsReport {
    std::array<ErrorStats, 4> per_prop;       // identity assignment
    std::array<ErrorStats, 4> per_prop_best;  // under the best fixed relabeling
    std::array<int, 4> best_permutation{1, 2, 3, 4}; // est prop -> gt prop
    std::array<std::vector<WindowBin>, 4> windowed;
    size_t dropped = 0;

    double mean_mape() const;
    double mean_mape_best() const;
};

struct StateMetricsReport {
    Eigen::Vector3d position_rmse = Eigen::Vector3d::Zero();
    Eigen::Vector3d velocity_rmse = Eigen::Vector3d::Zero();
    double roll_rmse_deg = 0.0;
    double pitch_rmse_deg = 0.0;
    size_t n = 0;
};

// Warmup: samples earlier than gt start + warmup_us are excluded.
RpmMetricsReport compute_rpm_metrics(const RpmSeries& est, const RpmSeries& gt,
                                     int64_t warmup_us);
StateMetricsReport compute_state_metrics(const StateSeries& est, const StateSeries& gt,
                                         int64_t warmup_us);

// Ground-truth and estimate CSV loaders (schemas from the simulator and the
// estimation pipeline). Missing columns are reported by name.
struct LoadedSeries {
    RpmSeries rpm;
    StateSeries state;
};
LoadedSeries load_ground_truth_csv(const std::string& path);
LoadedSeries load_estimates_csv(const std::string& path);

// Key-value text report and a per-prop/per-axis CSV.
void write_metrics_text(const std::string& path, const RpmMetricsReport& rpm,
                        const StateMetricsReport& state);
void write_metrics_csv(const std::string& path, const RpmMetricsReport& rpm,
                       const StateMetricsReport& state);

} // namespace evprop
