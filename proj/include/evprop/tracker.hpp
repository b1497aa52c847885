#pragma once

#include <map>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "evprop/detect.hpp"

namespace evprop {

struct Track {
    int id = 0;
    Eigen::Vector2d centroid = Eigen::Vector2d::Zero(); // position at last match
    Eigen::Vector2d velocity = Eigen::Vector2d::Zero(); // pixels per chunk
    int age = 1;            // chunks alive
    int frames_missing = 0; // consecutive chunks without a match
    Detection last_detection;
};

// Constant-velocity extrapolation for the chunk about to be processed:
// frames_missing counts the chunks already missed before it.
Eigen::Vector2d predict_missing(const Track& track);

// Current best position: last matched centroid, coasted when missing.
Eigen::Vector2d track_position(const Track& track);

struct TrackerParams {
    double dist_threshold = 30.0; // pixels
    int max_missing = 5;          // chunks a track survives unmatched
};

// Greedy nearest-neighbor association in ascending distance order. Matched
// tracks take the detection centroid and reset frames_missing; unmatched
// detections spawn tracks; unmatched tracks coast and are dropped after
// max_missing chunks. Output is independent of the detection list order.
class Tracker {
public:
    explicit Tracker(const TrackerParams& params = {}) : params_(params) {}

    void step(const std::vector<Detection>& detections);

    const std::vector<Track>& tracks() const { return tracks_; }
    std::vector<Track>& tracks() { return tracks_; }
    int next_id() const { return next_id_; }

private:
    TrackerParams params_;
    std::vector<Track> tracks_;
    int next_id_ = 0;
};

// Mean of the four track positions; unavailable unless exactly 4 live tracks.
std::optional<Eigen::Vector2d> quad_center(const std::vector<Track>& tracks);

struct PropAssignment {
    std::map<int, int> track_to_prop; // track id -> propeller index 1..4
    Eigen::Vector2d quad_center = Eigen::Vector2d::Zero();
    bool ambiguous = false;
};

// Keys tracks to propeller indices by image quadrant relative to the
// quadrotor center (y down): 1 top-right, 2 top-left, 3 bottom-left,
// 4 bottom-right. Existing assignments persist while their tracks live; the
// quadrant rule applies only at (re)initialization. Right motors for the
// roll differential are {1, 4}, left motors {2, 3}.
class PropAssigner {
public:
    std::optional<PropAssignment> update(const std::vector<Track>& tracks);
    const std::map<int, int>& assignment() const { return assignment_; }

private:
    std::map<int, int> assignment_;
};

} // namespace evprop
