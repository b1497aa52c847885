#pragma once

#include <vector>

#include <Eigen/Core>

#include "evprop/detect.hpp"
#include "evprop/types.hpp"

namespace evprop {

// Hierarchical density-based clustering over 2-D points (mutual-reachability
// single-linkage hierarchy, condensed by min_cluster_size, clusters chosen by
// the excess-of-mass stability rule; the root is never selected). Points
// whose core distance (distance to the min_samples-th neighbor, the point
// itself included) exceeds max_core_distance are noise up front, which caps
// the hierarchy at that density. Distances are floored at half a pixel so
// coincident events cannot produce unbounded density.
//
// Returns one label per input point, -1 for noise, clusters numbered 0..k-1
// in order of their lowest member index.
struct DensityClusterParams {
    int min_cluster_size = 40;
    int min_samples = 8;
    double max_core_distance = 6.0; // pixels
};

std::vector<int> hdbscan_labels(const std::vector<Eigen::Vector2d>& points,
                                const DensityClusterParams& params);

// Density-clustering propeller detector. Subsamples to params.subsample_max
// events (seeded, uniform), clusters, fits a PCA ellipse per cluster, and
// rejects clusters that are too small or too flat.
std::vector<Detection> detect_cluster(const EventChunk& chunk, const DetectorParams& params);

} // namespace evprop
