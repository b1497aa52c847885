#pragma once

#include <optional>

#include <Eigen/Core>

namespace evprop {

// Ellipse from the eigendecomposition of a point cluster's spatial
// covariance. Semi-axes are k*sqrt(lambda) with k = 2, which covers about
// 95% of the mass of a Gaussian cluster.
struct ClusterEllipse {
    Eigen::Vector2d mu = Eigen::Vector2d::Zero(); // sample mean, pixels
    Eigen::Matrix2d sigma = Eigen::Matrix2d::Zero();
    double lambda1 = 0.0; // lambda1 >= lambda2 >= 0
    double lambda2 = 0.0;
    Eigen::Vector2d axis1 = Eigen::Vector2d::UnitX(); // unit eigenvector of lambda1
    Eigen::Vector2d axis2 = Eigen::Vector2d::UnitY();
    double semi_major = 0.0;
    double semi_minor = 0.0;
    int n_events = 0;

    static constexpr double kAxisScale = 2.0;
};

// One propeller blob candidate in a chunk. bbox bounds are inclusive pixel
// coordinates. area is a pixel count for the CC detector and an event count
// for the cluster detector.
struct Detection {
    double cx = 0.0;
    double cy = 0.0;
    int x_min = 0;
    int y_min = 0;
    int x_max = 0;
    int y_max = 0;
    double area = 0.0;
    std::optional<ClusterEllipse> ellipse;
};

struct DetectorParams {
    int min_area = 40;            // CC: minimum component area, pixels
    int erosion_radius = 1;       // CC: square structuring element radius
    int binarize_threshold = 1;   // CC: counts >= threshold become foreground
    int cluster_min_size = 40;    // clustering: minimum cluster population
    int cluster_min_samples = 8;  // clustering: core-distance neighbor count
    double cluster_max_core_distance = 6.0; // clustering: density cap, pixels
    int subsample_max = 20000;    // clustering: uniform subsample cap
    double min_major_axis = 4.0;  // clustering: reject flat/small ellipses, pixels
    uint64_t subsample_seed = 1;  // clustering subsample reproducibility
};

} // namespace evprop
