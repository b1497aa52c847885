#pragma once

#include <optional>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace evprop {

struct CameraIntrinsics {
    double fx = 800.0;
    double fy = 800.0;
    double cx = 320.0;
    double cy = 240.0;
    int width = 640;
    int height = 480;
};

// Rigid pose, body frame to world frame.
struct Pose {
    Eigen::Vector3d position = Eigen::Vector3d::Zero();
    Eigen::Quaterniond orientation = Eigen::Quaterniond::Identity();
};

// Rigid transform camera frame to body frame.
struct Extrinsics {
    Eigen::Quaterniond rotation = Eigen::Quaterniond::Identity();
    Eigen::Vector3d translation = Eigen::Vector3d::Zero();
};

// Monocular depth from the known propeller diagonal: Z = f * d / span.
// A span at or below min_span_px signals measurement dropout.
std::optional<double> depth_from_span(double pixel_span, double diagonal_m, double focal_px,
                                      double min_span_px = 2.0);

// Pixel + depth to a camera-frame point.
Eigen::Vector3d backproject(const Eigen::Vector2d& pixel, double depth_m,
                            const CameraIntrinsics& k);

// Camera-frame point to pixel (z must be positive).
Eigen::Vector2d project(const Eigen::Vector3d& p_cam, const CameraIntrinsics& k);

Eigen::Vector3d cam_to_world(const Eigen::Vector3d& p_cam, const Extrinsics& extrinsics,
                             const Pose& observer);
Eigen::Vector3d world_to_cam(const Eigen::Vector3d& p_world, const Extrinsics& extrinsics,
                             const Pose& observer);

// Rotation-only versions for directions.
Eigen::Vector3d cam_dir_to_world(const Eigen::Vector3d& d_cam, const Extrinsics& extrinsics,
                                 const Pose& observer);
Eigen::Vector3d world_dir_to_cam(const Eigen::Vector3d& d_world, const Extrinsics& extrinsics,
                                 const Pose& observer);

} // namespace evprop
