#include "evprop/camera.hpp"

namespace evprop {

std::optional<double> depth_from_span(double pixel_span, double diagonal_m, double focal_px,
                                      double min_span_px) {
    if (pixel_span <= min_span_px) return std::nullopt;
    return focal_px * diagonal_m / pixel_span;
}

Eigen::Vector3d backproject(const Eigen::Vector2d& pixel, double depth_m,
                            const CameraIntrinsics& k) {
    return {depth_m * (pixel.x() - k.cx) / k.fx, depth_m * (pixel.y() - k.cy) / k.fy, depth_m};
}

Eigen::Vector2d project(const Eigen::Vector3d& p_cam, const CameraIntrinsics& k) {
    return {k.fx * p_cam.x() / p_cam.z() + k.cx, k.fy * p_cam.y() / p_cam.z() + k.cy};
}

Eigen::Vector3d cam_to_world(const Eigen::Vector3d& p_cam, const Extrinsics& extrinsics,
                             const Pose& observer) {
    const Eigen::Vector3d p_body = extrinsics.rotation * p_cam + extrinsics.translation;
    return observer.orientation * p_body + observer.position;
}

Eigen::Vector3d world_to_cam(const Eigen::Vector3d& p_world, const Extrinsics& extrinsics,
                             const Pose& observer) {
    const Eigen::Vector3d p_body = observer.orientation.conjugate() * (p_world - observer.position);
    return extrinsics.rotation.conjugate() * (p_body - extrinsics.translation);
}

Eigen::Vector3d cam_dir_to_world(const Eigen::Vector3d& d_cam, const Extrinsics& extrinsics,
                                 const Pose& observer) {
    return observer.orientation * (extrinsics.rotation * d_cam);
}

Eigen::Vector3d world_dir_to_cam(const Eigen::Vector3d& d_world, const Extrinsics& extrinsics,
                                 const Pose& observer) {
    return extrinsics.rotation.conjugate() * (observer.orientation.conjugate() * d_world);
}

} // namespace evprop
