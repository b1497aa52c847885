#pragma once

#include <array>
#include <optional>
#include <span>

#include <Eigen/Core>

#include "evprop/camera.hpp"
#include "evprop/ellipse_fit.hpp"

namespace evprop {

// One solution of the circle-pose recovery, in the camera frame. The normal
// is unit length and oriented toward the camera.
struct CircleCandidate {
    Eigen::Vector3d normal = Eigen::Vector3d::UnitZ();
    Eigen::Vector3d center = Eigen::Vector3d::Zero();
};

// Recovers the two (normal, center) solutions of a circle of disc_radius
// whose image is the given conic: form the backprojection cone
// Q = K^T C K, eigendecompose, and slice the cone by the two plane
// orientations that cut it in a circle. Fails when the conic is not a proper
// ellipse or the cone has the wrong eigenvalue signature. The normal is
// independent of disc_radius; only the center scales with it.
std::optional<std::array<CircleCandidate, 2>> p1e_disc_normal(const Conic& conic,
                                                              const CameraIntrinsics& k,
                                                              double disc_radius);

// Picks the candidate whose normal best agrees with the prior direction.
Eigen::Vector3d disambiguate_normal(std::span<const Eigen::Vector3d> candidates,
                                    const Eigen::Vector3d& prior);

} // namespace evprop
