#include "evprop/p1e.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace evprop {

std::optional<std::array<CircleCandidate, 2>> p1e_disc_normal(const Conic& conic,
                                                              const CameraIntrinsics& k,
                                                              double disc_radius) {
    if (!conic.is_ellipse() || disc_radius <= 0.0) return std::nullopt;

    Eigen::Matrix3d km;
    km << k.fx, 0.0, k.cx, //
        0.0, k.fy, k.cy,   //
        0.0, 0.0, 1.0;
    Eigen::Matrix3d q = km.transpose() * conic.m * km;
    q = ((q + q.transpose()) / 2.0).eval();
    q /= q.norm();

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(q);
    if (eig.info() != Eigen::Success) return std::nullopt;
    Eigen::Vector3d ev = eig.eigenvalues(); // ascending
    Eigen::Matrix3d vec = eig.eigenvectors();

    int negatives = (ev(0) < 0.0) + (ev(1) < 0.0) + (ev(2) < 0.0);
    if (negatives == 2) {
        ev = -ev;
        // Ascending order flips under negation.
        std::swap(ev(0), ev(2));
        Eigen::Matrix3d flipped;
        flipped.col(0) = vec.col(2);
        flipped.col(1) = vec.col(1);
        flipped.col(2) = vec.col(0);
        vec = flipped;
        negatives = 1;
    }
    const double l3 = ev(0), l2 = ev(1), l1 = ev(2);
    if (negatives != 1 || l3 >= -1e-12 || l2 <= 1e-12) return std::nullopt;

    const Eigen::Vector3d v1 = vec.col(2), v3 = vec.col(0);
    const double g = std::sqrt(std::max(0.0, (l1 - l2) / (l1 - l3)));
    const double h = std::sqrt(std::max(0.0, (l2 - l3) / (l1 - l3)));
    const double center_scale = disc_radius / std::sqrt(-l1 * l3);

    std::array<CircleCandidate, 2> out;
    for (int i = 0; i < 2; ++i) {
        const double s1 = i == 0 ? 1.0 : -1.0;
        Eigen::Vector3d normal = (s1 * g * v1 + h * v3).normalized();
        Eigen::Vector3d center = center_scale * (s1 * l3 * g * v1 + l1 * h * v3);
        if (center.z() < 0.0) center = -center;         // circle in front of the camera
        if (normal.dot(center) > 0.0) normal = -normal; // normal toward the camera
        out[i] = {normal, center};
    }
    return out;
}

Eigen::Vector3d disambiguate_normal(std::span<const Eigen::Vector3d> candidates,
                                    const Eigen::Vector3d& prior) {
    Eigen::Vector3d best = candidates.front();
    double best_dot = best.dot(prior);
    for (const auto& c : candidates) {
        const double d = c.dot(prior);
        if (d > best_dot) {
            best_dot = d;
            best = c;
        }
    }
    return best;
}

} // namespace evprop
