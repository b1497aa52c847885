#pragma once

#include <optional>
#include <span>

#include <Eigen/Core>

#include "evprop/detect.hpp"

namespace evprop {

// Homogeneous conic x^T C x = 0 in pixel coordinates, stored symmetric,
// normalized to unit Frobenius norm with positive trace of the upper-left
// 2x2 block.
struct Conic {
    Eigen::Matrix3d m = Eigen::Matrix3d::Zero();

    // Coefficients of Ax^2 + Bxy + Cy^2 + Dx + Ey + F = 0.
    double A() const { return m(0, 0); }
    double B() const { return 2.0 * m(0, 1); }
    double C() const { return m(1, 1); }
    double D() const { return 2.0 * m(0, 2); }
    double E() const { return 2.0 * m(1, 2); }
    double F() const { return m(2, 2); }

    bool is_ellipse() const;
};

// Geometric ellipse parameters, used to convert conics for tests and
// synthetic rendering.
struct EllipseParams {
    Eigen::Vector2d center = Eigen::Vector2d::Zero();
    double semi_major = 0.0;
    double semi_minor = 0.0;
    double angle = 0.0; // radians, major axis vs +x
};

// Mean + covariance ellipse of a 2-D point set (1/(n-1) normalization).
// Fails on fewer than 3 points or a rank-deficient covariance.
std::optional<ClusterEllipse> fit_ellipse_pca(std::span<const Eigen::Vector2d> points);

// Direct least-squares conic fit with the ellipse constraint 4AC - B^2 > 0,
// using the numerically stable split of the design matrix. Points are
// centered and scaled internally; needs at least 6 non-degenerate points.
std::optional<Conic> fit_conic_direct(std::span<const Eigen::Vector2d> points);

std::optional<EllipseParams> conic_to_ellipse(const Conic& conic);
Conic ellipse_to_conic(const EllipseParams& e);

} // namespace evprop
