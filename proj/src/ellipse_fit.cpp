#include "evprop/ellipse_fit.hpp"

#include <cmath>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace evprop {

namespace {

constexpr double kDegenerateEps = 1e-12;

Conic normalized(Eigen::Matrix3d m) {
    m = ((m + m.transpose()) / 2.0).eval();
    const double norm = m.norm();
    if (norm > 0.0) m /= norm;
    if (m(0, 0) + m(1, 1) < 0.0) m = -m;
    return Conic{m};
}

} // namespace

bool Conic::is_ellipse() const {
    Eigen::Matrix3d mm = m;
    if (mm(0, 0) + mm(1, 1) < 0.0) mm = -mm;
    const double scale = mm.norm();
    if (scale <= 0.0) return false;
    mm /= scale;
    const double det_q = mm(0, 0) * mm(1, 1) - mm(0, 1) * mm(0, 1);
    // det(full) < 0 together with det(Q) > 0 and positive trace means a real,
    // non-degenerate ellipse.
    return det_q > kDegenerateEps && mm.determinant() < -kDegenerateEps;
}

std::optional<ClusterEllipse> fit_ellipse_pca(std::span<const Eigen::Vector2d> points) {
    const size_t n = points.size();
    if (n < 3) return std::nullopt;

    Eigen::Vector2d mu = Eigen::Vector2d::Zero();
    for (const auto& p : points) mu += p;
    mu /= static_cast<double>(n);

    Eigen::Matrix2d sigma = Eigen::Matrix2d::Zero();
    for (const auto& p : points) {
        const Eigen::Vector2d d = p - mu;
        sigma += d * d.transpose();
    }
    sigma /= static_cast<double>(n - 1);

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(sigma);
    if (eig.info() != Eigen::Success) return std::nullopt;
    const double l2 = eig.eigenvalues()(0); // ascending
    const double l1 = eig.eigenvalues()(1);
    if (l1 <= 0.0 || l2 <= l1 * 1e-10) return std::nullopt; // rank deficient

    ClusterEllipse e;
    e.mu = mu;
    e.sigma = sigma;
    e.lambda1 = l1;
    e.lambda2 = l2;
    e.axis1 = eig.eigenvectors().col(1);
    e.axis2 = eig.eigenvectors().col(0);
    e.semi_major = ClusterEllipse::kAxisScale * std::sqrt(l1);
    e.semi_minor = ClusterEllipse::kAxisScale * std::sqrt(l2);
    e.n_events = static_cast<int>(n);
    return e;
}

std::optional<Conic> fit_conic_direct(std::span<const Eigen::Vector2d> points) {
    const size_t n = points.size();
    if (n < 6) return std::nullopt;

    // Center and isotropically scale for conditioning.
    Eigen::Vector2d mu = Eigen::Vector2d::Zero();
    for (const auto& p : points) mu += p;
    mu /= static_cast<double>(n);
    double msd = 0.0;
    for (const auto& p : points) msd += (p - mu).squaredNorm();
    msd /= static_cast<double>(n);
    if (msd <= 0.0) return std::nullopt;
    const double s = std::sqrt(msd / 2.0);

    Eigen::Matrix3d s1 = Eigen::Matrix3d::Zero();
    Eigen::Matrix3d s2 = Eigen::Matrix3d::Zero();
    Eigen::Matrix3d s3 = Eigen::Matrix3d::Zero();
    for (const auto& p : points) {
        const double u = (p.x() - mu.x()) / s;
        const double v = (p.y() - mu.y()) / s;
        const Eigen::Vector3d d1(u * u, u * v, v * v);
        const Eigen::Vector3d d2(u, v, 1.0);
        s1 += d1 * d1.transpose();
        s2 += d1 * d2.transpose();
        s3 += d2 * d2.transpose();
    }

    Eigen::FullPivLU<Eigen::Matrix3d> lu(s3);
    if (lu.rank() < 3) return std::nullopt; // collinear or otherwise degenerate
    const Eigen::Matrix3d t = -lu.solve(s2.transpose());
    const Eigen::Matrix3d m = s1 + s2 * t;
    Eigen::Matrix3d m_red;
    m_red.row(0) = m.row(2) / 2.0;
    m_red.row(1) = -m.row(1);
    m_red.row(2) = m.row(0) / 2.0;

    Eigen::EigenSolver<Eigen::Matrix3d> eig(m_red);
    if (eig.info() != Eigen::Success) return std::nullopt;

    Eigen::Vector3d a1 = Eigen::Vector3d::Zero();
    bool found = false;
    for (int i = 0; i < 3; ++i) {
        if (std::abs(eig.eigenvalues()(i).imag()) > 1e-9) continue;
        const Eigen::Vector3d v = eig.eigenvectors().col(i).real();
        const double cond = 4.0 * v(0) * v(2) - v(1) * v(1);
        if (cond > 0.0) {
            a1 = v;
            found = true;
            break;
        }
    }
    if (!found) return std::nullopt;
    const Eigen::Vector3d a2 = t * a1;

    Eigen::Matrix3d cn;
    cn << a1(0), a1(1) / 2.0, a2(0) / 2.0, //
        a1(1) / 2.0, a1(2), a2(1) / 2.0,   //
        a2(0) / 2.0, a2(1) / 2.0, a2(2);

    // Undo the normalizing transform u = (x - mu)/s.
    Eigen::Matrix3d h;
    h << 1.0 / s, 0.0, -mu.x() / s, //
        0.0, 1.0 / s, -mu.y() / s,  //
        0.0, 0.0, 1.0;
    const Conic conic = normalized(h.transpose() * cn * h);
    if (!conic.is_ellipse()) return std::nullopt;
    return conic;
}

std::optional<EllipseParams> conic_to_ellipse(const Conic& conic) {
    const Eigen::Matrix3d& m = conic.m;
    Eigen::Matrix2d q = m.topLeftCorner<2, 2>();
    const double det_q = q.determinant();
    if (det_q <= 0.0) return std::nullopt;

    const Eigen::Vector2d rhs(-m(0, 2), -m(1, 2));
    const Eigen::Vector2d center = q.fullPivLu().solve(rhs);
    const double k = m(2, 2) + m(0, 2) * center.x() + m(1, 2) * center.y();

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(q);
    const double mu_small = eig.eigenvalues()(0);
    const double mu_large = eig.eigenvalues()(1);
    if (-k / mu_small <= 0.0 || -k / mu_large <= 0.0) return std::nullopt;

    EllipseParams e;
    e.center = center;
    e.semi_major = std::sqrt(-k / mu_small);
    e.semi_minor = std::sqrt(-k / mu_large);
    const Eigen::Vector2d dir = eig.eigenvectors().col(0);
    e.angle = std::atan2(dir.y(), dir.x());
    if (e.angle < -M_PI / 2.0) e.angle += M_PI;
    if (e.angle >= M_PI / 2.0) e.angle -= M_PI;
    return e;
}

Conic ellipse_to_conic(const EllipseParams& e) {
    Eigen::Matrix3d unit = Eigen::Vector3d(1.0 / (e.semi_major * e.semi_major),
                                           1.0 / (e.semi_minor * e.semi_minor), -1.0)
                               .asDiagonal();
    const double c = std::cos(e.angle), s = std::sin(e.angle);
    Eigen::Matrix3d t_inv; // maps pixel coords into the ellipse frame
    t_inv << c, s, -(c * e.center.x() + s * e.center.y()), //
        -s, c, s * e.center.x() - c * e.center.y(),        //
        0.0, 0.0, 1.0;
    return normalized(t_inv.transpose() * unit * t_inv);
}

} // namespace evprop
