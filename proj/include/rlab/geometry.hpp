#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "rlab/errors.hpp"

namespace rlab {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline constexpr double kPi = 3.14159265358979323846;

inline double clamp_unit(double x) { return x < -1.0 ? -1.0 : (x > 1.0 ? 1.0 : x); }

/// Angle between two vectors in [0, pi], robust near 0 and pi.
inline double arc_angle(const Vec3& u, const Vec3& v) {
    return std::atan2(u.cross(v).norm(), u.dot(v));
}

inline bool is_unit(const Vec3& v, double tol = 1e-9) {
    return std::abs(v.norm() - 1.0) <= tol;
}

inline double det3(const Vec3& a, const Vec3& b, const Vec3& c) {
    return a.dot(b.cross(c));
}

/// Any unit vector orthogonal to v.
inline Vec3 orthogonal_unit(const Vec3& v) {
    Vec3 candidate = std::abs(v.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
    return v.cross(candidate).normalized();
}

/// Component of v orthogonal to the unit vector n.
inline Vec3 tangent_part(const Vec3& v, const Vec3& n) {
    return v - v.dot(n) * n;
}

/// Point on the unit sphere at arc distances d1 from p1 and d2 from p2.
/// Of the two solutions, returns the one with sign(det(x, p1, p2)) = side.
/// Throws DegenerateSide when no such point exists.
Vec3 sphere_trilaterate(const Vec3& p1, double d1, const Vec3& p2, double d2, double side);

} // namespace rlab
