#pragma once

#include "rlab/geometry.hpp"

namespace rlab {

/// Upper half space model: b = delta / (x1)^2 on {x1 > 0}. Coordinates are
/// x = (x1, x2, x3) with x1 the height. The static potential is V = 1/x1.

struct UpperHalfPoint {
    Vec3 x;

    explicit UpperHalfPoint(const Vec3& p) : x(p) {
        if (!(p.x() > 0.0))
            throw Error(errc::out_of_range_angle, "point must have x1 > 0");
    }
    double height() const { return x.x(); }
};

/// Hyperbolic distance, cosh d = 1 + |p - q|^2 / (2 p1 q1).
double hyperbolic_distance(const UpperHalfPoint& p, const UpperHalfPoint& q);

/// Distance to the base point o = (1, 0, 0).
double distance_to_origin(const UpperHalfPoint& p);

/// Hyperbolic distance from x to the vertical axis {x2 = x3 = 0}:
/// sinh d = sqrt(x2^2 + x3^2) / x1.
double distance_to_axis(const Vec3& x);

enum class ZKind { horosphere, totally_geodesic, equidistant };

/// Linear plane Z(a, s) = {x1 > 0, a.x = s} with |a| = 1 (Euclidean);
/// a horosphere when |a1| = 1, totally geodesic when a1 = 0, an equidistant
/// surface otherwise. The b-unit normal along the surface is x1 a.
struct ZSurface {
    Vec3 a;
    double s = 0.0;
    ZKind kind = ZKind::equidistant;
};

/// Throws NonUnitVector, or NoIntersection when the plane misses {x1 > 0}.
ZSurface make_z_surface(const Vec3& a, double s);

/// A point on the surface (used by tests and sampling).
Vec3 point_on_surface(const ZSurface& z);

/// Second fundamental form (2x2, in a b-orthonormal tangent frame) and mean
/// curvature of Z at p with respect to the normal x1 a, via central finite
/// differences of the metric b with step h. Satisfies A = -a1 g|_Z + O(h^2),
/// H = -2 a1 + O(h^2). Throws StepTooLarge when p1 <= 2h p1 (step reaches
/// the conformal boundary).
struct SurfaceCurvature {
    Eigen::Matrix2d second_fundamental_form;
    double mean_curvature = 0.0;
};
SurfaceCurvature z_surface_curvature(const ZSurface& z, const Vec3& p, double h);

/// d/d(nu_bar) V at p on Z: closed form -a1 V(p).
double static_potential_normal_derivative(const ZSurface& z, const Vec3& p);
/// The same derivative by central differences along the normal (for checks).
double static_potential_normal_derivative_fd(const ZSurface& z, const Vec3& p,
                                             double h = 1e-6);

struct ConformalAngleReport {
    double angle_b = 0.0;         // angle between the b-unit normals at p
    double angle_euclidean = 0.0; // angle between the Euclidean normals
};

/// Angles agree identically (b is conformal to delta); p must satisfy both
/// plane equations to 1e-9. Throws NoIntersection.
ConformalAngleReport conformal_angle_check(const ZSurface& z1, const ZSurface& z2,
                                           const Vec3& p);

} // namespace rlab
