#include "rlab/geometry.hpp"

namespace rlab {

Vec3 sphere_trilaterate(const Vec3& p1, double d1, const Vec3& p2, double d2, double side) {
    const double c = clamp_unit(p1.dot(p2));
    const double s2 = 1.0 - c * c;
    if (s2 < 1e-24)
        throw Error(errc::degenerate_side, "trilateration anchors are parallel");

    // x = a p1 + b p2 + t (p1 x p2); solve the 2x2 system for the dot products.
    const double r1 = std::cos(d1);
    const double r2 = std::cos(d2);
    const double a = (r1 - c * r2) / s2;
    const double b = (r2 - c * r1) / s2;

    const double planar2 = a * a + b * b + 2.0 * a * b * c;
    double t2 = (1.0 - planar2) / s2;
    if (t2 < -1e-12)
        throw Error(errc::degenerate_side, "arc distances violate the triangle inequality");
    if (t2 < 0.0) t2 = 0.0;

    const double t = std::copysign(std::sqrt(t2), side >= 0.0 ? 1.0 : -1.0);
    Vec3 x = a * p1 + b * p2 + t * p1.cross(p2);
    return x.normalized();
}

} // namespace rlab
