#include "rlab/halfspace_model.hpp"

namespace rlab {

double hyperbolic_distance(const UpperHalfPoint& p, const UpperHalfPoint& q) {
    const double num = (p.x - q.x).squaredNorm();
    return std::acosh(1.0 + num / (2.0 * p.height() * q.height()));
}

double distance_to_origin(const UpperHalfPoint& p) {
    return hyperbolic_distance(p, UpperHalfPoint(Vec3(1.0, 0.0, 0.0)));
}

double distance_to_axis(const Vec3& x) {
    return std::asinh(std::hypot(x.y(), x.z()) / x.x());
}

ZSurface make_z_surface(const Vec3& a, double s) {
    if (!is_unit(a))
        throw Error(errc::non_unit_vector, "a must be a Euclidean unit vector");
    ZSurface z;
    z.a = a;
    z.s = s;
    const double a1 = a.x();
    if (std::abs(std::abs(a1) - 1.0) <= 1e-12) {
        z.kind = ZKind::horosphere;
        if (!(s * a1 > 0.0))
            throw Error(errc::no_intersection, "horosphere plane misses the upper half space");
    } else if (std::abs(a1) <= 1e-12) {
        z.kind = ZKind::totally_geodesic;
    } else {
        z.kind = ZKind::equidistant;
    }
    return z;
}

Vec3 point_on_surface(const ZSurface& z) {
    // Solve a.x = s while keeping x1 comfortably positive.
    const double a1 = z.a.x();
    if (std::abs(a1) > 0.5) {
        double x1 = (z.s - z.a.y() - z.a.z()) / a1;
        if (x1 > 0.0) return Vec3(x1, 1.0, 1.0);
        return Vec3((z.s + z.a.y() + z.a.z()) / a1, -1.0, -1.0);
    }
    // Tilted or vertical plane: fix x1 = 1 and solve in the bigger of a2, a3.
    if (std::abs(z.a.y()) >= std::abs(z.a.z()))
        return Vec3(1.0, (z.s - a1) / z.a.y(), 0.0);
    return Vec3(1.0, 0.0, (z.s - a1) / z.a.z());
}

namespace {

Mat3 metric_b(const Vec3& x) {
    return Mat3::Identity() / (x.x() * x.x());
}

// Christoffel symbols of b at p from central differences of the metric.
std::array<Mat3, 3> christoffel_fd(const Vec3& p, double h) {
    std::array<Mat3, 3> dg; // dg[k] = d_k b
    for (int k = 0; k < 3; ++k) {
        Vec3 hi = p, lo = p;
        hi[k] += h;
        lo[k] -= h;
        dg[k] = (metric_b(hi) - metric_b(lo)) / (2.0 * h);
    }
    const Mat3 ginv = metric_b(p).inverse();
    std::array<Mat3, 3> gamma; // gamma[k](i,j) = Gamma^k_{ij}
    for (int k = 0; k < 3; ++k) {
        Mat3 g = Mat3::Zero();
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double sum = 0.0;
                for (int l = 0; l < 3; ++l)
                    sum += ginv(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
                g(i, j) = 0.5 * sum;
            }
        gamma[k] = g;
    }
    return gamma;
}

} // namespace

SurfaceCurvature z_surface_curvature(const ZSurface& z, const Vec3& p, double h) {
    if (!(p.x() > 2.0 * h))
        throw Error(errc::step_too_large, "step reaches the conformal boundary");
    if (std::abs(z.a.dot(p) - z.s) > 1e-9)
        throw Error(errc::no_intersection, "p does not lie on the surface");

    // b-orthonormal tangent frame: Euclidean unit tangents scaled by x1.
    const Vec3 t1e = orthogonal_unit(z.a);
    const Vec3 t2e = z.a.cross(t1e).normalized();
    const double w = p.x();
    const Vec3 t[2] = {w * t1e, w * t2e};

    const auto gamma = christoffel_fd(p, h);
    const Mat3 g = metric_b(p);

    // N = x1 a as a vector field; A(X, Y) = b(nabla_X N, Y).
    auto covariant_d_n = [&](const Vec3& X) {
        Vec3 result;
        for (int k = 0; k < 3; ++k) {
            const double val = X[0] * z.a[k]; // X^i d_i N^k, with d_i N^k = delta_{i1} a^k
            double correction = 0.0;
            for (int i = 0; i < 3; ++i)
                for (int m = 0; m < 3; ++m)
                    correction += X[i] * gamma[k](i, m) * (p.x() * z.a[m]);
            result[k] = val + correction;
        }
        return result;
    };

    SurfaceCurvature out;
    for (int a = 0; a < 2; ++a) {
        const Vec3 dn = covariant_d_n(t[a]);
        for (int bidx = 0; bidx < 2; ++bidx)
            out.second_fundamental_form(a, bidx) = dn.dot(g * t[bidx]);
    }
    out.mean_curvature =
        out.second_fundamental_form(0, 0) + out.second_fundamental_form(1, 1);
    return out;
}

double static_potential_normal_derivative(const ZSurface& z, const Vec3& p) {
    return -z.a.x() / p.x();
}

double static_potential_normal_derivative_fd(const ZSurface& z, const Vec3& p, double h) {
    // Directional derivative of V along the Euclidean vector N = x1 a.
    const Vec3 n = p.x() * z.a;
    const Vec3 hi = p + h * n, lo = p - h * n;
    return (1.0 / hi.x() - 1.0 / lo.x()) / (2.0 * h);
}

ConformalAngleReport conformal_angle_check(const ZSurface& z1, const ZSurface& z2,
                                           const Vec3& p) {
    if (std::abs(z1.a.dot(p) - z1.s) > 1e-9 || std::abs(z2.a.dot(p) - z2.s) > 1e-9)
        throw Error(errc::no_intersection, "p must lie on both surfaces");
    if (z1.a.cross(z2.a).norm() < 1e-12)
        throw Error(errc::no_intersection, "surfaces are parallel");

    ConformalAngleReport report;
    report.angle_euclidean = arc_angle(z1.a, z2.a);
    const Mat3 g = metric_b(p);
    const Vec3 n1 = p.x() * z1.a;
    const Vec3 n2 = p.x() * z2.a;
    const double dot = n1.dot(g * n2);
    const double l1 = std::sqrt(n1.dot(g * n1));
    const double l2 = std::sqrt(n2.dot(g * n2));
    report.angle_b = std::acos(clamp_unit(dot / (l1 * l2)));
    return report;
}

} // namespace rlab
