#include "rlab/gram.hpp"

#include <Eigen/Eigenvalues>
#include <array>

namespace rlab {

GramSpec gram_from_b(const Vec3& b) {
    for (int i = 0; i < 3; ++i)
        if (!(b[i] >= -1.0 && b[i] <= 1.0))
            throw Error(errc::out_of_range_angle, "b entries must lie in [-1, 1]");
    GramSpec spec;
    spec.b = b;
    spec.G << 1.0, b[2], b[1],
              b[2], 1.0, b[0],
              b[1], b[0], 1.0;
    spec.beta = Vec3(std::acos(clamp_unit(b[0])), std::acos(clamp_unit(b[1])),
                     std::acos(clamp_unit(b[2])));
    return spec;
}

GramSpec gram_of_cone(const PolyhedralCone& cone) {
    if (cone.faces() != 3)
        throw Error(errc::degenerate_cone, "Gram data is defined for 3-faced cones");
    const auto& n = cone.normals;
    return gram_from_b(Vec3(n[1].dot(n[2]), n[2].dot(n[0]), n[0].dot(n[1])));
}

bool spherical_triangle_inequalities(const Vec3& beta) {
    for (int i = 0; i < 3; ++i)
        if (!(beta[i] >= 0.0 && beta[i] <= kPi))
            throw Error(errc::out_of_range_angle, "beta entries must lie in [0, pi]");
    for (int i = 0; i < 3; ++i)
        if (!(beta[i] + beta[(i + 1) % 3] > beta[(i + 2) % 3])) return false;
    return beta.sum() < 2.0 * kPi;
}

bool gram_positive_definite(const GramSpec& spec, double tol) {
    Eigen::SelfAdjointEigenSolver<Mat3> solver(spec.G, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff() > tol;
}

PolyhedralCone cone_from_gram(const GramSpec& spec) {
    if (!gram_positive_definite(spec))
        throw Error(errc::not_positive_definite, "Gram matrix is not positive definite");

    // Closed-form Cholesky rows; det of the rows is +sqrt(det G), so mirror
    // the z coordinate to satisfy det(n_1, n_2, n_3) < 0 without touching
    // the Gram products.
    const double b1 = spec.b[0], b2 = spec.b[1], b3 = spec.b[2];
    const double s3 = std::sqrt(1.0 - b3 * b3);
    Vec3 n1(1.0, 0.0, 0.0);
    Vec3 n2(b3, s3, 0.0);
    const double y3 = (b1 - b2 * b3) / s3;
    const double z2 = 1.0 - b2 * b2 - y3 * y3;
    Vec3 n3(b2, y3, -std::sqrt(std::max(z2, 0.0)));

    PolyhedralCone cone = cone_from_normals({n1, n2, n3});
    // cone_from_normals must not have had to reorder anything.
    if ((cone.normals[0] - n1).norm() > 0.0)
        throw Error(errc::degenerate_cone, "canonical Gram decomposition lost its order");
    return cone;
}

PolyhedralCone cone_with_dihedrals(const std::array<double, 3>& theta) {
    // theta_j sits at the edge between faces j and j+1, so b_i = -cos of the
    // angle at the edge shared by faces i+1 and i+2.
    Vec3 b;
    for (int i = 0; i < 3; ++i) b[i] = -std::cos(theta[(i + 1) % 3]);
    return cone_from_gram(gram_from_b(b));
}

double spherical_law_of_cosines(double a, double b, double C) {
    if (!(a > 0.0 && a < kPi) || !(b > 0.0 && b < kPi) || !(C > 0.0 && C < kPi))
        throw Error(errc::degenerate_side, "sides and included angle must lie in (0, pi)");
    const double cc =
        std::cos(a) * std::cos(b) + std::sin(a) * std::sin(b) * std::cos(C);
    return std::acos(clamp_unit(cc));
}

bool gram_isometric(const GramSpec& a, const GramSpec& b, double tol) {
    // Relabelings act on b as cyclic shifts, plus reversal (b3, b2, b1).
    std::array<Vec3, 6> orbit;
    const Vec3 rev(a.b[2], a.b[1], a.b[0]);
    for (int s = 0; s < 3; ++s) {
        orbit[s] = Vec3(a.b[s % 3], a.b[(s + 1) % 3], a.b[(s + 2) % 3]);
        orbit[3 + s] = Vec3(rev[s % 3], rev[(s + 1) % 3], rev[(s + 2) % 3]);
    }
    for (const Vec3& candidate : orbit)
        if ((candidate - b.b).cwiseAbs().maxCoeff() <= tol) return true;
    return false;
}

} // namespace rlab
