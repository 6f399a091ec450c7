#include "rlab/rhombus.hpp"

#include <algorithm>

namespace rlab {

RhombusCone family_cone(double beta1, double beta2) {
    if (!(beta1 > 0.0 && beta1 < 0.5 * kPi) || !(beta2 > 0.0 && beta2 < 0.5 * kPi))
        throw Error(errc::out_of_range_angle, "family angles must lie in (0, pi/2)");
    const double s1 = std::sin(beta1), c1 = std::cos(beta1);
    const double s2 = std::sin(beta2), c2 = std::cos(beta2);
    RhombusCone rc;
    rc.beta1 = beta1;
    rc.beta2 = beta2;
    rc.cone = cone_from_normals({Vec3(s1, 0.0, -c1), Vec3(0.0, s2, -c2),
                                 Vec3(-s1, 0.0, -c1), Vec3(0.0, -s2, -c2)});
    return rc;
}

SameAnglesReport same_angles_not_isometric(const RhombusCone& a, const RhombusCone& b) {
    SameAnglesReport report;
    double max_diff = 0.0;
    for (int j = 0; j < 4; ++j)
        max_diff = std::max(max_diff, std::abs(a.cone.dihedral_angles[j] -
                                               b.cone.dihedral_angles[j]));
    report.max_angle_difference = max_diff;
    report.same_dihedral_angles = max_diff <= 1e-12;

    auto diagonals = [](const RhombusCone& rc) {
        std::array<double, 2> d = {arc_angle(rc.cone.normals[0], rc.cone.normals[2]),
                                   arc_angle(rc.cone.normals[1], rc.cone.normals[3])};
        if (d[0] > d[1]) std::swap(d[0], d[1]);
        return d;
    };
    report.diagonals_a = diagonals(a);
    report.diagonals_b = diagonals(b);
    report.diagonal_multiset_gap =
        std::max(std::abs(report.diagonals_a[0] - report.diagonals_b[0]),
                 std::abs(report.diagonals_a[1] - report.diagonals_b[1]));
    report.isometric = report.diagonal_multiset_gap <= 1e-9;
    return report;
}

AuditedQuadInstance audited_quad_instance() {
    AuditedQuadInstance inst;
    inst.beta_ref = 0.2;
    inst.beta2 = 0.05;
    // Equal products: cos(beta1) cos(beta2) = cos(beta_ref)^2.
    inst.beta1 = std::acos(std::cos(inst.beta_ref) * std::cos(inst.beta_ref) /
                           std::cos(inst.beta2));
    inst.reference = family_cone(inst.beta_ref, inst.beta_ref);
    inst.candidate = family_cone(inst.beta1, inst.beta2);
    inst.xi_bar = Vec3(0.0, 0.0, -1.0);
    return inst;
}

} // namespace rlab
