#include "rlab/pyramid.hpp"

namespace rlab {

Pyramid build_pyramid(const PolyhedralCone& cone, const Vec3& xi) {
    if (!is_unit(xi))
        throw Error(errc::non_unit_vector, "xi must be a unit vector");

    const int k = cone.faces();
    for (const Vec3& u : cone.edge_generators)
        if (u.dot(xi) >= -1e-12)
            throw Error(errc::xi_outside_dual_interior,
                        "xi is not strictly interior to the polar cone");

    Pyramid p;
    p.cone = cone;
    p.xi = xi;
    p.base_vertices.resize(k);
    for (int j = 0; j < k; ++j)
        p.base_vertices[j] = -cone.edge_generators[j] / cone.edge_generators[j].dot(xi);

    p.side_face_areas.resize(k);
    p.gamma.resize(k);
    p.lateral_edge_lengths.resize(k);
    p.base_edge_lengths.resize(k);
    for (int j = 0; j < k; ++j) {
        const Vec3& prev = p.base_vertices[(j + k - 1) % k];
        const Vec3& cur = p.base_vertices[j];
        p.side_face_areas[j] = 0.5 * prev.cross(cur).norm();
        p.gamma[j] = arc_angle(cone.normals[j], xi);
        p.lateral_edge_lengths[j] = cur.norm();
        p.base_edge_lengths[j] = (p.base_vertices[(j + 1) % k] - cur).norm();
    }

    // Signed fan area about the apex foot -xi; the A_j run counter-clockwise
    // with respect to the outer base normal -xi.
    double area = 0.0;
    for (int j = 0; j < k; ++j)
        area += p.base_vertices[j].cross(p.base_vertices[(j + 1) % k]).dot(-xi);
    p.base_area = 0.5 * area;

    return p;
}

EnergyReport energy(const Pyramid& pyramid, const std::vector<double>& gamma_ref) {
    const int k = pyramid.cone.faces();
    if (static_cast<int>(gamma_ref.size()) != k)
        throw Error(errc::length_mismatch, "gamma_ref must have one entry per face");

    EnergyReport report;
    report.gamma_reference = gamma_ref;
    double direct = pyramid.base_area;
    double angle_form = 0.0;
    for (int j = 0; j < k; ++j) {
        direct -= std::cos(gamma_ref[j]) * pyramid.side_face_areas[j];
        angle_form += pyramid.side_face_areas[j] *
                      (std::cos(pyramid.gamma[j]) - std::cos(gamma_ref[j]));
    }
    report.value_direct = direct;
    report.value_angle_form = angle_form;
    return report;
}

std::vector<bool> angle_condition(const PolyhedralCone& cone,
                                  const std::vector<double>& gamma_ref) {
    const int k = cone.faces();
    if (static_cast<int>(gamma_ref.size()) != k)
        throw Error(errc::length_mismatch, "gamma_ref must have one entry per face");
    std::vector<bool> ok(k);
    for (int j = 0; j < k; ++j) {
        const double defect = std::abs(kPi - (gamma_ref[j] + gamma_ref[(j + 1) % k]));
        ok[j] = defect < cone.dihedral_angles[j];
    }
    return ok;
}

} // namespace rlab
