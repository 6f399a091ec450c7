#include "rlab/cone.hpp"

#include <algorithm>

namespace rlab {

namespace {

// Validates adjacency-consistency and non-degeneracy of an oriented normal
// list, filling in edge generators and dihedral angles.
PolyhedralCone finish_cone(std::vector<Vec3> normals) {
    const int k = static_cast<int>(normals.size());
    PolyhedralCone cone;
    cone.normals = std::move(normals);
    cone.edge_generators.resize(k);
    cone.dihedral_angles.resize(k);

    for (int j = 0; j < k; ++j) {
        const Vec3& a = cone.normals[j];
        const Vec3& b = cone.normals[(j + 1) % k];
        const Vec3 cross = a.cross(b);
        const double norm = cross.norm();
        if (norm < 1e-12)
            throw Error(errc::parallel_normals, "adjacent face normals are parallel");
        cone.edge_generators[j] = cross / norm;
        cone.dihedral_angles[j] = kPi - arc_angle(a, b);
        if (!(cone.dihedral_angles[j] > 0.0 && cone.dihedral_angles[j] < kPi))
            throw Error(errc::degenerate_cone, "dihedral angle outside (0, pi)");
    }

    for (int j = 0; j < k; ++j) {
        if (det3(cone.edge_generators[j], cone.edge_generators[(j + 1) % k],
                 cone.edge_generators[(j + 2) % k]) <= 0.0)
            throw Error(errc::degenerate_cone, "edge generators are not positively oriented");
    }

    // Every edge must lie in every half-space; strict witnesses certify that
    // both the cone and its polar have nonempty interior.
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (cone.normals[i].dot(cone.edge_generators[j]) > 1e-10)
                throw Error(errc::degenerate_cone, "edge generator escapes a face half-space");

    Vec3 witness = Vec3::Zero();
    for (const Vec3& u : cone.edge_generators) witness += u;
    if (witness.norm() < 1e-12)
        throw Error(errc::degenerate_cone, "no interior witness for the cone");
    witness.normalize();
    for (const Vec3& n : cone.normals)
        if (n.dot(witness) > -1e-10)
            throw Error(errc::degenerate_cone, "cone has empty interior");

    Vec3 dual_witness = Vec3::Zero();
    for (const Vec3& n : cone.normals) dual_witness += n;
    if (dual_witness.norm() < 1e-12)
        throw Error(errc::degenerate_cone, "no interior witness for the polar cone");
    dual_witness.normalize();
    for (const Vec3& u : cone.edge_generators)
        if (u.dot(dual_witness) > -1e-10)
            throw Error(errc::degenerate_cone, "polar cone has empty interior");

    return cone;
}

} // namespace

PolyhedralCone cone_from_normals(std::vector<Vec3> normals) {
    const int k = static_cast<int>(normals.size());
    if (k < 3)
        throw Error(errc::degenerate_cone, "a polyhedral cone needs at least 3 faces");
    for (const Vec3& n : normals)
        if (!is_unit(n))
            throw Error(errc::non_unit_vector, "face normals must be unit length");
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            if (normals[i].cross(normals[j]).norm() < 1e-12)
                throw Error(errc::parallel_normals, "two face normals are parallel");

    // Orientation convention det(n_j, n_{j+1}, n_{j+2}) < 0; a consistently
    // positive input is fixed by reversing the cyclic order.
    int negative = 0, positive = 0;
    for (int j = 0; j < k; ++j) {
        const double d =
            det3(normals[j], normals[(j + 1) % k], normals[(j + 2) % k]);
        (d < 0.0 ? negative : positive)++;
    }
    if (positive == k)
        std::reverse(normals.begin(), normals.end());
    else if (negative != k)
        throw Error(errc::degenerate_cone, "normals are not in convex cyclic order");

    return finish_cone(std::move(normals));
}

PolyhedralCone polar_cone(const PolyhedralCone& cone) {
    // C* = face(u_1, ..., u_k); reversing the cyclic order of the edge
    // generators restores the determinant convention.
    std::vector<Vec3> normals(cone.edge_generators.rbegin(), cone.edge_generators.rend());
    return finish_cone(std::move(normals));
}

Vec3 interior_point(const PolyhedralCone& cone) {
    Vec3 w = Vec3::Zero();
    for (const Vec3& u : cone.edge_generators) w += u;
    return w.normalized();
}

Vec3 dual_interior_point(const PolyhedralCone& cone) {
    Vec3 w = Vec3::Zero();
    for (const Vec3& n : cone.normals) w += n;
    return w.normalized();
}

namespace {

SphericalPolygon polygon_from_vertices(const std::vector<Vec3>& vertices) {
    SphericalPolygon poly;
    poly.vertices = vertices;
    const int k = static_cast<int>(vertices.size());
    poly.side_arcs.resize(k);
    for (int j = 0; j < k; ++j)
        poly.side_arcs[j] = arc_angle(vertices[j], vertices[(j + 1) % k]);
    return poly;
}

// Interior angle of the spherical polygon at vertex j.
double vertex_angle(const std::vector<Vec3>& v, int j) {
    const int k = static_cast<int>(v.size());
    const Vec3& p = v[j];
    const Vec3 to_prev = tangent_part(v[(j + k - 1) % k], p);
    const Vec3 to_next = tangent_part(v[(j + 1) % k], p);
    return arc_angle(to_prev, to_next);
}

} // namespace

SphericalPolygon cross_section(const PolyhedralCone& cone) {
    return polygon_from_vertices(cone.edge_generators);
}

SphericalPolygon dual_cross_section(const PolyhedralCone& cone) {
    return polygon_from_vertices(cone.normals);
}

bool congruent_up_to_relabeling(const SphericalPolygon& a, const SphericalPolygon& b,
                                double tol) {
    const int k = static_cast<int>(a.vertices.size());
    if (static_cast<int>(b.vertices.size()) != k) return false;

    std::vector<double> angles_a(k), angles_b(k);
    for (int j = 0; j < k; ++j) {
        angles_a[j] = vertex_angle(a.vertices, j);
        angles_b[j] = vertex_angle(b.vertices, j);
    }

    // Side s_j runs from vertex j to vertex j+1. Under reversal the sequence
    // of (angle at start vertex, side) pairs is traversed backwards.
    auto matches = [&](bool reversed, int shift) {
        for (int j = 0; j < k; ++j) {
            int jb = reversed ? (shift - j % k + 2 * k) % k : (j + shift) % k;
            int side_b = reversed ? (jb + k - 1) % k : jb;
            if (std::abs(angles_a[j] - angles_b[jb]) > tol) return false;
            if (std::abs(a.side_arcs[j] - b.side_arcs[side_b]) > tol) return false;
        }
        return true;
    };
    for (int shift = 0; shift < k; ++shift)
        if (matches(false, shift) || matches(true, shift)) return true;
    return false;
}

bool same_normals_up_to_relabeling(const PolyhedralCone& a, const PolyhedralCone& b,
                                   double tol) {
    const int k = a.faces();
    if (b.faces() != k) return false;
    auto matches = [&](bool reversed, int shift) {
        for (int j = 0; j < k; ++j) {
            const int jb = reversed ? (shift - j + 2 * k) % k : (j + shift) % k;
            if ((a.normals[j] - b.normals[jb]).cwiseAbs().maxCoeff() > tol) return false;
        }
        return true;
    };
    for (int shift = 0; shift < k; ++shift)
        if (matches(false, shift) || matches(true, shift)) return true;
    return false;
}

} // namespace rlab
