#pragma once

#include <vector>

#include "rlab/geometry.hpp"

namespace rlab {

/// Convex polyhedral cone in R^3, stored through its outward unit face
/// normals n_j ordered so that det(n_j, n_{j+1}, n_{j+2}) < 0 (indices mod k).
/// Edge generators u_j = (n_j x n_{j+1}) / |n_j x n_{j+1}| span the edge
/// F_j cap F_{j+1}; theta_j = pi - angle(n_j, n_{j+1}) is the dihedral angle
/// along that edge.
struct PolyhedralCone {
    std::vector<Vec3> normals;
    std::vector<Vec3> edge_generators;
    std::vector<double> dihedral_angles;

    int faces() const { return static_cast<int>(normals.size()); }
};

/// Builds and validates a cone from outward face normals. The cyclic order is
/// reversed when the input violates the determinant convention. Throws
/// NonUnitVector, ParallelNormals or DegenerateCone.
PolyhedralCone cone_from_normals(std::vector<Vec3> normals);

/// Polar (dual) cone C* = {y : y.x <= 0 for all x in C}, again represented by
/// its own outward face normals. polar_cone(polar_cone(C)) equals C up to a
/// cyclic relabeling.
PolyhedralCone polar_cone(const PolyhedralCone& cone);

/// Interior witness directions: sum of edge generators (for C) and of face
/// normals (for C*), normalized.
Vec3 interior_point(const PolyhedralCone& cone);
Vec3 dual_interior_point(const PolyhedralCone& cone);

/// Cross-sections with the unit sphere.
struct SphericalPolygon {
    std::vector<Vec3> vertices;
    std::vector<double> side_arcs; // side_arcs[j] = arc(vertices[j], vertices[j+1])
};

/// D = C cap S^2, vertices are the edge generators u_j.
SphericalPolygon cross_section(const PolyhedralCone& cone);
/// D-dagger = C* cap S^2, vertices are the face normals n_j.
SphericalPolygon dual_cross_section(const PolyhedralCone& cone);

/// Congruence of spherical polygons up to cyclic relabeling and reflection,
/// comparing side arcs and interior vertex angles.
bool congruent_up_to_relabeling(const SphericalPolygon& a, const SphericalPolygon& b,
                                double tol = 1e-9);

/// True when the two cones' normals agree entrywise under some cyclic shift
/// (optionally reversed order), to the given tolerance.
bool same_normals_up_to_relabeling(const PolyhedralCone& a, const PolyhedralCone& b,
                                   double tol = 1e-12);

} // namespace rlab
