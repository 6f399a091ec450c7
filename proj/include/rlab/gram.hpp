#pragma once

#include "rlab/cone.hpp"
#include "rlab/geometry.hpp"

namespace rlab {

/// Gram data of a 3-faced cone. b_i = n_{i+1}.n_{i+2} = -cos(theta at the
/// edge shared by faces i+1 and i+2); the matrix has unit diagonal and
/// off-diagonals (b_3, b_2, b_1):
///
///     G = [ 1    b_3  b_2 ]
///         [ b_3  1    b_1 ]
///         [ b_2  b_1  1   ]
struct GramSpec {
    Vec3 b;
    Mat3 G;
    Vec3 beta; // beta_i = arccos(b_i)
};

/// Builds the GramSpec from b in [-1,1]^3. Throws OutOfRangeAngle.
GramSpec gram_from_b(const Vec3& b);

/// Gram data of an existing 3-faced cone (b_i from the stored normals).
GramSpec gram_of_cone(const PolyhedralCone& cone);

/// beta_i + beta_{i+1} > beta_{i+2} for all i, and beta_1+beta_2+beta_3 < 2 pi.
/// Each beta_i must lie in [0, pi]; throws OutOfRangeAngle otherwise.
bool spherical_triangle_inequalities(const Vec3& beta);

/// Smallest eigenvalue of G above tol. Agrees with the triangle inequalities
/// away from the degeneracy boundary.
bool gram_positive_definite(const GramSpec& spec, double tol = 1e-10);

/// Reconstructs a 3-faced cone with n_i.n_j = g_ij from the lower-triangular
/// square root of G, mirrored so the stored order satisfies the orientation
/// convention. First normal (1,0,0), second in the xy-plane. Throws
/// NotPositiveDefinite.
PolyhedralCone cone_from_gram(const GramSpec& spec);

/// 3-faced cone with the prescribed dihedral angles theta_j (canonical
/// embedding via cone_from_gram).
PolyhedralCone cone_with_dihedrals(const std::array<double, 3>& theta);

/// Side c of a spherical triangle from sides a, b and the included angle C:
/// cos c = cos a cos b + sin a sin b cos C. Monotone increasing in C.
/// Throws DegenerateSide unless a, b, C all lie in (0, pi).
double spherical_law_of_cosines(double a, double b, double C);

/// Gram-equality isometry test for 3-faced cones: b-vectors agree under some
/// cyclic or reversed relabeling.
bool gram_isometric(const GramSpec& a, const GramSpec& b, double tol = 1e-9);

} // namespace rlab
