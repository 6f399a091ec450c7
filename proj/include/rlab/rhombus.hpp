#pragma once

#include <array>

#include "rlab/cone.hpp"
#include "rlab/grid_search.hpp"

namespace rlab {

/// 4-faced cone family with normals
///   n_1 = ( sin b1, 0, -cos b1),  n_2 = (0,  sin b2, -cos b2),
///   n_3 = (-sin b1, 0, -cos b1),  n_4 = (0, -sin b2, -cos b2).
/// Adjacent normals satisfy n_i . n_{i+1} = cos b1 cos b2, so the dual
/// cross-section is a spherical rhombus with diagonals 2 b1 and 2 b2.
struct RhombusCone {
    double beta1 = 0.0;
    double beta2 = 0.0;
    PolyhedralCone cone;
};

/// Throws OutOfRangeAngle unless both angles lie in (0, pi/2).
RhombusCone family_cone(double beta1, double beta2);

struct SameAnglesReport {
    bool same_dihedral_angles = false; // all four theta agree to 1e-12
    bool isometric = false;            // diagonal multisets match
    std::array<double, 2> diagonals_a; // {2 b1, 2 b2} measured from the normals
    std::array<double, 2> diagonals_b;
    double max_angle_difference = 0.0;
    double diagonal_multiset_gap = 0.0; // max sorted-multiset discrepancy
};

SameAnglesReport same_angles_not_isometric(const RhombusCone& a, const RhombusCone& b);

/// The audited Prop-3.15 witness pair: a symmetric reference (beta, beta) vs
/// an eccentric rhombus (beta1, beta2) with equal products
/// cos(beta1) cos(beta2) = cos(beta)^2, and xi_bar = -e3.
struct AuditedQuadInstance {
    double beta_ref;   // reference beta1 = beta2
    double beta1;      // eccentric pair
    double beta2;
    RhombusCone reference;
    RhombusCone candidate;
    Vec3 xi_bar;
};

AuditedQuadInstance audited_quad_instance();

} // namespace rlab
