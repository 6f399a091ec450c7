#pragma once

#include <optional>
#include <vector>

#include "rlab/geometry.hpp"

namespace rlab {

/// Base face of a flat reference polyhedron: a planar polygon with unit
/// normal W, vertices counter-clockwise with respect to W, and the dihedral
/// angle gamma_ref_j of side face F_j with the base along edge p_j p_{j+1}.
struct BaseFace {
    std::vector<Vec3> vertices;
    Vec3 W;
    std::vector<double> gamma_ref;

    int edges() const { return static_cast<int>(vertices.size()); }
    Vec3 edge_vector(int j) const {
        return vertices[(j + 1) % vertices.size()] - vertices[j];
    }
    double edge_length(int j) const { return edge_vector(j).norm(); }
};

/// Validates planarity, orientation and angle ranges.
/// Throws DegenerateBase or OutOfRangeAngle.
BaseFace make_base_face(std::vector<Vec3> vertices, const Vec3& W,
                        std::vector<double> gamma_ref);

struct EdgeTrappingData {
    double cos_gamma_hat = 0.0; // N_j . W for the cylinder through edge j
    double cos_gamma_ref = 0.0;
    double slack = 0.0;         // cos_gamma_ref - cos_gamma_hat, >= 0 when held
};

struct CylinderCertificate {
    Vec3 v;
    std::vector<EdgeTrappingData> per_edge;
    bool trapped = false; // every edge holds, at least one strictly
    double cot_sum = 0.0; // sum_j cot(gamma_ref_j) l_j
};

/// Cylinder with axis v through the base polygon; edge j is held when
/// N_j . W <= cos gamma_ref_j with N_j = (p_j p_{j+1} x v)/|...|.
/// Throws AxisBelowBase (v.W <= 0) or AxisParallelToEdge.
CylinderCertificate is_trapped(const BaseFace& base, const Vec3& v);

/// sum_j cot(gamma_ref_j) l_j. Throws ZeroAngle when some gamma_ref_j is 0 or pi.
double cot_sum(const BaseFace& base);

/// Cylinder angles gamma_hat_j of the axis-v cylinder, as a gamma list
/// (for the telescoping zero-sum identity sum_j cot(gamma_hat_j) l_j = 0).
std::vector<double> cylinder_angles(const BaseFace& base, const Vec3& v);

/// Tetrahedron identity: lhs = sum over base edges of cot(gamma_j) l_j from
/// the actual face-base dihedral angles (sign from the side of the edge the
/// apex foot falls on), rhs = 2 Area(base) / height. Both returned; they
/// agree to roundoff. Throws DegenerateTriangle or ApexInPlane.
std::pair<double, double> tetra_cot_identity(const Vec3& apex, const BaseFace& base);

struct TrappingSearchResult {
    std::optional<Vec3> witness;
    double best_slack = 0.0; // max over the grid of min_j per-edge slack
};

/// Deterministic hemisphere search over {v : v.W > 0} for a trapping axis.
TrappingSearchResult find_trapping_direction(const BaseFace& base, int grid);

} // namespace rlab
