#pragma once

#include <vector>

#include "rlab/cone.hpp"

namespace rlab {

/// Pyramid P cut from a cone by the plane x.xi = -1, where xi is the inner
/// unit normal of the base (the apex O sits at distance 1 from the base
/// plane). Base vertex A_j = -u_j / (u_j.xi) lies on the edge ray u_j; side
/// face F_j cap P is the triangle (O, A_{j-1}, A_j).
struct Pyramid {
    PolyhedralCone cone;
    Vec3 xi;
    std::vector<Vec3> base_vertices;       // A_j
    std::vector<double> side_face_areas;   // |F_j cap P|
    double base_area = 0.0;                // |B|, signed fan sum around the apex foot
    std::vector<double> gamma;             // gamma_j = angle(n_j, xi)
    std::vector<double> lateral_edge_lengths; // l_j = |O A_j|
    std::vector<double> base_edge_lengths;    // |A_j A_{j+1}|

    /// Length of the base edge of face j, |A_{j-1} A_j| = |F_j cap B|.
    double face_base_edge(int j) const {
        const int k = static_cast<int>(base_edge_lengths.size());
        return base_edge_lengths[(j + k - 1) % k];
    }
};

/// Throws NonUnitVector (|xi| != 1) or XiOutsideDualInterior
/// (some u_j.xi >= -1e-12).
Pyramid build_pyramid(const PolyhedralCone& cone, const Vec3& xi);

/// Comparison energy against reference base angles gamma_ref, evaluated by
/// two algebraically equal routes:
///   direct:     |B| - sum_j cos(gamma_ref_j) |F_j cap P|
///   angle form: sum_j |F_j cap P| (cos gamma_j - cos gamma_ref_j)
struct EnergyReport {
    double value_direct = 0.0;
    double value_angle_form = 0.0;
    std::vector<double> gamma_reference;

    double difference() const { return value_direct - value_angle_form; }
};

EnergyReport energy(const Pyramid& pyramid, const std::vector<double>& gamma_ref);

/// Entry j is true iff |pi - (gamma_ref_j + gamma_ref_{j+1})| < theta_j.
std::vector<bool> angle_condition(const PolyhedralCone& cone,
                                  const std::vector<double>& gamma_ref);

} // namespace rlab
