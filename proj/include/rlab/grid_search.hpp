#pragma once

#include <optional>
#include <vector>

#include "rlab/cone.hpp"

namespace rlab {

struct GridOracleResult {
    Vec3 xi;
    double e_min = 0.0;
};

/// Exhaustive minimization of the comparison energy over a geodesic grid of
/// the open dual cross-section, followed by local refinement (3 rounds, each
/// 10x finer). Deterministic for fixed inputs: grid points are enumerated in
/// a fixed order and ties resolve by lexicographic xi.
/// Throws EmptyInterior when no interior grid point exists.
GridOracleResult grid_oracle(const PolyhedralCone& cone,
                             const std::vector<double>& gamma_ref, int resolution);

struct DominatingSearchResult {
    std::optional<Vec3> witness;  // first grid point (in enumeration order)
                                  // with arc(xi, n_j) >= arc(xi_bar, n_bar_j) - slack
    double worst_deficit = 0.0;   // max over grid of min_j (arc(xi,n_j) - arc(xi_bar,n_bar_j))
    double slack = 0.0;           // grid spacing bound used in the test
};

/// Geodesic-grid search over the open dual cross-section of `cone` for a
/// direction dominating the reference arcs. Same determinism contract as
/// grid_oracle.
DominatingSearchResult dominating_xi_search(const PolyhedralCone& cone,
                                            const PolyhedralCone& ref_cone,
                                            const Vec3& xi_bar, int resolution);

} // namespace rlab
