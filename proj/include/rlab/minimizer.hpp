#pragma once

#include <array>
#include <optional>

#include "rlab/gram.hpp"
#include "rlab/pyramid.hpp"

namespace rlab {

/// Comparison problem for two 3-faced cones in Gram form. b_i = -cos theta_i
/// for the candidate cone C, b_bar for the reference; the hypothesis is
/// b_i <= b_bar_i (C has less dihedral angle). xi_bar holds the reference
/// direction in dual coordinates, normalized to xi_bar G_bar xi_bar^t = 1
/// with all entries positive.
struct MatrixProblem {
    Vec3 b;
    Vec3 b_bar;
    Mat3 G;
    Mat3 G_bar;
    Vec3 h;      // b_bar - b, entrywise >= 0
    Vec3 xi_bar; // dual coordinates
};

/// Validates and normalizes the inputs (xi_bar_direction is scaled to the
/// Gram unit sphere). Throws NotPositiveDefinite, HypothesisViolated, or
/// OutOfRangeAngle (xi_bar_direction not strictly positive).
MatrixProblem make_matrix_problem(const Vec3& b, const Vec3& b_bar,
                                  const Vec3& xi_bar_direction);

enum class MinimizerCase { first, second };

struct SecondCaseDiagnostics {
    int zeroed_index = -1;           // index moved to the third slot
    Eigen::Vector2d omega_bar;       // in the permuted frame, both >= 0
    double claim_value = 0.0;        // det(G) + zeta q^t in the permuted frame
    // The determinant claim enters the omega_bar >= 0 argument only when one
    // of the coefficients (b_bar_2 - b_bar_1 b_3) or (b_bar_1 - b_bar_2 b_3)
    // is negative; claim_value > 0 is guaranteed exactly there.
    bool claim_needed = false;
};

struct MinimizerResult {
    Vec3 xi_coords;    // dual coordinates, xi G xi^t = 1, entries > 0
    Vec3 xi_vector;    // ambient unit vector sum_i xi^i n_i (canonical cones)
    MinimizerCase case_taken = MinimizerCase::first;
    double certificate = 0.0;        // xi G_bar xi_bar^t - 1, > 0 unless rigid
    double energy = 0.0;             // E_ref(P_{xi,C}) via the pyramid route
    double energy_closed_form = 0.0; // -certificate / (2 sqrt(det G) xi^1 xi^2 xi^3)
    bool rigidity_case = false;      // h == 0: certificate and energy both 0
    Vec3 omega;                      // xi_bar G_bar G^{-1}
    std::optional<SecondCaseDiagnostics> second_case;
};

/// The constructive minimizer: omega = xi_bar G_bar G^{-1}; if all
/// components are nonnegative, xi = omega / sqrt(omega G omega^t); otherwise
/// the most negative component is permuted to the third slot, zeroed, and the
/// reduced 2x2 problem is solved. A boundary solution is afterwards nudged
/// into the open dual cone, preserving certificate positivity.
MinimizerResult solve_matrix_case(const MatrixProblem& problem);

/// Incremental spherical construction: starting from the reference placement,
/// change one dual side length at a time (three steps), each time placing xi
/// congruently against the unchanged sub-triangle and pushing it strictly
/// inside. Returns a unit vector interior to C* with gamma_j >= gamma_ref_j,
/// strict for all j when some dihedral angle strictly decreased.
/// Throws HypothesisViolated (theta_j > theta_bar_j) or
/// AngleConditionViolated (strict angle condition fails at a decreasing edge).
Vec3 solve_incremental(const PolyhedralCone& cone, const PolyhedralCone& ref_cone,
                       const Vec3& xi_bar);

} // namespace rlab
