#pragma once

#include <functional>

#include "rlab/pyramid.hpp"

namespace rlab {

/// One-parameter family of pyramids t -> (cone(t), xi(t)).
using PyramidFamily = std::function<std::pair<PolyhedralCone, Vec3>(double)>;

struct SchlafliReport {
    double energy_derivative_fd = 0.0;   // central-difference E'(t0)
    double energy_derivative_schlafli = 0.0; // (1/2) sum_j l_j theta_j'
    double schlafli_residual = 0.0;      // sum_j l_j theta_j' + sum_j |F_j cap B| gamma_j'
    double step_used = 0.0;

    double agreement_residual() const {
        return energy_derivative_fd - energy_derivative_schlafli;
    }
};

/// Checks E'(t0) = (1/2) sum_j ell_j(t0) theta_j'(t0) and the Schlafli
/// identity sum ell_j theta_j' + sum |F_j cap B| gamma_j' = 0 by central
/// differences, taking gamma_ref = gamma(t0). Falls back to step h/2 when the
/// residuals exceed tol. Throws StencilInvalid when the pyramid degenerates
/// anywhere on the stencil.
SchlafliReport schlafli_check(const PyramidFamily& family, double t0, double h,
                              double tol = 1e-5);

} // namespace rlab
