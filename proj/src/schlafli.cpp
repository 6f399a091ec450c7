#include "rlab/schlafli.hpp"

namespace rlab {

namespace {

Pyramid eval_family(const PyramidFamily& family, double t) {
    try {
        auto [cone, xi] = family(t);
        return build_pyramid(cone, xi);
    } catch (const Error& e) {
        throw Error(errc::stencil_invalid,
                    std::string("pyramid degenerates on the stencil: ") + e.what());
    }
}

SchlafliReport check_at_step(const PyramidFamily& family, double t0, double h) {
    const Pyramid center = eval_family(family, t0);
    const Pyramid plus = eval_family(family, t0 + h);
    const Pyramid minus = eval_family(family, t0 - h);
    const int k = center.cone.faces();

    const std::vector<double> gamma_ref = center.gamma;
    const double e_plus = energy(plus, gamma_ref).value_angle_form;
    const double e_minus = energy(minus, gamma_ref).value_angle_form;

    SchlafliReport report;
    report.step_used = h;
    report.energy_derivative_fd = (e_plus - e_minus) / (2.0 * h);

    double half_sum = 0.0;
    double residual = 0.0;
    for (int j = 0; j < k; ++j) {
        const double theta_dot =
            (plus.cone.dihedral_angles[j] - minus.cone.dihedral_angles[j]) / (2.0 * h);
        const double gamma_dot = (plus.gamma[j] - minus.gamma[j]) / (2.0 * h);
        half_sum += center.lateral_edge_lengths[j] * theta_dot;
        residual += center.lateral_edge_lengths[j] * theta_dot +
                    center.face_base_edge(j) * gamma_dot;
    }
    report.energy_derivative_schlafli = 0.5 * half_sum;
    report.schlafli_residual = residual;
    return report;
}

} // namespace

SchlafliReport schlafli_check(const PyramidFamily& family, double t0, double h,
                              double tol) {
    SchlafliReport report = check_at_step(family, t0, h);
    if (std::abs(report.agreement_residual()) > tol ||
        std::abs(report.schlafli_residual) > tol) {
        SchlafliReport refined = check_at_step(family, t0, 0.5 * h);
        if (std::abs(refined.agreement_residual()) <
                std::abs(report.agreement_residual()) ||
            std::abs(refined.schlafli_residual) < std::abs(report.schlafli_residual))
            return refined;
    }
    return report;
}

} // namespace rlab
