#pragma once

#include <stdexcept>
#include <string>

namespace rlab {

enum class errc {
    non_unit_vector,
    parallel_normals,
    degenerate_cone,
    out_of_range_angle,
    not_positive_definite,
    degenerate_side,
    xi_outside_dual_interior,
    length_mismatch,
    stencil_invalid,
    hypothesis_violated,
    angle_condition_violated,
    empty_interior,
    axis_parallel_to_edge,
    axis_below_base,
    zero_angle,
    degenerate_triangle,
    apex_in_plane,
    no_intersection,
    step_too_large,
    edge_angle_degenerate,
    quadrature_under_resolved,
    degenerate_base,
    parse_error,
};

const char* errc_name(errc code);

/// Exception carrying a machine-checkable error code plus a human message.
class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    errc code() const { return code_; }

private:
    errc code_;
};

} // namespace rlab
