#include "rlab/errors.hpp"

namespace rlab {

const char* errc_name(errc code) {
    switch (code) {
        case errc::non_unit_vector: return "NonUnitVector";
        case errc::parallel_normals: return "ParallelNormals";
        case errc::degenerate_cone: return "DegenerateCone";
        case errc::out_of_range_angle: return "OutOfRangeAngle";
        case errc::not_positive_definite: return "NotPositiveDefinite";
        case errc::degenerate_side: return "DegenerateSide";
        case errc::xi_outside_dual_interior: return "XiOutsideDualInterior";
        case errc::length_mismatch: return "LengthMismatch";
        case errc::stencil_invalid: return "StencilInvalid";
        case errc::hypothesis_violated: return "HypothesisViolated";
        case errc::angle_condition_violated: return "AngleConditionViolated";
        case errc::empty_interior: return "EmptyInterior";
        case errc::axis_parallel_to_edge: return "AxisParallelToEdge";
        case errc::axis_below_base: return "AxisBelowBase";
        case errc::zero_angle: return "ZeroAngle";
        case errc::degenerate_triangle: return "DegenerateTriangle";
        case errc::apex_in_plane: return "ApexInPlane";
        case errc::no_intersection: return "NoIntersection";
        case errc::step_too_large: return "StepTooLarge";
        case errc::edge_angle_degenerate: return "EdgeAngleDegenerate";
        case errc::quadrature_under_resolved: return "QuadratureUnderResolved";
        case errc::degenerate_base: return "DegenerateBase";
        case errc::parse_error: return "ParseError";
    }
    return "UnknownError";
}

} // namespace rlab
