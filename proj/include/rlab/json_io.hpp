#pragma once

#include <json.hpp>

#include "rlab/cone.hpp"
#include "rlab/mass.hpp"
#include "rlab/minimizer.hpp"
#include "rlab/pyramid.hpp"
#include "rlab/trapping.hpp"

namespace rlab {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// Angle fields accept plain numbers (radians) or strings with an explicit
/// "deg" suffix ("45 deg"). Throws ParseError.
double parse_angle(const json& value);

Vec3 parse_vec3(const json& value);

json to_json(const Vec3& v);

/// {"normals": [[f,f,f], ...], "label": optional}
PolyhedralCone cone_from_json(const json& j);
json cone_to_json(const PolyhedralCone& cone, const std::string& label = "");

/// Cone schema plus "xi": [f,f,f].
std::pair<PolyhedralCone, Vec3> pyramid_input_from_json(const json& j);
json pyramid_to_json(const Pyramid& pyramid);

json energy_report_to_json(const EnergyReport& report);

/// {"b": [...], "b_bar": [...], "xi_bar": [...]}
MatrixProblem matrix_problem_from_json(const json& j);
json minimizer_result_to_json(const MinimizerResult& result);

/// {"vertices": [[f,f,f],...], "W": [f,f,f], "gamma_ref": [...]}
BaseFace base_face_from_json(const json& j);
json certificate_to_json(const CylinderCertificate& cert);

/// {"halfspaces": [{"a": [f,f,f], "s": f, "side": +-1}, ...]}
ConvexPolyhedron polyhedron_from_json(const json& j);
json mass_report_to_json(const MassReport& report);

json load_json_file(const std::string& path);

} // namespace rlab
