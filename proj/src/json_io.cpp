#include "rlab/json_io.hpp"

#include <fstream>

namespace rlab {

double parse_angle(const json& value) {
    if (value.is_number()) return value.get<double>();
    if (value.is_string()) {
        const std::string text = value.get<std::string>();
        const auto pos = text.find("deg");
        if (pos == std::string::npos)
            throw Error(errc::parse_error,
                        "angle strings need an explicit 'deg' suffix: " + text);
        try {
            return std::stod(text.substr(0, pos)) * kPi / 180.0;
        } catch (const std::exception&) {
            throw Error(errc::parse_error, "bad angle literal: " + text);
        }
    }
    throw Error(errc::parse_error, "angle must be a number (radians) or 'X deg' string");
}

Vec3 parse_vec3(const json& value) {
    if (!value.is_array() || value.size() != 3 || !value[0].is_number() ||
        !value[1].is_number() || !value[2].is_number())
        throw Error(errc::parse_error, "expected a 3-vector of numbers");
    return Vec3(value[0].get<double>(), value[1].get<double>(), value[2].get<double>());
}

json to_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

PolyhedralCone cone_from_json(const json& j) {
    if (!j.contains("normals") || !j["normals"].is_array())
        throw Error(errc::parse_error, "cone JSON needs a 'normals' array");
    std::vector<Vec3> normals;
    for (const json& row : j["normals"]) normals.push_back(parse_vec3(row));
    return cone_from_normals(std::move(normals));
}

json cone_to_json(const PolyhedralCone& cone, const std::string& label) {
    json j;
    j["schema_version"] = kSchemaVersion;
    if (!label.empty()) j["label"] = label;
    json normals = json::array();
    for (const Vec3& n : cone.normals) normals.push_back(to_json(n));
    json edges = json::array();
    for (const Vec3& u : cone.edge_generators) edges.push_back(to_json(u));
    j["normals"] = normals;
    j["edge_generators"] = edges;
    j["dihedral_angles"] = cone.dihedral_angles;
    return j;
}

std::pair<PolyhedralCone, Vec3> pyramid_input_from_json(const json& j) {
    if (!j.contains("xi"))
        throw Error(errc::parse_error, "pyramid JSON needs an 'xi' field");
    return {cone_from_json(j), parse_vec3(j["xi"])};
}

json pyramid_to_json(const Pyramid& pyramid) {
    json j = cone_to_json(pyramid.cone);
    j["xi"] = to_json(pyramid.xi);
    json verts = json::array();
    for (const Vec3& a : pyramid.base_vertices) verts.push_back(to_json(a));
    j["base_vertices"] = verts;
    j["side_face_areas"] = pyramid.side_face_areas;
    j["base_area"] = pyramid.base_area;
    j["gamma"] = pyramid.gamma;
    j["lateral_edge_lengths"] = pyramid.lateral_edge_lengths;
    j["base_edge_lengths"] = pyramid.base_edge_lengths;
    return j;
}

json energy_report_to_json(const EnergyReport& report) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["value_direct"] = report.value_direct;
    j["value_angle_form"] = report.value_angle_form;
    j["difference"] = report.difference();
    j["gamma_reference"] = report.gamma_reference;
    return j;
}

MatrixProblem matrix_problem_from_json(const json& j) {
    for (const char* field : {"b", "b_bar", "xi_bar"})
        if (!j.contains(field))
            throw Error(errc::parse_error,
                        std::string("minimize JSON needs field '") + field + "'");
    return make_matrix_problem(parse_vec3(j["b"]), parse_vec3(j["b_bar"]),
                               parse_vec3(j["xi_bar"]));
}

json minimizer_result_to_json(const MinimizerResult& result) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["xi_coords"] = to_json(result.xi_coords);
    j["xi_vector"] = to_json(result.xi_vector);
    j["case_taken"] = result.case_taken == MinimizerCase::first ? "FirstCase" : "SecondCase";
    j["certificate"] = result.certificate;
    j["energy"] = result.energy;
    j["energy_closed_form"] = result.energy_closed_form;
    j["rigidity_case"] = result.rigidity_case;
    j["omega"] = to_json(result.omega);
    if (result.second_case) {
        j["second_case"] = {
            {"zeroed_index", result.second_case->zeroed_index},
            {"omega_bar", {result.second_case->omega_bar[0], result.second_case->omega_bar[1]}},
            {"claim_value", result.second_case->claim_value},
            {"claim_needed", result.second_case->claim_needed},
        };
    }
    return j;
}

BaseFace base_face_from_json(const json& j) {
    for (const char* field : {"vertices", "W", "gamma_ref"})
        if (!j.contains(field))
            throw Error(errc::parse_error,
                        std::string("base-face JSON needs field '") + field + "'");
    std::vector<Vec3> vertices;
    for (const json& row : j["vertices"]) vertices.push_back(parse_vec3(row));
    std::vector<double> gamma_ref;
    for (const json& g : j["gamma_ref"]) gamma_ref.push_back(parse_angle(g));
    return make_base_face(std::move(vertices), parse_vec3(j["W"]), std::move(gamma_ref));
}

json certificate_to_json(const CylinderCertificate& cert) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["v"] = to_json(cert.v);
    json edges = json::array();
    for (const EdgeTrappingData& e : cert.per_edge)
        edges.push_back({{"cos_gamma_hat", e.cos_gamma_hat},
                         {"cos_gamma_ref", e.cos_gamma_ref},
                         {"slack", e.slack}});
    j["per_edge"] = edges;
    j["trapped"] = cert.trapped;
    j["cot_sum"] = cert.cot_sum;
    return j;
}

ConvexPolyhedron polyhedron_from_json(const json& j) {
    if (!j.contains("halfspaces") || !j["halfspaces"].is_array())
        throw Error(errc::parse_error, "polyhedron JSON needs a 'halfspaces' array");
    std::vector<HalfSpace> halves;
    for (const json& row : j["halfspaces"]) {
        HalfSpace hs;
        hs.a = parse_vec3(row.at("a"));
        hs.s = row.at("s").get<double>();
        if (row.contains("side") && row["side"].get<double>() < 0.0) {
            hs.a = -hs.a;
            hs.s = -hs.s;
        }
        halves.push_back(hs);
    }
    return polyhedron_from_halfspaces(halves);
}

json mass_report_to_json(const MassReport& report) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["flux"] = report.flux;
    j["face_term"] = report.face_term;
    j["edge_term"] = report.edge_term;
    j["residual"] = report.residual;
    j["scale"] = report.scale;
    return j;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error(errc::parse_error, "cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error(errc::parse_error, path + ": " + e.what());
    }
}

} // namespace rlab
