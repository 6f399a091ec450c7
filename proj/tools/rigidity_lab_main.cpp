// rigidity-lab: command-line front end for the polyhedral-cone comparison
// and hyperbolic-mass verification toolkit.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <iostream>

#include "rlab/acceptance.hpp"
#include "rlab/grid_search.hpp"
#include "rlab/instances.hpp"
#include "rlab/json_io.hpp"
#include "rlab/parallel.hpp"
#include "rlab/rhombus.hpp"

namespace {

using namespace rlab;

struct RunConfig {
    std::uint64_t seed = 42;
    int resolution = 512;
    std::string threads = "auto";
    std::string format = "json";
    std::vector<std::string> tolerance_overrides;
};

int resolve_threads(const std::string& spec) {
    if (spec == "auto") {
        if (const char* env = std::getenv("RIGIDITY_LAB_THREADS"))
            return std::max(0, std::atoi(env));
        return 0;
    }
    return std::max(0, std::atoi(spec.c_str()));
}

void emit(const json& j, const std::string& format) {
    if (format == "csv") {
        // Flat objects only: one header line, one value line.
        std::string header, row;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!it.value().is_primitive()) continue;
            if (!header.empty()) {
                header += ',';
                row += ',';
            }
            header += it.key();
            row += it.value().dump();
        }
        std::printf("%s\n%s\n", header.c_str(), row.c_str());
    } else {
        std::printf("%s\n", j.dump(2).c_str());
    }
}

int cmd_cone(const std::string& input, const RunConfig& config) {
    const json in = load_json_file(input);
    const PolyhedralCone cone = cone_from_json(in);
    json out = cone_to_json(cone, in.value("label", ""));
    out["polar"] = cone_to_json(polar_cone(cone));
    emit(out, config.format);
    return 0;
}

int cmd_energy(const std::string& input, const RunConfig& config) {
    const json in = load_json_file(input);
    auto [cone, xi] = pyramid_input_from_json(in);
    const Pyramid pyramid = build_pyramid(cone, xi);
    std::vector<double> gamma_ref = pyramid.gamma;
    if (in.contains("gamma_ref")) {
        gamma_ref.clear();
        for (const json& g : in["gamma_ref"]) gamma_ref.push_back(parse_angle(g));
    }
    const EnergyReport report = energy(pyramid, gamma_ref);
    json out = energy_report_to_json(report);
    out["pyramid"] = pyramid_to_json(pyramid);
    emit(out, config.format);
    return 0;
}

int cmd_minimize(const std::string& input, const std::string& cone_path,
                 const std::string& ref_path, const RunConfig& config) {
    MatrixProblem problem;
    if (!cone_path.empty() && !ref_path.empty()) {
        const PolyhedralCone cone = cone_from_json(load_json_file(cone_path));
        const PolyhedralCone ref = cone_from_json(load_json_file(ref_path));
        const json in = load_json_file(input);
        if (!in.contains("xi_bar"))
            throw Error(errc::parse_error, "minimize with cone files needs 'xi_bar'");
        const Vec3 xi_bar = parse_vec3(in["xi_bar"]);
        // Dual coordinates of xi_bar with respect to the reference normals.
        Mat3 n;
        for (int i = 0; i < 3; ++i) n.row(i) = ref.normals[i];
        const Vec3 coords = n.transpose().fullPivLu().solve(xi_bar);
        problem = make_matrix_problem(gram_of_cone(cone).b, gram_of_cone(ref).b, coords);
    } else {
        problem = matrix_problem_from_json(load_json_file(input));
    }
    const MinimizerResult result = solve_matrix_case(problem);
    emit(minimizer_result_to_json(result), config.format);
    return result.certificate >= 0.0 ? 0 : 1;
}

int cmd_quad_cx(const RunConfig& config, const std::string& csv_path) {
    const AuditedQuadInstance inst = audited_quad_instance();
    const SameAnglesReport same = same_angles_not_isometric(inst.reference, inst.candidate);
    const DominatingSearchResult search = dominating_xi_search(
        inst.candidate.cone, inst.reference.cone, inst.xi_bar, config.resolution);

    json out;
    out["schema_version"] = kSchemaVersion;
    out["beta_ref"] = inst.beta_ref;
    out["beta1"] = inst.beta1;
    out["beta2"] = inst.beta2;
    out["same_dihedral_angles"] = same.same_dihedral_angles;
    out["isometric"] = same.isometric;
    out["diagonal_gap"] = same.diagonal_multiset_gap;
    out["witness_found"] = search.witness.has_value();
    out["worst_deficit"] = search.worst_deficit;
    out["slack"] = search.slack;

    if (!csv_path.empty()) {
        // Coarse gamma grid for plotting.
        std::FILE* f = std::fopen(csv_path.c_str(), "w");
        if (!f) throw Error(errc::parse_error, "cannot write " + csv_path);
        std::fprintf(f, "xi_x,xi_y,xi_z,gamma1,gamma2,gamma3,gamma4,deficit\n");
        const int res = 64;
        std::vector<double> target(4);
        for (int j = 0; j < 4; ++j)
            target[j] = arc_angle(inst.xi_bar, inst.reference.cone.normals[j]);
        const auto& cone = inst.candidate.cone;
        for (int i = 0; i <= res; ++i)
            for (int j = 0; j <= res; ++j) {
                Vec3 mix = Vec3::Zero();
                const double wx = static_cast<double>(i) / res;
                const double wy = static_cast<double>(j) / res;
                mix = (wx * cone.normals[0] + (1 - wx) * cone.normals[2]) +
                      (wy * cone.normals[1] + (1 - wy) * cone.normals[3]);
                if (mix.norm() < 1e-9) continue;
                mix.normalize();
                bool interior = true;
                for (const Vec3& u : cone.edge_generators)
                    if (u.dot(mix) >= -1e-12) interior = false;
                if (!interior) continue;
                double deficit = 1e300;
                double gamma[4];
                for (int l = 0; l < 4; ++l) {
                    gamma[l] = arc_angle(mix, cone.normals[l]);
                    deficit = std::min(deficit, gamma[l] - target[l]);
                }
                std::fprintf(f, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                             mix.x(), mix.y(), mix.z(), gamma[0], gamma[1], gamma[2],
                             gamma[3], deficit);
            }
        std::fclose(f);
        out["gamma_csv"] = csv_path;
    }
    emit(out, config.format);
    return 0;
}

int cmd_trapping(const std::string& input, const RunConfig& config) {
    const json in = load_json_file(input);
    const BaseFace base = base_face_from_json(in);
    json out;
    out["schema_version"] = kSchemaVersion;
    if (in.contains("v")) {
        const CylinderCertificate cert = is_trapped(base, parse_vec3(in["v"]));
        out = certificate_to_json(cert);
    } else {
        const TrappingSearchResult found =
            find_trapping_direction(base, std::max(8, config.resolution / 8));
        out["witness_found"] = found.witness.has_value();
        out["best_slack"] = found.best_slack;
        if (found.witness) {
            out["v"] = to_json(*found.witness);
            out["certificate"] = certificate_to_json(is_trapped(base, *found.witness));
        }
        out["cot_sum"] = cot_sum(base);
    }
    emit(out, config.format);
    return 0;
}

int cmd_mass(const std::string& input, const std::string& preset, double tau,
             const std::vector<double>& scales, const RunConfig& config) {
    PerturbedMetric metric;
    if (preset == "zero")
        metric = zero_metric();
    else if (preset == "uniform")
        metric = uniform_decay_metric(tau);
    else if (preset == "axis")
        metric = axis_decay_metric(tau);
    else
        throw Error(errc::parse_error, "unknown perturbation preset: " + preset);

    std::vector<MassReport> reports;
    if (!scales.empty()) {
        reports = miao_piubello_check(metric, scales);
    } else {
        if (input.empty())
            throw Error(errc::parse_error, "mass needs a polyhedron file or --scales");
        const ConvexPolyhedron poly = polyhedron_from_json(load_json_file(input));
        MassReport report;
        report.scale = poly.scale;
        report.flux = mass_flux(metric, poly, 4);
        const auto [face_term, edge_term] = geometric_side(metric, poly, 4, 1e-3);
        report.face_term = face_term;
        report.edge_term = edge_term;
        report.residual = report.flux - face_term - edge_term;
        reports.push_back(report);
    }

    if (config.format == "csv") {
        std::printf("scale,flux,face_term,edge_term,residual\n");
        for (const MassReport& r : reports)
            std::printf("%.17g,%.17g,%.17g,%.17g,%.17g\n", r.scale, r.flux, r.face_term,
                        r.edge_term, r.residual);
    } else {
        json out = json::array();
        for (const MassReport& r : reports) out.push_back(mass_report_to_json(r));
        emit(out, config.format);
    }
    return 0;
}

int cmd_verify_all(const RunConfig& config) {
    AcceptanceConfig acceptance;
    acceptance.seed = config.seed;
    acceptance.verbose = true;
    const std::vector<CriterionResult> results = run_acceptance(acceptance);
    int passed = 0;
    for (const CriterionResult& r : results) passed += r.passed ? 1 : 0;
    std::printf("%d/%zu criteria passed (seed %llu)\n", passed, results.size(),
                static_cast<unsigned long long>(config.seed));
    return all_passed(results) ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"polyhedral cone comparison and hyperbolic mass verification toolkit"};
    app.require_subcommand(1);

    RunConfig config;
    app.add_option("--seed", config.seed, "RNG seed for randomized sweeps");
    app.add_option("--resolution", config.resolution, "grid resolution for searches");
    app.add_option("--threads", config.threads, "worker threads (number or 'auto')");
    app.add_option("--format", config.format, "output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--tol", config.tolerance_overrides, "tolerance overrides name=value");

    std::string input, cone_path, ref_path, csv_path, preset = "axis";
    double tau = 2.0;
    std::vector<double> scales;

    CLI::App* cone_cmd = app.add_subcommand("cone", "validate a cone and compute its polar");
    cone_cmd->add_option("input", input, "cone JSON file")->required();

    CLI::App* energy_cmd =
        app.add_subcommand("energy", "pyramid data and comparison energy");
    energy_cmd->add_option("input", input, "pyramid JSON file")->required();

    CLI::App* minimize_cmd =
        app.add_subcommand("minimize", "constructive minimizer for 3-faced cones");
    minimize_cmd->add_option("input", input, "problem JSON file")->required();
    minimize_cmd->add_option("--cone", cone_path, "candidate cone JSON file");
    minimize_cmd->add_option("--ref", ref_path, "reference cone JSON file");

    CLI::App* quad_cmd =
        app.add_subcommand("quad-cx", "audited 4-faced counterexample instance");
    quad_cmd->add_option("--gamma-csv", csv_path, "write a gamma grid CSV here");

    CLI::App* trapping_cmd =
        app.add_subcommand("trapping", "cylinder trapping certificate");
    trapping_cmd->add_option("input", input, "base-face JSON file")->required();

    CLI::App* mass_cmd = app.add_subcommand("mass", "hyperbolic mass evaluation");
    mass_cmd->add_option("input", input, "polyhedron JSON file");
    mass_cmd->add_option("--perturbation", preset, "zero, uniform, or axis");
    mass_cmd->add_option("--tau", tau, "decay rate (> 1.5)");
    mass_cmd->add_option("--scales", scales, "expanding-family scales");

    CLI::App* verify_cmd =
        app.add_subcommand("verify-all", "run the full verification suite");
    (void)verify_cmd;

    // Exit-code contract: 0 pass, 1 assertion failure, 2 usage/parse error.
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    set_thread_count(resolve_threads(config.threads));

    try {
        if (cone_cmd->parsed()) return cmd_cone(input, config);
        if (energy_cmd->parsed()) return cmd_energy(input, config);
        if (minimize_cmd->parsed()) return cmd_minimize(input, cone_path, ref_path, config);
        if (quad_cmd->parsed()) return cmd_quad_cx(config, csv_path);
        if (trapping_cmd->parsed()) return cmd_trapping(input, config);
        if (mass_cmd->parsed()) return cmd_mass(input, preset, tau, scales, config);
        if (verify_cmd->parsed()) return cmd_verify_all(config);
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return e.code() == errc::parse_error ? 2 : 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
