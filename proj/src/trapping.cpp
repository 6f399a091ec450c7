#include "rlab/trapping.hpp"

#include <limits>

#include "rlab/parallel.hpp"

namespace rlab {

BaseFace make_base_face(std::vector<Vec3> vertices, const Vec3& W,
                        std::vector<double> gamma_ref) {
    const int k = static_cast<int>(vertices.size());
    if (k < 3)
        throw Error(errc::degenerate_base, "base polygon needs at least 3 vertices");
    if (!is_unit(W))
        throw Error(errc::non_unit_vector, "W must be a unit vector");
    if (gamma_ref.size() != vertices.size())
        throw Error(errc::length_mismatch, "one gamma_ref entry per edge");
    for (double g : gamma_ref)
        if (!(g > 0.0 && g < kPi))
            throw Error(errc::out_of_range_angle, "gamma_ref entries must lie in (0, pi)");

    const Vec3 c = [&] {
        Vec3 sum = Vec3::Zero();
        for (const Vec3& p : vertices) sum += p;
        return Vec3(sum / k);
    }();
    for (const Vec3& p : vertices)
        if (std::abs((p - c).dot(W)) > 1e-10)
            throw Error(errc::degenerate_base, "vertices are not coplanar orthogonal to W");

    double signed_area = 0.0;
    for (int j = 0; j < k; ++j)
        signed_area +=
            0.5 * (vertices[j] - c).cross(vertices[(j + 1) % k] - c).dot(W);
    if (!(signed_area > 1e-14))
        throw Error(errc::degenerate_base,
                    "vertices must run counter-clockwise with respect to W");

    BaseFace base;
    base.vertices = std::move(vertices);
    base.W = W;
    base.gamma_ref = std::move(gamma_ref);
    return base;
}

std::vector<double> cylinder_angles(const BaseFace& base, const Vec3& v) {
    if (!(v.dot(base.W) > 0.0))
        throw Error(errc::axis_below_base, "axis must point to the upside of the base");
    const int k = base.edges();
    std::vector<double> gamma_hat(k);
    for (int j = 0; j < k; ++j) {
        const Vec3 cross = base.edge_vector(j).cross(v);
        if (cross.norm() < 1e-12 * base.edge_length(j) * v.norm())
            throw Error(errc::axis_parallel_to_edge, "axis is parallel to a base edge");
        gamma_hat[j] = std::acos(clamp_unit(cross.normalized().dot(base.W)));
    }
    return gamma_hat;
}

CylinderCertificate is_trapped(const BaseFace& base, const Vec3& v) {
    const std::vector<double> gamma_hat = cylinder_angles(base, v);
    const int k = base.edges();

    CylinderCertificate cert;
    cert.v = v.normalized();
    cert.per_edge.resize(k);
    bool all_hold = true;
    bool one_strict = false;
    for (int j = 0; j < k; ++j) {
        EdgeTrappingData& e = cert.per_edge[j];
        e.cos_gamma_hat = std::cos(gamma_hat[j]);
        e.cos_gamma_ref = std::cos(base.gamma_ref[j]);
        e.slack = e.cos_gamma_ref - e.cos_gamma_hat;
        if (e.slack < -1e-12) all_hold = false;
        if (e.slack > 1e-10) one_strict = true;
    }
    cert.trapped = all_hold && one_strict;
    cert.cot_sum = cot_sum(base);
    return cert;
}

double cot_sum(const BaseFace& base) {
    double sum = 0.0;
    for (int j = 0; j < base.edges(); ++j) {
        const double g = base.gamma_ref[j];
        const double s = std::sin(g);
        if (s < 1e-12)
            throw Error(errc::zero_angle, "cot is undefined at gamma 0 or pi");
        sum += std::cos(g) / s * base.edge_length(j);
    }
    return sum;
}

std::pair<double, double> tetra_cot_identity(const Vec3& apex, const BaseFace& base) {
    if (base.edges() != 3)
        throw Error(errc::degenerate_triangle, "base must be a triangle");
    const Vec3& p0 = base.vertices[0];
    const double area =
        0.5 * (base.vertices[1] - p0).cross(base.vertices[2] - p0).norm();
    if (area < 1e-14)
        throw Error(errc::degenerate_triangle, "base triangle is degenerate");

    const double height = (apex - p0).dot(base.W);
    if (std::abs(height) < 1e-12)
        throw Error(errc::apex_in_plane, "apex lies in the base plane");
    // Work with the apex on the +W side.
    const Vec3 w_up = height > 0.0 ? base.W : Vec3(-base.W);
    const double h = std::abs(height);

    double lhs = 0.0;
    for (int j = 0; j < 3; ++j) {
        const Vec3 edge = base.edge_vector(j);
        const double l = edge.norm();
        // Face-base dihedral angle along edge j from the outward normals;
        // an obtuse angle makes the cot negative exactly when the foot q
        // falls on the far side of the edge line.
        const Vec3& opposite = base.vertices[(j + 2) % 3];
        Vec3 side_normal = edge.cross(apex - base.vertices[j]).normalized();
        if (side_normal.dot(opposite - base.vertices[j]) > 0.0) side_normal = -side_normal;
        const double gamma = std::acos(clamp_unit(-side_normal.dot(-w_up)));
        const double s = std::sin(gamma);
        if (s < 1e-12)
            throw Error(errc::degenerate_triangle, "flat dihedral angle along a base edge");
        lhs += std::cos(gamma) / s * l;
    }
    const double rhs = 2.0 * area / h;
    return {lhs, rhs};
}

TrappingSearchResult find_trapping_direction(const BaseFace& base, int grid) {
    const Vec3 e1 = orthogonal_unit(base.W);
    const Vec3 e2 = base.W.cross(e1).normalized();
    const int k = base.edges();

    // Polar grid on the open upper hemisphere: grid rings, 4*grid azimuths.
    struct State {
        double best_slack = -std::numeric_limits<double>::infinity();
        std::size_t witness = std::numeric_limits<std::size_t>::max();
    };
    const std::size_t n_phi = static_cast<std::size_t>(4 * grid);
    const std::size_t total = static_cast<std::size_t>(grid) * n_phi;

    auto candidate = [&](std::size_t flat) {
        const std::size_t ring = flat / n_phi;
        const std::size_t az = flat % n_phi;
        const double polar = (0.5 * kPi) * (static_cast<double>(ring) + 0.5) / grid;
        const double phi = 2.0 * kPi * static_cast<double>(az) / static_cast<double>(n_phi);
        return Vec3(std::cos(polar) * base.W +
                    std::sin(polar) * (std::cos(phi) * e1 + std::sin(phi) * e2));
    };

    State state = parallel_reduce<State>(
        total, State{},
        [&](std::size_t flat) {
            const Vec3 v = candidate(flat);
            State s;
            double min_slack = std::numeric_limits<double>::infinity();
            bool one_strict = false;
            for (int j = 0; j < k; ++j) {
                const Vec3 cross = base.edge_vector(j).cross(v);
                const double norm = cross.norm();
                if (norm < 1e-12) return s; // parallel to an edge, skip
                const double slack =
                    std::cos(base.gamma_ref[j]) - cross.dot(base.W) / norm;
                min_slack = std::min(min_slack, slack);
                if (slack > 1e-10) one_strict = true;
            }
            s.best_slack = min_slack;
            if (min_slack >= -1e-12 && one_strict) s.witness = flat;
            return s;
        },
        [](const State& a, const State& b) {
            State s;
            s.best_slack = std::max(a.best_slack, b.best_slack);
            s.witness = std::min(a.witness, b.witness);
            return s;
        });

    TrappingSearchResult result;
    result.best_slack = state.best_slack;
    if (state.witness != std::numeric_limits<std::size_t>::max())
        result.witness = candidate(state.witness);
    return result;
}

} // namespace rlab
