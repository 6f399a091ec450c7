#include "rlab/grid_search.hpp"

#include <limits>

#include "rlab/parallel.hpp"

namespace rlab {

namespace {

// Fan triangulation of the dual cross-section (vertices are the cone
// normals), with one flat barycentric grid per triangle projected back to
// the sphere.
struct DualGrid {
    std::vector<std::array<Vec3, 3>> triangles;
    int resolution;
    std::size_t per_triangle;
    double spacing; // upper bound on the angular spacing

    explicit DualGrid(const PolyhedralCone& cone, int res) : resolution(res) {
        const int k = cone.faces();
        if (k < 3 || res < 1)
            throw Error(errc::empty_interior, "dual cross-section grid needs k >= 3, res >= 1");
        for (int j = 1; j + 1 < k; ++j)
            triangles.push_back({cone.normals[0], cone.normals[j], cone.normals[j + 1]});
        per_triangle =
            static_cast<std::size_t>(res + 1) * static_cast<std::size_t>(res + 2) / 2;
        spacing = 0.0;
        for (const auto& tri : triangles)
            for (int e = 0; e < 3; ++e)
                spacing = std::max(spacing, arc_angle(tri[e], tri[(e + 1) % 3]));
        spacing /= res;
    }

    std::size_t size() const { return triangles.size() * per_triangle; }

    Vec3 point(std::size_t flat) const {
        const std::size_t t = flat / per_triangle;
        std::size_t r = flat % per_triangle;
        // Row i has resolution+1-i entries.
        std::size_t i = 0;
        while (r > static_cast<std::size_t>(resolution) - i) {
            r -= static_cast<std::size_t>(resolution) - i + 1;
            ++i;
        }
        const std::size_t j = r;
        const double bi = static_cast<double>(i) / resolution;
        const double bj = static_cast<double>(j) / resolution;
        const double bl = 1.0 - bi - bj;
        const auto& tri = triangles[t];
        return (bi * tri[0] + bj * tri[1] + bl * tri[2]).normalized();
    }
};

bool strictly_interior(const PolyhedralCone& cone, const Vec3& xi) {
    for (const Vec3& u : cone.edge_generators)
        if (u.dot(xi) >= -1e-12) return false;
    return true;
}

// Angle-form energy without building a Pyramid; cos_gamma_ref precomputed.
double fast_energy(const PolyhedralCone& cone, const std::vector<double>& cos_ref,
                   const Vec3& xi) {
    const int k = cone.faces();
    double e = 0.0;
    Vec3 prev = -cone.edge_generators[k - 1] / cone.edge_generators[k - 1].dot(xi);
    for (int j = 0; j < k; ++j) {
        const Vec3 cur = -cone.edge_generators[j] / cone.edge_generators[j].dot(xi);
        const double area = 0.5 * prev.cross(cur).norm();
        e += area * (cone.normals[j].dot(xi) - cos_ref[j]);
        prev = cur;
    }
    return e;
}

struct Best {
    double value = std::numeric_limits<double>::infinity();
    Vec3 xi = Vec3::Zero();
};

bool better(const Best& a, const Best& b) {
    if (a.value != b.value) return a.value < b.value;
    if (a.xi.x() != b.xi.x()) return a.xi.x() < b.xi.x();
    if (a.xi.y() != b.xi.y()) return a.xi.y() < b.xi.y();
    return a.xi.z() < b.xi.z();
}

} // namespace

GridOracleResult grid_oracle(const PolyhedralCone& cone,
                             const std::vector<double>& gamma_ref, int resolution) {
    const int k = cone.faces();
    if (static_cast<int>(gamma_ref.size()) != k)
        throw Error(errc::length_mismatch, "gamma_ref must have one entry per face");
    std::vector<double> cos_ref(k);
    for (int j = 0; j < k; ++j) cos_ref[j] = std::cos(gamma_ref[j]);

    const DualGrid grid(cone, resolution);
    Best best = parallel_reduce<Best>(
        grid.size(), Best{},
        [&](std::size_t flat) {
            const Vec3 xi = grid.point(flat);
            if (!strictly_interior(cone, xi)) return Best{};
            return Best{fast_energy(cone, cos_ref, xi), xi};
        },
        [](const Best& a, const Best& b) { return better(a, b) ? a : b; });

    if (!std::isfinite(best.value))
        throw Error(errc::empty_interior, "no interior grid point in the dual cross-section");

    // Local refinement around the incumbent, 10x finer per round.
    double span = grid.spacing;
    for (int round = 0; round < 3; ++round) {
        const Vec3 f1 = orthogonal_unit(best.xi);
        const Vec3 f2 = best.xi.cross(f1).normalized();
        Best local = best;
        for (int a = -10; a <= 10; ++a) {
            for (int b = -10; b <= 10; ++b) {
                const Vec3 cand =
                    (best.xi + (span * a / 10.0) * f1 + (span * b / 10.0) * f2).normalized();
                if (!strictly_interior(cone, cand)) continue;
                const Best trial{fast_energy(cone, cos_ref, cand), cand};
                if (better(trial, local)) local = trial;
            }
        }
        best = local;
        span /= 10.0;
    }
    return GridOracleResult{best.xi, best.value};
}

DominatingSearchResult dominating_xi_search(const PolyhedralCone& cone,
                                            const PolyhedralCone& ref_cone,
                                            const Vec3& xi_bar, int resolution) {
    const int k = cone.faces();
    if (ref_cone.faces() != k)
        throw Error(errc::length_mismatch, "cone and reference must have equal face counts");
    if (!strictly_interior(ref_cone, xi_bar))
        throw Error(errc::xi_outside_dual_interior,
                    "xi_bar is not strictly interior to the reference dual");

    std::vector<double> target(k);
    for (int j = 0; j < k; ++j) target[j] = arc_angle(xi_bar, ref_cone.normals[j]);

    const DualGrid grid(cone, resolution);
    const double slack = grid.spacing;

    struct State {
        double best_deficit = -std::numeric_limits<double>::infinity();
        std::size_t witness = std::numeric_limits<std::size_t>::max();
    };
    State state = parallel_reduce<State>(
        grid.size(), State{},
        [&](std::size_t flat) {
            const Vec3 xi = grid.point(flat);
            State s;
            if (!strictly_interior(cone, xi)) return s;
            double deficit = std::numeric_limits<double>::infinity();
            for (int j = 0; j < k; ++j)
                deficit = std::min(deficit, arc_angle(xi, cone.normals[j]) - target[j]);
            s.best_deficit = deficit;
            if (deficit >= -slack) s.witness = flat;
            return s;
        },
        [](const State& a, const State& b) {
            State s;
            s.best_deficit = std::max(a.best_deficit, b.best_deficit);
            s.witness = std::min(a.witness, b.witness);
            return s;
        });

    DominatingSearchResult result;
    result.slack = slack;
    result.worst_deficit = state.best_deficit;
    if (state.witness != std::numeric_limits<std::size_t>::max())
        result.witness = grid.point(state.witness);
    return result;
}

} // namespace rlab
