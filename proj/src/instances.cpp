#include "rlab/instances.hpp"

#include <algorithm>

namespace rlab {

namespace {

double inequality_margin(const Vec3& beta) {
    double m = 2.0 * kPi - beta.sum();
    for (int i = 0; i < 3; ++i)
        m = std::min(m, beta[i] + beta[(i + 1) % 3] - beta[(i + 2) % 3]);
    return m; // positive iff satisfied; |m| is a lower bound on boundary distance
}

} // namespace

Vec3 random_beta_outside_band(Rng& rng, double margin) {
    for (;;) {
        const Vec3 beta(rng.uniform(0.0, kPi), rng.uniform(0.0, kPi),
                        rng.uniform(0.0, kPi));
        double closest = std::abs(2.0 * kPi - beta.sum());
        for (int i = 0; i < 3; ++i)
            closest = std::min(closest,
                               std::abs(beta[i] + beta[(i + 1) % 3] - beta[(i + 2) % 3]));
        if (closest >= margin) return beta;
    }
}

Vec3 random_valid_beta(Rng& rng, double margin) {
    for (;;) {
        const Vec3 beta(rng.uniform(0.05, kPi - 0.05), rng.uniform(0.05, kPi - 0.05),
                        rng.uniform(0.05, kPi - 0.05));
        if (inequality_margin(beta) >= margin) return beta;
    }
}

GramSpec random_pd_gram(Rng& rng, double margin) {
    const Vec3 beta = random_valid_beta(rng, std::max(margin, 0.02));
    return gram_from_b(Vec3(std::cos(beta[0]), std::cos(beta[1]), std::cos(beta[2])));
}

PolyhedralCone random_tetra_cone(Rng& rng) {
    return cone_from_gram(random_pd_gram(rng));
}

PolyhedralCone random_k_cone(Rng& rng, int k) {
    if (k == 3) return random_tetra_cone(rng);
    for (int attempt = 0; attempt < 500; ++attempt) {
        std::vector<double> phi(k);
        for (int j = 0; j < k; ++j)
            phi[j] = 2.0 * kPi * (j + 0.15 + 0.7 * rng.uniform()) / k;
        std::sort(phi.begin(), phi.end());
        std::vector<Vec3> normals(k);
        for (int j = 0; j < k; ++j) {
            const double beta = rng.uniform(0.3, 1.2);
            normals[j] = Vec3(std::sin(beta) * std::cos(phi[j]),
                              std::sin(beta) * std::sin(phi[j]), -std::cos(beta));
        }
        try {
            return cone_from_normals(std::move(normals));
        } catch (const Error&) {
            continue;
        }
    }
    throw Error(errc::degenerate_cone, "could not sample a non-degenerate k-faced cone");
}

Vec3 random_interior_xi(Rng& rng, const PolyhedralCone& cone) {
    Vec3 xi = Vec3::Zero();
    for (const Vec3& n : cone.normals) xi += rng.uniform(0.1, 1.1) * n;
    return xi.normalized();
}

MatrixProblem random_prop_c2_instance(Rng& rng) {
    for (;;) {
        const GramSpec ref = random_pd_gram(rng, 0.05);
        Vec3 delta;
        for (int i = 0; i < 3; ++i)
            delta[i] = rng.uniform() < 0.5 ? 0.0 : rng.uniform(0.0, 0.25);
        if (delta.maxCoeff() < 0.01) delta[static_cast<int>(rng.next() % 3)] = rng.uniform(0.01, 0.25);
        Vec3 b = ref.b - delta;
        bool in_range = true;
        for (int i = 0; i < 3; ++i)
            if (b[i] <= -1.0) in_range = false;
        if (!in_range) continue;
        const GramSpec cand = gram_from_b(b);
        if (!gram_positive_definite(cand, 1e-6)) continue;
        const Vec3 xi_dir(rng.uniform(0.05, 1.05), rng.uniform(0.05, 1.05),
                          rng.uniform(0.05, 1.05));
        return make_matrix_problem(cand.b, ref.b, xi_dir);
    }
}

IncrementalInstance random_incremental_instance(Rng& rng) {
    for (;;) {
        const PolyhedralCone ref = random_tetra_cone(rng);
        const Vec3 xi_bar = random_interior_xi(rng, ref);
        std::array<double, 3> gamma_bar;
        for (int j = 0; j < 3; ++j) gamma_bar[j] = arc_angle(xi_bar, ref.normals[j]);

        std::array<double, 3> decrease = {0.0, 0.0, 0.0};
        bool any = false;
        for (int j = 0; j < 3; ++j)
            if (rng.uniform() < 0.6) {
                decrease[j] = rng.uniform(0.01, 0.2);
                any = true;
            }
        if (!any) decrease[static_cast<int>(rng.next() % 3)] = rng.uniform(0.01, 0.2);

        std::array<double, 3> theta;
        bool ok = true;
        for (int j = 0; j < 3; ++j) {
            theta[j] = ref.dihedral_angles[j] - decrease[j];
            if (theta[j] < 0.05) ok = false;
        }
        if (!ok) continue;

        // New dual side arcs must still cut out a spherical triangle.
        const Vec3 beta(kPi - theta[1], kPi - theta[2], kPi - theta[0]);
        bool valid_beta = true;
        for (int i = 0; i < 3 && valid_beta; ++i)
            if (!(beta[i] > 0.02 && beta[i] < kPi - 0.02)) valid_beta = false;
        if (!valid_beta) continue;
        {
            double m = 2.0 * kPi - beta.sum();
            for (int i = 0; i < 3; ++i)
                m = std::min(m, beta[i] + beta[(i + 1) % 3] - beta[(i + 2) % 3]);
            if (m < 1e-3) continue;
        }

        // Strict angle condition at every decreasing edge, with slack.
        bool condition = true;
        for (int j = 0; j < 3; ++j)
            if (decrease[j] > 0.0 &&
                !(std::abs(kPi - (gamma_bar[j] + gamma_bar[(j + 1) % 3])) <
                  theta[j] - 1e-3))
                condition = false;
        if (!condition) continue;

        IncrementalInstance inst;
        inst.ref_cone = ref;
        inst.cone = cone_with_dihedrals(theta);
        inst.xi_bar = xi_bar;
        inst.decrease = decrease;
        return inst;
    }
}

BaseFace random_base_polygon(Rng& rng, int k, double gamma_fill) {
    std::vector<double> psi(k);
    for (int j = 0; j < k; ++j) psi[j] = 2.0 * kPi * (j + 0.1 + 0.8 * rng.uniform()) / k;
    std::sort(psi.begin(), psi.end());
    const Mat3 rot = rng.rotation();
    const Vec3 offset(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    std::vector<Vec3> vertices(k);
    for (int j = 0; j < k; ++j) {
        const double radius = rng.uniform(0.5, 2.0);
        vertices[j] =
            rot * Vec3(radius * std::cos(psi[j]), radius * std::sin(psi[j]), 0.0) + offset;
    }
    const Vec3 w = rot * Vec3::UnitZ();
    return make_base_face(std::move(vertices), w, std::vector<double>(k, gamma_fill));
}

RandomTetrahedron random_tetrahedron(Rng& rng) {
    for (;;) {
        BaseFace triangle = random_base_polygon(rng, 3);
        Vec3 centroid = Vec3::Zero();
        for (const Vec3& p : triangle.vertices) centroid += p;
        centroid /= 3.0;
        const Vec3 apex = centroid + rng.uniform(0.3, 2.0) * triangle.W +
                          rng.uniform(-1.5, 1.5) * (triangle.vertices[0] - centroid);

        // Fill gamma_ref with the actual face-base dihedral angles.
        std::vector<double> gamma(3);
        bool ok = true;
        for (int j = 0; j < 3; ++j) {
            const Vec3 edge = triangle.edge_vector(j);
            const Vec3& opposite = triangle.vertices[(j + 2) % 3];
            Vec3 side_normal = edge.cross(apex - triangle.vertices[j]).normalized();
            if (side_normal.dot(opposite - triangle.vertices[j]) > 0.0)
                side_normal = -side_normal;
            gamma[j] = std::acos(clamp_unit(side_normal.dot(triangle.W)));
            if (gamma[j] < 0.02 || gamma[j] > kPi - 0.02) ok = false;
        }
        if (!ok) continue;

        RandomTetrahedron tet;
        tet.apex = apex;
        tet.base = make_base_face(triangle.vertices, triangle.W, gamma);
        return tet;
    }
}

} // namespace rlab
