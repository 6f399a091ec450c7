#include "rlab/minimizer.hpp"

namespace rlab {

namespace {

Vec3 b_of_gram(const Mat3& G) {
    return Vec3(G(1, 2), G(0, 2), G(0, 1));
}

double quadratic(const Vec3& x, const Mat3& M, const Vec3& y) {
    return x.dot(M * y);
}

} // namespace

MatrixProblem make_matrix_problem(const Vec3& b, const Vec3& b_bar,
                                  const Vec3& xi_bar_direction) {
    MatrixProblem p;
    p.b = b;
    p.b_bar = b_bar;
    // Roundoff-level gaps on unchanged entries are snapped to exact equality.
    for (int i = 0; i < 3; ++i) {
        const double gap = b_bar[i] - b[i];
        if (gap < -1e-12)
            throw Error(errc::hypothesis_violated, "requires b_i <= b_bar_i for all i");
        if (gap < 0.0) p.b[i] = b_bar[i];
    }
    p.G = gram_from_b(p.b).G;
    p.G_bar = gram_from_b(b_bar).G;
    if (!gram_positive_definite(gram_from_b(p.b)) ||
        !gram_positive_definite(gram_from_b(b_bar)))
        throw Error(errc::not_positive_definite, "both Gram matrices must be positive definite");
    p.h = b_bar - p.b;
    for (int i = 0; i < 3; ++i)
        if (!(xi_bar_direction[i] > 0.0))
            throw Error(errc::out_of_range_angle, "xi_bar must have positive dual coordinates");
    p.xi_bar = xi_bar_direction / std::sqrt(quadratic(xi_bar_direction, p.G_bar, xi_bar_direction));
    return p;
}

MinimizerResult solve_matrix_case(const MatrixProblem& problem) {
    const Mat3& G = problem.G;
    const Mat3& Gb = problem.G_bar;
    const Vec3& xb = problem.xi_bar;

    MinimizerResult result;
    result.rigidity_case = problem.h.maxCoeff() == 0.0;
    result.omega = G.inverse() * (Gb * xb); // row form xi_bar G_bar G^{-1}

    Vec3 xi;
    if (result.omega.minCoeff() >= 0.0) {
        result.case_taken = MinimizerCase::first;
        xi = result.omega / std::sqrt(quadratic(result.omega, G, result.omega));
    } else {
        result.case_taken = MinimizerCase::second;
        int worst = 0;
        result.omega.minCoeff(&worst);

        // Swap the chosen index to the third slot.
        Eigen::PermutationMatrix<3> P;
        P.setIdentity();
        if (worst != 2) P.applyTranspositionOnTheRight(worst, 2);
        const Mat3 Gp = P.transpose() * G * P;
        const Mat3 Gbp = P.transpose() * Gb * P;
        const Vec3 xbp = P.transpose() * xb;

        const Eigen::Matrix2d G0 = Gp.topLeftCorner<2, 2>();
        const Eigen::Matrix<double, 3, 2> M = Gbp.leftCols<2>();
        const Eigen::Vector2d omega_bar = G0.inverse() * (M.transpose() * xbp);

        Vec3 xi_p(omega_bar[0], omega_bar[1], 0.0);
        xi_p /= std::sqrt(quadratic(xi_p, Gp, xi_p));
        xi = P * xi_p;

        SecondCaseDiagnostics diag;
        diag.zeroed_index = worst;
        diag.omega_bar = omega_bar;
        const Vec3 bp = b_of_gram(Gp);
        const Vec3 bbp = b_of_gram(Gbp);
        const Vec3 hp = bbp - bp;
        const double A1 = bp[1] * bp[2] - bp[0];
        const double A2 = bp[2] * bp[0] - bp[1];
        diag.claim_value = Gp.determinant() + A2 * hp[1] + A1 * hp[0];
        diag.claim_needed =
            (bbp[1] - bbp[0] * bp[2] < 0.0) || (bbp[0] - bbp[1] * bp[2] < 0.0);
        result.second_case = diag;
    }

    auto certificate_of = [&](const Vec3& v) { return quadratic(v, Gb, xb) - 1.0; };

    // A boundary (or near-boundary) solution is pushed toward the dual-cone
    // barycenter; the step is shrunk until the certificate stays positive and
    // all coordinates are strictly positive.
    if (!result.rigidity_case && xi.minCoeff() <= 1e-12) {
        const Vec3 dir = Vec3::Ones().normalized();
        double eps = 1e-7;
        bool ok = false;
        for (int attempt = 0; attempt < 20 && !ok; ++attempt, eps *= 0.5) {
            Vec3 cand = xi + eps * dir;
            cand /= std::sqrt(quadratic(cand, G, cand));
            if (cand.minCoeff() > 0.0 && certificate_of(cand) > 0.0) {
                xi = cand;
                ok = true;
            }
        }
        if (!ok)
            throw Error(errc::degenerate_cone, "could not move xi off the dual boundary");
    }

    result.xi_coords = xi;
    result.certificate = certificate_of(xi);

    const double det_g = G.determinant();
    const double coord_product = xi[0] * xi[1] * xi[2];
    result.energy_closed_form =
        coord_product > 0.0
            ? -result.certificate / (2.0 * std::sqrt(det_g) * coord_product)
            : 0.0;

    // Geometric route on the canonical embeddings.
    const PolyhedralCone cone = cone_from_gram(gram_from_b(problem.b));
    const PolyhedralCone ref = cone_from_gram(gram_from_b(problem.b_bar));
    Vec3 xi_vec = Vec3::Zero();
    Vec3 xb_vec = Vec3::Zero();
    for (int i = 0; i < 3; ++i) {
        xi_vec += xi[i] * cone.normals[i];
        xb_vec += xb[i] * ref.normals[i];
    }
    result.xi_vector = xi_vec.normalized();
    const Pyramid ref_pyramid = build_pyramid(ref, xb_vec.normalized());
    const Pyramid pyramid = build_pyramid(cone, result.xi_vector);
    result.energy = energy(pyramid, ref_pyramid.gamma).value_angle_form;
    return result;
}

namespace {

std::array<double, 3> arcs_to_normals(const PolyhedralCone& cone, const Vec3& xi) {
    return {arc_angle(xi, cone.normals[0]), arc_angle(xi, cone.normals[1]),
            arc_angle(xi, cone.normals[2])};
}

// Expresses xi in the dual coordinates of `from` and rebuilds it on the
// normals of `to`; the two cones must share their Gram matrix.
Vec3 transport(const Vec3& xi, const PolyhedralCone& from, const PolyhedralCone& to) {
    Mat3 N;
    for (int i = 0; i < 3; ++i) N.row(i) = from.normals[i];
    const Vec3 coords = N.transpose().fullPivLu().solve(xi);
    Vec3 out = Vec3::Zero();
    for (int i = 0; i < 3; ++i) out += coords[i] * to.normals[i];
    return out.normalized();
}

} // namespace

Vec3 solve_incremental(const PolyhedralCone& cone, const PolyhedralCone& ref_cone,
                       const Vec3& xi_bar) {
    if (cone.faces() != 3 || ref_cone.faces() != 3)
        throw Error(errc::degenerate_cone, "incremental construction handles 3-faced cones");
    for (int j = 0; j < 3; ++j)
        if (cone.dihedral_angles[j] > ref_cone.dihedral_angles[j] + 1e-12)
            throw Error(errc::hypothesis_violated,
                        "candidate cone must have less dihedral angle than the reference");
    for (const Vec3& u : ref_cone.edge_generators)
        if (u.dot(xi_bar) >= -1e-12)
            throw Error(errc::xi_outside_dual_interior,
                        "xi_bar is not strictly interior to the reference dual");

    std::array<double, 3> theta = {ref_cone.dihedral_angles[0], ref_cone.dihedral_angles[1],
                                   ref_cone.dihedral_angles[2]};
    PolyhedralCone current = cone_with_dihedrals(theta);
    Vec3 xi = transport(xi_bar, ref_cone, current);

    for (int edge = 0; edge < 3; ++edge) {
        const double target = cone.dihedral_angles[edge];
        if (target >= theta[edge] - 1e-15) continue; // unchanged side

        const std::array<double, 3> prev_arcs = arcs_to_normals(current, xi);
        const int k = edge, kn = (edge + 1) % 3, m = (edge + 2) % 3;
        if (!(kPi - target < prev_arcs[k] + prev_arcs[kn]))
            throw Error(errc::angle_condition_violated,
                        "strict angle condition fails at a decreasing edge");

        theta[edge] = target;
        const PolyhedralCone next = cone_with_dihedrals(theta);
        const double side =
            det3(next.normals[kn], next.normals[k], next.normals[m]);
        Vec3 placed = sphere_trilaterate(next.normals[k], prev_arcs[k],
                                         next.normals[m], prev_arcs[m], side);

        // Push off the two pinned arcs until all three dominate strictly.
        // The unit tangent gradients increasing arc(xi, n_k) and arc(xi, n_m);
        // their normalized sum increases both at equal first-order rate.
        const Vec3 g1 = Vec3(-tangent_part(next.normals[k], placed)).normalized();
        const Vec3 g2 = Vec3(-tangent_part(next.normals[m], placed)).normalized();
        const Vec3 away = g1 + g2;
        const Vec3 dir = away.norm() > 1e-12 ? away.normalized() : orthogonal_unit(placed);
        bool ok = false;
        double eps = 1e-4;
        for (int attempt = 0; attempt < 45 && !ok; ++attempt, eps *= 0.5) {
            const Vec3 cand = (placed + eps * dir).normalized();
            bool interior = true;
            for (const Vec3& u : next.edge_generators)
                if (u.dot(cand) >= -1e-13) interior = false;
            if (!interior) continue;
            const std::array<double, 3> arcs = arcs_to_normals(next, cand);
            if (arcs[0] > prev_arcs[0] + 1e-13 && arcs[1] > prev_arcs[1] + 1e-13 &&
                arcs[2] > prev_arcs[2] + 1e-13) {
                xi = cand;
                ok = true;
            }
        }
        if (!ok)
            throw Error(errc::angle_condition_violated,
                        "interior adjustment failed after a side change");
        current = next;
    }

    Vec3 out = transport(xi, current, cone);
    for (const Vec3& u : cone.edge_generators)
        if (u.dot(out) >= -1e-13)
            throw Error(errc::angle_condition_violated,
                        "constructed xi is not interior to the candidate dual");
    return out;
}

} // namespace rlab
