#include <doctest.h>

#include "rlab/instances.hpp"

using namespace rlab;

namespace {

BaseFace unit_square(double gamma) {
    return make_base_face({Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(1, 1, 0), Vec3(0, 1, 0)},
                          Vec3(0, 0, 1), std::vector<double>(4, gamma));
}

} // namespace

TEST_SUITE_BEGIN("trapping");

TEST_CASE("base face validation") {
    CHECK_THROWS_AS(make_base_face({Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(1, 1, 0.2)},
                                   Vec3(0, 0, 1), {1.0, 1.0, 1.0}),
                    Error); // not coplanar
    CHECK_THROWS_AS(make_base_face({Vec3(0, 0, 0), Vec3(0, 1, 0), Vec3(1, 1, 0)},
                                   Vec3(0, 0, 1), {1.0, 1.0, 1.0}),
                    Error); // clockwise
    CHECK_THROWS_AS(make_base_face({Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(1, 1, 0)},
                                   Vec3(0, 0, 1), {0.0, 1.0, 1.0}),
                    Error); // gamma out of range
}

TEST_CASE("right prism boundary case is not trapped") {
    const CylinderCertificate cert = is_trapped(unit_square(kPi / 2), Vec3(0, 0, 1));
    for (const EdgeTrappingData& e : cert.per_edge) {
        CHECK(std::abs(e.cos_gamma_hat) < 1e-14);
        CHECK(std::abs(e.slack) < 1e-14);
    }
    CHECK_FALSE(cert.trapped); // no strict edge
}

TEST_CASE("inward-tilted square prism is trapped") {
    const CylinderCertificate cert = is_trapped(unit_square(kPi / 2 - 0.1), Vec3(0, 0, 1));
    CHECK(cert.trapped);
    for (const EdgeTrappingData& e : cert.per_edge) CHECK(e.slack > 0.0);
    CHECK(cert.cot_sum > 0.0);
}

TEST_CASE("axis validation") {
    CHECK_THROWS_AS(is_trapped(unit_square(1.0), Vec3(0, 0, -1)), Error);
    CHECK_THROWS_AS(is_trapped(unit_square(1.0), Vec3(1, 0, 0)), Error);
    try {
        is_trapped(unit_square(1.0), (Vec3(1, 0, 1e-13)).normalized());
    } catch (const Error& e) {
        CHECK(e.code() == errc::axis_parallel_to_edge);
    }
}

TEST_CASE("cot sums") {
    CHECK(cot_sum(unit_square(kPi / 2)) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(cot_sum(unit_square(kPi / 4)) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("zero-sum identity for cylinder angles") {
    for (std::uint64_t i = 0; i < 1000; ++i) {
        Rng rng = Rng::for_item(4001, i);
        const int k = 3 + static_cast<int>(rng.next() % 5);
        const BaseFace base = random_base_polygon(rng, k);
        const Vec3 lateral = orthogonal_unit(base.W);
        const Vec3 v = (base.W + rng.uniform(-0.7, 0.7) * lateral +
                        rng.uniform(-0.7, 0.7) * base.W.cross(lateral))
                           .normalized();
        if (v.dot(base.W) < 0.1) continue;
        const std::vector<double> gamma_hat = cylinder_angles(base, v);
        double sum = 0.0;
        for (int j = 0; j < k; ++j)
            sum += std::cos(gamma_hat[j]) / std::sin(gamma_hat[j]) * base.edge_length(j);
        CHECK(std::abs(sum) <= 1e-9);
    }
}

TEST_CASE("trapped implies positive cot-sum") {
    for (std::uint64_t i = 0; i < 1000; ++i) {
        Rng rng = Rng::for_item(4102, i);
        const int k = 3 + static_cast<int>(rng.next() % 5);
        const BaseFace shape = random_base_polygon(rng, k);
        const Vec3 lateral = orthogonal_unit(shape.W);
        const Vec3 v = (shape.W + rng.uniform(-0.5, 0.5) * lateral +
                        rng.uniform(-0.5, 0.5) * shape.W.cross(lateral))
                           .normalized();
        if (v.dot(shape.W) < 0.1) continue;
        const std::vector<double> gamma_hat = cylinder_angles(shape, v);
        std::vector<double> gamma_ref(k);
        for (int j = 0; j < k; ++j)
            gamma_ref[j] = std::max(0.05, gamma_hat[j] - rng.uniform(0.01, 0.3));
        const BaseFace base = make_base_face(shape.vertices, shape.W, gamma_ref);
        const CylinderCertificate cert = is_trapped(base, v);
        CHECK(cert.trapped);
        CHECK(cert.cot_sum > 0.0);
    }
}

TEST_CASE("regular tetrahedron closed form") {
    // Unit edges: dihedral angle arccos(1/3), cot = 1/(2 sqrt 2), so
    // lhs = 3/(2 sqrt 2); the height is sqrt(2/3) and the base area sqrt(3)/4,
    // giving rhs = 2 (sqrt(3)/4) / sqrt(2/3) = 3/(2 sqrt 2) as well.
    const double h = std::sqrt(2.0 / 3.0);
    const BaseFace base = make_base_face(
        {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0.5, std::sqrt(3.0) / 2.0, 0)},
        Vec3(0, 0, 1), {1.2, 1.2, 1.2});
    const Vec3 apex(0.5, std::sqrt(3.0) / 6.0, h);
    const auto [lhs, rhs] = tetra_cot_identity(apex, base);
    const double expected = 3.0 / (2.0 * std::sqrt(2.0));
    CHECK(lhs == doctest::Approx(expected).epsilon(1e-12));
    CHECK(rhs == doctest::Approx(expected).epsilon(1e-12));

    // Cross-check the angle itself.
    const double gamma = std::acos(1.0 / 3.0);
    CHECK(std::cos(gamma) / std::sin(gamma) ==
          doctest::Approx(1.0 / (2.0 * std::sqrt(2.0))).epsilon(1e-12));
}

TEST_CASE("apex above a vertex keeps the identity") {
    const BaseFace base = make_base_face(
        {Vec3(0, 0, 0), Vec3(2, 0, 0), Vec3(0.3, 1.4, 0)}, Vec3(0, 0, 1),
        {1.0, 1.0, 1.0});
    const Vec3 apex(0, 0, 0.9); // directly above vertex 0
    const auto [lhs, rhs] = tetra_cot_identity(apex, base);
    CHECK(std::abs(lhs - rhs) <= 1e-9 * std::abs(rhs));
}

TEST_CASE("apex above the centroid of an equilateral base: three equal cots") {
    const BaseFace base = make_base_face(
        {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0.5, std::sqrt(3.0) / 2.0, 0)},
        Vec3(0, 0, 1), {1.0, 1.0, 1.0});
    const Vec3 centroid(0.5, std::sqrt(3.0) / 6.0, 0.0);
    const Vec3 apex = centroid + Vec3(0, 0, 0.77);
    const auto [lhs, rhs] = tetra_cot_identity(apex, base);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    // Equal angles: lhs = 3 cot(gamma) * side.
    const double inradius = std::sqrt(3.0) / 6.0;
    const double gamma = std::atan2(0.77, inradius);
    CHECK(lhs == doctest::Approx(3.0 * std::cos(gamma) / std::sin(gamma)).epsilon(1e-12));
}

TEST_CASE("identity and positivity on random tetrahedra") {
    for (std::uint64_t i = 0; i < 1000; ++i) {
        Rng rng = Rng::for_item(4203, i);
        const RandomTetrahedron tet = random_tetrahedron(rng);
        const auto [lhs, rhs] = tetra_cot_identity(tet.apex, tet.base);
        CHECK(std::abs(lhs - rhs) <= 1e-9 * std::abs(rhs));
        CHECK(lhs > 0.0);
    }
}

TEST_CASE("degenerate tetra inputs") {
    const BaseFace base = make_base_face(
        {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0.5, 1, 0)}, Vec3(0, 0, 1), {1, 1, 1});
    CHECK_THROWS_AS(tetra_cot_identity(Vec3(0.4, 0.4, 0.0), base), Error);
    const BaseFace square = unit_square(1.0);
    CHECK_THROWS_AS(tetra_cot_identity(Vec3(0.5, 0.5, 1.0), square), Error);
}

TEST_CASE("edge-length independence of the per-edge certificates") {
    // Same edge directions, different closed-polygon edge lengths: the
    // per-edge inequality depends only on the directions.
    Rng rng(4304);
    for (int trial = 0; trial < 200; ++trial) {
        const double a = rng.uniform(0.5, 2.0), b = rng.uniform(0.5, 2.0);
        auto parallelogram = [&](double sa, double sb) {
            const Vec3 e1(1, 0, 0), e2(0.4, 1.1, 0);
            std::vector<Vec3> v = {Vec3(0, 0, 0), sa * e1, sa * e1 + sb * e2, sb * e2};
            return make_base_face(v, Vec3(0, 0, 1),
                                  {rng.uniform(0.5, 2.0), rng.uniform(0.5, 2.0),
                                   rng.uniform(0.5, 2.0), rng.uniform(0.5, 2.0)});
        };
        const BaseFace p1 = parallelogram(a, b);
        const Vec3 v = (Vec3(0, 0, 1) + Vec3(rng.uniform(-0.5, 0.5),
                                             rng.uniform(-0.5, 0.5), 0))
                           .normalized();
        const BaseFace p2 = make_base_face(
            {Vec3(0, 0, 0), 3.0 * a * Vec3(1, 0, 0),
             3.0 * a * Vec3(1, 0, 0) + 0.25 * b * Vec3(0.4, 1.1, 0),
             0.25 * b * Vec3(0.4, 1.1, 0)},
            Vec3(0, 0, 1), p1.gamma_ref);
        const CylinderCertificate c1 = is_trapped(p1, v);
        const CylinderCertificate c2 = is_trapped(p2, v);
        CHECK(c1.trapped == c2.trapped);
        for (int j = 0; j < 4; ++j)
            CHECK(c1.per_edge[j].cos_gamma_hat ==
                  doctest::Approx(c2.per_edge[j].cos_gamma_hat).epsilon(1e-12));
    }
}

TEST_CASE("find_trapping_direction basics") {
    const TrappingSearchResult inward = find_trapping_direction(unit_square(kPi / 2 - 0.1), 32);
    CHECK(inward.witness.has_value());
    if (inward.witness) CHECK(inward.witness->dot(Vec3(0, 0, 1)) > 0.8);

    // Outward tilt on all edges: cot-sum < 0, so no axis can trap.
    const BaseFace outward = unit_square(kPi / 2 + 0.2);
    CHECK(cot_sum(outward) < 0.0);
    const TrappingSearchResult none = find_trapping_direction(outward, 32);
    CHECK_FALSE(none.witness.has_value());
    CHECK(none.best_slack < 0.0);
}

TEST_CASE("tetrahedron bases always admit a trapping direction") {
    for (std::uint64_t i = 0; i < 300; ++i) {
        Rng rng = Rng::for_item(4405, i);
        const RandomTetrahedron tet = random_tetrahedron(rng);
        const TrappingSearchResult r = find_trapping_direction(tet.base, 48);
        CHECK(r.witness.has_value());
    }
}

TEST_SUITE_END();
