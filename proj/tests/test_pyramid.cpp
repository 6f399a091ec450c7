#include <doctest.h>

#include "rlab/instances.hpp"
#include "rlab/rhombus.hpp"
#include "rlab/schlafli.hpp"

using namespace rlab;

namespace {

PolyhedralCone orthant_cone() {
    return cone_from_normals({-Vec3::UnitX(), -Vec3::UnitY(), -Vec3::UnitZ()});
}

Pyramid orthant_pyramid() {
    return build_pyramid(orthant_cone(), -Vec3::Ones().normalized());
}

} // namespace

TEST_SUITE_BEGIN("pyramid");

TEST_CASE("orthant pyramid with symmetric base plane") {
    const Pyramid p = orthant_pyramid();
    const double sqrt3 = std::sqrt(3.0);
    for (int j = 0; j < 3; ++j) {
        CHECK((p.base_vertices[j] - sqrt3 * Vec3::Unit((j + 2) % 3)).norm() < 1e-12);
        CHECK(p.side_face_areas[j] == doctest::Approx(1.5).epsilon(1e-12));
        CHECK(std::cos(p.gamma[j]) == doctest::Approx(1.0 / sqrt3).epsilon(1e-12));
        CHECK(p.base_vertices[j].dot(p.xi) == doctest::Approx(-1.0).epsilon(1e-12));
        CHECK(p.lateral_edge_lengths[j] == doctest::Approx(sqrt3).epsilon(1e-12));
    }
    CHECK(p.base_area == doctest::Approx(1.5 * sqrt3).epsilon(1e-12));
}

TEST_CASE("xi on or outside the dual boundary is rejected") {
    CHECK_THROWS_AS(build_pyramid(orthant_cone(), -Vec3::UnitX()), Error);
    try {
        build_pyramid(orthant_cone(), -Vec3::UnitX());
    } catch (const Error& e) {
        CHECK(e.code() == errc::xi_outside_dual_interior);
    }
    CHECK_THROWS_AS(build_pyramid(orthant_cone(), Vec3(0.5, 0.5, 0.5)), Error);
}

TEST_CASE("rhombus cone pyramid: equal gammas and the base identity") {
    const RhombusCone rc = family_cone(kPi / 4, kPi / 4);
    const Pyramid p = build_pyramid(rc.cone, Vec3(0, 0, -1));
    double projection = 0.0;
    for (int j = 0; j < 4; ++j) {
        CHECK(std::cos(p.gamma[j]) == doctest::Approx(std::cos(kPi / 4)).epsilon(1e-12));
        projection += std::cos(p.gamma[j]) * p.side_face_areas[j];
    }
    CHECK(p.base_area == doctest::Approx(projection).epsilon(1e-12));
}

TEST_CASE("base identity on random pyramids, k = 3..8") {
    for (std::uint64_t i = 0; i < 3000; ++i) {
        Rng rng = Rng::for_item(1001, i);
        const int k = 3 + static_cast<int>(rng.next() % 6);
        const PolyhedralCone cone = random_k_cone(rng, k);
        const Pyramid p = build_pyramid(cone, random_interior_xi(rng, cone));
        double projection = 0.0, scale = 1.0;
        for (int j = 0; j < k; ++j) {
            projection += std::cos(p.gamma[j]) * p.side_face_areas[j];
            scale += p.side_face_areas[j];
        }
        CHECK(std::abs(p.base_area - projection) <= 1e-9 * scale);
    }
}

TEST_CASE("energy: self-comparison, right-angle reference, sign") {
    const Pyramid p = orthant_pyramid();

    const EnergyReport self = energy(p, p.gamma);
    CHECK(self.value_direct == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(self.value_angle_form == doctest::Approx(0.0).epsilon(1e-12));

    const std::vector<double> right(3, kPi / 2);
    const EnergyReport flat = energy(p, right);
    CHECK(flat.value_direct == doctest::Approx(1.5 * std::sqrt(3.0)).epsilon(1e-12));
    CHECK(flat.value_angle_form == doctest::Approx(p.base_area).epsilon(1e-12));

    // Smaller reference angles have larger cosines, so E < 0.
    std::vector<double> shrunk = p.gamma;
    for (double& g : shrunk) g -= 0.1;
    CHECK(energy(p, shrunk).value_direct < 0.0);
    // And larger reference angles give E > 0.
    std::vector<double> grown = p.gamma;
    for (double& g : grown) g += 0.1;
    CHECK(energy(p, grown).value_direct > 0.0);

    CHECK_THROWS_AS(energy(p, std::vector<double>(4, 1.0)), Error);
}

TEST_CASE("energy routes agree on random pyramids") {
    for (std::uint64_t i = 0; i < 2000; ++i) {
        Rng rng = Rng::for_item(1102, i);
        const int k = 3 + static_cast<int>(rng.next() % 6);
        const PolyhedralCone cone = random_k_cone(rng, k);
        const Pyramid p = build_pyramid(cone, random_interior_xi(rng, cone));
        std::vector<double> gamma_ref(k);
        for (int j = 0; j < k; ++j) gamma_ref[j] = rng.uniform(0.2, kPi - 0.2);
        const EnergyReport e = energy(p, gamma_ref);
        double scale = 1.0;
        for (int j = 0; j < k; ++j) scale += p.side_face_areas[j];
        CHECK(std::abs(e.difference()) <= 1e-9 * scale);
    }
}

TEST_CASE("rotation equivariance of all pyramid scalars") {
    for (std::uint64_t i = 0; i < 300; ++i) {
        Rng rng = Rng::for_item(1203, i);
        const int k = 3 + static_cast<int>(rng.next() % 4);
        const PolyhedralCone cone = random_k_cone(rng, k);
        const Vec3 xi = random_interior_xi(rng, cone);
        const Pyramid p = build_pyramid(cone, xi);

        const Mat3 rot = rng.rotation();
        std::vector<Vec3> rotated;
        for (const Vec3& n : cone.normals) rotated.push_back((rot * n).normalized());
        const Pyramid q = build_pyramid(cone_from_normals(rotated), (rot * xi).normalized());

        CHECK(std::abs(p.base_area - q.base_area) < 1e-10);
        for (int j = 0; j < k; ++j) {
            CHECK(std::abs(p.side_face_areas[j] - q.side_face_areas[j]) < 1e-10);
            CHECK(std::abs(p.gamma[j] - q.gamma[j]) < 1e-12);
            CHECK(std::abs(p.lateral_edge_lengths[j] - q.lateral_edge_lengths[j]) < 1e-10);
            CHECK(std::abs(p.base_edge_lengths[j] - q.base_edge_lengths[j]) < 1e-10);
        }
    }
}

TEST_CASE("energy is monotone in each reference-angle slot") {
    Rng rng(1304);
    for (int i = 0; i < 200; ++i) {
        const int k = 3 + static_cast<int>(rng.next() % 4);
        const PolyhedralCone cone = random_k_cone(rng, k);
        const Pyramid p = build_pyramid(cone, random_interior_xi(rng, cone));
        std::vector<double> gamma_ref(k);
        for (int j = 0; j < k; ++j) gamma_ref[j] = rng.uniform(0.3, kPi - 0.3);
        const double base_value = energy(p, gamma_ref).value_direct;
        const int slot = static_cast<int>(rng.next() % k);
        std::vector<double> bumped = gamma_ref;
        bumped[slot] += 0.05;
        if (p.side_face_areas[slot] > 1e-12)
            CHECK(energy(p, bumped).value_direct > base_value);
    }
}

TEST_CASE("angle condition basics") {
    const PolyhedralCone cone = orthant_cone();
    const std::vector<bool> all_true = angle_condition(cone, {kPi / 2, kPi / 2, kPi / 2});
    for (bool b : all_true) CHECK(b);
    const std::vector<bool> all_false = angle_condition(cone, {0.1, 0.1, 0.1});
    for (bool b : all_false) CHECK_FALSE(b);
    CHECK_THROWS_AS(angle_condition(cone, {1.0, 1.0}), Error);
}

TEST_CASE("angle condition holds at a pyramid's own gammas (arc-form oracle)") {
    for (std::uint64_t i = 0; i < 1000; ++i) {
        Rng rng = Rng::for_item(1405, i);
        const PolyhedralCone cone = random_tetra_cone(rng);
        const Vec3 xi = random_interior_xi(rng, cone);
        const Pyramid p = build_pyramid(cone, xi);
        const std::vector<bool> ok = angle_condition(cone, p.gamma);
        for (int j = 0; j < 3; ++j) {
            CHECK(ok[j]);
            // Lemma arc form: arc(n_j, n_{j+1}) < arc(xi, n_j) + arc(xi, n_{j+1}).
            const double side = arc_angle(cone.normals[j], cone.normals[(j + 1) % 3]);
            const double sum = arc_angle(xi, cone.normals[j]) +
                               arc_angle(xi, cone.normals[(j + 1) % 3]);
            CHECK(side < sum);
            // and the perimeter bound closing the equivalence.
            CHECK(side + sum < 2.0 * kPi);
        }
    }
}

TEST_CASE("schlafli: constant family has zero derivatives") {
    const PolyhedralCone cone = orthant_cone();
    const Vec3 xi = -Vec3::Ones().normalized();
    PyramidFamily family = [&](double) { return std::make_pair(cone, xi); };
    const SchlafliReport r = schlafli_check(family, 0.0, 1e-5);
    CHECK(std::abs(r.energy_derivative_fd) < 1e-12);
    CHECK(std::abs(r.energy_derivative_schlafli) < 1e-12);
    CHECK(std::abs(r.schlafli_residual) < 1e-12);
}

TEST_CASE("schlafli: moving xi with the cone fixed gives E'(0) = 0") {
    const PolyhedralCone cone = orthant_cone();
    PyramidFamily family = [&](double t) {
        const Vec3 xi = (-Vec3::Ones() + t * Vec3(0.3, -0.1, 0.2)).normalized();
        return std::make_pair(cone, xi);
    };
    const SchlafliReport r = schlafli_check(family, 0.0, 1e-5);
    CHECK(std::abs(r.energy_derivative_schlafli) < 1e-12); // theta' = 0
    CHECK(std::abs(r.energy_derivative_fd) < 1e-6);
    CHECK(std::abs(r.schlafli_residual) < 1e-6);
}

TEST_CASE("schlafli: rotating one normal of the rhombus family") {
    // beta1 varies with t; xi fixed on the symmetry axis.
    PyramidFamily family = [](double t) {
        const RhombusCone rc = family_cone(0.8 + t, 0.6);
        return std::make_pair(rc.cone, Vec3(0, 0, -1));
    };
    const SchlafliReport r = schlafli_check(family, 0.0, 1e-5);
    CHECK(std::abs(r.agreement_residual()) <= 1e-5);
    CHECK(std::abs(r.schlafli_residual) <= 1e-5);
    CHECK(std::abs(r.energy_derivative_fd) > 1e-3); // genuinely moving
}

TEST_CASE("schlafli: stencil degeneracy is reported") {
    PyramidFamily family = [](double t) {
        const PolyhedralCone cone = orthant_cone();
        // Slides xi onto the dual boundary within the stencil.
        const Vec3 xi = (-Vec3(1e-6, 1, 1) + t * Vec3(1, 0, 0)).normalized();
        return std::make_pair(cone, xi);
    };
    CHECK_THROWS_AS(schlafli_check(family, 0.0, 1e-3), Error);
}

TEST_CASE("schlafli residuals on random smooth families") {
    for (std::uint64_t i = 0; i < 100; ++i) {
        Rng rng = Rng::for_item(1506, i);
        const GramSpec base = random_pd_gram(rng, 0.1);
        const Vec3 db(rng.uniform(-0.05, 0.05), rng.uniform(-0.05, 0.05),
                      rng.uniform(-0.05, 0.05));
        const Vec3 c0(rng.uniform(0.2, 1.0), rng.uniform(0.2, 1.0), rng.uniform(0.2, 1.0));
        const Vec3 dc(rng.uniform(-0.2, 0.2), rng.uniform(-0.2, 0.2),
                      rng.uniform(-0.2, 0.2));
        PyramidFamily family = [&](double t) {
            const PolyhedralCone cone = cone_from_gram(gram_from_b(base.b + t * db));
            Vec3 xi = Vec3::Zero();
            for (int j = 0; j < 3; ++j) xi += (c0[j] + t * dc[j]) * cone.normals[j];
            return std::make_pair(cone, Vec3(xi.normalized()));
        };
        const SchlafliReport r = schlafli_check(family, 0.0, 1e-5);
        CHECK(std::abs(r.agreement_residual()) <= 1e-5);
        CHECK(std::abs(r.schlafli_residual) <= 1e-5);
    }
}

TEST_SUITE_END();
