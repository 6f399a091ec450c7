#pragma once

#include "rlab/gram.hpp"
#include "rlab/minimizer.hpp"
#include "rlab/rng.hpp"
#include "rlab/trapping.hpp"

namespace rlab {

/// Seeded random geometric instances for the verification sweeps. Every
/// generator is a pure function of the Rng state, so per-index generators
/// give reproducible, thread-order-independent sweeps.

/// beta uniform in (0, pi)^3, rejecting samples within `margin` of any
/// spherical-triangle-inequality boundary. Satisfying and violating samples
/// are both kept.
Vec3 random_beta_outside_band(Rng& rng, double margin);

/// beta satisfying the inequalities with at least `margin` slack.
Vec3 random_valid_beta(Rng& rng, double margin);

GramSpec random_pd_gram(Rng& rng, double margin = 1e-3);

/// Random non-degenerate 3-faced cone in canonical position.
PolyhedralCone random_tetra_cone(Rng& rng);

/// Random non-degenerate k-faced cone (rejection sampling for k > 3).
PolyhedralCone random_k_cone(Rng& rng, int k);

/// Strictly interior direction of the polar cone (positive combination of
/// the face normals).
Vec3 random_interior_xi(Rng& rng, const PolyhedralCone& cone);

/// Prop C.2 instance: b <= b_bar entrywise with at least one strict gap,
/// both Gram matrices positive definite, random positive xi_bar.
MatrixProblem random_prop_c2_instance(Rng& rng);

struct IncrementalInstance {
    PolyhedralCone cone;
    PolyhedralCone ref_cone;
    Vec3 xi_bar;
    std::array<double, 3> decrease; // theta_bar_j - theta_j
};

/// Instance satisfying the strict angle condition at every decreasing edge.
IncrementalInstance random_incremental_instance(Rng& rng);

/// Star-shaped planar polygon with k vertices, counter-clockwise w.r.t. a
/// random frame normal; gamma_ref filled with the given constant.
BaseFace random_base_polygon(Rng& rng, int k, double gamma_fill = 0.5 * kPi);

struct RandomTetrahedron {
    Vec3 apex;
    BaseFace base; // gamma_ref = the tetrahedron's actual face-base angles
};

RandomTetrahedron random_tetrahedron(Rng& rng);

} // namespace rlab
