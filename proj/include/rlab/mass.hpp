#pragma once

#include <functional>
#include <vector>

#include "rlab/halfspace_model.hpp"

namespace rlab {

/// Asymptotically hyperbolic perturbation g = b + e on the chart, stored
/// through the rescaled components epsilon_ij = (x1)^2 e_ij (bounded and
/// decaying like exp(-tau r)). Coordinate derivatives of e are taken by
/// 4th-order central differences with steps proportional to x1, so the
/// b-metric step stays uniform.
struct PerturbedMetric {
    std::function<Mat3(const Vec3&)> epsilon;
    double tau = 2.0;
    double fd_step = 1e-3; // relative step; coordinate step is fd_step * x1

    Mat3 e(const Vec3& x) const { return epsilon(x) / (x.x() * x.x()); }
    Mat3 g(const Vec3& x) const {
        return Mat3(Mat3::Identity() / (x.x() * x.x())) + e(x);
    }
};

PerturbedMetric zero_metric();
/// chi(r) exp(-tau r) S with a fixed bounded symmetric S; cutoff vanishes
/// for r < 1.
PerturbedMetric uniform_decay_metric(double tau);
/// The uniform field further localized around the vertical geodesic through
/// o by a Gaussian in the hyperbolic distance to the axis.
PerturbedMetric axis_decay_metric(double tau);
/// Compactly supported bump of the given amplitude around a chart point.
PerturbedMetric bump_metric(const Vec3& center, double radius, double amplitude);
/// Pointwise sum (for linearity checks).
PerturbedMetric sum_metric(const PerturbedMetric& a, const PerturbedMetric& b);

/// |e|_b + |grad e|_b + |grad grad e|_b compared against exp(-tau r) along
/// fixed rays from o.
struct DecayAudit {
    double max_ratio = 0.0;
    double min_ratio = 0.0;
    bool bounded = false;
};
DecayAudit audit_decay(const PerturbedMetric& metric, int n_radii = 10);

/// Convex polyhedron with every face on a Z-plane, built from half-spaces
/// {x : a.x <= s} with unit a (the outward Euclidean face normal).
struct HalfSpace {
    Vec3 a;
    double s = 0.0;
};

struct PolyFace {
    ZSurface plane;             // outward normal a, offset s
    std::vector<Vec3> vertices; // counter-clockwise w.r.t. a
};

struct PolyEdge {
    int face_a = -1;
    int face_b = -1;
    Vec3 p0, p1;
};

struct ConvexPolyhedron {
    std::vector<PolyFace> faces;
    std::vector<PolyEdge> edges;
    double scale = 0.0; // characteristic radius (log q for the prism family)
};

ConvexPolyhedron polyhedron_from_halfspaces(const std::vector<HalfSpace>& halves);

/// Expanding family: horospheres {x1 = exp(-r)}, {x1 = exp(r)} above and
/// below, four equidistant planes through the origin tilted so that the
/// inscribed geodesic sphere about o has radius exactly r.
ConvexPolyhedron expanding_prism(double r);

struct MassReport {
    double flux = 0.0;      // boundary integral of the mass integrand
    double face_term = 0.0; // - int 2 V (H - H_bar) dsigma_bar
    double edge_term = 0.0; // + 2 int V (alpha - alpha_bar) dlambda_bar
    double residual = 0.0;  // flux - face_term - edge_term
    double scale = 0.0;
};

/// Boundary flux of U(V) = V div e - V d(tr_b e) + tr_b e dV - e(grad V, .)
/// with V = 1/x1, by per-face quadrature (leaf Gauss-Legendre of the given
/// order on a tiling refined to the b-scale). When richardson_tol > 0 the
/// value is re-computed at the next refinement level; a larger disagreement
/// throws QuadratureUnderResolved.
double mass_flux(const PerturbedMetric& metric, const ConvexPolyhedron& poly,
                 int quad_order, double richardson_tol = 0.0);

/// Face and edge terms of the mass identity: H under g by finite differences
/// on each face against the closed-form H_bar = -2 a1; dihedral angles under
/// g along edges against the conformal alpha_bar. Throws EdgeAngleDegenerate
/// when sin(alpha_bar) < 0.05.
std::pair<double, double> geometric_side(const PerturbedMetric& metric,
                                         const ConvexPolyhedron& poly, int quad_order,
                                         double fd_step);

/// Runs flux and geometric side on the expanding family at the given scales.
std::vector<MassReport> miao_piubello_check(const PerturbedMetric& metric,
                                            const std::vector<double>& scales,
                                            int quad_order = 4, double fd_step = 1e-3);

} // namespace rlab
