#pragma once

#include <array>
#include <iosfwd>
#include <utility>

#include "crv/analysis.hpp"
#include "crv/report.hpp"

namespace crv {

/// Planar velocity field in the meridional plane: q is the component along
/// x, p the component along z. Both are spatial-mode expressions of (x, z);
/// y is kept free for the rotated three-dimensional checks.
struct PlanarVelocity {
  Expr q, p;
};

/// Full three-dimensional velocity field (u, v, w) in spatial mode.
struct SpatialField {
  Expr u, v, w;
};

struct PotentialVelocity {
  PlanarVelocity velocity;      // components (M, N) with M - iN = psi
  ResidualField closed_mdx_ndz; // closedness residual of M dx + N dz
  ResidualField closed_ndx_mdz; // closedness residual of N dx - M dz
};

/// Velocity pair of an analytic potential: M = re psi, N = -im psi as
/// functions of (x, z), together with the two exactness residuals. Only the
/// analytic half of the general decomposition is exposed; the conjugate
/// half is its reflection, which is what real velocities require.
PotentialVelocity potential_velocity(const Expr& psi, const GridSampling& g);

/// Residual q_x + p_z over the grid (plane flow incompressibility).
ResidualField planar_incompressibility(const PlanarVelocity& v, const GridSampling& g);

struct AxisymDivergence {
  ResidualField residual;       // q_x + p_z + p/z off the axis band
  double reduction_max_error;   // symbolic 3D divergence vs the meridional reduction
};

/// Divergence residual of a meridional field around the x axis. Samples with
/// z below the guard band are rejected. Also rebuilds the rotated
/// three-dimensional field and checks its symbolic divergence against
/// q_x + p_z * z/sqrt(y^2+z^2) + p/sqrt(y^2+z^2) at off-plane points.
AxisymDivergence axisym_divergence(const PlanarVelocity& v, const GridSampling& g,
                                   double axis_band = 0.05);

/// Convective acceleration a^2 (q q_x + p q_z, q p_x + p p_z) as symbolic
/// expressions.
std::pair<Expr, Expr> material_acceleration(const PlanarVelocity& v, double a_scale);

/// Volume-rate check of the flow map: integrates the corners of a small
/// cube (edge 1e-3) with classic fourth-order Runge-Kutta and compares
/// (J(dt) - 1)/dt, J the determinant of the finite-difference deformation
/// gradient, against the symbolic divergence at each point.
VerificationReport flow_jacobian_check(const SpatialField& X,
                                       const std::vector<std::array<double, 3>>& points,
                                       double dt = 1e-3, int steps = 1,
                                       double tol = 1e-4);

/// Streamline pressure identity: the integral of -v dv/ds from 0 to s_max
/// against (v(0)^2 - v(s_max)^2)/2. v must stay positive on the interval.
VerificationReport bernoulli_check(const Expr& v_of_s, double s_max, const QuadSpec& q,
                                   double tol = 1e-10);

/// CSV export: x, z, q, p, residual rows with 17 significant digits.
void write_velocity_csv(std::ostream& os, const PlanarVelocity& v,
                        const ResidualField& residual);

}  // namespace crv
