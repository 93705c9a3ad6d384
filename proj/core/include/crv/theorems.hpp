#pragma once

#include "crv/analysis.hpp"
#include "crv/report.hpp"

namespace crv {

/// Equality of the two 1D reductions of a contour integral over a rectangle
/// boundary:
///
///   int_{x0}^{X} (f(x+iY) - f(x+iy0)) dx  =  i int_{y0}^{Y} (f(X+iy) - f(x0+iy)) dy
///
/// together with the two real component identities for S = re f, T = im f.
/// RHS - LHS equals the boundary integral of f, so an enclosed pole shows up
/// as a violation with a winding diagnostic.
VerificationReport rectangle_identity(const Expr& f, const RectRegion& rect,
                                      const QuadSpec& q, double tol = 1e-8);

/// Sweeps the linear-blend family between the two paths of H and compares
/// the contour integrals I_eps against I_0; for analytic syntax also
/// evaluates the derivative-in-eps identity, which must vanish since the
/// deviation is pinned at the endpoints.
VerificationReport homotopy_invariance(const Expr& f, const Homotopy& H,
                                       const std::vector<double>& epsilons,
                                       const QuadSpec& q, double tol = 1e-8);

/// Boundary work integral of P dx + Q dy against the plane integral of
/// Q_x - P_y with symbolic partials.
VerificationReport green_check(const Expr& P, const Expr& Q, const Region2D& r,
                               const QuadSpec& q, double tol = 1e-8);

/// Contour integral of f against its plane reduction
/// -A1 + i A2, A1 = plane integral of (v_x + u_y), A2 = of (u_x - v_y).
/// For analytic syntax A1 and A2 are additionally required to vanish.
VerificationReport cauchy_via_green(const Expr& f, const Region2D& r, const QuadSpec& q,
                                    double tol = 1e-8);

/// Certificate of the recursive quadrisection bound on |boundary integral|.
struct GoursatCertificate {
  RectRegion rect{};
  Complex total_estimate{};     // sum over leaf squares of their boundary integrals
  double certified_bound = 0;   // sum of leaf magnitudes (accepted and failed)
  int max_depth_reached = 0;
  long squares_examined = 0;
  double telescoping_defect = 0;
  bool certified = false;       // every leaf accepted within its area share of tol
  bool depth_exceeded = false;
  Complex worst_center{};       // center of the largest failed square integral
  double worst_magnitude = 0;
  double tol = 0;
  int max_depth = 0;
};

/// Recursively quadrisects the rectangle; a square is accepted when the
/// magnitude of its boundary integral is within tol * (area / total area),
/// which makes the certified bound additive and scale-free. Shared edges
/// reuse identical quadrature values with opposite signs, so the
/// parent-vs-children telescoping defect is roundoff only.
GoursatCertificate goursat_certify(const Expr& f, const RectRegion& rect, double tol,
                                   int max_depth, const QuadSpec& q);

/// goursat_certify wrapped as a report (violation on failed certification,
/// error on a pole hitting an edge).
VerificationReport goursat_check(const Expr& f, const RectRegion& rect, double tol,
                                 int max_depth, const QuadSpec& q);

/// Flux of (P, Q, R) through the boundary faces against the volume integral
/// of the symbolic divergence.
VerificationReport divergence_check(const Expr& P, const Expr& Q, const Expr& R,
                                    const Solid3D& s, const QuadSpec& q,
                                    double tol = 1e-8);

/// Volume of a solid four ways: directly, and as the surface integrals of
/// z cos(theta), plus the x and y variants for boxes. A blow-up of the graph
/// area element near the base boundary degrades the tolerance by 1e3 and is
/// flagged in the diagnostics.
VerificationReport gauss_volume(const Solid3D& s, const QuadSpec& q, double tol = 1e-6);

/// Symmetric second Green identity: volume integral of U lap V plus the
/// boundary integral of U dV/dw (w along the interior normal) equals the
/// same with U and V exchanged.
VerificationReport green_identity_check(const Expr& U, const Expr& V, const Solid3D& s,
                                        const QuadSpec& q, double tol = 1e-8);

}  // namespace crv
