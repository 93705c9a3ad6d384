#pragma once

#include <functional>
#include <span>
#include <vector>

#include "crv/geometry.hpp"

namespace crv {

/// Quadrature resolution knobs. nodes is the Gauss-Legendre order per panel,
/// panels the composite subdivision count for 1D integrals, grid the tensor
/// resolution per axis for area and volume integrals.
struct QuadSpec {
  int nodes = 16;
  int panels = 8;
  int grid = 64;
};

void validate(const QuadSpec& q);

struct GaussRule {
  std::vector<double> nodes;    // on (-1, 1)
  std::vector<double> weights;  // summing to 2
};

/// Nodes and weights of the n-point Gauss-Legendre rule, cached per order.
const GaussRule& gauss_legendre(int n);

/// Fixed-order pairwise reduction; bit-reproducible for a given input order.
double pairwise_sum(std::span<const double> values);
Complex pairwise_sum(std::span<const Complex> values);

/// Left-endpoint Riemann sum S = sum f(gamma(t_k)) (gamma(t_{k+1}) - gamma(t_k))
/// over the uniform partition t_k = k/n of the path parameter. First-order
/// accurate; kept as the slow independent oracle.
Complex riemann_sum_integral(const Expr& f, const Path& p, long n);

/// Composite Gauss-Legendre approximation of the contour integral
/// of f(gamma(t)) gamma'(t), per segment.
Complex contour_integral(const Expr& f, const Path& p, const QuadSpec& q);

/// Work integral of the planar form P dx + Q dy along the path.
Complex line_integral_pq(const Expr& P, const Expr& Q, const Path& p, const QuadSpec& q);

/// Signed area enclosed by a closed path, (1/2)* integral of (x dy - y dx).
double path_signed_area(const Path& p, const QuadSpec& q);

/// Plane integral of a planar-mode expression: tensor rule on rectangles,
/// polar-mapped tensor rule on disks, fan triangulation on polygons,
/// iterated rule on x-convex regions.
Complex area_integral(const Expr& g, const Region2D& r, const QuadSpec& q);

/// Same engine for a pointwise-defined integrand (finite-difference fields).
Complex area_integral_fn(const std::function<Complex(double, double)>& g,
                         const Region2D& r, const QuadSpec& q);

/// Riemann's reduction of the area integral of dX/dx over an x-convex
/// region to the boundary difference integral of X(x2(y),y) - X(x1(y),y).
double strip_area_integral(const Expr& X, const XConvexRegion& r, const QuadSpec& q);

/// Scalar surface integral of g dS over one oriented face.
double surface_integral(const Expr& g, const Face& face, const QuadSpec& q);

/// Flux of the field (P, Q, R) through one oriented face.
double flux_integral(const Expr& P, const Expr& Q, const Expr& R, const Face& face,
                     const QuadSpec& q);

/// Volume integral of a spatial-mode expression over a solid.
double volume_integral(const Expr& g, const Solid3D& s, const QuadSpec& q);

namespace detail {
/// 1D composite Gauss-Legendre points for [a, b]: panels x nodes pairs of
/// (abscissa, weight), in fixed left-to-right order.
struct Panels1D {
  std::vector<double> points;
  std::vector<double> weights;
};
Panels1D composite_rule(double a, double b, int panels, int nodes);

/// Per-axis composite resolution used for tensor rules: splits `grid` points
/// per axis into panels of `nodes` points.
Panels1D axis_rule(double a, double b, const QuadSpec& q);

double finite_or_throw(double v, const char* what);
}  // namespace detail

}  // namespace crv
