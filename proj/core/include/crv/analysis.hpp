#pragma once

#include <iosfwd>
#include <vector>

#include "crv/quad.hpp"

namespace crv {

struct ExclusionDisk {
  Complex center;
  double radius;
};

/// Lattice sampling of a region with explicit singularity guards. The tool
/// never infers pole locations; callers exclude them.
struct GridSampling {
  Region2D region;
  int resolution = 41;
  std::vector<ExclusionDisk> exclusions;
};

/// Sample points of the grid, row-major, exclusions removed. Throws when
/// nothing remains.
std::vector<Complex> sample_points(const GridSampling& g);

struct ResidualField {
  std::vector<Complex> points;
  std::vector<double> residuals;
  double max_abs = 0;
  double mean_abs = 0;
};

ResidualField make_residual_field(std::vector<Complex> points, std::vector<double> residuals);

/// CSV export: header x,y,r (single field) or x,y,r1,r2 (pair), doubles with
/// 17 significant digits.
void write_csv(std::ostream& os, const ResidualField& f);
void write_csv(std::ostream& os, const ResidualField& r1, const ResidualField& r2);

/// Real scalar field of two variables with partial derivatives, symbolic
/// when the syntax allows, central finite differences otherwise (step
/// 1e-6 * (1 + |point|)).
class ScalarField2 {
 public:
  ScalarField2(Expr expr, VarId v1, VarId v2);

  double value(double a, double b) const;
  double d1(double a, double b) const;
  double d2(double a, double b) const;
  bool symbolic() const { return symbolic_; }
  const Expr& expr() const { return expr_; }

 private:
  Expr expr_;
  VarId v1_, v2_;
  bool symbolic_;
  Expr dx_, dy_;  // valid when symbolic_
  EvalEnv env(double a, double b) const;
};

struct CrResiduals {
  ResidualField r1;  // u_x - v_y
  ResidualField r2;  // u_y + v_x
};

/// Cauchy-Riemann residuals of a z-mode expression over the grid; the
/// components u = re f, v = im f are split off symbolically.
CrResiduals cr_residual(const Expr& f, const GridSampling& g);

/// Same for an explicit component pair. The pair may live in planar (x, y)
/// or meridional (x, z) variables; the two coordinates are deduced from the
/// mode.
CrResiduals cr_residual(const Expr& u, const Expr& v, const GridSampling& g);

/// Clairaut residual P_y - Q_x over the grid.
ResidualField exactness_residual(const Expr& P, const Expr& Q, const GridSampling& g);

enum class ExactnessVerdict { ExactConsistent, NonExactDespiteClosedness, NotClosed };

const char* to_string(ExactnessVerdict v);

struct LoopExactness {
  double clairaut_max;    // max |P_y - Q_x| along the loop
  Complex loop_integral;  // contour integral of P dx + Q dy
  ExactnessVerdict verdict;
};

/// Probes Clairaut's sufficiency claim on a closed loop: a vanishing
/// closedness residual together with a nonzero loop integral is the
/// d'Alembert obstruction.
LoopExactness loop_exactness_test(const Expr& P, const Expr& Q, const Path& loop,
                                  const QuadSpec& q, double tol = 1e-8);

struct WindingResult {
  long value;
  Complex raw;      // (1/2 pi i) * contour integral of dz/(z - a)
  bool distance_ok; // raw within 1e-6 of the claimed integer
};

WindingResult winding_number(const Path& p, Complex a, const QuadSpec& q);

struct ConformalityResult {
  double angle_in;
  double angle_out;
  double residual;  // |angle_out - angle_in| mod 2 pi
  bool orientation_preserved;
};

/// Compares the angle between two directions with the angle between their
/// images under the derivative map at a. Analytic syntax uses the symbolic
/// derivative; otherwise directional finite differences. A derivative below
/// 1e-9 in magnitude throws (conformality legitimately fails there).
ConformalityResult conformality_check(const Expr& f, Complex a, Complex dir1, Complex dir2);

/// Differentiates F in z and checks the Cauchy-Riemann residuals of the
/// derivative over the grid.
CrResiduals primitive_cr_check(const Expr& F, const GridSampling& g);

}  // namespace crv
