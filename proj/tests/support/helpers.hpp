#pragma once

#include <complex>
#include <functional>
#include <random>
#include <vector>

#include "crv/expr.hpp"

namespace crv::testing {

// Independent left-endpoint Riemann sum over a lambda parameterization;
// deliberately bypasses the Expr/Path machinery so it can serve as an
// oracle for them.
inline Complex oracle_contour_sum(const std::function<Complex(double)>& gamma,
                                  const std::function<Complex(Complex)>& f, long n) {
  Complex acc = 0;
  Complex prev = gamma(0.0);
  for (long k = 0; k < n; ++k) {
    Complex next = gamma(double(k + 1) / double(n));
    acc += f(prev) * (next - prev);
    prev = next;
  }
  return acc;
}

// Same for the work integral of P dx + Q dy.
inline double oracle_work_sum(const std::function<Complex(double)>& gamma,
                              const std::function<double(double, double)>& P,
                              const std::function<double(double, double)>& Q, long n) {
  double acc = 0;
  Complex prev = gamma(0.0);
  for (long k = 0; k < n; ++k) {
    Complex next = gamma(double(k + 1) / double(n));
    acc += P(prev.real(), prev.imag()) * (next - prev).real() +
           Q(prev.real(), prev.imag()) * (next - prev).imag();
    prev = next;
  }
  return acc;
}

// Random expression trees for the print/parse round-trip property. Uses the
// public builders, so constant folding happens before printing, exactly as
// in any other construction path.
class ExprGen {
 public:
  ExprGen(Mode mode, std::uint64_t seed) : mode_(mode), rng_(seed) {}

  Expr tree(int depth) {
    if (depth <= 0) return leaf();
    switch (pick(9)) {
      case 0: return Expr::add(tree(depth - 1), tree(depth - 1));
      case 1: return Expr::sub(tree(depth - 1), tree(depth - 1));
      case 2: return Expr::mul(tree(depth - 1), tree(depth - 1));
      case 3: return Expr::div(tree(depth - 1), tree(depth - 1));
      case 4: return Expr::pow(tree(depth - 1), small_exponent());
      case 5: return Expr::negate(tree(depth - 1));
      case 6: return Expr::apply(any_func(), tree(depth - 1));
      default: return leaf();
    }
  }

  Expr leaf() {
    switch (pick(4)) {
      case 0: return Expr::number(literal(), mode_);
      case 1: return Expr::constant(ConstId::Pi, mode_);
      case 2: return Expr::constant(ConstId::I, mode_);
      default: return Expr::variable(any_var(), mode_);
    }
  }

  VarId any_var() {
    switch (mode_.kind()) {
      case Mode::Kind::Z: return VarId::Z;
      case Mode::Kind::Planar: return pick(2) == 0 ? VarId::X : VarId::Y;
      case Mode::Kind::Spatial: {
        int c = pick(3);
        return c == 0 ? VarId::X : c == 1 ? VarId::Y : VarId::Z;
      }
      case Mode::Kind::Param: return mode_.param_var();
    }
    return VarId::X;
  }

 private:
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  double literal() {
    static const double choices[] = {0.0, 1.0, 2.0, 3.0, 0.5, 1.25, 0.1, 7.0, 1e3, 2.5e-3};
    return choices[pick(10)];
  }

  Expr small_exponent() {
    static const double choices[] = {2.0, 3.0, 0.5, -1.0, -2.0, 1.5};
    return Expr::number(choices[pick(6)], mode_);
  }

  FuncId any_func() {
    static const FuncId all[] = {FuncId::Exp,  FuncId::Log, FuncId::Sin,
                                 FuncId::Cos,  FuncId::Sqrt, FuncId::Conj,
                                 FuncId::Re,   FuncId::Im,  FuncId::Abs};
    return all[pick(9)];
  }

  Mode mode_;
  std::mt19937_64 rng_;
};

// Smooth expressions for derivative and Schwarz-identity properties: sums
// and products of polynomials and bounded transcendentals, no poles in the
// sampling box.
class SmoothGen {
 public:
  SmoothGen(Mode mode, std::uint64_t seed) : mode_(mode), rng_(seed) {}

  Expr tree(int depth) {
    if (depth <= 0) return leaf();
    switch (pick(5)) {
      case 0: return Expr::add(tree(depth - 1), tree(depth - 1));
      case 1: return Expr::mul(tree(depth - 1), tree(depth - 1));
      case 2: return Expr::apply(pick(2) == 0 ? FuncId::Sin : FuncId::Cos, tree(depth - 1));
      case 3:
        return Expr::pow(tree(depth - 1), Expr::number(pick(2) + 2.0, mode_));
      default: return leaf();
    }
  }

  Expr leaf() {
    switch (pick(3)) {
      case 0: return Expr::number(pick(3) + 1.0, mode_);
      default: {
        ExprGen helper(mode_, rng_());
        return Expr::variable(helper.any_var(), mode_);
      }
    }
  }

 private:
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
  Mode mode_;
  std::mt19937_64 rng_;
};

}  // namespace crv::testing
