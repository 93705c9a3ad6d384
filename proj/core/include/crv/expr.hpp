#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

/*
Expression grammar (whitespace insignificant, identifiers case-sensitive):

  expr    ::= term (("+" | "-") term)*
  term    ::= unary (("*" | "/") unary)*
  unary   ::= "-" unary | power
  power   ::= primary ("^" unary)?          right-associative
  primary ::= number | "i" | "pi" | "e" | var
            | func "(" expr ")" | "(" expr ")"
  func    ::= exp | log | sin | cos | sqrt | conj | re | im | abs
  number  ::= decimal with optional fraction and exponent

Precedence: ^  >  unary -  >  * /  >  + -, so "-2^2" is -(2^2) = -4 and
"2^3^2" is 2^(3^2) = 512.

The set of legal variables is fixed by the parse mode: z-mode binds the
single complex variable z; planar mode binds the real pair (x, y); spatial
mode binds the real triple (x, y, z); single-parameter modes bind one real
variable (t, s or y) for curve parameterizations and boundary graphs.
*/

namespace crv {

using Complex = std::complex<double>;

enum class ErrKind {
  Syntax,
  UnknownIdentifier,
  IllegalVariable,
  UnboundVariable,
  DivisionByZero,
  DomainError,
  NotDifferentiable,
  InvalidArgument,
  Evaluation,
  Config,
};

struct Error : std::runtime_error {
  ErrKind kind;
  long offset;  // byte offset into source text for parse errors, else -1

  Error(ErrKind k, const std::string& msg, long off = -1)
      : std::runtime_error(msg), kind(k), offset(off) {}
};

enum class VarId : std::uint8_t { X = 0, Y = 1, Z = 2, T = 3, S = 4 };

const char* var_name(VarId v);

class Mode {
 public:
  enum class Kind : std::uint8_t { Z, Planar, Spatial, Param };

  static Mode z() { return Mode(Kind::Z, VarId::Z); }
  static Mode planar() { return Mode(Kind::Planar, VarId::X); }
  static Mode spatial() { return Mode(Kind::Spatial, VarId::X); }
  static Mode param(VarId v) { return Mode(Kind::Param, v); }

  Kind kind() const { return kind_; }
  VarId param_var() const { return param_; }
  bool allows(VarId v) const;
  std::string describe() const;

  bool operator==(const Mode&) const = default;

 private:
  Mode(Kind k, VarId p) : kind_(k), param_(p) {}
  Kind kind_;
  VarId param_;
};

/// Variable bindings for evaluation. Real variables are embedded in the
/// complex field; unbound lookups throw.
class EvalEnv {
 public:
  EvalEnv& bind(VarId v, Complex value);
  Complex get(VarId v) const;
  bool bound(VarId v) const { return bound_[static_cast<int>(v)]; }

  static EvalEnv for_z(Complex z);
  static EvalEnv planar(double x, double y);
  static EvalEnv spatial(double x, double y, double z);
  static EvalEnv param(VarId v, double value);

 private:
  std::array<Complex, 5> values_{};
  std::array<bool, 5> bound_{};
};

enum class NodeKind : std::uint8_t {
  Number,
  Constant,
  Variable,
  Negate,
  Add,
  Sub,
  Mul,
  Div,
  Pow,
  Func,
};

enum class ConstId : std::uint8_t { I, Pi, E };
enum class FuncId : std::uint8_t { Exp, Log, Sin, Cos, Sqrt, Conj, Re, Im, Abs };

struct ExprNode;
using NodePtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  NodeKind kind;
  double number = 0.0;  // Number payload
  ConstId cid = ConstId::I;
  VarId var = VarId::X;
  FuncId fid = FuncId::Exp;
  NodePtr a, b;
};

/// Immutable expression tree in one of the variable modes. Parsing,
/// evaluation and differentiation are pure; instances are safe to share
/// across threads.
class Expr {
 public:
  Expr() = default;

  const NodePtr& root() const { return root_; }
  const Mode& mode() const { return mode_; }
  bool empty() const { return root_ == nullptr; }

  // --- construction -------------------------------------------------------
  static Expr number(double v, Mode m);
  static Expr constant(ConstId c, Mode m);
  static Expr variable(VarId v, Mode m);
  static Expr negate(const Expr& a);
  static Expr add(const Expr& a, const Expr& b);
  static Expr sub(const Expr& a, const Expr& b);
  static Expr mul(const Expr& a, const Expr& b);
  static Expr div(const Expr& a, const Expr& b);
  static Expr pow(const Expr& a, const Expr& b);
  static Expr apply(FuncId f, const Expr& a);

  friend bool same_structure(const Expr& a, const Expr& b);

 private:
  Expr(NodePtr r, Mode m) : root_(std::move(r)), mode_(m) {}
  NodePtr root_;
  Mode mode_ = Mode::z();

  friend Expr parse(std::string_view, Mode);
  friend Expr symbolic_diff(const Expr&, VarId);
  friend Expr substitute(const Expr&, VarId, const Expr&, Mode);
};

/// Parses `text` under the grammar above. Throws Error{Syntax,
/// UnknownIdentifier, IllegalVariable} with the byte offset of the fault.
Expr parse(std::string_view text, Mode mode);

/// Evaluates with IEEE double-precision complex arithmetic. log and sqrt
/// take principal branches; on the negative real axis the limit from above
/// is returned. Division by zero and log(0) throw.
Complex eval(const Expr& e, const EvalEnv& env);

/// d e / d var by the standard rules. In z-mode the expression must be
/// analytic syntax; in real modes conj/re/im commute with the partials and
/// abs is rejected.
Expr symbolic_diff(const Expr& e, VarId var);

/// True iff the tree contains no conj/re/im/abs node. A necessary syntactic
/// condition for complex differentiability; true does not certify absence
/// of poles.
bool is_analytic_syntax(const Expr& e);

/// Unparses so that parse(to_string(e)) is structurally identical to e.
std::string to_string(const Expr& e);

bool same_structure(const Expr& a, const Expr& b);

/// Replaces every occurrence of `var` by `replacement` (an expression in
/// `new_mode`); the result lives in new_mode.
Expr substitute(const Expr& e, VarId var, const Expr& replacement, Mode new_mode);

bool contains_func(const Expr& e, FuncId f);
bool contains_var(const Expr& e, VarId v);

/// Splits a z-mode expression into real components u = re f, v = im f as
/// expressions in (var1, var2) with z replaced by var1 + i*var2.
struct ComponentPair {
  Expr u, v;
};
ComponentPair split_components(const Expr& f, VarId var1, VarId var2, Mode target);

}  // namespace crv
