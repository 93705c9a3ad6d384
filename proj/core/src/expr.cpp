#include "crv/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <numbers>
#include <sstream>
#include <vector>

namespace crv {

const char* var_name(VarId v) {
  switch (v) {
    case VarId::X: return "x";
    case VarId::Y: return "y";
    case VarId::Z: return "z";
    case VarId::T: return "t";
    case VarId::S: return "s";
  }
  return "?";
}

bool Mode::allows(VarId v) const {
  switch (kind_) {
    case Kind::Z: return v == VarId::Z;
    case Kind::Planar: return v == VarId::X || v == VarId::Y;
    case Kind::Spatial: return v == VarId::X || v == VarId::Y || v == VarId::Z;
    case Kind::Param: return v == param_;
  }
  return false;
}

std::string Mode::describe() const {
  switch (kind_) {
    case Kind::Z: return "z";
    case Kind::Planar: return "planar";
    case Kind::Spatial: return "spatial";
    case Kind::Param: return std::string("param-") + var_name(param_);
  }
  return "?";
}

EvalEnv& EvalEnv::bind(VarId v, Complex value) {
  values_[static_cast<int>(v)] = value;
  bound_[static_cast<int>(v)] = true;
  return *this;
}

Complex EvalEnv::get(VarId v) const {
  if (!bound_[static_cast<int>(v)])
    throw Error(ErrKind::UnboundVariable,
                std::string("unbound variable '") + var_name(v) + "'");
  return values_[static_cast<int>(v)];
}

EvalEnv EvalEnv::for_z(Complex z) { return EvalEnv().bind(VarId::Z, z); }
EvalEnv EvalEnv::planar(double x, double y) {
  return EvalEnv().bind(VarId::X, x).bind(VarId::Y, y);
}
EvalEnv EvalEnv::spatial(double x, double y, double z) {
  return EvalEnv().bind(VarId::X, x).bind(VarId::Y, y).bind(VarId::Z, z);
}
EvalEnv EvalEnv::param(VarId v, double value) { return EvalEnv().bind(v, value); }

// ---------------------------------------------------------------------------
// node constructors
// ---------------------------------------------------------------------------

namespace {

NodePtr make_node(ExprNode n) { return std::make_shared<const ExprNode>(std::move(n)); }

NodePtr n_number(double v) {
  ExprNode n;
  n.kind = NodeKind::Number;
  n.number = v;
  return make_node(std::move(n));
}

NodePtr n_const(ConstId c) {
  ExprNode n;
  n.kind = NodeKind::Constant;
  n.cid = c;
  return make_node(std::move(n));
}

NodePtr n_var(VarId v) {
  ExprNode n;
  n.kind = NodeKind::Variable;
  n.var = v;
  return make_node(std::move(n));
}

NodePtr n_binary(NodeKind k, NodePtr a, NodePtr b) {
  ExprNode n;
  n.kind = k;
  n.a = std::move(a);
  n.b = std::move(b);
  return make_node(std::move(n));
}

NodePtr n_negate_raw(NodePtr a) {
  // fold a literal so that "-2" and the tree Number(-2) are the same shape
  if (a->kind == NodeKind::Number) return n_number(-a->number);
  if (a->kind == NodeKind::Negate) return a->a;
  ExprNode n;
  n.kind = NodeKind::Negate;
  n.a = std::move(a);
  return make_node(std::move(n));
}

NodePtr n_func(FuncId f, NodePtr a) {
  ExprNode n;
  n.kind = NodeKind::Func;
  n.fid = f;
  n.a = std::move(a);
  return make_node(std::move(n));
}

bool is_number(const NodePtr& n, double v) {
  return n->kind == NodeKind::Number && n->number == v;
}

// Builders with local constant folding and identity pruning, used by the
// differentiation rules so derivative trees stay readable and evaluable.
NodePtr b_add(NodePtr a, NodePtr b) {
  if (is_number(a, 0.0)) return b;
  if (is_number(b, 0.0)) return a;
  if (a->kind == NodeKind::Number && b->kind == NodeKind::Number)
    return n_number(a->number + b->number);
  return n_binary(NodeKind::Add, std::move(a), std::move(b));
}

NodePtr b_sub(NodePtr a, NodePtr b) {
  if (is_number(b, 0.0)) return a;
  if (is_number(a, 0.0)) return n_negate_raw(std::move(b));
  if (a->kind == NodeKind::Number && b->kind == NodeKind::Number)
    return n_number(a->number - b->number);
  return n_binary(NodeKind::Sub, std::move(a), std::move(b));
}

NodePtr b_mul(NodePtr a, NodePtr b) {
  if (is_number(a, 0.0) || is_number(b, 0.0)) return n_number(0.0);
  if (is_number(a, 1.0)) return b;
  if (is_number(b, 1.0)) return a;
  if (a->kind == NodeKind::Number && b->kind == NodeKind::Number)
    return n_number(a->number * b->number);
  return n_binary(NodeKind::Mul, std::move(a), std::move(b));
}

NodePtr b_div(NodePtr a, NodePtr b) {
  if (is_number(a, 0.0)) return n_number(0.0);
  if (is_number(b, 1.0)) return a;
  return n_binary(NodeKind::Div, std::move(a), std::move(b));
}

NodePtr b_pow(NodePtr a, NodePtr b) {
  if (is_number(b, 1.0)) return a;
  if (is_number(b, 0.0)) return n_number(1.0);
  if (is_number(a, 1.0)) return n_number(1.0);
  return n_binary(NodeKind::Pow, std::move(a), std::move(b));
}

NodePtr b_neg(NodePtr a) { return n_negate_raw(std::move(a)); }

void check_mode(const NodePtr& n, Mode m) {
  if (!n) return;
  if (n->kind == NodeKind::Variable && !m.allows(n->var))
    throw Error(ErrKind::IllegalVariable,
                std::string("variable '") + var_name(n->var) +
                    "' illegal for mode " + m.describe());
  check_mode(n->a, m);
  check_mode(n->b, m);
}

Mode require_same_mode(const Expr& a, const Expr& b) {
  if (!(a.mode() == b.mode()))
    throw Error(ErrKind::InvalidArgument, "mode mismatch between operands");
  return a.mode();
}

}  // namespace

Expr Expr::number(double v, Mode m) { return Expr(n_number(v), m); }
Expr Expr::constant(ConstId c, Mode m) { return Expr(n_const(c), m); }

Expr Expr::variable(VarId v, Mode m) {
  if (!m.allows(v))
    throw Error(ErrKind::IllegalVariable,
                std::string("variable '") + var_name(v) + "' illegal for mode " +
                    m.describe());
  return Expr(n_var(v), m);
}

Expr Expr::negate(const Expr& a) { return Expr(b_neg(a.root()), a.mode()); }
Expr Expr::add(const Expr& a, const Expr& b) {
  return Expr(b_add(a.root(), b.root()), require_same_mode(a, b));
}
Expr Expr::sub(const Expr& a, const Expr& b) {
  return Expr(b_sub(a.root(), b.root()), require_same_mode(a, b));
}
Expr Expr::mul(const Expr& a, const Expr& b) {
  return Expr(b_mul(a.root(), b.root()), require_same_mode(a, b));
}
Expr Expr::div(const Expr& a, const Expr& b) {
  return Expr(b_div(a.root(), b.root()), require_same_mode(a, b));
}
Expr Expr::pow(const Expr& a, const Expr& b) {
  return Expr(b_pow(a.root(), b.root()), require_same_mode(a, b));
}
Expr Expr::apply(FuncId f, const Expr& a) { return Expr(n_func(f, a.root()), a.mode()); }

// ---------------------------------------------------------------------------
// parser
// ---------------------------------------------------------------------------

namespace {

struct Parser {
  std::string_view src;
  size_t pos = 0;
  Mode mode;

  explicit Parser(std::string_view s, Mode m) : src(s), mode(m) {}

  [[noreturn]] void fail(const std::string& msg, size_t at) {
    throw Error(ErrKind::Syntax, msg + " at offset " + std::to_string(at),
                static_cast<long>(at));
  }

  void skip_ws() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
  }

  bool peek_is(char c) {
    skip_ws();
    return pos < src.size() && src[pos] == c;
  }

  bool consume(char c) {
    if (peek_is(c)) {
      ++pos;
      return true;
    }
    return false;
  }

  NodePtr parse_full() {
    skip_ws();
    if (pos >= src.size()) fail("empty expression", pos);
    NodePtr e = parse_expr();
    skip_ws();
    if (pos < src.size()) fail("unexpected trailing input", pos);
    return e;
  }

  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    for (;;) {
      if (consume('+'))
        lhs = n_binary(NodeKind::Add, lhs, parse_term());
      else if (consume('-'))
        lhs = n_binary(NodeKind::Sub, lhs, parse_term());
      else
        return lhs;
    }
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_unary();
    for (;;) {
      if (consume('*'))
        lhs = n_binary(NodeKind::Mul, lhs, parse_unary());
      else if (consume('/'))
        lhs = n_binary(NodeKind::Div, lhs, parse_unary());
      else
        return lhs;
    }
  }

  NodePtr parse_unary() {
    if (consume('-')) return n_negate_raw(parse_unary());
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_primary();
    if (consume('^')) return n_binary(NodeKind::Pow, base, parse_unary());
    return base;
  }

  NodePtr parse_primary() {
    skip_ws();
    if (pos >= src.size()) fail("expected operand", pos);
    char c = src[pos];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_identifier();
    if (c == '(') {
      ++pos;
      NodePtr e = parse_expr();
      skip_ws();
      if (!consume(')')) fail("expected ')'", pos);
      return e;
    }
    fail(std::string("unexpected character '") + c + "'", pos);
  }

  NodePtr parse_number() {
    size_t start = pos;
    while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
    if (pos < src.size() && src[pos] == '.') {
      ++pos;
      while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
    }
    if (pos == start || (pos == start + 1 && src[start] == '.'))
      fail("malformed number", start);
    // exponent part only when followed by digits, so "2e" stays "2", "e"
    if (pos < src.size() && (src[pos] == 'e' || src[pos] == 'E')) {
      size_t p = pos + 1;
      if (p < src.size() && (src[p] == '+' || src[p] == '-')) ++p;
      if (p < src.size() && std::isdigit(static_cast<unsigned char>(src[p]))) {
        pos = p;
        while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
      }
    }
    double value = 0;
    auto text = src.substr(start, pos - start);
    auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size())
      fail("malformed number", start);
    return n_number(value);
  }

  NodePtr parse_identifier() {
    size_t start = pos;
    while (pos < src.size() &&
           (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
      ++pos;
    std::string_view name = src.substr(start, pos - start);

    if (name == "i") return n_const(ConstId::I);
    if (name == "pi") return n_const(ConstId::Pi);
    if (name == "e") return n_const(ConstId::E);

    FuncId fid;
    bool is_func = true;
    if (name == "exp") fid = FuncId::Exp;
    else if (name == "log") fid = FuncId::Log;
    else if (name == "sin") fid = FuncId::Sin;
    else if (name == "cos") fid = FuncId::Cos;
    else if (name == "sqrt") fid = FuncId::Sqrt;
    else if (name == "conj") fid = FuncId::Conj;
    else if (name == "re") fid = FuncId::Re;
    else if (name == "im") fid = FuncId::Im;
    else if (name == "abs") fid = FuncId::Abs;
    else is_func = false;

    if (is_func) {
      skip_ws();
      if (!consume('(')) fail("expected '(' after function name", pos);
      NodePtr arg = parse_expr();
      skip_ws();
      if (!consume(')')) fail("expected ')'", pos);
      return n_func(fid, arg);
    }

    VarId vid;
    bool is_var = true;
    if (name == "x") vid = VarId::X;
    else if (name == "y") vid = VarId::Y;
    else if (name == "z") vid = VarId::Z;
    else if (name == "t") vid = VarId::T;
    else if (name == "s") vid = VarId::S;
    else is_var = false;

    if (is_var) {
      if (!mode.allows(vid))
        throw Error(ErrKind::IllegalVariable,
                    std::string("variable '") + std::string(name) +
                        "' illegal for mode " + mode.describe() + " at offset " +
                        std::to_string(start),
                    static_cast<long>(start));
      return n_var(vid);
    }

    throw Error(ErrKind::UnknownIdentifier,
                "unknown identifier '" + std::string(name) + "' at offset " +
                    std::to_string(start),
                static_cast<long>(start));
  }
};

}  // namespace

Expr parse(std::string_view text, Mode mode) {
  Parser p(text, mode);
  return Expr(p.parse_full(), mode);
}

// ---------------------------------------------------------------------------
// evaluation
// ---------------------------------------------------------------------------

namespace {

// Values exactly on the branch cut (negative real axis, imaginary part
// +-0.0) are mapped to the limit from above.
Complex from_above(Complex w) {
  if (w.imag() == 0.0 && w.real() < 0.0) return Complex(w.real(), +0.0);
  return w;
}

Complex int_pow(Complex base, long n) {
  if (n < 0) {
    if (base == 0.0) throw Error(ErrKind::DivisionByZero, "0 raised to a negative power");
    return 1.0 / int_pow(base, -n);
  }
  Complex acc = 1.0;
  Complex sq = base;
  while (n > 0) {
    if (n & 1) acc *= sq;
    sq *= sq;
    n >>= 1;
  }
  return acc;
}

Complex eval_node(const ExprNode& n, const EvalEnv& env) {
  switch (n.kind) {
    case NodeKind::Number: return Complex(n.number, 0.0);
    case NodeKind::Constant:
      switch (n.cid) {
        case ConstId::I: return Complex(0.0, 1.0);
        case ConstId::Pi: return Complex(std::numbers::pi, 0.0);
        case ConstId::E: return Complex(std::numbers::e, 0.0);
      }
      return {};
    case NodeKind::Variable: return env.get(n.var);
    case NodeKind::Negate: return -eval_node(*n.a, env);
    case NodeKind::Add: return eval_node(*n.a, env) + eval_node(*n.b, env);
    case NodeKind::Sub: return eval_node(*n.a, env) - eval_node(*n.b, env);
    case NodeKind::Mul: return eval_node(*n.a, env) * eval_node(*n.b, env);
    case NodeKind::Div: {
      Complex num = eval_node(*n.a, env);
      Complex den = eval_node(*n.b, env);
      if (den == 0.0) throw Error(ErrKind::DivisionByZero, "division by zero");
      return num / den;
    }
    case NodeKind::Pow: {
      Complex base = eval_node(*n.a, env);
      Complex expo = eval_node(*n.b, env);
      if (expo.imag() == 0.0 && expo.real() == std::nearbyint(expo.real()) &&
          std::abs(expo.real()) <= 1024.0)
        return int_pow(base, static_cast<long>(expo.real()));
      if (base == 0.0) {
        if (expo.imag() == 0.0 && expo.real() > 0.0) return Complex(0.0, 0.0);
        throw Error(ErrKind::DomainError, "0 raised to a non-positive power");
      }
      return std::exp(expo * std::log(from_above(base)));
    }
    case NodeKind::Func: {
      Complex a = eval_node(*n.a, env);
      switch (n.fid) {
        case FuncId::Exp: return std::exp(a);
        case FuncId::Log:
          if (a == 0.0) throw Error(ErrKind::DomainError, "log of zero");
          return std::log(from_above(a));
        case FuncId::Sin: return std::sin(a);
        case FuncId::Cos: return std::cos(a);
        case FuncId::Sqrt: return std::sqrt(from_above(a));
        case FuncId::Conj: return std::conj(a);
        case FuncId::Re: return Complex(a.real(), 0.0);
        case FuncId::Im: return Complex(a.imag(), 0.0);
        case FuncId::Abs: return Complex(std::abs(a), 0.0);
      }
      return {};
    }
  }
  throw Error(ErrKind::Evaluation, "corrupt expression node");
}

}  // namespace

Complex eval(const Expr& e, const EvalEnv& env) {
  if (e.empty()) throw Error(ErrKind::InvalidArgument, "empty expression");
  return eval_node(*e.root(), env);
}

// ---------------------------------------------------------------------------
// differentiation
// ---------------------------------------------------------------------------

namespace {

bool node_has_func(const NodePtr& n, FuncId f) {
  if (!n) return false;
  if (n->kind == NodeKind::Func && n->fid == f) return true;
  return node_has_func(n->a, f) || node_has_func(n->b, f);
}

bool node_has_var(const NodePtr& n) {
  if (!n) return false;
  if (n->kind == NodeKind::Variable) return true;
  return node_has_var(n->a) || node_has_var(n->b);
}

NodePtr diff_node(const NodePtr& n, VarId var, bool z_mode) {
  switch (n->kind) {
    case NodeKind::Number:
    case NodeKind::Constant: return n_number(0.0);
    case NodeKind::Variable: return n_number(n->var == var ? 1.0 : 0.0);
    case NodeKind::Negate: return b_neg(diff_node(n->a, var, z_mode));
    case NodeKind::Add:
      return b_add(diff_node(n->a, var, z_mode), diff_node(n->b, var, z_mode));
    case NodeKind::Sub:
      return b_sub(diff_node(n->a, var, z_mode), diff_node(n->b, var, z_mode));
    case NodeKind::Mul:
      return b_add(b_mul(diff_node(n->a, var, z_mode), n->b),
                   b_mul(n->a, diff_node(n->b, var, z_mode)));
    case NodeKind::Div:
      // (a/b)' = a'/b - a b' / b^2
      return b_sub(b_div(diff_node(n->a, var, z_mode), n->b),
                   b_div(b_mul(n->a, diff_node(n->b, var, z_mode)),
                         b_pow(n->b, n_number(2.0))));
    case NodeKind::Pow: {
      NodePtr da = diff_node(n->a, var, z_mode);
      if (!node_has_var(n->b)) {
        // constant exponent c: (a^c)' = c a^(c-1) a'
        NodePtr cm1 = n->b->kind == NodeKind::Number ? n_number(n->b->number - 1.0)
                                                     : b_sub(n->b, n_number(1.0));
        return b_mul(b_mul(n->b, b_pow(n->a, cm1)), da);
      }
      // general: (a^b)' = a^b (b' log a + b a'/a)
      NodePtr db = diff_node(n->b, var, z_mode);
      NodePtr loga = n_func(FuncId::Log, n->a);
      return b_mul(b_pow(n->a, n->b),
                   b_add(b_mul(db, loga), b_div(b_mul(n->b, da), n->a)));
    }
    case NodeKind::Func: {
      NodePtr da = diff_node(n->a, var, z_mode);
      switch (n->fid) {
        case FuncId::Exp: return b_mul(n_func(FuncId::Exp, n->a), da);
        case FuncId::Log: return b_div(da, n->a);
        case FuncId::Sin: return b_mul(n_func(FuncId::Cos, n->a), da);
        case FuncId::Cos: return b_neg(b_mul(n_func(FuncId::Sin, n->a), da));
        case FuncId::Sqrt:
          return b_div(da, b_mul(n_number(2.0), n_func(FuncId::Sqrt, n->a)));
        case FuncId::Conj:
          if (z_mode)
            throw Error(ErrKind::NotDifferentiable, "conj is not differentiable in z");
          return n_func(FuncId::Conj, da);
        case FuncId::Re:
          if (z_mode)
            throw Error(ErrKind::NotDifferentiable, "re is not differentiable in z");
          return n_func(FuncId::Re, da);
        case FuncId::Im:
          if (z_mode)
            throw Error(ErrKind::NotDifferentiable, "im is not differentiable in z");
          return n_func(FuncId::Im, da);
        case FuncId::Abs:
          throw Error(ErrKind::NotDifferentiable, "abs is never differentiable");
      }
      return {};
    }
  }
  throw Error(ErrKind::Evaluation, "corrupt expression node");
}

}  // namespace

Expr symbolic_diff(const Expr& e, VarId var) {
  if (e.empty()) throw Error(ErrKind::InvalidArgument, "empty expression");
  if (!e.mode().allows(var))
    throw Error(ErrKind::IllegalVariable,
                std::string("variable '") + var_name(var) +
                    "' illegal for mode " + e.mode().describe());
  bool z_mode = e.mode().kind() == Mode::Kind::Z;
  return Expr(diff_node(e.root(), var, z_mode), e.mode());
}

bool is_analytic_syntax(const Expr& e) {
  return !(contains_func(e, FuncId::Conj) || contains_func(e, FuncId::Re) ||
           contains_func(e, FuncId::Im) || contains_func(e, FuncId::Abs));
}

bool contains_func(const Expr& e, FuncId f) { return node_has_func(e.root(), f); }

namespace {
bool node_has_var_id(const NodePtr& n, VarId v) {
  if (!n) return false;
  if (n->kind == NodeKind::Variable && n->var == v) return true;
  return node_has_var_id(n->a, v) || node_has_var_id(n->b, v);
}
}  // namespace

bool contains_var(const Expr& e, VarId v) { return node_has_var_id(e.root(), v); }

// ---------------------------------------------------------------------------
// printing
// ---------------------------------------------------------------------------

namespace {

// precedence levels used by the printer; higher binds tighter
enum Prec { P_ADD = 1, P_MUL = 2, P_UNARY = 3, P_POW = 4, P_ATOM = 5 };

const char* func_name(FuncId f) {
  switch (f) {
    case FuncId::Exp: return "exp";
    case FuncId::Log: return "log";
    case FuncId::Sin: return "sin";
    case FuncId::Cos: return "cos";
    case FuncId::Sqrt: return "sqrt";
    case FuncId::Conj: return "conj";
    case FuncId::Re: return "re";
    case FuncId::Im: return "im";
    case FuncId::Abs: return "abs";
  }
  return "?";
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

int node_prec(const ExprNode& n) {
  switch (n.kind) {
    case NodeKind::Add:
    case NodeKind::Sub: return P_ADD;
    case NodeKind::Mul:
    case NodeKind::Div: return P_MUL;
    case NodeKind::Negate: return P_UNARY;
    case NodeKind::Pow: return P_POW;
    case NodeKind::Number:
      // negative literals (including -0) print with a leading minus that
      // reparses as a negation, so they bind like a unary node
      return std::signbit(n.number) ? P_UNARY : P_ATOM;
    default: return P_ATOM;
  }
}

void print_node(const ExprNode& n, int min_prec, std::string& out) {
  int prec = node_prec(n);
  bool need_paren = prec < min_prec;
  if (need_paren) out += '(';
  switch (n.kind) {
    case NodeKind::Number: out += format_double(n.number); break;
    case NodeKind::Constant:
      out += (n.cid == ConstId::I ? "i" : n.cid == ConstId::Pi ? "pi" : "e");
      break;
    case NodeKind::Variable: out += var_name(n.var); break;
    case NodeKind::Negate:
      out += '-';
      print_node(*n.a, P_UNARY, out);
      break;
    case NodeKind::Add:
      print_node(*n.a, P_ADD, out);
      out += '+';
      print_node(*n.b, P_ADD + 1, out);
      break;
    case NodeKind::Sub:
      print_node(*n.a, P_ADD, out);
      out += '-';
      print_node(*n.b, P_ADD + 1, out);
      break;
    case NodeKind::Mul:
      print_node(*n.a, P_MUL, out);
      out += '*';
      print_node(*n.b, P_MUL + 1, out);
      break;
    case NodeKind::Div:
      print_node(*n.a, P_MUL, out);
      out += '/';
      print_node(*n.b, P_MUL + 1, out);
      break;
    case NodeKind::Pow:
      print_node(*n.a, P_ATOM, out);  // base must be primary-tight
      out += '^';
      print_node(*n.b, P_UNARY, out);  // exponent slot accepts unary minus
      break;
    case NodeKind::Func:
      out += func_name(n.fid);
      out += '(';
      print_node(*n.a, P_ADD, out);
      out += ')';
      break;
  }
  if (need_paren) out += ')';
}

}  // namespace

std::string to_string(const Expr& e) {
  if (e.empty()) return "";
  std::string out;
  print_node(*e.root(), P_ADD, out);
  return out;
}

// ---------------------------------------------------------------------------
// structure, substitution
// ---------------------------------------------------------------------------

namespace {

bool nodes_equal(const NodePtr& a, const NodePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case NodeKind::Number: {
      // bitwise so 0.0 and -0.0 stay distinguishable
      double x = a->number, y = b->number;
      return std::memcmp(&x, &y, sizeof x) == 0;
    }
    case NodeKind::Constant: return a->cid == b->cid;
    case NodeKind::Variable: return a->var == b->var;
    case NodeKind::Func:
      if (a->fid != b->fid) return false;
      break;
    default: break;
  }
  return nodes_equal(a->a, b->a) && nodes_equal(a->b, b->b);
}

NodePtr subst_node(const NodePtr& n, VarId var, const NodePtr& repl) {
  if (!n) return nullptr;
  if (n->kind == NodeKind::Variable) return n->var == var ? repl : n;
  if (!node_has_var_id(n, var)) return n;
  ExprNode copy = *n;
  copy.a = subst_node(n->a, var, repl);
  copy.b = subst_node(n->b, var, repl);
  return make_node(std::move(copy));
}

}  // namespace

bool same_structure(const Expr& a, const Expr& b) {
  return a.mode() == b.mode() && nodes_equal(a.root(), b.root());
}

Expr substitute(const Expr& e, VarId var, const Expr& replacement, Mode new_mode) {
  NodePtr out = subst_node(e.root(), var, replacement.root());
  check_mode(out, new_mode);
  return Expr(out, new_mode);
}

ComponentPair split_components(const Expr& f, VarId var1, VarId var2, Mode target) {
  if (f.mode().kind() != Mode::Kind::Z)
    throw Error(ErrKind::InvalidArgument, "component split expects a z-mode expression");
  Expr v1 = Expr::variable(var1, target);
  Expr v2 = Expr::variable(var2, target);
  Expr repl = Expr::add(v1, Expr::mul(Expr::constant(ConstId::I, target), v2));
  Expr g = substitute(f, VarId::Z, repl, target);
  return {Expr::apply(FuncId::Re, g), Expr::apply(FuncId::Im, g)};
}

}  // namespace crv
