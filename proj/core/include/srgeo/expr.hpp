#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>

#include "srgeo/errors.hpp"

namespace srgeo {

/// Builtin scalar functions of the expression grammar. `sign` is the
/// piecewise derivative of `abs` (sign(0) = 0).
enum class Func { sin, cos, sinh, cosh, exp, log, sqrt, abs, sign };

const char* func_name(Func f);

/// Immutable symbolic expression over real constants and named symbols
/// (coordinates and parameters). Nodes are shared; copies are cheap and all
/// operations are pure, so Expr values may be used concurrently.
///
/// The factory functions fold the cheap local identities (0*x, x+0, x^1,
/// constant subtrees, double negation), so expressions built through them
/// stay in a lightly normalized form. The parser bypasses this and keeps the
/// input structure verbatim.
class Expr {
 public:
  enum class Kind { constant, symbol, negate, add, sub, mul, div, pow, call };

  Expr();  // the constant 0

  static Expr constant(double v);
  static Expr symbol(std::string name);
  static Expr negate(Expr a);
  static Expr add(Expr a, Expr b);
  static Expr sub(Expr a, Expr b);
  static Expr mul(Expr a, Expr b);
  static Expr div(Expr a, Expr b);
  static Expr pow(Expr base, Expr exponent);
  static Expr call(Func f, Expr arg);

  Kind kind() const;
  bool is_constant() const { return kind() == Kind::constant; }
  bool is_constant(double v) const;

  double value() const;             // kind() == constant
  const std::string& name() const;  // kind() == symbol
  Func func() const;                // kind() == call
  Expr lhs() const;                 // first (or only) operand
  Expr rhs() const;                 // second operand of a binary node

  struct Node;

 private:
  friend class Parser;
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Expr raw(Node n);

  std::shared_ptr<const Node> node_;
};

using Env = std::map<std::string, double>;

/// Parses the expression grammar:
///
///   expression := term { ('+'|'-') term }
///   term       := unary { ('*'|'/') unary }
///   unary      := '-' unary | power
///   power      := atom [ '^' unary ]          (right-associative)
///   atom       := number | name | name '(' expression ')' | '(' expression ')'
///
/// There is no implicit multiplication; unary minus binds looser than '^'
/// except inside an exponent, where `x^-2` is accepted. Throws ParseError
/// with the byte offset of the failure.
Expr parse_expression(std::string_view text);

/// Prints with minimal parentheses; parse_expression(to_string(e)) yields a
/// tree structurally equal to e.
std::string to_string(const Expr& e);

/// Exact symbolic derivative with respect to the named symbol. All other
/// symbols are treated as constants. d(abs u) = sign(u) du, with sign(0) = 0.
Expr differentiate(const Expr& e, std::string_view var);

/// Bottom-up constant folding plus the local identities
/// 0*x, 1*x, x+0, x-0, 0-x, x/1, 0/x, x^1, x^0, -(-x).
/// The result evaluates equal to the input wherever both are defined.
Expr simplify(const Expr& e);

/// IEEE double evaluation. Throws EvalError for unbound names and domain
/// faults (division by zero, log of non-positive, sqrt of negative,
/// 0^negative, negative^non-integer), naming the offending subexpression.
double evaluate(const Expr& e, const Env& env);

bool structurally_equal(const Expr& a, const Expr& b);

std::set<std::string> free_symbols(const Expr& e);

}  // namespace srgeo
