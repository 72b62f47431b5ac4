#include "srgeo/expr.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <optional>
#include <sstream>
#include <utility>

namespace srgeo {

struct Expr::Node {
  Kind kind;
  double value = 0.0;
  std::string name;
  Func func = Func::sin;
  std::shared_ptr<const Node> a, b;
};

namespace {

constexpr std::array<const char*, 9> kFuncNames = {
    "sin", "cos", "sinh", "cosh", "exp", "log", "sqrt", "abs", "sign"};

std::optional<Func> func_from_name(std::string_view s) {
  for (std::size_t i = 0; i < kFuncNames.size(); ++i) {
    if (s == kFuncNames[i]) return static_cast<Func>(i);
  }
  return std::nullopt;
}

double apply_func(Func f, double x) {
  switch (f) {
    case Func::sin: return std::sin(x);
    case Func::cos: return std::cos(x);
    case Func::sinh: return std::sinh(x);
    case Func::cosh: return std::cosh(x);
    case Func::exp: return std::exp(x);
    case Func::log: return std::log(x);
    case Func::sqrt: return std::sqrt(x);
    case Func::abs: return std::abs(x);
    case Func::sign: return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0);
  }
  return 0.0;
}

bool valid_call(Func f, double x) {
  if (f == Func::log) return x > 0.0;
  if (f == Func::sqrt) return x >= 0.0;
  return true;
}

bool is_integer(double v) { return std::isfinite(v) && std::floor(v) == v; }

}  // namespace

const char* func_name(Func f) { return kFuncNames[static_cast<std::size_t>(f)]; }

Expr Expr::raw(Node n) {
  return Expr(std::make_shared<const Node>(std::move(n)));
}

Expr::Expr() : Expr(constant(0.0)) {}

Expr::Kind Expr::kind() const { return node_->kind; }

bool Expr::is_constant(double v) const {
  return kind() == Kind::constant && node_->value == v;
}

double Expr::value() const { return node_->value; }
const std::string& Expr::name() const { return node_->name; }
Func Expr::func() const { return node_->func; }
Expr Expr::lhs() const { return Expr(node_->a); }
Expr Expr::rhs() const { return Expr(node_->b); }

Expr Expr::constant(double v) {
  Node n;
  n.kind = Kind::constant;
  n.value = v;
  return raw(std::move(n));
}

Expr Expr::symbol(std::string name) {
  Node n;
  n.kind = Kind::symbol;
  n.name = std::move(name);
  return raw(std::move(n));
}

Expr Expr::negate(Expr a) {
  if (a.is_constant()) return constant(-a.value());
  if (a.kind() == Kind::negate) return a.lhs();
  Node n;
  n.kind = Kind::negate;
  n.a = a.node_;
  return raw(std::move(n));
}

Expr Expr::add(Expr a, Expr b) {
  if (a.is_constant() && b.is_constant()) {
    double v = a.value() + b.value();
    if (std::isfinite(v)) return constant(v);
  }
  if (a.is_constant(0.0)) return b;
  if (b.is_constant(0.0)) return a;
  Node n;
  n.kind = Kind::add;
  n.a = a.node_;
  n.b = b.node_;
  return raw(std::move(n));
}

Expr Expr::sub(Expr a, Expr b) {
  if (a.is_constant() && b.is_constant()) {
    double v = a.value() - b.value();
    if (std::isfinite(v)) return constant(v);
  }
  if (b.is_constant(0.0)) return a;
  if (a.is_constant(0.0)) return negate(b);
  Node n;
  n.kind = Kind::sub;
  n.a = a.node_;
  n.b = b.node_;
  return raw(std::move(n));
}

Expr Expr::mul(Expr a, Expr b) {
  if (a.is_constant() && b.is_constant()) {
    double v = a.value() * b.value();
    if (std::isfinite(v)) return constant(v);
  }
  if (a.is_constant(0.0) || b.is_constant(0.0)) return constant(0.0);
  if (a.is_constant(1.0)) return b;
  if (b.is_constant(1.0)) return a;
  if (a.kind() == Kind::negate) return negate(mul(a.lhs(), b));
  if (b.kind() == Kind::negate) return negate(mul(a, b.lhs()));
  Node n;
  n.kind = Kind::mul;
  n.a = a.node_;
  n.b = b.node_;
  return raw(std::move(n));
}

Expr Expr::div(Expr a, Expr b) {
  if (a.is_constant() && b.is_constant() && b.value() != 0.0) {
    double v = a.value() / b.value();
    if (std::isfinite(v)) return constant(v);
  }
  if (a.is_constant(0.0) && !b.is_constant(0.0)) return constant(0.0);
  if (b.is_constant(1.0)) return a;
  if (a.kind() == Kind::negate) return negate(div(a.lhs(), b));
  if (b.kind() == Kind::negate) return negate(div(a, b.lhs()));
  Node n;
  n.kind = Kind::div;
  n.a = a.node_;
  n.b = b.node_;
  return raw(std::move(n));
}

Expr Expr::pow(Expr base, Expr exponent) {
  if (base.is_constant() && exponent.is_constant()) {
    double b0 = base.value(), e0 = exponent.value();
    bool ok = !(b0 == 0.0 && e0 < 0.0) && !(b0 < 0.0 && !is_integer(e0));
    if (ok) {
      double v = std::pow(b0, e0);
      if (std::isfinite(v)) return constant(v);
    }
  }
  if (exponent.is_constant(1.0)) return base;
  if (exponent.is_constant(0.0)) return constant(1.0);
  if (base.is_constant(1.0)) return constant(1.0);
  Node n;
  n.kind = Kind::pow;
  n.a = base.node_;
  n.b = exponent.node_;
  return raw(std::move(n));
}

Expr Expr::call(Func f, Expr arg) {
  if (arg.is_constant() && valid_call(f, arg.value())) {
    double v = apply_func(f, arg.value());
    if (std::isfinite(v)) return constant(v);
  }
  Node n;
  n.kind = Kind::call;
  n.func = f;
  n.a = arg.node_;
  return raw(std::move(n));
}

// ---------------------------------------------------------------------------
// Printing

namespace {

// Grammar levels used to decide parenthesization:
// expression=0, term=1, unary=2, power=3, atom=4.
int grammar_level(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::add:
    case Expr::Kind::sub: return 0;
    case Expr::Kind::mul:
    case Expr::Kind::div: return 1;
    case Expr::Kind::negate: return 2;
    case Expr::Kind::pow: return 3;
    case Expr::Kind::constant:
      return std::signbit(e.value()) ? 2 : 4;  // "-2" prints like unary minus
    default: return 4;
  }
}

void print_number(std::ostream& os, double v) {
  std::array<char, 40> buf;
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  os << std::string_view(buf.data(), res.ptr - buf.data());
}

void print(std::ostream& os, const Expr& e, int min_level) {
  bool paren = grammar_level(e) < min_level;
  if (paren) os << '(';
  switch (e.kind()) {
    case Expr::Kind::constant:
      print_number(os, e.value());
      break;
    case Expr::Kind::symbol:
      os << e.name();
      break;
    case Expr::Kind::negate:
      os << '-';
      print(os, e.lhs(), 2);
      break;
    case Expr::Kind::add:
      print(os, e.lhs(), 0);
      os << " + ";
      print(os, e.rhs(), 1);
      break;
    case Expr::Kind::sub:
      print(os, e.lhs(), 0);
      os << " - ";
      print(os, e.rhs(), 1);
      break;
    case Expr::Kind::mul:
      print(os, e.lhs(), 1);
      os << '*';
      print(os, e.rhs(), 2);
      break;
    case Expr::Kind::div:
      print(os, e.lhs(), 1);
      os << '/';
      print(os, e.rhs(), 2);
      break;
    case Expr::Kind::pow:
      print(os, e.lhs(), 4);
      os << '^';
      print(os, e.rhs(), 2);
      break;
    case Expr::Kind::call:
      os << func_name(e.func()) << '(';
      print(os, e.lhs(), 0);
      os << ')';
      break;
  }
  if (paren) os << ')';
}

}  // namespace

std::string to_string(const Expr& e) {
  std::ostringstream os;
  print(os, e, 0);
  return os.str();
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct Token {
  enum Type { number, name, plus, minus, star, slash, caret, lparen, rparen, end };
  Type type;
  std::size_t offset;
  double num = 0.0;
  std::string text;
};

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) { advance(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    tok_.offset = pos_;
    if (pos_ >= s_.size()) {
      tok_.type = Token::end;
      return;
    }
    char c = s_[pos_];
    switch (c) {
      case '+': tok_.type = Token::plus; ++pos_; return;
      case '-': tok_.type = Token::minus; ++pos_; return;
      case '*': tok_.type = Token::star; ++pos_; return;
      case '/': tok_.type = Token::slash; ++pos_; return;
      case '^': tok_.type = Token::caret; ++pos_; return;
      case '(': tok_.type = Token::lparen; ++pos_; return;
      case ')': tok_.type = Token::rparen; ++pos_; return;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      lex_number();
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      tok_.type = Token::name;
      tok_.text = std::string(s_.substr(start, pos_ - start));
      return;
    }
    throw ParseError(pos_, std::string("unexpected character '") + c + "'");
  }

  void lex_number() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      std::size_t mark = pos_;
      ++pos_;
      if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
      if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      } else {
        pos_ = mark;  // "1e" is the number 1 followed by the name "e"
      }
    }
    std::string_view text = s_.substr(start, pos_ - start);
    if (!text.empty() && text.back() == '.') text.remove_suffix(1);
    double v = 0.0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size())
      throw ParseError(start, "malformed number");
    tok_.type = Token::number;
    tok_.num = v;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  Token tok_;
};

}  // namespace

class Parser {
 public:
  explicit Parser(std::string_view text) : lex_(text) {}

  Expr parse() {
    Expr e = expression();
    if (lex_.peek().type != Token::end)
      throw ParseError(lex_.peek().offset, "expected operator or end of input");
    return e;
  }

 private:
  static Expr binary(Expr::Kind kind, Expr a, Expr b) {
    Expr::Node n;
    n.kind = kind;
    n.a = a.node_;
    n.b = b.node_;
    return Expr::raw(std::move(n));
  }

  Expr expression() {
    Expr e = term();
    while (true) {
      Token::Type t = lex_.peek().type;
      if (t == Token::plus || t == Token::minus) {
        lex_.take();
        e = binary(t == Token::plus ? Expr::Kind::add : Expr::Kind::sub, e, term());
      } else {
        return e;
      }
    }
  }

  Expr term() {
    Expr e = unary();
    while (true) {
      Token::Type t = lex_.peek().type;
      if (t == Token::star || t == Token::slash) {
        lex_.take();
        e = binary(t == Token::star ? Expr::Kind::mul : Expr::Kind::div, e, unary());
      } else {
        return e;
      }
    }
  }

  Expr unary() {
    if (lex_.peek().type == Token::minus) {
      lex_.take();
      Expr operand = unary();
      if (operand.is_constant()) return Expr::constant(-operand.value());
      Expr::Node n;
      n.kind = Expr::Kind::negate;
      n.a = operand.node_;
      return Expr::raw(std::move(n));
    }
    return power();
  }

  Expr power() {
    Expr base = atom();
    if (lex_.peek().type == Token::caret) {
      lex_.take();
      return binary(Expr::Kind::pow, base, unary());
    }
    return base;
  }

  Expr atom() {
    Token t = lex_.take();
    switch (t.type) {
      case Token::number:
        return Expr::constant(t.num);
      case Token::lparen: {
        Expr e = expression();
        expect_rparen();
        return e;
      }
      case Token::name: {
        if (lex_.peek().type == Token::lparen) {
          auto f = func_from_name(t.text);
          if (!f) throw ParseError(t.offset, "unknown function '" + t.text + "'");
          lex_.take();
          Expr arg = expression();
          expect_rparen();
          Expr::Node n;
          n.kind = Expr::Kind::call;
          n.func = *f;
          n.a = arg.node_;
          return Expr::raw(std::move(n));
        }
        return Expr::symbol(t.text);
      }
      default:
        throw ParseError(t.offset, "expected a number, a name, or '('");
    }
  }

  void expect_rparen() {
    if (lex_.peek().type != Token::rparen)
      throw ParseError(lex_.peek().offset, "expected ')'");
    lex_.take();
  }

  Lexer lex_;
};

Expr parse_expression(std::string_view text) { return Parser(text).parse(); }

// ---------------------------------------------------------------------------
// Calculus and evaluation

Expr differentiate(const Expr& e, std::string_view var) {
  using K = Expr::Kind;
  switch (e.kind()) {
    case K::constant:
      return Expr::constant(0.0);
    case K::symbol:
      return Expr::constant(e.name() == var ? 1.0 : 0.0);
    case K::negate:
      return Expr::negate(differentiate(e.lhs(), var));
    case K::add:
      return Expr::add(differentiate(e.lhs(), var), differentiate(e.rhs(), var));
    case K::sub:
      return Expr::sub(differentiate(e.lhs(), var), differentiate(e.rhs(), var));
    case K::mul:
      return Expr::add(Expr::mul(differentiate(e.lhs(), var), e.rhs()),
                       Expr::mul(e.lhs(), differentiate(e.rhs(), var)));
    case K::div:
      return Expr::div(Expr::sub(Expr::mul(differentiate(e.lhs(), var), e.rhs()),
                                 Expr::mul(e.lhs(), differentiate(e.rhs(), var))),
                       Expr::pow(e.rhs(), Expr::constant(2.0)));
    case K::pow: {
      Expr base = e.lhs(), exp = e.rhs();
      Expr dbase = differentiate(base, var);
      if (exp.is_constant()) {
        double c = exp.value();
        return Expr::mul(Expr::mul(Expr::constant(c), Expr::pow(base, Expr::constant(c - 1.0))),
                         dbase);
      }
      Expr dexp = differentiate(exp, var);
      // d(u^v) = u^v (v' log u + v u'/u)
      return Expr::mul(e, Expr::add(Expr::mul(dexp, Expr::call(Func::log, base)),
                                    Expr::mul(exp, Expr::div(dbase, base))));
    }
    case K::call: {
      Expr u = e.lhs();
      Expr du = differentiate(u, var);
      switch (e.func()) {
        case Func::sin: return Expr::mul(Expr::call(Func::cos, u), du);
        case Func::cos: return Expr::negate(Expr::mul(Expr::call(Func::sin, u), du));
        case Func::sinh: return Expr::mul(Expr::call(Func::cosh, u), du);
        case Func::cosh: return Expr::mul(Expr::call(Func::sinh, u), du);
        case Func::exp: return Expr::mul(e, du);
        case Func::log: return Expr::div(du, u);
        case Func::sqrt: return Expr::div(du, Expr::mul(Expr::constant(2.0), e));
        case Func::abs: return Expr::mul(Expr::call(Func::sign, u), du);
        case Func::sign: return Expr::constant(0.0);
      }
      return Expr::constant(0.0);
    }
  }
  return Expr::constant(0.0);
}

Expr simplify(const Expr& e) {
  using K = Expr::Kind;
  switch (e.kind()) {
    case K::constant:
    case K::symbol: return e;
    case K::negate: return Expr::negate(simplify(e.lhs()));
    case K::add: return Expr::add(simplify(e.lhs()), simplify(e.rhs()));
    case K::sub: return Expr::sub(simplify(e.lhs()), simplify(e.rhs()));
    case K::mul: return Expr::mul(simplify(e.lhs()), simplify(e.rhs()));
    case K::div: return Expr::div(simplify(e.lhs()), simplify(e.rhs()));
    case K::pow: return Expr::pow(simplify(e.lhs()), simplify(e.rhs()));
    case K::call: return Expr::call(e.func(), simplify(e.lhs()));
  }
  return e;
}

double evaluate(const Expr& e, const Env& env) {
  using K = Expr::Kind;
  switch (e.kind()) {
    case K::constant:
      return e.value();
    case K::symbol: {
      auto it = env.find(e.name());
      if (it == env.end()) throw EvalError("unbound name '" + e.name() + "'", to_string(e));
      return it->second;
    }
    case K::negate:
      return -evaluate(e.lhs(), env);
    case K::add:
      return evaluate(e.lhs(), env) + evaluate(e.rhs(), env);
    case K::sub:
      return evaluate(e.lhs(), env) - evaluate(e.rhs(), env);
    case K::mul:
      return evaluate(e.lhs(), env) * evaluate(e.rhs(), env);
    case K::div: {
      double num = evaluate(e.lhs(), env);
      double den = evaluate(e.rhs(), env);
      if (den == 0.0) throw EvalError("division by zero", to_string(e));
      return num / den;
    }
    case K::pow: {
      double b = evaluate(e.lhs(), env);
      double x = evaluate(e.rhs(), env);
      if (b == 0.0 && x < 0.0) throw EvalError("zero raised to a negative power", to_string(e));
      if (b < 0.0 && !is_integer(x))
        throw EvalError("negative base with non-integer exponent", to_string(e));
      return std::pow(b, x);
    }
    case K::call: {
      double x = evaluate(e.lhs(), env);
      if (e.func() == Func::log && x <= 0.0)
        throw EvalError("log of a non-positive value", to_string(e));
      if (e.func() == Func::sqrt && x < 0.0)
        throw EvalError("sqrt of a negative value", to_string(e));
      return apply_func(e.func(), x);
    }
  }
  return 0.0;
}

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Expr::Kind::constant: return a.value() == b.value();
    case Expr::Kind::symbol: return a.name() == b.name();
    case Expr::Kind::negate: return structurally_equal(a.lhs(), b.lhs());
    case Expr::Kind::call:
      return a.func() == b.func() && structurally_equal(a.lhs(), b.lhs());
    default:
      return structurally_equal(a.lhs(), b.lhs()) && structurally_equal(a.rhs(), b.rhs());
  }
}

namespace {
void collect_symbols(const Expr& e, std::set<std::string>& out) {
  switch (e.kind()) {
    case Expr::Kind::constant: return;
    case Expr::Kind::symbol: out.insert(e.name()); return;
    case Expr::Kind::negate:
    case Expr::Kind::call: collect_symbols(e.lhs(), out); return;
    default:
      collect_symbols(e.lhs(), out);
      collect_symbols(e.rhs(), out);
  }
}
}  // namespace

std::set<std::string> free_symbols(const Expr& e) {
  std::set<std::string> out;
  collect_symbols(e, out);
  return out;
}

}  // namespace srgeo
