#include "pfk3/expr.hpp"

#include <cctype>
#include <vector>

namespace pfk3 {

namespace {

ExprPtr node(Expr::Kind k, ExprPtr a = nullptr, ExprPtr b = nullptr) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->lhs = std::move(a);
  e->rhs = std::move(b);
  return e;
}

class Parser {
 public:
  Parser(std::string_view src, const std::set<std::string>* declared) : src_(src), declared_(declared) {}

  ExprPtr parse() {
    skip();
    ExprPtr e = expr();
    skip();
    if (pos_ < src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'", "operator or end of input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what, const std::string& expected) const {
    int line = 1;
    int col = 1;
    for (size_t i = 0; i < pos_ && i < src_.size(); ++i) {
      if (src_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(what + "; expected " + expected, line, col);
  }

  void skip() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  bool at(char c) {
    skip();
    return pos_ < src_.size() && src_[pos_] == c;
  }

  ExprPtr expr() {
    ExprPtr e = term();
    while (at('+') || at('-')) {
      Expr::Kind k = src_[pos_] == '+' ? Expr::Kind::Add : Expr::Kind::Sub;
      ++pos_;
      e = node(k, e, term());
    }
    return e;
  }

  ExprPtr term() {
    ExprPtr e = factor();
    while (at('*') || at('/')) {
      Expr::Kind k = src_[pos_] == '*' ? Expr::Kind::Mul : Expr::Kind::Div;
      ++pos_;
      size_t start = pos_;
      ExprPtr r = factor();
      if (k == Expr::Kind::Div && is_zero_literal(r)) {
        pos_ = start;
        skip();
        fail("division by the literal zero", "nonzero divisor");
      }
      e = node(k, e, r);
    }
    return e;
  }

  static bool is_zero_literal(const ExprPtr& e) { return e->kind == Expr::Kind::Integer && sgn(e->value) == 0; }

  ExprPtr factor() {
    if (at('-')) {
      ++pos_;
      return node(Expr::Kind::Neg, factor());
    }
    return power();
  }

  ExprPtr power() {
    ExprPtr base = primary();
    if (at('^')) {
      ++pos_;
      skip();
      if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
        fail("malformed exponent", "nonnegative integer literal");
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::Pow;
      e->lhs = base;
      e->value = integer();
      if (at('^')) fail("malformed exponent: chained powers need parentheses", "operator or end of input");
      return e;
    }
    return base;
  }

  Integer integer() {
    size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    return Integer(std::string(src_.substr(start, pos_ - start)));
  }

  ExprPtr primary() {
    skip();
    if (pos_ >= src_.size()) fail("unexpected end of input", "integer, identifier, '(' or '-'");
    char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      ExprPtr e = expr();
      if (!at(')')) fail(pos_ < src_.size() ? "unexpected '" + std::string(1, src_[pos_]) + "'" : "unexpected end of input", "')'");
      ++pos_;
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::Integer;
      e->value = integer();
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) ++pos_;
      std::string id(src_.substr(start, pos_ - start));
      if (declared_ && !declared_->count(id)) {
        pos_ = start;
        fail("undeclared variable '" + id + "'", "declared identifier");
      }
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::Variable;
      e->name = id;
      return e;
    }
    fail("unexpected '" + std::string(1, c) + "'", "integer, identifier, '(' or '-'");
  }

  std::string_view src_;
  const std::set<std::string>* declared_;
  size_t pos_ = 0;
};

int prec(Expr::Kind k) {
  switch (k) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
      return 1;
    case Expr::Kind::Mul:
    case Expr::Kind::Div:
      return 2;
    case Expr::Kind::Neg:
      return 3;
    case Expr::Kind::Pow:
      return 4;
    default:
      return 5;
  }
}

std::string wrap_if(bool cond, const std::string& s) { return cond ? "(" + s + ")" : s; }

template <class T, class Const, class Leaf, class Div>
T lower(const ExprPtr& e, const Const& konst, const Leaf& leaf, const Div& divide) {
  switch (e->kind) {
    case Expr::Kind::Integer:
      return konst(Rational(e->value));
    case Expr::Kind::Variable:
      return leaf(e->name);
    case Expr::Kind::Neg:
      return konst(Rational(-1)) * lower<T>(e->lhs, konst, leaf, divide);
    case Expr::Kind::Add:
      return lower<T>(e->lhs, konst, leaf, divide) + lower<T>(e->rhs, konst, leaf, divide);
    case Expr::Kind::Sub:
      return lower<T>(e->lhs, konst, leaf, divide) - lower<T>(e->rhs, konst, leaf, divide);
    case Expr::Kind::Mul:
      return lower<T>(e->lhs, konst, leaf, divide) * lower<T>(e->rhs, konst, leaf, divide);
    case Expr::Kind::Div:
      return divide(lower<T>(e->lhs, konst, leaf, divide), lower<T>(e->rhs, konst, leaf, divide));
    case Expr::Kind::Pow: {
      if (!e->value.fits_ulong_p() || e->value > 100000) throw StructuralError("exponent too large");
      T b = lower<T>(e->lhs, konst, leaf, divide);
      unsigned long n = e->value.get_ui();
      T r = konst(Rational(1));
      while (n) {
        if (n & 1u) r = r * b;
        n >>= 1u;
        if (n) b = b * b;
      }
      return r;
    }
  }
  throw StructuralError("bad expression node");
}

}  // namespace

ExprPtr parse_expr(std::string_view src, const std::set<std::string>* declared) { return Parser(src, declared).parse(); }

std::string print_expr(const ExprPtr& e) {
  switch (e->kind) {
    case Expr::Kind::Integer:
      return e->value.get_str();
    case Expr::Kind::Variable:
      return e->name;
    case Expr::Kind::Neg:
      return "-" + wrap_if(prec(e->lhs->kind) < 3, print_expr(e->lhs));
    case Expr::Kind::Pow:
      return wrap_if(prec(e->lhs->kind) < 5, print_expr(e->lhs)) + "^" + e->value.get_str();
    case Expr::Kind::Add:
    case Expr::Kind::Sub: {
      std::string op = e->kind == Expr::Kind::Add ? " + " : " - ";
      return print_expr(e->lhs) + op + wrap_if(prec(e->rhs->kind) <= 1, print_expr(e->rhs));
    }
    case Expr::Kind::Mul:
    case Expr::Kind::Div: {
      std::string op = e->kind == Expr::Kind::Mul ? "*" : "/";
      return wrap_if(prec(e->lhs->kind) < 2, print_expr(e->lhs)) + op + wrap_if(prec(e->rhs->kind) <= 2, print_expr(e->rhs));
    }
  }
  return "";
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return !a && !b;
  if (a->kind != b->kind || a->value != b->value || a->name != b->name) return false;
  return expr_equal(a->lhs, b->lhs) && expr_equal(a->rhs, b->rhs);
}

std::set<std::string> expr_variables(const ExprPtr& e) {
  std::set<std::string> out;
  std::vector<const Expr*> stack{e.get()};
  while (!stack.empty()) {
    const Expr* x = stack.back();
    stack.pop_back();
    if (!x) continue;
    if (x->kind == Expr::Kind::Variable) out.insert(x->name);
    stack.push_back(x->lhs.get());
    stack.push_back(x->rhs.get());
  }
  return out;
}

RatFunc to_ratfunc(const ExprPtr& e, const VarsPtr& ring) {
  auto leaf = [&](const std::string& n) {
    if (!ring || ring->index(n) < 0) throw StructuralError("undeclared variable '" + n + "'");
    return RatFunc::variable(ring, n);
  };
  auto divide = [](const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw ComputationError("division by zero");
    return a / b;
  };
  auto konst = [](const Rational& q) { return RatFunc(q); };
  return lower<RatFunc>(e, konst, leaf, divide);
}

RatFunc to_ratfunc(const ExprPtr& e, const std::map<std::string, RatFunc>& env) {
  auto leaf = [&](const std::string& n) {
    auto it = env.find(n);
    if (it == env.end()) throw StructuralError("undeclared variable '" + n + "'");
    return it->second;
  };
  auto divide = [](const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw ComputationError("division by zero");
    return a / b;
  };
  auto konst = [](const Rational& q) { return RatFunc(q); };
  return lower<RatFunc>(e, konst, leaf, divide);
}

DiffOperator to_operator(const ExprPtr& e, const VarsPtr& ring) {
  if (!ring) throw StructuralError("operator lowering needs a ring");
  auto konst = [&](const Rational& q) { return DiffOperator::multiplication(ring, RatFunc(q)); };
  auto leaf = [&](const std::string& n) -> DiffOperator {
    if (ring->index(n) >= 0) return DiffOperator::multiplication(ring, RatFunc::variable(ring, n));
    if (n.size() > 1 && (n[0] == 'D' || n[0] == 'T')) {
      std::string v = n.substr(1);
      if (ring->index(v) >= 0) {
        DiffOperator d = DiffOperator::partial(ring, v);
        return n[0] == 'D' ? d : d.scale(RatFunc::variable(ring, v));
      }
    }
    throw StructuralError("undeclared symbol '" + n + "'");
  };
  auto divide = [](const DiffOperator& a, const DiffOperator& b) -> DiffOperator {
    if (b.order() != 0) throw StructuralError("only division by functions is allowed in operators");
    RatFunc c = b.coeff(MultiIndex(static_cast<size_t>(b.nvars()), 0));
    if (c.is_zero()) throw ComputationError("division by zero");
    return DiffOperator::multiplication(b.vars(), c.inverse()) * a;
  };
  return lower<DiffOperator>(e, konst, leaf, divide);
}

Polynomial<Cyclo3> to_cyclo_poly(const ExprPtr& e, const VarsPtr& ring) {
  using CP = Polynomial<Cyclo3>;
  auto konst = [](const Rational& q) { return CP::constant(nullptr, Cyclo3(q)); };
  auto leaf = [&](const std::string& n) -> CP {
    if (n == "zeta3") return CP::constant(nullptr, Cyclo3::zeta());
    if (!ring || ring->index(n) < 0) throw StructuralError("undeclared variable '" + n + "'");
    return CP::variable(ring, n);
  };
  auto divide = [](const CP& a, const CP& b) -> CP {
    if (!b.is_constant() || b.is_zero()) throw StructuralError("only division by nonzero constants is allowed here");
    return a.scale(Cyclo3(1) / b.constant_value());
  };
  CP r = lower<CP>(e, konst, leaf, divide);
  return r.with_vars(ring);
}

RatFunc parse_ratfunc(std::string_view src, const VarsPtr& ring) {
  std::set<std::string> names;
  if (ring)
    for (const auto& n : ring->names()) names.insert(n);
  return to_ratfunc(parse_expr(src, &names), ring);
}

DiffOperator parse_operator(std::string_view src, const VarsPtr& ring) {
  std::set<std::string> names;
  for (const auto& n : ring->names()) {
    names.insert(n);
    names.insert("D" + n);
    names.insert("T" + n);
  }
  return to_operator(parse_expr(src, &names), ring);
}

}  // namespace pfk3
