#include "kfold/conditions.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace kfold {

const std::vector<ConditionDef>& condition_table() {
  static const std::vector<ConditionDef> table = {
      {"CndH2", 0, "a32*a44 - a55*a21"},
      {"CndH3", 0, "a88*a21^3 - (a77*a32 + a44*a65)*a21^2 + a44*(a42*a44 + a32*a54)*a21 - a31*a44^2*a32"},
      // Degree five in a21.
      {"CndH4", 0,
       "a(11,11)*a21^5"
       " - (a44*a98 + a(10,10)*a32 + a77*a65)*a21^4"
       " + (a44*a87*a32 + a32*a54*a77 + a44*a54*a65 + 2*a44*a77*a42 + a44^2*a75)*a21^3"
       " - (a52*a44^2 + a44*a31*a65 + 2*a42*a44*a54 + a44*a64*a32 + 2*a77*a32*a31 + a54^2*a32)*a44*a21^2"
       " + (2*a44*a31*a42 + a44*a41*a32 + 3*a32*a54*a31)*a44^2*a21"
       " - 2*a31^2*a32*a44^3"},
      {"CndNA3", 0, "a43^2 - 4*a31*a55"},
      {"CndNA5", 0, "8*a31^3*a77 - 4*a65*a43*a31^2 + 2*a53*a43^2*a31 - a41^2*a43^3"},
      {"CndQm5", 0, "a32*a55 - a21*a66"},
      {"CndQm6", 0, "a43*a55 - a21*a77"},
      {"CndRm5", 0, "a32*a66 - a21*a77"},
      {"Delta", 1, "(a32^2 - 4*a31*a33)*X^2 + 2*(a32^2 - 2*a31*a33)*X + a32^2 - 4*a31*a33"},
      {"Omega", 2, "a31*a33*(1 + X + Y)^2 - a32^2*(X + Y + X*Y)"},
      {"alpha_jj", 2, "(X + Y + X*Y) / (1 + X + Y)^2"},
      {"alpha", 0, "a32^2 / (a31*a33)"},
      {"beta_jj", 2, "(X*Y^3 + X^3*Y + Y^3 + 2*X^2*Y + 2*X*Y^2 + X^3 + 2*X*Y + X + Y) / (1 + X + Y)^4"},
      {"CndUm8", 0, "a55*(a31*a55 - a54*a32) + a77*a32^2"},
      {"CndVm5", 2, "a32^2*a44*{beta_jj} + a32*a33*(2*a33*a42 - a32*a43)*{alpha_jj} + a41*a33^3"},
      {"CndWA2", 0, "(a41*a33 + a31*a43)*a32^3 - 2*a31*(a42*a33 + 2*a31*a44)*a32^2 + 8*a31^3*a33*a44"},
      {"CndWtm8", 0, "a31*a55 - a42*a44"},
      {"CndYA3", 0, "a43^2 - 4*a31*a55"},
      {"CndYm6", 1, "(a31*a44^2 + a55*a32^2 - a43*a44*a32)*X^4 + a44*(2*a31*a44 - a32*a43)*X^2 + a31*a44^2"},
  };
  return table;
}

const ConditionDef& condition_def(const std::string& name) {
  for (const auto& d : condition_table())
    if (d.name == name) return d;
  throw std::invalid_argument("unknown condition '" + name + "'");
}

namespace {

struct Node {
  enum Kind { Num, Coef, VarX, VarY, Ref, Add, Sub, Mul, Div, Neg, Pow } kind;
  long num = 0;  // literal, or exponent for Pow
  int q = 0, s = 0;
  std::string ref;
  std::unique_ptr<Node> l, r;
};

using NodePtr = std::unique_ptr<Node>;

NodePtr make(Node::Kind k) {
  auto n = std::make_unique<Node>();
  n->kind = k;
  return n;
}

class Parser {
 public:
  explicit Parser(const std::string& src) : s_(src) {}

  NodePtr parse() {
    NodePtr e = expr();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return e;
  }

 private:
  const std::string& s_;
  size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw std::logic_error("condition table parse error at " + std::to_string(pos_) + ": " + what + " in '" + s_ + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  long integer() {
    skip();
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return std::stol(s_.substr(start, pos_ - start));
  }

  NodePtr expr() {
    NodePtr lhs = term();
    while (true) {
      if (eat('+')) {
        auto n = make(Node::Add);
        n->l = std::move(lhs);
        n->r = term();
        lhs = std::move(n);
      } else if (eat('-')) {
        auto n = make(Node::Sub);
        n->l = std::move(lhs);
        n->r = term();
        lhs = std::move(n);
      } else {
        return lhs;
      }
    }
  }
  NodePtr term() {
    NodePtr lhs = unary();
    while (true) {
      if (eat('*')) {
        auto n = make(Node::Mul);
        n->l = std::move(lhs);
        n->r = unary();
        lhs = std::move(n);
      } else if (eat('/')) {
        auto n = make(Node::Div);
        n->l = std::move(lhs);
        n->r = unary();
        lhs = std::move(n);
      } else {
        return lhs;
      }
    }
  }
  NodePtr unary() {
    if (eat('-')) {
      auto n = make(Node::Neg);
      n->l = unary();
      return n;
    }
    return power();
  }
  NodePtr power() {
    NodePtr base = primary();
    if (eat('^')) {
      auto n = make(Node::Pow);
      n->l = std::move(base);
      n->num = integer();
      return n;
    }
    return base;
  }
  NodePtr primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    const char c = s_[pos_];
    if (eat('(')) {
      NodePtr e = expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (eat('{')) {
      size_t end = s_.find('}', pos_);
      if (end == std::string::npos) fail("unterminated reference");
      auto n = make(Node::Ref);
      n->ref = s_.substr(pos_, end - pos_);
      pos_ = end + 1;
      return n;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      auto n = make(Node::Num);
      n->num = integer();
      return n;
    }
    if (c == 'X' || c == 'Y') {
      ++pos_;
      return make(c == 'X' ? Node::VarX : Node::VarY);
    }
    if (c == 'a') {
      ++pos_;
      auto n = make(Node::Coef);
      if (eat('(')) {
        n->q = static_cast<int>(integer());
        if (!eat(',')) fail("expected ','");
        n->s = static_cast<int>(integer());
        if (!eat(')')) fail("expected ')'");
      } else {
        if (pos_ + 2 > s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])) ||
            !std::isdigit(static_cast<unsigned char>(s_[pos_ + 1])))
          fail("expected two-digit coefficient index");
        n->q = s_[pos_] - '0';
        n->s = s_[pos_ + 1] - '0';
        pos_ += 2;
      }
      return n;
    }
    fail(std::string("unexpected character '") + c + "'");
  }
};

const Node& parsed(const std::string& name) {
  static std::mutex mu;
  static std::map<std::string, NodePtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(name);
  if (it != cache.end()) return *it->second;
  const ConditionDef& d = condition_def(name);
  NodePtr root = Parser(d.expr).parse();
  return *cache.emplace(name, std::move(root)).first->second;
}

struct EvalCtx {
  const JetGerm& germ;
  std::optional<CycloNum> X, Y;
  double scale = 0.0;
};

CycloNum eval(const Node& n, EvalCtx& ctx);

CycloNum eval_named(const std::string& name, EvalCtx& ctx) { return eval(parsed(name), ctx); }

CycloNum eval(const Node& n, EvalCtx& ctx) {
  switch (n.kind) {
    case Node::Num:
      return CycloNum(ctx.germ.field(), Rational(n.num));
    case Node::Coef: {
      CycloNum c = ctx.germ.a(n.q, n.s);
      ctx.scale = std::max(ctx.scale, std::abs(c.to_complex()));
      return c;
    }
    case Node::VarX:
      if (!ctx.X) throw std::invalid_argument("condition needs index j");
      return *ctx.X;
    case Node::VarY:
      if (!ctx.Y) throw std::invalid_argument("condition needs indices (j, j')");
      return *ctx.Y;
    case Node::Ref:
      return eval_named(n.ref, ctx);
    case Node::Add:
      return eval(*n.l, ctx) + eval(*n.r, ctx);
    case Node::Sub:
      return eval(*n.l, ctx) - eval(*n.r, ctx);
    case Node::Mul:
      return eval(*n.l, ctx) * eval(*n.r, ctx);
    case Node::Div: {
      CycloNum num = eval(*n.l, ctx);
      CycloNum den = eval(*n.r, ctx);
      if (den.is_zero()) throw std::domain_error("zero denominator");
      return num * den.inverse();
    }
    case Node::Neg:
      return -eval(*n.l, ctx);
    case Node::Pow:
      return eval(*n.l, ctx).pow(n.num);
  }
  throw std::logic_error("bad node");
}

double eval_real(const Node& n, const std::function<double(int, int)>& a) {
  switch (n.kind) {
    case Node::Num: return static_cast<double>(n.num);
    case Node::Coef: return a(n.q, n.s);
    case Node::VarX:
    case Node::VarY: throw std::invalid_argument("real evaluation takes conditions without indices");
    case Node::Ref: return eval_real(parsed(n.ref), a);
    case Node::Add: return eval_real(*n.l, a) + eval_real(*n.r, a);
    case Node::Sub: return eval_real(*n.l, a) - eval_real(*n.r, a);
    case Node::Mul: return eval_real(*n.l, a) * eval_real(*n.r, a);
    case Node::Div: return eval_real(*n.l, a) / eval_real(*n.r, a);
    case Node::Neg: return -eval_real(*n.l, a);
    case Node::Pow: return std::pow(eval_real(*n.l, a), static_cast<double>(n.num));
  }
  throw std::logic_error("bad node");
}

bool parse_coefficient_name(const std::string& name, int& q, int& s) {
  if (name.size() == 3 && name[0] == 'a' && std::isdigit(static_cast<unsigned char>(name[1])) &&
      std::isdigit(static_cast<unsigned char>(name[2]))) {
    q = name[1] - '0';
    s = name[2] - '0';
    return true;
  }
  if (name.size() > 4 && name.compare(0, 2, "a(") == 0 && name.back() == ')') {
    size_t comma = name.find(',');
    if (comma == std::string::npos) return false;
    try {
      q = std::stoi(name.substr(2, comma - 2));
      s = std::stoi(name.substr(comma + 1, name.size() - comma - 2));
    } catch (const std::exception&) {
      return false;
    }
    return true;
  }
  return false;
}

}  // namespace

ConditionValue condition_value(const std::string& name, const JetGerm& germ, std::optional<IndexPair> params) {
  ConditionValue cv;
  cv.name = name;
  cv.params = params;
  int q = 0, s = 0;
  if (parse_coefficient_name(name, q, s)) {
    cv.value = germ.a(q, s);
    cv.scale = std::abs(cv.value.to_complex());
    cv.vanished = cv.value.is_zero();
    return cv;
  }
  const ConditionDef& def = condition_def(name);
  EvalCtx ctx{germ, std::nullopt, std::nullopt, 0.0};
  if (def.arity >= 1) {
    if (!params) throw std::invalid_argument(name + " needs index parameters");
    const int k = germ.k();
    auto check = [k](int j) {
      if (j < 1 || j > k - 1) throw std::invalid_argument("root-of-unity index out of range 1..k-1");
    };
    check(params->first);
    ctx.X = germ.xi_pow(params->first);
    if (def.arity == 2) {
      check(params->second);
      if (params->first == params->second) throw std::invalid_argument(name + " needs j != j'");
      ctx.Y = germ.xi_pow(params->second);
    }
  }
  cv.value = eval(parsed(name), ctx);
  cv.scale = ctx.scale;
  cv.vanished = cv.value.is_zero();
  return cv;
}

double condition_value_real(const std::string& name, const std::function<double(int, int)>& a) {
  int q = 0, s = 0;
  if (parse_coefficient_name(name, q, s)) return a(q, s);
  if (condition_def(name).arity != 0) throw std::invalid_argument(name + " takes root-of-unity indices");
  return eval_real(parsed(name), a);
}

}  // namespace kfold
