#include <gtest/gtest.h>

#include <cctype>
#include <random>
#include <stack>

#include "kfold/conditions.hpp"
#include "support.hpp"

using namespace kfold;

namespace {

// Independent shunting-yard evaluator for the condition strings.
class RpnEvaluator {
 public:
  RpnEvaluator(const JetGerm& g, std::optional<CycloNum> X, std::optional<CycloNum> Y) : g_(g), X_(X), Y_(Y) {}

  CycloNum run(const std::string& expr) {
    struct Tok {
      char kind;  // 'v' value, 'o' operator, '(' , ')'
      CycloNum v;
      char op = 0;
      long exponent = 0;
    };
    std::vector<Tok> toks;
    size_t i = 0;
    bool expect_operand = true;
    while (i < expr.size()) {
      const char c = expr[i];
      if (c == ' ') {
        ++i;
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        long v = 0;
        while (i < expr.size() && std::isdigit(static_cast<unsigned char>(expr[i]))) v = 10 * v + (expr[i++] - '0');
        toks.push_back({'v', CycloNum(g_.field(), Rational(v))});
        expect_operand = false;
      } else if (c == 'a') {
        int q, s;
        if (expr[i + 1] == '(') {
          const size_t comma = expr.find(',', i), close = expr.find(')', i);
          q = std::stoi(expr.substr(i + 2, comma - i - 2));
          s = std::stoi(expr.substr(comma + 1, close - comma - 1));
          i = close + 1;
        } else {
          q = expr[i + 1] - '0';
          s = expr[i + 2] - '0';
          i += 3;
        }
        toks.push_back({'v', g_.a(q, s)});
        expect_operand = false;
      } else if (c == 'X' || c == 'Y') {
        toks.push_back({'v', c == 'X' ? *X_ : *Y_});
        ++i;
        expect_operand = false;
      } else if (c == '{') {
        const size_t close = expr.find('}', i);
        toks.push_back({'v', run(condition_def(expr.substr(i + 1, close - i - 1)).expr)});
        i = close + 1;
        expect_operand = false;
      } else if (c == '^') {
        ++i;
        long e = 0;
        while (i < expr.size() && std::isdigit(static_cast<unsigned char>(expr[i]))) e = 10 * e + (expr[i++] - '0');
        Tok t{'o', CycloNum()};
        t.op = '^';
        t.exponent = e;
        toks.push_back(t);
      } else if (c == '(' || c == ')') {
        toks.push_back({c, CycloNum()});
        expect_operand = c == '(';
        ++i;
      } else {
        Tok t{'o', CycloNum()};
        t.op = (c == '-' && expect_operand) ? '~' : c;
        toks.push_back(t);
        expect_operand = true;
        ++i;
      }
    }
    auto prec = [](char op) { return op == '^' ? 4 : op == '~' ? 3 : (op == '*' || op == '/') ? 2 : 1; };
    std::vector<Tok> out;
    std::stack<Tok> ops;
    for (const Tok& t : toks) {
      if (t.kind == 'v') {
        out.push_back(t);
      } else if (t.kind == 'o') {
        if (t.op == '^') {
          out.push_back(t);  // postfix, binds tightest
          continue;
        }
        while (!ops.empty() && ops.top().kind == 'o' && t.op != '~' && prec(ops.top().op) >= prec(t.op)) {
          out.push_back(ops.top());
          ops.pop();
        }
        ops.push(t);
      } else if (t.kind == '(') {
        ops.push(t);
      } else {
        while (ops.top().kind != '(') {
          out.push_back(ops.top());
          ops.pop();
        }
        ops.pop();
      }
    }
    while (!ops.empty()) {
      out.push_back(ops.top());
      ops.pop();
    }
    std::vector<CycloNum> st;
    for (const Tok& t : out) {
      if (t.kind == 'v') {
        st.push_back(t.v);
        continue;
      }
      if (t.op == '^') {
        st.back() = st.back().pow(t.exponent);
        continue;
      }
      if (t.op == '~') {
        st.back() = -st.back();
        continue;
      }
      const CycloNum b = st.back();
      st.pop_back();
      CycloNum& a = st.back();
      switch (t.op) {
        case '+': a = a + b; break;
        case '-': a = a - b; break;
        case '*': a = a * b; break;
        case '/': a = a * b.inverse(); break;
      }
    }
    return st.back();
  }

 private:
  const JetGerm& g_;
  std::optional<CycloNum> X_, Y_;
};

RatPoly random_jet(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> c(-4, 4);
  RatPoly f;
  for (int d = 2; d <= 11; ++d)
    for (int j = 0; j <= d; ++j) f.add_term(d - j, j, make_rational(c(rng), 1 + (c(rng) + 4) % 3));
  return f;
}

}  // namespace

TEST(Conditions, TableAgreesWithIndependentParser) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 6; ++trial) {
    const int k = 4 + trial;
    const JetGerm g(k, random_jet(rng));
    for (const auto& def : condition_table()) {
      std::vector<std::optional<IndexPair>> params;
      if (def.arity == 0) params.push_back(std::nullopt);
      if (def.arity == 1)
        for (int j = 1; j < k; ++j) params.push_back(IndexPair{j, 0});
      if (def.arity == 2)
        for (int j = 1; j < k; ++j)
          for (int jp = 1; jp < k; ++jp)
            if (j != jp) params.push_back(IndexPair{j, jp});
      for (const auto& p : params) {
        std::optional<CycloNum> X, Y;
        if (p) X = g.xi_pow(p->first);
        if (def.arity == 2) Y = g.xi_pow(p->second);
        CycloNum want;
        try {
          want = RpnEvaluator(g, X, Y).run(def.expr);
        } catch (const std::exception&) {
          EXPECT_THROW(condition_value(def.name, g, p), std::domain_error) << def.name;
          continue;
        }
        EXPECT_EQ(condition_value(def.name, g, p).value, want) << def.name << " k=" << k;
      }
    }
  }
}

TEST(Conditions, DeltaAndOmegaExamples) {
  // a31 = 1, a32 = 2, a33 = 1 gives Delta_j = 4 xi^j.
  const int k = 6;
  const JetGerm g(k, kfold::test::P({{2, 1, 1}, {1, 2, 2}, {0, 3, 1}}));
  for (int j = 1; j < k; ++j)
    EXPECT_EQ(condition_value("Delta", g, IndexPair{j, 0}).value, g.xi_pow(j) * Rational(4));
  // a33 = alpha_{j,j'} with a31 = a32 = 1 puts Omega_{j,j'} on zero.
  const JetGerm probe(k, kfold::test::P({{0, 1, 1}}));
  const CycloNum alpha = condition_value("alpha_jj", probe, IndexPair{1, 2}).value;
  CycloPoly f;
  f.add_term(2, 1, CycloNum(k, Rational(1)));
  f.add_term(1, 2, CycloNum(k, Rational(1)));
  f.add_term(0, 3, alpha);
  EXPECT_TRUE(condition_value("Omega", JetGerm(k, f), IndexPair{1, 2}).vanished);
}

TEST(Conditions, Errors) {
  const JetGerm g(5, kfold::test::P({{1, 1, 1}}));
  EXPECT_THROW(condition_value("NoSuchCondition", g), std::invalid_argument);
  EXPECT_THROW(condition_value("Delta", g), std::invalid_argument);
  EXPECT_THROW(condition_value("Delta", g, IndexPair{5, 0}), std::invalid_argument);
  EXPECT_THROW(condition_value("Omega", g, IndexPair{2, 2}), std::invalid_argument);
  EXPECT_EQ(condition_value("a21", g).value, CycloNum(5, Rational(1)));
  EXPECT_TRUE(condition_value("a11", g).vanished);
  EXPECT_DOUBLE_EQ(condition_value_real("CndH2", [](int q, int s) { return q == 3 && s == 2 ? 2.0 : q == 4 ? 3.0 : 0.0; }),
                   6.0);
}
