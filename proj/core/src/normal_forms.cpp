#include <stdexcept>

#include "kfold/classify.hpp"

namespace kfold {

namespace {

bool pair_ok(int k, std::optional<IndexPair> p) {
  if (!p) return false;
  const auto [j, jp] = *p;
  if (j < 1 || jp <= j || jp > k - 1) return false;
  return !(k % 3 == 0 && j == k / 3 && jp == 2 * k / 3);
}

bool w_index_ok(int k, std::optional<IndexPair> p) {
  if (!p) return false;
  const int j = p->first;
  if (j < 1 || j > k - 1 || 2 * j == k) return false;
  return !(k % 3 == 0 && (j == k / 3 || j == 2 * k / 3));
}

CycloPoly build(int m, std::initializer_list<std::tuple<int, int, CycloNum>> terms) {
  CycloPoly f;
  for (const auto& [i, j, c] : terms) f.add_term(i, j, c.promote(m));
  return f;
}

CycloNum Q(int m, long v) { return CycloNum(m, Rational(v)); }

}  // namespace

bool admissible(Family family, int k, int l, std::optional<IndexPair> params) {
  if (k < 3) return false;
  if (k == 3) {
    switch (family) {
      case Family::M0:
      case Family::U3:
      case Family::U4:
      case Family::X4:
      case Family::W4Exc: return true;
      case Family::S: return l == 1 || l == 3 || l == 5 || l == 7;
      case Family::H: return l >= 2 && l <= 4;
      default: return false;
    }
  }
  const bool d2 = k % 2 == 0, d3 = k % 3 == 0, d4 = k % 4 == 0;
  switch (family) {
    case Family::M0:
    case Family::M1:
    case Family::Q3:
    case Family::R4:
    case Family::U3:
    case Family::X4:
    case Family::Y4: return true;
    case Family::M: return l >= 2 && l <= 4;
    case Family::N: return d2 && (l == 3 || l == 4);
    case Family::O4: return d2;
    case Family::P: return l == 2 || (d3 && (l == 3 || l == 4));
    case Family::Q4:
    case Family::U4:
    case Family::W4Exc: return d3;
    case Family::Qt4: return d4;
    case Family::V4: return pair_ok(k, params);
    case Family::W4: return w_index_ok(k, params);
    default: return false;
  }
}

std::optional<CycloPoly> normal_form(Family family, int k, int l, std::optional<IndexPair> params) {
  if (!admissible(family, k, l, params)) return std::nullopt;
  const int m = k;
  const CycloNum one = Q(m, 1);
  switch (family) {
    case Family::M0: return build(m, {{0, 1, one}});
    case Family::M1: return build(m, {{1, 1, one}, {0, 2, one}});
    case Family::S:
      if (l == 1) return build(m, {{1, 1, one}, {0, 2, one}});
      return build(m, {{0, 2, one}, {0, 3, one}, {(l + 1) / 2, 1, one}});
    case Family::M: return build(m, {{0, 2, one}, {0, 3, one}, {l, 1, one}});
    case Family::N: return build(m, {{0, 2, one}, {2, 1, one}, {0, 2 * l - 1, one}});
    case Family::O4: return build(m, {{0, 2, one}, {3, 1, one}, {1, 3, one}});
    case Family::H:
    case Family::P: return build(m, {{1, 1, one}, {0, 3, one}, {0, 3 * l - 1, one}});
    case Family::Q3: return build(m, {{1, 1, one}, {0, 4, one}, {0, 5, one}, {0, 6, one}});
    case Family::Q4: return build(m, {{1, 1, one}, {0, 4, one}, {0, 6, one}, {0, 8, one}});
    case Family::Qt4: return build(m, {{1, 1, one}, {0, 4, one}, {0, 5, one}, {0, 7, one}});
    case Family::R4: return build(m, {{1, 1, one}, {0, 5, one}, {0, 6, one}, {0, 7, one}});
    case Family::U3: return build(m, {{2, 1, one}, {1, 2, Q(m, 2)}, {0, 3, one}, {0, 4, one}});
    case Family::U4: return build(m, {{2, 1, one}, {1, 2, Q(m, 2)}, {0, 3, one}, {0, 7, one}});
    case Family::V4: {
      // a33 = alpha_{j,j'} puts Omega_{j,j'} on zero; a41 = 1 - beta/alpha^3 makes CndVm5 = alpha^3.
      const JetGerm probe(k, build(m, {{0, 1, one}}));
      const CycloNum alpha = condition_value("alpha_jj", probe, params).value;
      const CycloNum beta = condition_value("beta_jj", probe, params).value;
      const CycloNum b = one - beta * alpha.pow(3).inverse();
      return build(m, {{2, 1, one}, {1, 2, one}, {0, 3, alpha}, {3, 1, b}, {0, 4, one}});
    }
    case Family::W4: {
      // a33 = c_j puts Delta_j on zero.
      const CycloNum x = CycloNum::root_of_unity(k, params->first);
      const CycloNum c = (x + one) * (x + one) * (Q(m, 4) * (x * x + x + one)).inverse();
      return build(m, {{2, 1, one}, {1, 2, one}, {0, 3, c}, {2, 2, Q(m, 4)}, {0, 4, one}});
    }
    case Family::W4Exc: return build(m, {{2, 1, one}, {0, 3, one}, {0, 4, one}, {0, 5, one}});
    case Family::X4: return build(m, {{1, 2, one}, {0, 3, one}, {3, 1, one}, {0, 4, one}});
    case Family::Y4: return build(m, {{1, 2, Q(m, -1)}, {2, 1, one}, {0, 4, one}, {0, 5, one}});
    default: return std::nullopt;
  }
}

std::vector<NormalFormCase> normal_form_cases(int k) {
  std::vector<NormalFormCase> out;
  auto add = [&](Family f, int l, std::optional<IndexPair> params = std::nullopt) {
    auto g = normal_form(f, k, l, params);
    if (!g) return;
    NormalFormCase c;
    c.label.family = f;
    c.label.k = k;
    c.label.l = l;
    c.label.params = params;
    c.label.codim = table_codim(f, l, k);
    c.label.div = DivisibilityContext::of(k);
    c.f = *g;
    out.push_back(std::move(c));
  };
  add(Family::M0, 0);
  if (k == 3) {
    for (int l : {1, 3, 5, 7}) add(Family::S, l);
    for (int l = 2; l <= 4; ++l) add(Family::H, l);
    add(Family::U3, 4);
    add(Family::U4, 4);
    add(Family::X4, 4);
    add(Family::W4Exc, 4);
    return out;
  }
  add(Family::M1, 1);
  for (int l = 2; l <= 4; ++l) add(Family::M, l);
  add(Family::N, 3);
  add(Family::N, 4);
  add(Family::O4, 4);
  for (int l = 2; l <= 4; ++l) add(Family::P, l);
  add(Family::Q3, 3);
  add(Family::Q4, 4);
  add(Family::Qt4, 4);
  add(Family::R4, 4);
  add(Family::U3, 3);
  add(Family::U4, 4);
  for (int j = 1; j < k; ++j)
    for (int jp = j + 1; jp < k; ++jp) add(Family::V4, 4, IndexPair{j, jp});
  for (int j = 1; 2 * j < k; ++j) add(Family::W4, 4, IndexPair{j, 0});
  add(Family::W4Exc, 4);
  add(Family::X4, 4);
  add(Family::Y4, 4);
  return out;
}

}  // namespace kfold
