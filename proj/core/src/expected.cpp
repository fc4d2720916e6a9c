#include <stdexcept>

#include "kfold/classify.hpp"

namespace kfold {

namespace {

int exact_div(long num, long den) {
  if (num % den != 0) throw std::logic_error("tabulated T is not integral");
  return static_cast<int>(num / den);
}

InvariantSet make(long C, long T, long mu, long r) {
  InvariantSet s;
  s.C = LocalDim::finite(static_cast<int>(C));
  s.T = static_cast<int>(T);
  s.muD = LocalDim::finite(static_cast<int>(mu));
  s.rD = static_cast<int>(r);
  s.finitely_determined = true;
  return s;
}

}  // namespace

std::optional<InvariantSet> expected_invariants(const StratumLabel& label) {
  const long k = label.k;
  if (k < 3 || !label.is_table_family()) return std::nullopt;
  if (!admissible(label.family, label.k, label.l, label.params)) return std::nullopt;

  const bool d2 = k % 2 == 0, d3 = k % 3 == 0, d4 = k % 4 == 0, d5 = k % 5 == 0;
  const long a = (k - 1) * (k - 2);

  Family fam = label.family;
  int l = label.l;
  // k = 3 labels read off the k >= 4 formulas.
  if (fam == Family::S) {
    l = (l + 1) / 2;
    fam = l == 1 ? Family::M1 : Family::M;
  } else if (fam == Family::H) {
    fam = Family::P;
  }

  switch (fam) {
    case Family::M0: {
      InvariantSet s = make(0, 0, 0, 0);
      s.mu_applicable = false;
      return s;
    }
    case Family::M1: return make(k - 1, 0, (k - 2) * (k - 2), k - 1);
    case Family::M: {
      if (!d2) return make(l * (k - 1), 0, l * a - k + 2, k - 1);
      const long r = l == 3 ? k - 1 : k;
      return make(l * (k - 1), 0, a + (l + 1) - k, r);
    }
    case Family::N: return make(2 * k - 2, 0, (2 * k - 3) * (k - 2) + (l == 3 ? 3 : 5), k);
    case Family::O4: return make(3 * k - 3, 0, (3 * k - 4) * (k - 2) + 4, k + 1);
    case Family::P: {
      const long c = !d3 ? 0 : (l == 2 ? 4 : l == 3 ? 10 : 16);
      return make(k - 1, exact_div(a + c, 6), (2 * k - 3) * (k - 2) + c, k - 1);
    }
    case Family::Q3: {
      long t = 0, m = 0;
      if (d3 && d4) t = 7, m = 14;
      else if (d3) t = 1, m = 2;
      else if (d4) t = 6, m = 12;
      return make(k - 1, exact_div(a + t, 3), (3 * k - 4) * (k - 2) + m, k - 1);
    }
    case Family::Q4: {
      const long t = d4 ? 10 : 4, m = d4 ? 20 : 8;
      return make(k - 1, exact_div(a + t, 3), (3 * k - 4) * (k - 2) + m, k - 1);
    }
    case Family::Qt4: {
      const long t = d3 ? 10 : 9, m = d3 ? 20 : 18;
      return make(k - 1, exact_div(a + t, 3), (3 * k - 4) * (k - 2) + m, k - 1);
    }
    case Family::R4: {
      long t = 0, m = 0;
      if (d4 && d5) t = 10, m = 30;
      else if (d4) t = 2, m = 6;
      else if (d5) t = 8, m = 24;
      return make(k - 1, exact_div(a + t, 2), (4 * k - 5) * (k - 2) + m, k - 1);
    }
    case Family::U3: {
      const long t = d3 ? 1 : 0, m = d3 ? 3 : 1;
      return make(2 * k - 2, exact_div(a + t, 3), 4 * a + m, 2 * k - 2);
    }
    case Family::U4: return make(2 * k - 2, exact_div(a + 4, 3), 4 * a + 9, 2 * k - 2);
    case Family::V4: {
      const long t = d3 ? 4 : 3, m = d3 ? 9 : 7;
      return make(2 * k - 2, exact_div(a + t, 3), 4 * a + m, 2 * k - 2);
    }
    case Family::W4: {
      const long t = d3 ? 1 : 0, m = d3 ? 5 : 3;
      return make(2 * k - 2, exact_div(a + t, 3), 4 * a + m, 2 * k - 4);
    }
    case Family::W4Exc: return make(2 * k - 2, exact_div(a + 4, 3), 4 * a + 11, 2 * k - 4);
    case Family::X4: {
      const long t = d3 ? 1 : 0;
      long m = 1;
      if (d2 && d3) m = 4;
      else if (d3) m = 3;
      else if (d2) m = 2;
      return make(3 * k - 3, exact_div(a + t, 3), 5 * a + m, d2 ? 2 * k - 3 : 2 * k - 2);
    }
    case Family::Y4:
      if (!d2) return make(2 * k - 2, exact_div(a, 2), 5 * a + 1, 2 * k - 2);
      return make(2 * k - 2, exact_div(k * (k - 2), 2), 5 * a + 3 * (k - 1), 2 * k - 2);
    default: return std::nullopt;
  }
}

}  // namespace kfold
