#include "kfold/classify.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace kfold {

std::string family_name(Family f) {
  switch (f) {
    case Family::M0: return "M0";
    case Family::M1: return "M1";
    case Family::M: return "M";
    case Family::N: return "N";
    case Family::O4: return "O4";
    case Family::S: return "S";
    case Family::H: return "H";
    case Family::P: return "P";
    case Family::Q3: return "Q3";
    case Family::Q4: return "Q4";
    case Family::Qt4: return "Qt4";
    case Family::R4: return "R4";
    case Family::U3: return "U3";
    case Family::U4: return "U4";
    case Family::V4: return "V4";
    case Family::W4: return "W4";
    case Family::W4Exc: return "W4exc";
    case Family::X4: return "X4";
    case Family::Y4: return "Y4";
    case Family::Unclassified: return "Unclassified";
    case Family::NotFinitelyDetermined: return "NotFinitelyDetermined";
  }
  return "?";
}

DivisibilityContext DivisibilityContext::of(int k) {
  DivisibilityContext d;
  d.d2 = k % 2 == 0;
  d.d3 = k % 3 == 0;
  d.d4 = k % 4 == 0;
  d.d5 = k % 5 == 0;
  d.d12 = k % 12 == 0;
  d.d20 = k % 20 == 0;
  return d;
}

std::string DivisibilityContext::str() const {
  std::string out;
  auto add = [&out](bool b, const char* s) {
    if (!b) return;
    if (!out.empty()) out += ",";
    out += s;
  };
  add(d2, "2|k");
  add(d3, "3|k");
  add(d4, "4|k");
  add(d5, "5|k");
  add(d12, "12|k");
  add(d20, "20|k");
  return out;
}

std::string StratumLabel::name() const {
  const std::string ks = std::to_string(k);
  const std::string ls = std::to_string(l);
  if (k == 3) {
    switch (family) {
      case Family::M0: return "M^3_0";
      case Family::S: return "S_" + ls;
      case Family::H: return "H_" + ls;
      case Family::U3: return "X_4";
      case Family::U4: return "U^3_4";
      case Family::X4: return "X^3_4";
      case Family::W4Exc: return "W^{3,1}_4";
      default: break;
    }
  }
  switch (family) {
    case Family::M0: return "M^" + ks + "_0";
    case Family::M1: return "M^" + ks + "_1";
    case Family::M: return "M^" + ks + "_" + ls;
    case Family::N: return "N^" + ks + "_" + ls;
    case Family::O4: return "O^" + ks + "_4";
    case Family::S: return "S_" + ls;
    case Family::H: return "H_" + ls;
    case Family::P: return "P^" + ks + "_" + ls;
    case Family::Q3: return "Q^" + ks + "_3";
    case Family::Q4: return "Q^" + ks + "_4";
    case Family::Qt4: return "Q~^" + ks + "_4";
    case Family::R4: return "R^" + ks + "_4";
    case Family::U3: return "U^" + ks + "_3";
    case Family::U4: return "U^" + ks + "_4";
    case Family::V4:
      if (params)
        return "V^{" + ks + "," + std::to_string(params->first) + "," + std::to_string(params->second) + "}_4";
      return "V^" + ks + "_4";
    case Family::W4:
      if (params) return "W^{" + ks + "," + std::to_string(params->first) + "}_4";
      return "W^" + ks + "_4";
    case Family::W4Exc: return "W^{" + ks + "," + std::to_string(k / 3) + "}_4";
    case Family::X4: return "X^" + ks + "_4";
    case Family::Y4: return "Y^" + ks + "_4";
    case Family::Unclassified: return "Unclassified";
    case Family::NotFinitelyDetermined: return "NotFinitelyDetermined";
  }
  return "?";
}

std::string branch_name(TwoJetBranch b) {
  switch (b) {
    case TwoJetBranch::Immersion: return "Immersion";
    case TwoJetBranch::Branch1: return "Branch1";
    case TwoJetBranch::Branch2: return "Branch2";
    case TwoJetBranch::Branch3: return "Branch3";
    case TwoJetBranch::Branch4: return "Branch4";
  }
  return "?";
}

TwoJetBranch two_jet_branch(const JetGerm& germ) {
  if (germ.k() < 3) throw std::invalid_argument("two_jet_branch needs k >= 3");
  if (!germ.a(1, 1).is_zero()) return TwoJetBranch::Immersion;
  const bool z21 = germ.a(2, 1).is_zero(), z22 = germ.a(2, 2).is_zero();
  if (!z21 && !z22) return TwoJetBranch::Branch1;
  if (z21 && !z22) return TwoJetBranch::Branch2;
  if (!z21) return TwoJetBranch::Branch3;
  return TwoJetBranch::Branch4;
}

int table_codim(Family family, int l, int k) {
  if (k == 3 && family == Family::U3) return 4;
  switch (family) {
    case Family::M0: return 0;
    case Family::M1: return 1;
    case Family::M:
    case Family::N:
    case Family::H:
    case Family::P: return l;
    case Family::S: return (l + 1) / 2;
    case Family::Q3:
    case Family::U3: return 3;
    case Family::O4:
    case Family::Q4:
    case Family::Qt4:
    case Family::R4:
    case Family::U4:
    case Family::V4:
    case Family::W4:
    case Family::W4Exc:
    case Family::X4:
    case Family::Y4: return 4;
    case Family::Unclassified:
    case Family::NotFinitelyDetermined: return 5;
  }
  return 5;
}

namespace {

// How the indices of an atom are chosen.
enum class Scan {
  None,
  AllJ,        // every j in 1..k-1
  AllPairs,    // every admissible pair
  ExistsJ,     // some j with j != k/2, and j not in {p, 2p} when k = 3p
  ExistsPair,  // some admissible pair; the first one found is the witness
  Bound,       // the witness of an earlier Exists atom
  HalfJ,       // j = 1..k/2 - 1
};

struct Atom {
  std::string cond;
  bool zero;  // required to vanish (true) or not (false)
  Scan scan = Scan::None;
};

Atom Z(const std::string& c, Scan s = Scan::None) { return {c, true, s}; }
Atom NZ(const std::string& c, Scan s = Scan::None) { return {c, false, s}; }

struct Row {
  Family family;
  int l;
  std::vector<Atom> atoms;
};

// Pairs j < j', excluding {p, 2p} when k = 3p.
bool admissible_pair(int k, int j, int jp) {
  if (j >= jp) return false;
  if (k % 3 == 0 && j == k / 3 && jp == 2 * k / 3) return false;
  return true;
}

bool admissible_w_index(int k, int j) {
  if (2 * j == k) return false;
  if (k % 3 == 0 && (j == k / 3 || j == 2 * k / 3)) return false;
  return true;
}

std::vector<Row> rows_branch2(int k) {
  std::vector<Row> rows;
  if (k == 3) {
    rows.push_back({Family::S, 3, {NZ("a31")}});
    rows.push_back({Family::S, 5, {Z("a31"), NZ("a41")}});
    rows.push_back({Family::S, 7, {Z("a31"), Z("a41"), NZ("a51")}});
    return rows;
  }
  const bool even = k % 2 == 0;
  auto m_row = [&](int l) {
    Row r{Family::M, l, {}};
    if (even) r.atoms.push_back(NZ("a33"));
    for (int q = 3; q < l + 1; ++q) r.atoms.push_back(Z("a" + std::to_string(q) + "1"));
    r.atoms.push_back(NZ("a" + std::to_string(l + 1) + "1"));
    return r;
  };
  rows.push_back(m_row(2));
  rows.push_back(m_row(3));
  if (even) rows.push_back({Family::N, 3, {Z("a33"), NZ("a31"), NZ("CndNA3")}});
  rows.push_back(m_row(4));
  if (even) {
    rows.push_back({Family::N, 4, {Z("a33"), Z("CndNA3"), NZ("a31"), NZ("CndNA5")}});
    rows.push_back({Family::O4, 4, {Z("a31"), Z("a33"), NZ("a41"), NZ("a43")}});
  }
  return rows;
}

std::vector<Row> rows_branch3(int k) {
  std::vector<Row> rows;
  if (k == 3) {
    rows.push_back({Family::H, 2, {NZ("CndH2")}});
    rows.push_back({Family::H, 3, {Z("CndH2"), NZ("CndH3")}});
    rows.push_back({Family::H, 4, {Z("CndH2"), Z("CndH3"), NZ("CndH4")}});
    return rows;
  }
  const bool d3 = k % 3 == 0, d4 = k % 4 == 0, d5 = k % 5 == 0;
  {
    Row p2{Family::P, 2, {NZ("a33")}};
    if (d3) p2.atoms.push_back(NZ("CndH2"));
    rows.push_back(p2);
  }
  if (d3) rows.push_back({Family::P, 3, {NZ("a33"), Z("CndH2"), NZ("CndH3")}});
  {
    Row q3{Family::Q3, 3, {Z("a33"), NZ("a44")}};
    if (d3) q3.atoms.push_back(NZ("CndH2"));
    if (d4) q3.atoms.push_back(NZ("CndQm5"));
    rows.push_back(q3);
  }
  if (d3) rows.push_back({Family::P, 4, {NZ("a33"), Z("CndH2"), Z("CndH3"), NZ("CndH4")}});
  if (d3) {
    // a44 != 0 is stated for 4 !| k only; it is needed in both cases.
    Row q4{Family::Q4, 4, {Z("a33"), Z("CndH2"), NZ("a44"), NZ("CndH3")}};
    if (d4) q4.atoms.push_back(NZ("CndQm5"));
    rows.push_back(q4);
  }
  if (d4) {
    Row qt{Family::Qt4, 4, {Z("a33"), Z("CndQm5"), NZ("a44"), NZ("CndQm6")}};
    if (d3) qt.atoms.push_back(NZ("CndH2"));
    rows.push_back(qt);
  }
  {
    Row r4{Family::R4, 4, {Z("a33"), Z("a44"), NZ("a55")}};
    if (d4) r4.atoms.push_back(NZ("CndQm5"));
    if (d5) r4.atoms.push_back(NZ("CndRm5"));
    rows.push_back(r4);
  }
  return rows;
}

std::vector<Row> rows_branch4(int k) {
  std::vector<Row> rows;
  if (k == 3) {
    rows.push_back({Family::U3, 4, {NZ("a31"), NZ("a32"), NZ("a44")}});
    rows.push_back({Family::U4, 4, {Z("a44"), NZ("a31"), NZ("a32"), NZ("CndUm8")}});
    rows.push_back({Family::X4, 4, {Z("a31"), NZ("a32"), NZ("a41"), NZ("a44")}});
    rows.push_back({Family::W4Exc, 4, {Z("a32"), NZ("a31"), NZ("a44"), NZ("CndWtm8")}});
    return rows;
  }
  const bool d2 = k % 2 == 0, d3 = k % 3 == 0;
  {
    Row u3{Family::U3, 3, {NZ("a31"), NZ("a33"), NZ("Delta", Scan::AllJ), NZ("Omega", Scan::AllPairs)}};
    if (d3) u3.atoms.push_back(NZ("a44"));
    rows.push_back(u3);
  }
  if (d3)
    rows.push_back({Family::U4, 4,
                    {NZ("a31"), NZ("a33"), NZ("Delta", Scan::AllJ), NZ("Omega", Scan::AllPairs), Z("a44"),
                     NZ("CndUm8")}});
  rows.push_back({Family::V4, 4,
                  {NZ("a31"), NZ("a33"), Z("Omega", Scan::ExistsPair), NZ("a32"), NZ("a44"),
                   NZ("CndVm5", Scan::Bound)}});
  {
    Row w{Family::W4, 4, {NZ("a31"), NZ("a33"), Z("Delta", Scan::ExistsJ), NZ("CndWA2")}};
    if (d3) w.atoms.push_back(NZ("a44"));
    rows.push_back(w);
  }
  if (d3)
    rows.push_back({Family::W4Exc, 4, {NZ("a31"), NZ("a33"), Z("a32"), NZ("a44"), NZ("CndWtm8")}});
  {
    Row x{Family::X4, 4, {Z("a31"), NZ("a32"), NZ("a33"), NZ("a41")}};
    if (d3) x.atoms.push_back(NZ("a44"));
    rows.push_back(x);
  }
  {
    Row y{Family::Y4, 4, {Z("a33"), NZ("a31"), NZ("a32"), NZ("a44")}};
    if (d2) {
      y.atoms.push_back(NZ("CndYA3"));
      y.atoms.push_back(NZ("CndYm6", Scan::HalfJ));
    }
    rows.push_back(y);
  }
  return rows;
}

class Evaluator {
 public:
  Evaluator(const JetGerm& germ, const ZeroPolicy& zp, ClassifyResult& out) : germ_(germ), zp_(zp), out_(out) {}

  bool vanishes(const std::string& name, std::optional<IndexPair> params) {
    auto key = std::make_pair(name, params.value_or(IndexPair{0, 0}));
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    ConditionValue cv = condition_value(name, germ_, params);
    if (zp_.numeric) {
      const double mag = std::abs(cv.value.to_complex());
      const double thr = zp_.tau * cv.scale;
      cv.vanished = cv.value.is_zero() || mag < thr;
      if (!cv.vanished && mag < 10 * thr) {
        std::ostringstream os;
        os << name;
        if (params) os << "(" << params->first << "," << params->second << ")";
        os << " = " << mag << " is within 10 tau of the zero threshold";
        out_.warnings.push_back(os.str());
      }
    }
    out_.trace.push_back(cv);
    cache_.emplace(key, cv.vanished);
    return cv.vanished;
  }

  // Returns true and fills `witness` when every atom holds.
  bool row_holds(const Row& row, std::optional<IndexPair>& witness) {
    const int k = germ_.k();
    witness.reset();
    for (const Atom& a : row.atoms) {
      auto single = [](int j) { return IndexPair{j, 0}; };
      bool ok = true;
      switch (a.scan) {
        case Scan::None:
          ok = vanishes(a.cond, std::nullopt) == a.zero;
          break;
        case Scan::AllJ:
          for (int j = 1; j < k && ok; ++j) ok = vanishes(a.cond, single(j)) == a.zero;
          break;
        case Scan::HalfJ:
          for (int j = 1; j < k / 2 && ok; ++j) ok = vanishes(a.cond, single(j)) == a.zero;
          break;
        case Scan::AllPairs:
          for (int j = 1; j < k && ok; ++j)
            for (int jp = j + 1; jp < k && ok; ++jp)
              if (admissible_pair(k, j, jp)) ok = vanishes(a.cond, IndexPair{j, jp}) == a.zero;
          break;
        case Scan::ExistsJ:
          ok = false;
          for (int j = 1; j < k && !ok; ++j)
            if (admissible_w_index(k, j) && vanishes(a.cond, single(j)) == a.zero) {
              ok = true;
              witness = IndexPair{std::min(j, k - j), 0};
            }
          break;
        case Scan::ExistsPair:
          ok = false;
          for (int j = 1; j < k && !ok; ++j)
            for (int jp = j + 1; jp < k && !ok; ++jp)
              if (admissible_pair(k, j, jp) && vanishes(a.cond, IndexPair{j, jp}) == a.zero) {
                ok = true;
                witness = IndexPair{j, jp};
              }
          break;
        case Scan::Bound:
          if (!witness) throw std::logic_error("bound condition without a witness");
          ok = vanishes(a.cond, witness) == a.zero;
          break;
      }
      if (!ok) return false;
    }
    return true;
  }

 private:
  const JetGerm& germ_;
  const ZeroPolicy& zp_;
  ClassifyResult& out_;
  std::map<std::pair<std::string, IndexPair>, bool> cache_;
};

}  // namespace

ClassifyResult classify(const JetGerm& germ, const ClassifyOptions& opts) {
  const int k = germ.k();
  if (k == 2) throw std::invalid_argument("classify: k = 2 is outside the stratum tables (k >= 3)");
  if (k < 3) throw std::invalid_argument("classify: k must be at least 3");
  if (germ.degree() < JetGerm::kDefaultDegree)
    throw std::invalid_argument("classify: jet degree " + std::to_string(germ.degree()) + " is below 11");

  ClassifyResult res;
  res.label.k = k;
  res.label.div = DivisibilityContext::of(k);
  Evaluator ev(germ, opts.zero, res);

  // Branch decision through the same zero policy as the rows.
  const bool z11 = ev.vanishes("a11", std::nullopt);
  const bool z21 = z11 && ev.vanishes("a21", std::nullopt);
  const bool z22 = z11 && ev.vanishes("a22", std::nullopt);
  if (!z11)
    res.branch = TwoJetBranch::Immersion;
  else if (!z21 && !z22)
    res.branch = TwoJetBranch::Branch1;
  else if (z21 && !z22)
    res.branch = TwoJetBranch::Branch2;
  else if (!z21)
    res.branch = TwoJetBranch::Branch3;
  else
    res.branch = TwoJetBranch::Branch4;

  auto set = [&](Family f, int l) {
    res.label.family = f;
    res.label.l = l;
    res.label.codim = table_codim(f, l, k);
  };

  if (res.branch == TwoJetBranch::Immersion) {
    set(Family::M0, 0);
    res.rows_matched = 1;
    return res;
  }
  if (res.branch == TwoJetBranch::Branch1) {
    if (k == 3)
      set(Family::S, 1);
    else
      set(Family::M1, 1);
    if (k == 4) res.label.note = "A-simple, equivalent to C_3";
    res.rows_matched = 1;
    return res;
  }

  std::vector<Row> rows;
  if (res.branch == TwoJetBranch::Branch2)
    rows = rows_branch2(k);
  else if (res.branch == TwoJetBranch::Branch3)
    rows = rows_branch3(k);
  else
    rows = rows_branch4(k);

  bool found = false;
  for (const Row& row : rows) {
    std::optional<IndexPair> witness;
    if (!ev.row_holds(row, witness)) continue;
    ++res.rows_matched;
    if (!found) {
      found = true;
      set(row.family, row.l);
      res.label.params = witness;
    }
    if (!opts.check_overlap) break;
  }
  if (opts.check_overlap && res.rows_matched > 1)
    throw std::logic_error("classify: " + std::to_string(res.rows_matched) + " table rows match " +
                           res.label.name());
  if (found) return res;

  InvariantOptions io = opts.invariants;
  io.direct_mu = false;
  const InvariantReport inv = invariant_set(germ, io);
  set(inv.inv.finitely_determined ? Family::Unclassified : Family::NotFinitelyDetermined, 0);
  return res;
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Match: return "MATCH";
    case Verdict::Discrepancy: return "DISCREPANCY";
    case Verdict::NotTabulated: return "NOT_TABULATED";
  }
  return "?";
}

Verdict compare_invariants(const InvariantSet& c, const std::optional<InvariantSet>& e,
                           std::vector<InvariantCheck>& checks) {
  auto opt_str = [](const std::optional<int>& v) { return v ? std::to_string(*v) : std::string("n/a"); };
  auto add = [&](const std::string& name, const std::string& comp, const std::optional<std::string>& exp) {
    InvariantCheck ch;
    ch.name = name;
    ch.computed = comp;
    if (exp) {
      ch.expected = *exp;
      ch.verdict = comp == *exp ? Verdict::Match : Verdict::Discrepancy;
    } else {
      ch.expected = "n/a";
      ch.verdict = Verdict::NotTabulated;
    }
    checks.push_back(ch);
  };
  add("C", c.C.str(), e ? std::optional<std::string>(e->C.str()) : std::nullopt);
  add("T", opt_str(c.T), e ? std::optional<std::string>(opt_str(e->T)) : std::nullopt);
  add("mu", c.muD.str(), e ? std::optional<std::string>(e->muD.str()) : std::nullopt);
  add("r", opt_str(c.rD), e ? std::optional<std::string>(opt_str(e->rD)) : std::nullopt);
  if (!e) return Verdict::NotTabulated;
  for (const auto& ch : checks)
    if (ch.verdict != Verdict::Match) return Verdict::Discrepancy;
  return Verdict::Match;
}

StratumReport stratum_report(const JetGerm& germ, const ClassifyOptions& opts) {
  StratumReport rep;
  rep.classification = classify(germ, opts);
  rep.computed = invariant_set(germ, opts.invariants);
  rep.warnings = rep.classification.warnings;
  for (const auto& w : rep.computed.warnings) rep.warnings.push_back(w);
  rep.expected = expected_invariants(rep.classification.label);
  rep.verdict = compare_invariants(rep.computed.inv, rep.expected, rep.checks);
  for (const auto& ch : rep.checks)
    if (ch.verdict == Verdict::Discrepancy)
      rep.warnings.push_back(ch.name + " discrepancy: computed " + ch.computed + ", table " + ch.expected);
  return rep;
}

TableRow table_row(const NormalFormCase& c, const InvariantOptions& opts) {
  TableRow row;
  row.nf = c;
  row.computed = invariant_set(JetGerm(c.label.k, c.f), opts);
  row.expected = expected_invariants(c.label);
  row.verdict = compare_invariants(row.computed.inv, row.expected, row.checks);
  return row;
}

}  // namespace kfold
