#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kfold/conditions.hpp"
#include "kfold/folding.hpp"

namespace kfold {

enum class Family {
  M0,
  M1,
  M,       // M_l, l = 2..4
  N,       // N_l, l = 3, 4
  O4,
  S,       // k = 3, S_l for odd l
  H,       // k = 3, H_l
  P,       // P_l, l = 2..4
  Q3,
  Q4,
  Qt4,     // Q-tilde
  R4,
  U3,
  U4,
  V4,
  W4,
  W4Exc,   // W^{3p,p}
  X4,
  Y4,
  Unclassified,
  NotFinitelyDetermined,
};

std::string family_name(Family f);

struct DivisibilityContext {
  bool d2 = false, d3 = false, d4 = false, d5 = false, d12 = false, d20 = false;
  static DivisibilityContext of(int k);
  std::string str() const;  // e.g. "2|k,4|k"
};

struct StratumLabel {
  Family family = Family::Unclassified;
  int k = 0;
  int l = 0;                          // subscript, 0 when the family has none
  std::optional<IndexPair> params;    // V: (j, j'); W: (j, 0)
  int codim = 5;                      // 5 stands for ">= 5"
  DivisibilityContext div;
  std::string note;

  // "M^5_2", "V^{6,1,5}_4", "S_3" (k = 3), "Unclassified", ...
  std::string name() const;
  bool is_table_family() const { return family != Family::Unclassified && family != Family::NotFinitelyDetermined; }
};

enum class TwoJetBranch { Immersion, Branch1, Branch2, Branch3, Branch4 };
std::string branch_name(TwoJetBranch b);
TwoJetBranch two_jet_branch(const JetGerm& germ);

// Exact mode decides vanishing by exact zero. Numeric mode (germs built from
// floating data) treats |v| < tau * scale as zero and warns when
// |v| < 10 * tau * scale on the nonzero side.
struct ZeroPolicy {
  bool numeric = false;
  double tau = 1e-9;
};

struct ClassifyOptions {
  ZeroPolicy zero;
  // Evaluate every row of the branch and throw std::logic_error if more than one matches.
  bool check_overlap = false;
  // Used to tell Unclassified from NotFinitelyDetermined when no row matches.
  InvariantOptions invariants;
};

struct ClassifyResult {
  StratumLabel label;
  TwoJetBranch branch = TwoJetBranch::Immersion;
  std::vector<ConditionValue> trace;
  std::vector<std::string> warnings;
  int rows_matched = 0;  // only meaningful with check_overlap
};

// Throws std::invalid_argument for k < 3 or a jet of degree below 11.
ClassifyResult classify(const JetGerm& germ, const ClassifyOptions& opts = {});

// Closed-form invariants of the stratum tables; nullopt for Unclassified,
// NotFinitelyDetermined or a family not admissible at label.k.
std::optional<InvariantSet> expected_invariants(const StratumLabel& label);

// Normal forms. Returns nullopt when the family is not admissible for k.
// V needs params (j, j'), W needs params (j, 0); others ignore params.
bool admissible(Family family, int k, int l = 0, std::optional<IndexPair> params = std::nullopt);
std::optional<CycloPoly> normal_form(Family family, int k, int l = 0, std::optional<IndexPair> params = std::nullopt);

struct NormalFormCase {
  StratumLabel label;  // family, k, l, params, codim as the tables give them
  CycloPoly f;
};
// Every admissible normal form at k (all V pairs and W indices).
std::vector<NormalFormCase> normal_form_cases(int k);

// Codimension of a table row, 5 for the non-table outcomes.
int table_codim(Family family, int l, int k);

enum class Verdict { Match, Discrepancy, NotTabulated };
std::string verdict_name(Verdict v);

struct InvariantCheck {
  std::string name;  // "C", "T", "mu", "r"
  std::string computed;
  std::string expected;
  Verdict verdict = Verdict::NotTabulated;
};

struct StratumReport {
  ClassifyResult classification;
  InvariantReport computed;
  std::optional<InvariantSet> expected;
  std::vector<InvariantCheck> checks;
  Verdict verdict = Verdict::NotTabulated;  // Match iff every check matches
  std::vector<std::string> warnings;
};

StratumReport stratum_report(const JetGerm& germ, const ClassifyOptions& opts = {});

// Fills one check per invariant (C, T, mu, r); Match only if all four match.
Verdict compare_invariants(const InvariantSet& computed, const std::optional<InvariantSet>& expected,
                           std::vector<InvariantCheck>& checks);

// A normal form's computed invariants against its own table row.
struct TableRow {
  NormalFormCase nf;
  InvariantReport computed;
  std::optional<InvariantSet> expected;
  std::vector<InvariantCheck> checks;
  Verdict verdict = Verdict::NotTabulated;
};

TableRow table_row(const NormalFormCase& c, const InvariantOptions& opts = {});

}  // namespace kfold
