// Acceptance suite: one PASS/FAIL line per criterion. Every criterion also
// renders a text artifact; the whole suite runs with one worker, with four
// workers and with one worker again, and the artifacts must agree byte for byte.
#include <chrono>
#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "kfold/classify.hpp"
#include "kfold/features.hpp"
#include "kfold/umbilic.hpp"
#include "kfold_io.hpp"

using namespace kfold;
using kfold::io::format_double;

namespace {

// Pinned tolerances.
constexpr double kCrit1Seconds = 5.0;
constexpr double kCrit3MatchFraction = 0.80;
constexpr double kCrit4Seconds = 600.0;
constexpr double kCrit6ImagTol = 1e-10;
constexpr int kCrit7MaxContact = 12;
constexpr double kCrit8Band = 1e-6;
constexpr double kCrit9Deviation = 1e-6;
constexpr double kCrit9Seconds = 30.0;
constexpr double kCrit9Angle = 1e-3;

struct Outcome {
  bool pass = true;
  std::string detail;
  std::string artifact;
  double seconds = 0;
};

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

RatPoly poly(std::initializer_list<std::tuple<int, int, long>> terms) {
  RatPoly p;
  for (const auto& [i, j, c] : terms) p.add_term(i, j, Rational(c));
  return p;
}

std::string inv_str(const InvariantSet& s) {
  std::ostringstream os;
  os << "(" << s.C.str() << "," << (s.T ? std::to_string(*s.T) : "-") << "," << s.muD.str() << ","
     << (s.rD ? std::to_string(*s.rD) : "-") << ")";
  return os.str();
}

bool inv_equals(const InvariantSet& s, int C, int T, int mu, int r) {
  return s.finitely_determined && s.C == LocalDim::finite(C) && s.T == T && s.muD == LocalDim::finite(mu) && s.rD == r;
}

std::optional<NormalFormCase> find_case(int k, Family fam, int l) {
  for (auto& c : normal_form_cases(k))
    if (c.label.family == fam && c.label.l == l) return c;
  return std::nullopt;
}

// 1. xy + y^2 has (k-1, 0, (k-2)^2, k-1).
Outcome criterion1(int workers) {
  Outcome o;
  const auto t0 = Clock::now();
  InvariantOptions opts;
  opts.workers = workers;
  int bad = 0;
  for (int k = 3; k <= 10; ++k) {
    const InvariantReport r = invariant_set(JetGerm(k, poly({{1, 1, 1}, {0, 2, 1}})), opts);
    const bool ok = inv_equals(r.inv, k - 1, 0, (k - 2) * (k - 2), k - 1) && r.mu_consistent;
    bad += !ok;
    o.artifact += "k=" + std::to_string(k) + " " + inv_str(r.inv) + (ok ? " ok\n" : " BAD\n");
  }
  o.seconds = since(t0);
  o.pass = bad == 0 && o.seconds < kCrit1Seconds;
  o.detail = std::to_string(8 - bad) + "/8 exact in " + format_double(std::round(o.seconds * 1000) / 1000) + " s";
  return o;
}

// 2. P_2 rows, closed form when 3 does not divide k, table rows when it does.
Outcome criterion2(int workers) {
  Outcome o;
  InvariantOptions opts;
  opts.workers = workers;
  int checked = 0, bad = 0;
  for (int k : {4, 5, 7, 8}) {
    const auto c = find_case(k, Family::P, 2);
    if (!c) {
      ++bad;
      continue;
    }
    const InvariantReport r = invariant_set(JetGerm(k, c->f), opts);
    const bool ok = inv_equals(r.inv, k - 1, (k - 1) * (k - 2) / 6, (2 * k - 3) * (k - 2), k - 1);
    ++checked;
    bad += !ok;
    o.artifact += c->label.name() + " " + inv_str(r.inv) + (ok ? " ok\n" : " BAD\n");
    if (k == 5 && !inv_equals(r.inv, 4, 2, 21, 4)) ++bad;
  }
  for (int k : {3, 6, 9}) {
    // At k = 3 the P rows are the H rows.
    const Family fam = k == 3 ? Family::H : Family::P;
    for (int l : {2, 3}) {
      const auto c = find_case(k, fam, l);
      if (!c) {
        ++bad;
        continue;
      }
      TableRow row = table_row(*c, opts);
      const bool ok = row.verdict == Verdict::Match;
      ++checked;
      bad += !ok;
      o.artifact += c->label.name() + " " + inv_str(row.computed.inv) + " table " +
                    (row.expected ? inv_str(*row.expected) : "-") + (ok ? " ok\n" : " BAD\n");
    }
  }
  o.pass = bad == 0 && checked == 10;
  o.detail = std::to_string(checked - bad) + "/10 rows exact";
  return o;
}

std::vector<TableRow> all_rows(int workers, int k0, int k1) {
  std::vector<NormalFormCase> cases;
  for (int k = k0; k <= k1; ++k)
    for (auto& c : normal_form_cases(k)) cases.push_back(std::move(c));
  std::vector<TableRow> rows(cases.size());
  parallel_for(static_cast<int>(cases.size()), workers, [&](int i) { rows[i] = table_row(cases[i]); });
  return rows;
}

bool suspect(const StratumLabel& l) {
  return (l.family == Family::M && l.k % 2 == 0) || l.family == Family::O4;
}

// 3. Every row: both mu routes agree; at least 80% MATCH; only suspect rows may disagree.
Outcome criterion3(int workers) {
  Outcome o;
  const std::vector<TableRow> rows = all_rows(workers, 3, 10);
  int match = 0, disagree_routes = 0, unexpected = 0;
  for (const TableRow& r : rows) {
    const bool routes = !r.computed.inv.finitely_determined ||
                        (r.computed.mu_direct && *r.computed.mu_direct == r.computed.mu_aggregate && r.computed.mu_consistent);
    disagree_routes += !routes;
    match += r.verdict == Verdict::Match;
    if (r.verdict != Verdict::Match && !suspect(r.nf.label)) ++unexpected;
    o.artifact += r.nf.label.name() + " k=" + std::to_string(r.nf.label.k) + " " + inv_str(r.computed.inv) +
                  " table " + (r.expected ? inv_str(*r.expected) : "-") + " " + verdict_name(r.verdict) +
                  (routes ? "" : " ROUTES-DISAGREE") + "\n";
  }
  const double frac = rows.empty() ? 0.0 : static_cast<double>(match) / rows.size();
  o.pass = disagree_routes == 0 && unexpected == 0 && frac >= kCrit3MatchFraction;
  o.detail = std::to_string(match) + "/" + std::to_string(rows.size()) + " MATCH, " + std::to_string(unexpected) +
             " non-suspect mismatches, " + std::to_string(disagree_routes) + " mu route disagreements";
  return o;
}

// 4. Normal forms classify to their own stratum (all V pairs included).
Outcome criterion4(int workers) {
  Outcome o;
  const auto t0 = Clock::now();
  std::vector<NormalFormCase> cases;
  for (int k = 3; k <= 10; ++k)
    for (auto& c : normal_form_cases(k)) cases.push_back(std::move(c));
  std::vector<std::string> lines(cases.size());
  std::vector<char> ok(cases.size(), 0);
  ClassifyOptions opts;
  opts.check_overlap = true;
  parallel_for(static_cast<int>(cases.size()), workers, [&](int i) {
    const NormalFormCase& c = cases[i];
    const ClassifyResult r = classify(JetGerm(c.label.k, c.f), opts);
    ok[i] = r.label.family == c.label.family && r.label.l == c.label.l && r.label.codim == c.label.codim &&
            r.rows_matched == 1;
    lines[i] = c.label.name() + " -> " + r.label.name() + (ok[i] ? "\n" : " BAD\n");
  });
  int good = 0;
  for (size_t i = 0; i < cases.size(); ++i) {
    good += ok[i];
    o.artifact += lines[i];
  }
  o.seconds = since(t0);
  o.pass = good == static_cast<int>(cases.size()) && o.seconds < kCrit4Seconds;
  o.detail = std::to_string(good) + "/" + std::to_string(cases.size()) + " normal forms in " +
             format_double(std::round(o.seconds * 10) / 10) + " s";
  return o;
}

// 5. vartheta lemma.
Outcome criterion5() {
  Outcome o;
  long assertions = 0, failures = 0;
  for (int k = 2; k <= 30; ++k)
    for (int s = 0; s <= 12; ++s) {
      std::vector<CycloNum> v(k);
      for (int j = 1; j < k; ++j) {
        v[j] = vartheta(s, j, k);
        failures += v[j].is_zero() != ((s * j) % k == 0);
        failures += v[j].is_one() != (((s - 1) * j) % k == 0);
        assertions += 2;
      }
      for (int j = 1; j < k; ++j)
        for (int jp = j + 1; jp < k; ++jp)
          if (v[j] == v[jp]) {
            failures += !(v[j].is_zero() || v[j].is_one());
            ++assertions;
          }
    }
  o.pass = failures == 0;
  o.detail = std::to_string(assertions) + " assertions, " + std::to_string(failures) + " failures";
  o.artifact = o.detail + "\n";
  return o;
}

// 6. Delta / Omega / alpha properties and generic Branch-4 contacts.
Outcome criterion6(int workers) {
  Outcome o;
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
  auto rat = [&] {
    int n = 0;
    while (n == 0) n = num(rng);
    return make_rational(n, den(rng));
  };
  long d_checks = 0, d_fail = 0, a_checks = 0, a_fail = 0, r_checks = 0, r_fail = 0;
  for (int k = 3; k <= 24; ++k) {
    for (int trial = 0; trial < 3; ++trial) {
      RatPoly f;
      f.add_term(2, 1, rat());
      f.add_term(1, 2, make_rational(num(rng), den(rng)));
      f.add_term(0, 3, rat());
      const JetGerm g(k, f);
      for (int j = 1; j < k; ++j) {
        const CycloNum lhs = condition_value("Delta", g, IndexPair{j, 0}).value;
        const CycloNum rhs = g.xi_pow(2 * j) * condition_value("Delta", g, IndexPair{k - j, 0}).value;
        d_fail += !(lhs == rhs);
        ++d_checks;
      }
    }
    const JetGerm probe(k, poly({{1, 1, 1}}));
    auto alpha = [&](int j, int jp) -> std::optional<CycloNum> {
      j = ((j % k) + k) % k;
      jp = ((jp % k) + k) % k;
      try {
        return condition_value("alpha_jj", probe, IndexPair{j, jp}).value;
      } catch (const std::domain_error&) {
        return std::nullopt;  // 1 + xi^j + xi^j' = 0
      }
    };
    for (int j = 1; j < k; ++j)
      for (int jp = 1; jp < k; ++jp) {
        if (j == jp) continue;
        const auto a = alpha(j, jp);
        if (!a) continue;
        const auto b = alpha(jp, j), c = alpha(k - j, jp - j), d = alpha(k - jp, j - jp);
        a_fail += !(b && c && d && *a == *b && *a == *c && *a == *d);
        ++a_checks;
        const bool real = std::abs(a->to_complex().imag()) < kCrit6ImagTol;
        const bool predicted = (j + jp) % k == 0 || jp % k == (2 * j) % k || j % k == (2 * jp) % k;
        r_fail += real != predicted;
        ++r_checks;
        o.artifact += "k=" + std::to_string(k) + " j=" + std::to_string(j) + " j'=" + std::to_string(jp) +
                      (real ? " real" : " complex") + "\n";
      }
  }

  // Item (7): random Branch-4 germs with a31 a33 != 0 and every Delta and Omega nonzero.
  int germs = 0, c_fail = 0, attempts = 0;
  std::uniform_int_distribution<int> kd(4, 8), coef(-3, 3);
  InvariantOptions iopts;
  iopts.workers = workers;
  while (germs < 50 && attempts < 1000) {
    ++attempts;
    const int k = kd(rng);
    RatPoly f;
    f.add_term(2, 0, Rational(coef(rng)));
    for (int d = 3; d <= 5; ++d)
      for (int s = 0; s <= d; ++s) f.add_term(d - s, s, Rational(coef(rng)));
    const JetGerm g(k, f);
    if (two_jet_branch(g) != TwoJetBranch::Branch4 || g.a(3, 1).is_zero() || g.a(3, 3).is_zero()) continue;
    bool generic = true;
    for (int j = 1; j < k && generic; ++j) generic = !condition_value("Delta", g, IndexPair{j, 0}).vanished;
    for (int j = 1; j < k && generic; ++j)
      for (int jp = j + 1; jp < k && generic; ++jp) {
        try {
          generic = !condition_value("Omega", g, IndexPair{j, jp}).vanished;
        } catch (const std::domain_error&) {
          generic = false;
        }
      }
    if (!generic) continue;
    ++germs;
    std::string line = "k=" + std::to_string(k) + " " + to_string(f) + ":";
    for (int j = 1; j < k; ++j)
      for (int jp = j + 1; jp < k; ++jp) {
        const PairContact p = pair_data(g, j, jp);
        c_fail += !(p.contact == LocalDim::finite(4));
        line += " " + p.contact.str();
      }
    o.artifact += line + "\n";
  }
  o.pass = d_fail == 0 && a_fail == 0 && r_fail == 0 && c_fail == 0 && germs == 50;
  o.detail = "(1) " + std::to_string(d_checks - d_fail) + "/" + std::to_string(d_checks) + ", (3) " +
             std::to_string(a_checks - a_fail) + "/" + std::to_string(a_checks) + ", (4) " +
             std::to_string(r_checks - r_fail) + "/" + std::to_string(r_checks) + ", (7) " + std::to_string(germs) +
             " germs, " + std::to_string(c_fail) + " pair contacts != 4";
  return o;
}

// 7. Intersection multiplicity against the parametrized contact.
Outcome criterion7() {
  Outcome o;
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> coef(-4, 4), mdist(1, kCrit7MaxContact);
  int bad = 0;
  for (int trial = 0; trial < 100; ++trial) {
    // g = y - x^2 * (random series), regular; h = g * unit + x^m + higher order.
    RatPoly g;
    g.add_term(0, 1, Rational(1));
    for (int i = 2; i <= 6; ++i) g.add_term(i, 0, Rational(coef(rng)));
    RatPoly unit;
    unit.add_term(0, 0, Rational(1));
    unit.add_term(1, 0, Rational(coef(rng)));
    unit.add_term(0, 1, Rational(coef(rng)));
    const int m = mdist(rng);
    RatPoly h = g * unit;
    h.add_term(m, 0, Rational(1));
    h.add_term(m + 1, 0, Rational(coef(rng)));
    h.add_term(m, 1, Rational(coef(rng)));
    const LocalDim im = intersection_multiplicity(g, h);
    const std::optional<int> pc = parametrized_contact(g, h, 2 * kCrit7MaxContact);
    const bool ok = pc && im == LocalDim::finite(*pc) && *pc == m;
    bad += !ok;
    o.artifact += "m=" + std::to_string(m) + " I=" + im.str() + " P=" + (pc ? std::to_string(*pc) : "none") +
                  (ok ? "\n" : " BAD\n");
  }
  o.pass = bad == 0;
  o.detail = std::to_string(100 - bad) + "/100 pairs agree";
  return o;
}

// 8. Umbilic direction counts by region.
Outcome criterion8() {
  Outcome o;
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  const auto outer = outer_hypocycloid(1 << 14), inner = inner_hypocycloid(1 << 14);
  int counts[3] = {0, 0, 0}, mismatches = 0, band_mismatches = 0;
  const std::pair<int, int> want[3] = {{3, 3}, {1, 1}, {3, 1}};
  int guard = 0;
  while ((counts[0] < 200 || counts[1] < 200 || counts[2] < 200) && guard++ < 1000000) {
    const std::complex<double> b(15.0 * U(rng), 15.0 * U(rng));
    const bool in_outer = winding_number(outer, b) != 0, in_inner = winding_number(inner, b) != 0;
    const int region = in_inner ? 0 : !in_outer ? 1 : 2;
    if (counts[region] >= 200) continue;
    ++counts[region];
    const UmbilicReport r = umbilic_analysis(b, kCrit8Band);
    const bool ok = r.m_dir_count == want[region].first && r.n_dir_count == want[region].second;
    if (!ok) {
      if (r.degenerate)
        ++band_mismatches;
      else
        ++mismatches;
    }
    o.artifact += format_double(b.real()) + " " + format_double(b.imag()) + " region=" + std::to_string(region) +
                  " counts=(" + std::to_string(r.m_dir_count) + "," + std::to_string(r.n_dir_count) + ")" +
                  (ok ? "\n" : r.degenerate ? " band\n" : " BAD\n");
  }
  o.pass = mismatches == 0 && counts[0] == 200 && counts[1] == 200 && counts[2] == 200;
  o.detail = "600 samples, " + std::to_string(mismatches) + " mismatches outside the band, " +
             std::to_string(band_mismatches) + " inside";
  return o;
}

// 9. Parabolic lines of a quartic saddle; A2* tangency on a crafted patch.
Outcome criterion9(int workers) {
  Outcome o;
  SurfacePatch s;
  s.f = RatPoly();
  s.f.add_term(2, 0, Rational(1, 2));
  s.f.add_term(0, 2, Rational(-1, 2));
  s.f.add_term(0, 4, Rational(1));
  s.x0 = s.y0 = -0.5;
  s.x1 = s.y1 = 0.5;
  s.nx = s.ny = 256;
  TraceOptions opts;
  opts.workers = workers;
  const auto t0 = Clock::now();
  const auto curves = trace_features(s, {Feature::Parabolic}, opts);
  o.seconds = since(t0);
  const double y0 = 1.0 / (2.0 * std::sqrt(3.0));
  double dev = 0;
  bool upper = false, lower = false;
  for (const auto& c : curves)
    for (const auto& p : c.points) {
      dev = std::max(dev, std::abs(std::abs(p[1]) - y0));
      (p[1] > 0 ? upper : lower) = true;
    }
  o.artifact = kfold::io::curves_csv(curves);

  // f = x^2/2 + x^2 y + x y^2 + y^3 + y^5 has an A2* point at the origin.
  SurfacePatch c;
  c.f.add_term(2, 0, Rational(1, 2));
  c.f.add_term(2, 1, Rational(1));
  c.f.add_term(1, 2, Rational(1));
  c.f.add_term(0, 3, Rational(1));
  c.f.add_term(0, 5, Rational(1));
  c.x0 = c.y0 = -0.3;
  c.x1 = c.y1 = 0.3;
  c.nx = c.ny = 96;
  const auto feats = trace_features(c, {Feature::Parabolic, Feature::H3}, opts);
  const auto pts = feature_points(feats, c);
  std::optional<TangencyMeasure> tm;
  for (const auto& p : pts)
    if (p.type == "A2*") {
      tm = a2star_tangency(c, p.x, p.y);
      o.artifact += "A2* " + format_double(p.x) + " " + format_double(p.y) + "\n";
      break;
    }
  if (tm) o.artifact += "angle " + format_double(tm->angle) + "\n";
  const bool para_ok = upper && lower && dev <= kCrit9Deviation && o.seconds < kCrit9Seconds;
  const bool tan_ok = tm && tm->angle < kCrit9Angle;
  o.pass = para_ok && tan_ok;
  std::ostringstream d;
  d << "parabolic max deviation " << dev << " in " << o.seconds << " s; A2* tangency angle "
    << (tm ? std::to_string(tm->angle) : std::string("not found"));
  o.detail = d.str();
  return o;
}

std::vector<Outcome> run_all(int workers) {
  return {criterion1(workers), criterion2(workers), criterion3(workers), criterion4(workers), criterion5(),
          criterion6(workers), criterion7(), criterion8(), criterion9(workers)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string artifact_dir = argc > 1 ? argv[1] : "";
  const std::vector<int> configs = {1, 4, 1};
  std::vector<std::vector<Outcome>> runs;
  for (int w : configs) runs.push_back(run_all(w));

  if (!artifact_dir.empty()) {
    for (size_t r = 0; r < runs.size(); ++r) {
      const std::filesystem::path dir = std::filesystem::path(artifact_dir) / ("run" + std::to_string(r + 1));
      std::filesystem::create_directories(dir);
      for (size_t i = 0; i < runs[r].size(); ++i)
        std::ofstream(dir / ("criterion" + std::to_string(i + 1) + ".txt"), std::ios::binary) << runs[r][i].artifact;
    }
  }

  bool all = true;
  const std::vector<Outcome>& first = runs.front();
  for (size_t i = 0; i < first.size(); ++i) {
    std::cout << "criterion " << i + 1 << ": " << (first[i].pass ? "PASS" : "FAIL") << "  " << first[i].detail << "\n";
    all = all && first[i].pass;
  }
  int differing = 0;
  for (size_t i = 0; i < first.size(); ++i)
    for (size_t r = 1; r < runs.size(); ++r) differing += runs[r][i].artifact != first[i].artifact;
  std::cout << "criterion 10: " << (differing == 0 ? "PASS" : "FAIL") << "  artifacts of criteria 1-9 compared over "
            << "runs with 1, 4 and 1 workers, " << differing << " differ\n";
  all = all && differing == 0;
  return all ? 0 : 1;
}
