#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <regex>
#include <sstream>
#include <tuple>

#include "kfold_io.hpp"

using namespace kfold;
using kfold::io::InputError;
using kfold::io::json;

namespace {

struct Options {
  std::string input, out, k_range, family, features, grid, beta;
  int k = 0;
  double tol_class = SurfaceTolerances{}.cls;
  unsigned long seed = 1;
  int workers = 0;
  bool verbose = false;
};

void note(const std::string& msg) { std::cerr << "note: " << msg << '\n'; }

int cmd_classify(const Options& o) {
  const io::GermDoc doc = io::germ_from_json(io::parse_json(io::read_file(o.input)));
  if (doc.degree < JetGerm::kDefaultDegree)
    throw InputError("jet degree 11 required (got degree " + std::to_string(doc.degree) + ")");
  ClassifyOptions opts;
  opts.invariants.workers = o.workers;
  StratumReport rep;
  try {
    rep = stratum_report(doc.germ(), opts);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  io::write_file(o.out, io::stratum_report_json(rep).dump(2) + "\n");
  if (o.verbose)
    for (const auto& w : rep.warnings) std::cerr << "warning: " << w << '\n';
  return rep.classification.label.is_table_family() ? 0 : 2;
}

int cmd_invariants(const Options& o) {
  const io::GermDoc doc = io::germ_from_json(io::parse_json(io::read_file(o.input)));
  InvariantOptions opts;
  opts.workers = o.workers;
  InvariantReport rep;
  try {
    rep = invariant_set(doc.germ(), opts);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  json out = io::invariant_report_json(rep);
  out["k"] = doc.k;
  io::write_file(o.out, out.dump(2) + "\n");
  if (o.verbose)
    for (const auto& w : rep.warnings) std::cerr << "warning: " << w << '\n';
  return rep.inv.finitely_determined ? 0 : 2;
}

std::pair<int, int> k_bounds(const Options& o) {
  if (!o.k_range.empty()) {
    static const std::regex re(R"(^\s*(\d+)\s*\.\.\s*(\d+)\s*$)");
    std::smatch m;
    if (!std::regex_match(o.k_range, m, re)) throw InputError("--k-range must look like a..b");
    const int a = std::stoi(m[1]), b = std::stoi(m[2]);
    if (a > b) throw InputError("--k-range is empty");
    return {a, b};
  }
  if (o.k > 0) return {o.k, o.k};
  throw InputError("give --k or --k-range");
}

struct FamilyFilter {
  std::optional<Family> family;  // nullopt: all
  std::optional<int> l;
};

FamilyFilter parse_family(const std::string& s) {
  if (s.empty() || s == "all") return {};
  for (int f = 0; f <= static_cast<int>(Family::Y4); ++f)
    if (family_name(static_cast<Family>(f)) == s) return {static_cast<Family>(f), std::nullopt};
  if (s == "Wexc" || s == "W4Exc") return {Family::W4Exc, std::nullopt};
  static const std::regex re(R"(^([MNPSH])(\d*)$)");
  std::smatch m;
  if (std::regex_match(s, m, re)) {
    const char c = m[1].str()[0];
    const Family f = c == 'M' ? Family::M : c == 'N' ? Family::N : c == 'P' ? Family::P : c == 'S' ? Family::S : Family::H;
    FamilyFilter ff{f, std::nullopt};
    if (!m[2].str().empty()) ff.l = std::stoi(m[2]);
    // M_0, M_1 are their own families.
    if (f == Family::M && ff.l && *ff.l <= 1) return {*ff.l == 0 ? Family::M0 : Family::M1, std::nullopt};
    return ff;
  }
  throw InputError("unknown family '" + s + "'");
}

bool selects(const FamilyFilter& ff, const StratumLabel& l) {
  if (!ff.family) return true;
  Family want = *ff.family;
  std::optional<int> wl = ff.l;
  // k = 3 names: S_l covers M_(l+1)/2 and H_l covers P_l.
  if (l.k == 3) {
    if (want == Family::P) want = Family::H;
    if (want == Family::M1) return l.family == Family::S && l.l == 1;
    if (want == Family::M) {
      want = Family::S;
      if (wl) wl = 2 * *wl - 1;
    }
  }
  if (l.family != want) return false;
  return !wl || l.l == *wl;
}

int cmd_table(const Options& o) {
  const auto [ka, kb] = k_bounds(o);
  if (ka < 3) throw InputError("the stratum tables start at k = 3");
  const FamilyFilter ff = parse_family(o.family);
  std::vector<NormalFormCase> cases;
  for (int k = ka; k <= kb; ++k) {
    size_t before = cases.size();
    for (auto& c : normal_form_cases(k))
      if (selects(ff, c.label)) cases.push_back(std::move(c));
    if (cases.size() == before) note(o.family + " skipped at k = " + std::to_string(k) + ": not admissible");
  }
  std::vector<TableRow> rows(cases.size());
  InvariantOptions opts;
  parallel_for(static_cast<int>(cases.size()), o.workers, [&](int i) { rows[i] = table_row(cases[i], opts); });
  std::string csv = io::table_csv_header();
  int mismatched_routes = 0;
  for (const auto& r : rows) {
    csv += io::table_csv_row(r);
    if (!r.computed.mu_consistent) ++mismatched_routes;
  }
  io::write_file(o.out, csv);
  if (mismatched_routes) std::cerr << "warning: " << mismatched_routes << " rows with disagreeing mu routes\n";
  return 0;
}

std::vector<Feature> parse_features(const std::string& s, int k) {
  std::vector<Feature> out;
  if (s.empty()) {
    out = {Feature::Parabolic, Feature::Ridge, Feature::SubParabolic, Feature::Flecnodal, Feature::H3};
  } else {
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
      auto f = parse_feature(item);
      if (!f) throw InputError("unknown feature '" + item + "'");
      out.push_back(*f);
    }
  }
  if (k > 0 && k % 2 == 1) {
    const auto it = std::find(out.begin(), out.end(), Feature::Ridge);
    if (it != out.end()) {
      out.erase(it);
      note("ridges are not captured for odd k; ridge tracing skipped");
    }
  }
  return out;
}

int cmd_surface(const Options& o) {
  SurfacePatch s = io::surface_from_json(io::parse_json(io::read_file(o.input)));
  if (!o.grid.empty()) {
    static const std::regex re(R"(^(\d+)(?:[x,](\d+))?$)");
    std::smatch m;
    if (!std::regex_match(o.grid, m, re)) throw InputError("--grid must be N or NxM");
    s.nx = std::stoi(m[1]);
    s.ny = m[2].matched ? std::stoi(m[2]) : s.nx;
    try {
      s.validate();
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
  }
  const std::vector<Feature> feats = parse_features(o.features, o.k);
  TraceOptions opts;
  opts.workers = o.workers;
  opts.tol.cls = o.tol_class;
  const auto curves = trace_features(s, feats, opts);
  std::vector<SpecialPoint> points;
  for (const auto& c : curves)
    for (const auto& p : c.special_points) points.push_back(p);
  for (const auto& p : feature_points(curves, s)) points.push_back(p);
  std::stable_sort(points.begin(), points.end(), [](const SpecialPoint& a, const SpecialPoint& b) {
    return std::tie(a.type, a.x, a.y) < std::tie(b.type, b.x, b.y);
  });
  points.erase(std::unique(points.begin(), points.end(),
                           [](const SpecialPoint& a, const SpecialPoint& b) {
                             return a.type == b.type && a.x == b.x && a.y == b.y;
                           }),
               points.end());

  for (Feature f : feats) {
    if (f != Feature::Flecnodal && f != Feature::H3) continue;
    if (std::none_of(curves.begin(), curves.end(), [f](const FeatureCurve& c) { return c.feature == f; })) {
      bool hyperbolic = false;
      for (int j = 0; j < s.ny && !hyperbolic; j += 4)
        for (int i = 0; i < s.nx && !hyperbolic; i += 4) {
          const double x = s.x0 + (s.x1 - s.x0) * i / (s.nx - 1), y = s.y0 + (s.y1 - s.y0) * j / (s.ny - 1);
          hyperbolic = monge_at_point(s, x, y, 2).asymptotic_theta.size() == 2;
        }
      if (!hyperbolic) note(feature_name(f) + " is masked: the patch has no hyperbolic region");
    }
  }

  const std::string dir = o.out.empty() ? "." : o.out;
  std::filesystem::create_directories(dir);
  io::write_file(dir + "/curves.csv", io::curves_csv(curves));
  io::write_file(dir + "/points.csv", io::points_csv(points));
  io::write_file(dir + "/overlay.svg", io::overlay_svg(s, curves, points));
  if (o.verbose) std::cerr << curves.size() << " curves, " << points.size() << " special points\n";
  return 0;
}

std::complex<double> parse_beta(const std::string& text) {
  std::string s;
  for (char c : text)
    if (c != ' ') s += c;
  static const std::regex full(R"(^([+-]?[0-9.]+(?:e[+-]?\d+)?)([+-][0-9.]*(?:e[+-]?\d+)?)i$)");
  static const std::regex real(R"(^[+-]?[0-9.]+(?:e[+-]?\d+)?$)");
  static const std::regex imag(R"(^([+-]?[0-9.]*(?:e[+-]?\d+)?)i$)");
  std::smatch m;
  auto num = [](std::string t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    size_t pos = 0;
    const double v = std::stod(t, &pos);
    if (pos != t.size()) throw InputError("bad number in --beta");
    return v;
  };
  try {
    if (std::regex_match(s, m, full)) return {num(m[1]), num(m[2])};
    if (std::regex_match(s, real)) return {num(s), 0.0};
    if (std::regex_match(s, m, imag)) return {0.0, num(m[1])};
  } catch (const std::logic_error&) {
  }
  throw InputError("--beta must look like s+ti");
}

int cmd_umbilic(const Options& o) {
  if (o.beta.empty()) throw InputError("umbilic needs --beta s+ti");
  const UmbilicReport r = umbilic_analysis(parse_beta(o.beta));
  io::write_file(o.out, io::umbilic_json(r).dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k-folding map-germ invariants, stratum classification and surface features"};
  app.require_subcommand(1);
  Options o;
  auto common = [&o](CLI::App* c) {
    c->add_option("--out", o.out, "Output file (directory for surface); stdout when omitted");
    c->add_option("--seed", o.seed, "Seed for randomized steps");
    c->add_option("--workers", o.workers, "Worker threads (0 = hardware)");
    c->add_flag("--verbose", o.verbose, "Print warnings to stderr");
  };
  auto* classify_cmd = app.add_subcommand("classify", "Classify a germ and compare with the stratum tables");
  classify_cmd->add_option("--input", o.input, "Germ JSON")->required();
  common(classify_cmd);
  auto* inv_cmd = app.add_subcommand("invariants", "Double point invariants of a germ");
  inv_cmd->add_option("--input", o.input, "Germ JSON")->required();
  common(inv_cmd);
  auto* table_cmd = app.add_subcommand("table", "Invariants of normal forms against the tables, as CSV");
  table_cmd->add_option("--family", o.family, "Family, e.g. P2, M, N3, V4, or all");
  table_cmd->add_option("--k", o.k, "Single k");
  table_cmd->add_option("--k-range", o.k_range, "Range a..b");
  common(table_cmd);
  auto* surf_cmd = app.add_subcommand("surface", "Trace robust feature curves on a polynomial graph");
  surf_cmd->add_option("--input", o.input, "Surface JSON")->required();
  surf_cmd->add_option("--features", o.features, "Comma list: parabolic,ridge,sub-parabolic,flecnodal,H3");
  surf_cmd->add_option("--k", o.k, "k of the folding maps (odd k drops ridges)");
  surf_cmd->add_option("--grid", o.grid, "Grid override N or NxM");
  surf_cmd->add_option("--tol-class", o.tol_class, "Numeric zero tolerance for surface classification");
  common(surf_cmd);
  auto* umb_cmd = app.add_subcommand("umbilic", "Direction counts at an umbilic with cubic modulus beta");
  umb_cmd->add_option("--beta", o.beta, "beta = s+ti")->required();
  common(umb_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (classify_cmd->parsed()) return cmd_classify(o);
    if (inv_cmd->parsed()) return cmd_invariants(o);
    if (table_cmd->parsed()) return cmd_table(o);
    if (surf_cmd->parsed()) return cmd_surface(o);
    if (umb_cmd->parsed()) return cmd_umbilic(o);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
