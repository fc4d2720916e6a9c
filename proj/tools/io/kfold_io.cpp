#include "kfold_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace kfold::io {

std::string format_double(double x) {
  if (x == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    size_t line = 1, col = 1;
    const size_t stop = std::min<size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string msg = e.what();
    const auto pos = msg.find("syntax error");
    if (pos != std::string::npos) msg = msg.substr(pos);
    throw InputError("malformed JSON at line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                     msg);
  }
}

Rational rational_from_json(const json& j) {
  try {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(static_cast<long>(j.get<long long>()));
    if (j.is_number_float()) return parse_rational(format_double(j.get<double>()));
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("bad rational: ") + e.what());
  }
  throw InputError("expected a rational as \"p/q\" or a number, got " + j.dump());
}

json coeff_to_json(const CycloNum& c) {
  if (c.is_rational()) return to_string(c.rational_part());
  json out;
  out["k"] = c.conductor();
  json arr = json::array();
  for (const auto& q : c.coeffs()) arr.push_back(to_string(q));
  out["coeffs"] = arr;
  return out;
}

CycloNum coeff_from_json(const json& j) {
  if (!j.is_object()) return CycloNum(rational_from_json(j));
  if (!j.contains("k") || !j.contains("coeffs") || !j["k"].is_number_integer() || !j["coeffs"].is_array())
    throw InputError("cyclotomic coefficient needs integer \"k\" and array \"coeffs\"");
  const int m = j["k"].get<int>();
  if (m < 1) throw InputError("cyclotomic conductor must be positive");
  std::vector<Rational> cs;
  for (const auto& e : j["coeffs"]) cs.push_back(rational_from_json(e));
  try {
    return CycloNum(m, std::move(cs));
  } catch (const std::exception& e) {
    throw InputError(std::string("bad cyclotomic coefficient: ") + e.what());
  }
}

json poly_to_json(const CycloPoly& f) {
  json arr = json::array();
  for (const auto& [m, c] : f.terms()) arr.push_back({{"i", m.i}, {"j", m.j}, {"c", coeff_to_json(c)}});
  return arr;
}

CycloPoly poly_from_json(const json& j) {
  if (!j.is_array()) throw InputError("polynomial must be an array of {\"i\", \"j\", \"c\"}");
  CycloPoly f;
  for (const auto& t : j) {
    if (!t.is_object() || !t.contains("i") || !t.contains("j") || !t.contains("c"))
      throw InputError("polynomial term needs \"i\", \"j\" and \"c\"");
    if (!t["i"].is_number_integer() || !t["j"].is_number_integer()) throw InputError("exponents must be integers");
    const int i = t["i"].get<int>(), jj = t["j"].get<int>();
    if (i < 0 || jj < 0) throw InputError("exponents must be non-negative");
    f.add_term(i, jj, coeff_from_json(t["c"]));
  }
  return f;
}

GermDoc germ_from_json(const json& j) {
  if (!j.is_object()) throw InputError("germ must be a JSON object");
  if (!j.contains("k") || !j["k"].is_number_integer()) throw InputError("germ needs integer \"k\"");
  if (!j.contains("f")) throw InputError("germ needs \"f\"");
  GermDoc g;
  g.k = j["k"].get<int>();
  if (g.k < 2) throw InputError("k must be at least 2");
  if (j.contains("degree")) {
    if (!j["degree"].is_number_integer()) throw InputError("\"degree\" must be an integer");
    g.degree = j["degree"].get<int>();
  }
  g.f = poly_from_json(j["f"]);
  if (g.f.total_degree() > g.degree)
    throw InputError("f has terms above the declared jet degree " + std::to_string(g.degree));
  return g;
}

json germ_to_json(const GermDoc& g) { return {{"k", g.k}, {"degree", g.degree}, {"f", poly_to_json(g.f)}}; }

json local_dim_json(const LocalDim& d) {
  if (d.is_infinite()) return "inf";
  return d.value();
}

json invariant_set_json(const InvariantSet& s) {
  json out;
  out["C"] = local_dim_json(s.C);
  out["T"] = s.T ? json(*s.T) : json(nullptr);
  out["mu"] = s.mu_applicable ? local_dim_json(s.muD) : json(nullptr);
  out["r"] = s.rD ? json(*s.rD) : json(nullptr);
  out["finitely_determined"] = s.finitely_determined;
  return out;
}

json invariant_report_json(const InvariantReport& r) {
  json out = invariant_set_json(r.inv);
  out["mu_aggregate"] = local_dim_json(r.mu_aggregate);
  out["mu_direct"] = r.mu_direct ? local_dim_json(*r.mu_direct) : json(nullptr);
  out["mu_consistent"] = r.mu_consistent;
  out["immersion"] = r.immersion;
  json br = json::array();
  for (const auto& b : r.branches)
    br.push_back({{"j", b.j},
                  {"type", b.sing_type.label()},
                  {"mu", local_dim_json(b.mu)},
                  {"r", b.r ? json(*b.r) : json(nullptr)}});
  out["branches"] = br;
  json pr = json::array();
  for (const auto& p : r.pairs)
    pr.push_back({{"j", p.j}, {"jp", p.jp}, {"contact", local_dim_json(p.contact)}, {"T", local_dim_json(p.t_pair)}});
  out["pairs"] = pr;
  out["warnings"] = r.warnings;
  return out;
}

json stratum_report_json(const StratumReport& r) {
  const StratumLabel& l = r.classification.label;
  json out;
  out["label"] = l.name();
  out["family"] = family_name(l.family);
  out["k"] = l.k;
  out["codim"] = l.codim >= 5 ? json(">=5") : json(l.codim);
  out["params"] = l.params ? json::array({l.params->first, l.params->second}) : json(nullptr);
  out["branch"] = branch_name(r.classification.branch);
  if (!l.note.empty()) out["note"] = l.note;
  json conds = json::array();
  for (const auto& c : r.classification.trace) {
    json e{{"name", c.name}, {"value", coeff_to_json(c.value)}, {"vanished", c.vanished}};
    if (c.params) e["params"] = json::array({c.params->first, c.params->second});
    conds.push_back(e);
  }
  out["conditions"] = conds;
  out["computed_invariants"] = invariant_report_json(r.computed);
  out["expected_invariants"] = r.expected ? invariant_set_json(*r.expected) : json(nullptr);
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name}, {"computed", c.computed}, {"expected", c.expected}, {"verdict", verdict_name(c.verdict)}});
  out["checks"] = checks;
  out["verdict"] = verdict_name(r.verdict);
  out["warnings"] = r.warnings;
  return out;
}

std::string table_csv_header() {
  return "family,label,k,divisibility,params,C,T,mu,r,C_table,T_table,mu_table,r_table,mu_aggregate,mu_direct,"
         "mu_routes_agree,verdict\n";
}

namespace {

// Quotes a CSV field that holds a separator or a quote.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

}  // namespace

std::string table_csv_row(const TableRow& row) {
  const StratumLabel& l = row.nf.label;
  std::ostringstream os;
  os << family_name(l.family) << ',' << csv_field(l.name()) << ',' << l.k << ',' << csv_field(l.div.str()) << ',';
  if (l.params) {
    os << l.params->first;
    if (l.family == Family::V4) os << ';' << l.params->second;
  }
  std::string comp[4], exp[4];
  for (size_t i = 0; i < 4 && i < row.checks.size(); ++i) {
    comp[i] = row.checks[i].computed;
    exp[i] = row.checks[i].expected;
  }
  for (const auto& c : comp) os << ',' << c;
  for (const auto& e : exp) os << ',' << e;
  os << ',' << row.computed.mu_aggregate.str() << ','
     << (row.computed.mu_direct ? row.computed.mu_direct->str() : std::string("n/a")) << ','
     << (row.computed.mu_consistent ? "yes" : "no") << ',' << verdict_name(row.verdict) << '\n';
  return os.str();
}

SurfacePatch surface_from_json(const json& j) {
  if (!j.is_object() || !j.contains("f")) throw InputError("surface needs \"f\"");
  SurfacePatch s;
  const CycloPoly f = poly_from_json(j["f"]);
  for (const auto& [m, c] : f.terms()) {
    if (!c.is_rational()) throw InputError("surface coefficients must be rational");
    s.f.add_term(m.i, m.j, c.rational_part());
  }
  if (j.contains("domain")) {
    const auto& d = j["domain"];
    if (!d.is_array() || d.size() != 4) throw InputError("\"domain\" must be [x0, x1, y0, y1]");
    for (const auto& v : d)
      if (!v.is_number()) throw InputError("\"domain\" entries must be numbers");
    s.x0 = d[0].get<double>();
    s.x1 = d[1].get<double>();
    s.y0 = d[2].get<double>();
    s.y1 = d[3].get<double>();
  }
  if (j.contains("grid")) {
    const auto& g = j["grid"];
    if (!g.is_array() || g.size() != 2 || !g[0].is_number_integer() || !g[1].is_number_integer())
      throw InputError("\"grid\" must be [nx, ny]");
    s.nx = g[0].get<int>();
    s.ny = g[1].get<int>();
  }
  try {
    s.validate();
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  return s;
}

std::string curves_csv(const std::vector<FeatureCurve>& curves) {
  std::string out = "feature,color,curve_id,x,y\n";
  for (const auto& c : curves)
    for (const auto& p : c.points)
      out += feature_name(c.feature) + ',' + color_name(c) + ',' + std::to_string(c.curve_id) + ',' +
             format_double(p[0]) + ',' + format_double(p[1]) + '\n';
  return out;
}

std::string points_csv(const std::vector<SpecialPoint>& points) {
  std::string out = "type,x,y\n";
  for (const auto& p : points) out += p.type + ',' + format_double(p.x) + ',' + format_double(p.y) + '\n';
  return out;
}

namespace {

const char* stroke(const FeatureCurve& c) {
  switch (c.feature) {
    case Feature::Parabolic: return "#000000";
    case Feature::Ridge: return c.color == 1 ? "#d62728" : "#1f77b4";
    case Feature::SubParabolic: return c.color == 1 ? "#ff7f0e" : "#17becf";
    case Feature::Flecnodal: return c.color == 1 ? "#2ca02c" : "#9467bd";
    case Feature::H3: return c.color == 1 ? "#8c564b" : "#e377c2";
  }
  return "#7f7f7f";
}

}  // namespace

std::string overlay_svg(const SurfacePatch& s, const std::vector<FeatureCurve>& curves,
                        const std::vector<SpecialPoint>& points) {
  const double W = 800, H = 800;
  auto px = [&](double x) { return format_double((x - s.x0) / (s.x1 - s.x0) * W); };
  auto py = [&](double y) { return format_double((s.y1 - y) / (s.y1 - s.y0) * H); };
  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\"0 0 800 800\">\n";
  out += "<rect width=\"800\" height=\"800\" fill=\"#ffffff\"/>\n";
  for (const auto& c : curves) {
    out += "<polyline fill=\"none\" stroke-width=\"1.5\" stroke=\"" + std::string(stroke(c)) + "\" data-feature=\"" +
           feature_name(c.feature) + "\" data-color=\"" + color_name(c) + "\" points=\"";
    for (size_t i = 0; i < c.points.size(); ++i) {
      if (i) out += ' ';
      out += px(c.points[i][0]) + ',' + py(c.points[i][1]);
    }
    out += "\"/>\n";
  }
  for (const auto& p : points)
    out += "<circle r=\"4\" fill=\"none\" stroke=\"#000000\" cx=\"" + px(p.x) + "\" cy=\"" + py(p.y) +
           "\"><title>" + p.type + "</title></circle>\n";
  out += "</svg>\n";
  return out;
}

json umbilic_json(const UmbilicReport& r) {
  json out;
  out["beta"] = {{"s", r.beta.real()}, {"t", r.beta.imag()}};
  out["inside_outer"] = r.inside_outer;
  out["inside_inner"] = r.inside_inner;
  out["m_dir_count"] = r.m_dir_count;
  out["n_dir_count"] = r.n_dir_count;
  out["discriminant_m"] = r.disc_m;
  out["discriminant_n"] = r.disc_n;
  out["degenerate"] = r.degenerate;
  out["winding_consistent"] = r.winding_consistent;
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << content;
}

}  // namespace kfold::io
