#pragma once

#include <nlohmann/json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

#include "kfold/classify.hpp"
#include "kfold/features.hpp"
#include "kfold/umbilic.hpp"

namespace kfold::io {

using nlohmann::json;

// Bad input files and arguments; the CLI maps these to exit code 1.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Shortest round-trip decimal, independent of the locale.
std::string format_double(double x);

// Parses JSON text; syntax errors become InputError("line L, column C: ...").
json parse_json(const std::string& text);

// Coefficients: "p/q" strings for rationals, {"k": m, "coeffs": [...]} in the
// power basis of zeta_m otherwise. Plain JSON numbers are read as decimals.
json coeff_to_json(const CycloNum& c);
CycloNum coeff_from_json(const json& j);
Rational rational_from_json(const json& j);

json poly_to_json(const CycloPoly& f);
CycloPoly poly_from_json(const json& j);

// {"k": int, "degree": int (default 11), "f": [{"i", "j", "c"}, ...]}
struct GermDoc {
  int k = 0;
  int degree = JetGerm::kDefaultDegree;
  CycloPoly f;

  JetGerm germ() const { return JetGerm(k, f, degree); }
};

GermDoc germ_from_json(const json& j);
json germ_to_json(const GermDoc& g);

json local_dim_json(const LocalDim& d);
json invariant_set_json(const InvariantSet& s);
json invariant_report_json(const InvariantReport& r);
json stratum_report_json(const StratumReport& r);

std::string table_csv_header();
std::string table_csv_row(const TableRow& row);

// {"f": [...], "domain": [x0, x1, y0, y1], "grid": [nx, ny]}
SurfacePatch surface_from_json(const json& j);

std::string curves_csv(const std::vector<FeatureCurve>& curves);
std::string points_csv(const std::vector<SpecialPoint>& points);
std::string overlay_svg(const SurfacePatch& s, const std::vector<FeatureCurve>& curves,
                        const std::vector<SpecialPoint>& points);

json umbilic_json(const UmbilicReport& r);

std::string read_file(const std::string& path);
// "-" writes to stdout.
void write_file(const std::string& path, const std::string& content);

}  // namespace kfold::io
