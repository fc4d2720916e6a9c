#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "kfold/surface.hpp"

namespace kfold {

enum class Feature { Parabolic, Ridge, SubParabolic, Flecnodal, H3 };

std::string feature_name(Feature f);
std::optional<Feature> parse_feature(const std::string& s);

struct SpecialPoint {
  std::string type;
  double x = 0, y = 0;
  // Angle between two curves where a tangency is measured, else negative.
  double angle = -1;
};

// color: 0 for parabolic; principal family 1/2 (k1/k2) for ridge and
// sub-parabolic; asymptotic family 1/2 for flecnodal and H3.
struct FeatureCurve {
  Feature feature = Feature::Parabolic;
  int color = 0;
  int curve_id = 0;
  bool closed = false;
  std::vector<std::array<double, 2>> points;
  std::vector<SpecialPoint> special_points;
};

std::string color_name(const FeatureCurve& c);

struct TraceOptions {
  int workers = 0;  // 0 = hardware concurrency
  double refine_tol = 1e-8;
  SurfaceTolerances tol;
};

// Scalar field of a feature at (x, y): det of the second fundamental form for
// parabolic, otherwise the defining coefficient in the frame of the color's
// direction, oriented along ref when given. nullopt where undefined.
std::optional<double> feature_field(const SurfacePatch& s, Feature f, int color, double x, double y,
                                    const Vec3* ref = nullptr, Vec3* dir_out = nullptr);

// Zero sets of the requested fields by marching squares on the patch grid,
// with crossings refined by bisection. Curves are ordered by feature, color,
// then the lowest grid edge they start from.
std::vector<FeatureCurve> trace_features(const SurfacePatch& s, const std::vector<Feature>& features,
                                         const TraceOptions& opts = {});

// Intersections and near-contacts between curves of different features,
// deduplicated within two grid cells.
std::vector<SpecialPoint> feature_points(const std::vector<FeatureCurve>& curves, const SurfacePatch& s);

// Angle between the H3 curve and the parabolic curve at an A2* point near
// (x, y): the point is located on the parabolic curve, the H3 branches are
// cut by a circle of radius h around it and their chord is compared with the
// parabolic tangent.
struct TangencyMeasure {
  double x = 0, y = 0;
  double angle = 0;
};
std::optional<TangencyMeasure> a2star_tangency(const SurfacePatch& s, double x, double y, double h = 1e-3);

}  // namespace kfold
