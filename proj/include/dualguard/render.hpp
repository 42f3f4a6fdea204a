#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "dualguard/environment.hpp"
#include "dualguard/reachability.hpp"

namespace dualguard {

struct Polyline {
  std::vector<Eigen::Vector2d> points;
  bool closed = false;
};

/// Zero level set of V over the (x, y) nodes at fixed heading, by marching
/// squares. Segments are linked into polylines; loops come back closed.
std::vector<Polyline> zero_contour(const ValueField& vf, double heading);

/// Unsigned shoelace area of a closed polyline.
double polygon_area(const Polyline& p);

/// True when `q` lies inside the closed polyline (even-odd rule).
bool polygon_contains(const Polyline& p, const Eigen::Vector2d& q);

struct Trace {
  std::string label;
  std::vector<Eigen::Vector2d> points;
};

struct SvgScene {
  Box2 frame;
  const Environment* environment = nullptr;
  const Racetrack* track = nullptr;
  std::vector<Polyline> contours;
  std::vector<Trace> traces;
  double pixels_per_meter = 60.0;
};

std::string render_svg(const SvgScene& scene);

}  // namespace dualguard
