#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <nlohmann/json.hpp>

#include "dualguard/grid.hpp"

namespace dualguard {

/// Distances are capped at this magnitude so sampled fields stay finite when
/// nothing constrains the state.
inline constexpr double kDistanceCap = 1.0e3;

/// Failure set F = {x : l(x) <= 0}.
class FailureSet {
 public:
  virtual ~FailureSet() = default;
  virtual double l(const Vec& x) const = 0;
};

/// l(x) = x[dim] - offset. Used by the analytic solver checks.
class HalfSpaceFailure final : public FailureSet {
 public:
  HalfSpaceFailure(std::size_t dim, double offset) : dim_(dim), offset_(offset) {}
  double l(const Vec& x) const override { return x[static_cast<Eigen::Index>(dim_)] - offset_; }

 private:
  std::size_t dim_;
  double offset_;
};

/// Failure set grown by `margin`: l(x) - margin. Solving against it buys
/// room for the grid's discretization error.
class InflatedFailure final : public FailureSet {
 public:
  InflatedFailure(const FailureSet& base, double margin) : base_(base), margin_(margin) {}
  double l(const Vec& x) const override { return base_.l(x) - margin_; }

 private:
  const FailureSet& base_;
  double margin_;
};

/// Failure set that depends only on the planar position (x[0], x[1]).
class PlanarFailureSet : public FailureSet {
 public:
  virtual double signed_distance(const Eigen::Vector2d& position) const = 0;
  double l(const Vec& x) const override { return signed_distance({x[0], x[1]}); }
};

struct Box2 {
  Eigen::Vector2d lower{0.0, 0.0};
  Eigen::Vector2d upper{10.0, 10.0};

  double width() const { return upper.x() - lower.x(); }
  double height() const { return upper.y() - lower.y(); }
  bool contains(const Eigen::Vector2d& p) const {
    return p.x() >= lower.x() && p.x() <= upper.x() && p.y() >= lower.y() && p.y() <= upper.y();
  }
};

struct Circle {
  Eigen::Vector2d center;
  double radius = 1.0;
};

/// Parameters of the random clutter generator.
struct ObstacleSpec {
  Box2 domain;
  std::size_t count = 40;
  double diameter_min = 0.35;
  double diameter_max = 3.5;
  bool boundary_is_failure = true;
  double connectivity_resolution = 0.1;
  std::size_t max_attempts_per_obstacle = 200;
  /// Expected total disc area over domain area must not exceed this.
  double max_expected_coverage = 1.5;
};

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Circular obstacles in a rectangular enclosure.
class Environment final : public PlanarFailureSet {
 public:
  Environment() = default;
  Environment(Box2 domain, std::vector<Circle> obstacles, bool boundary_is_failure);

  double signed_distance(const Eigen::Vector2d& position) const override;
  /// Direct containment test, independent of the distance computation.
  bool in_failure(const Eigen::Vector2d& position) const;

  const Box2& domain() const { return domain_; }
  const std::vector<Circle>& obstacles() const { return obstacles_; }
  bool boundary_is_failure() const { return boundary_is_failure_; }
  std::optional<std::uint64_t> seed() const { return seed_; }
  const std::optional<ObstacleSpec>& spec() const { return spec_; }
  void set_provenance(std::uint64_t seed, const ObstacleSpec& spec) {
    seed_ = seed;
    spec_ = spec;
  }

  nlohmann::json to_json() const;
  static Environment from_json(const nlohmann::json& j);

 private:
  Box2 domain_;
  std::vector<Circle> obstacles_;
  bool boundary_is_failure_ = true;
  std::optional<std::uint64_t> seed_;
  std::optional<ObstacleSpec> spec_;
};

/// Deterministic for a fixed (seed, spec). Obstacles whose placement would
/// split the free space (sampled at spec.connectivity_resolution) are redrawn.
Environment generate_environment(std::uint64_t seed, const ObstacleSpec& spec);

/// True when the free cells (l > 0) of a raster over the domain form a single
/// 4-connected component.
bool free_space_connected(const Environment& env, double resolution);

/// Closed track around a polyline centerline. l(x) = half_width - distance to
/// the centerline, so the failure set is everything outside the band.
class Racetrack final : public PlanarFailureSet {
 public:
  Racetrack(std::vector<Eigen::Vector2d> centerline, double half_width);

  double signed_distance(const Eigen::Vector2d& position) const override;
  double centerline_distance(const Eigen::Vector2d& position) const;
  /// Arc length of the closest centerline point, in [0, length()).
  double progress(const Eigen::Vector2d& position) const;
  double length() const { return length_; }
  double half_width() const { return half_width_; }
  const std::vector<Eigen::Vector2d>& centerline() const { return centerline_; }
  /// Centerline point and tangent heading at arc length s.
  Eigen::Vector3d pose_at(double s) const;
  Box2 bounding_box(double margin) const;

  nlohmann::json to_json() const;
  static Racetrack from_json(const nlohmann::json& j);

  /// Rounded-rectangle track with a tight hairpin, sized for the RC-car model.
  static Racetrack default_track();

 private:
  struct Projection {
    double distance;
    double arc;
  };
  Projection project(const Eigen::Vector2d& p) const;

  std::vector<Eigen::Vector2d> centerline_;
  std::vector<double> cumulative_;
  double half_width_;
  double length_ = 0.0;
};

}  // namespace dualguard
