#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace dualguard {

inline constexpr int kMaxDim = 6;

/// Small state / control / costate vector. Dynamic size with a fixed upper
/// bound so hot paths never touch the heap.
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;

class OutOfDomainError : public std::out_of_range {
 public:
  OutOfDomainError(std::size_t dim, double coordinate);
  std::size_t dim() const { return dim_; }
  double coordinate() const { return coordinate_; }

 private:
  std::size_t dim_;
  double coordinate_;
};

/// One grid dimension. Non-periodic axes place `count` nodes on [lower, upper]
/// inclusive; periodic axes place them on [lower, upper) with upper - lower the
/// period, so node `count` coincides with node 0.
struct Axis {
  double lower = 0.0;
  double upper = 1.0;
  std::size_t count = 3;
  bool periodic = false;

  double spacing() const;
  double period() const { return upper - lower; }
  double node(std::size_t i) const { return lower + static_cast<double>(i) * spacing(); }
  std::size_t cells() const { return periodic ? count : count - 1; }
};

/// Cell containing a query point: lower-corner node index and normalized
/// offset per dimension.
struct CellLocation {
  std::array<std::size_t, kMaxDim> cell{};
  std::array<double, kMaxDim> offset{};
  bool clamped = false;
};

class Grid {
 public:
  Grid() = default;
  explicit Grid(std::vector<Axis> axes);

  std::size_t dims() const { return axes_.size(); }
  const Axis& axis(std::size_t i) const { return axes_[i]; }
  const std::vector<Axis>& axes() const { return axes_; }
  std::size_t node_count() const { return node_count_; }
  /// Row-major strides, last dimension fastest.
  std::size_t stride(std::size_t i) const { return strides_[i]; }

  std::array<std::size_t, kMaxDim> unflatten(std::size_t flat) const;
  std::size_t flatten(const std::array<std::size_t, kMaxDim>& index) const;
  Vec node_state(std::size_t flat) const;

  /// Wraps periodic coordinates into [lower, upper).
  Vec wrap(const Vec& x) const;

  /// Throws OutOfDomainError when a non-periodic coordinate lies outside the
  /// grid extent.
  CellLocation locate(const Vec& x) const;
  /// Same, but out-of-extent coordinates are projected onto the boundary and
  /// the result is flagged.
  CellLocation locate_clamped(const Vec& x) const;

  bool operator==(const Grid& other) const;

 private:
  CellLocation locate_impl(const Vec& x, bool clamp) const;

  std::vector<Axis> axes_;
  std::array<std::size_t, kMaxDim> strides_{};
  std::size_t node_count_ = 0;
};

/// Corner nodes and multilinear weights of one cell. Only the first `size`
/// (= 2^n) entries are written; the arrays stay uninitialized on the hot path.
struct Stencil {
  std::array<std::size_t, (1u << kMaxDim)> nodes;
  std::array<double, (1u << kMaxDim)> weights;
  std::size_t size = 0;
  bool clamped = false;
};

Stencil make_stencil(const Grid& grid, const CellLocation& location);

struct Sample {
  double value = 0.0;
  bool clamped = false;
};

struct GradientSample {
  Vec gradient;
  bool clamped = false;
};

/// Scalar values on every grid node, row-major.
class ScalarField {
 public:
  ScalarField() = default;
  ScalarField(Grid grid, std::vector<double> values);
  ScalarField(Grid grid, double fill);

  const Grid& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }
  double operator[](std::size_t flat) const { return values_[flat]; }

  Sample interpolate(const Vec& x) const;
  /// Central differences at nodes (one-sided at non-periodic edges, wrapped
  /// on periodic axes), multilinearly interpolated to x.
  GradientSample gradient(const Vec& x) const;
  double node_derivative(std::size_t flat, std::size_t dim) const;

 private:
  Grid grid_;
  std::vector<double> values_;
};

double apply_stencil(const Stencil& stencil, const std::vector<double>& values);

}  // namespace dualguard
