#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dualguard/dynamics.hpp"
#include "dualguard/environment.hpp"
#include "dualguard/grid.hpp"

namespace dualguard {

enum class SolverScheme { LaxFriedrichs, SemiLagrangian };

struct SolverParams {
  double cfl = 0.5;
  /// SemiLagrangian replaces the finite-difference sweep with
  /// V <- min(l, max_u min_d V(x after step_time under u, d)), the flow held
  /// over step_time and V interpolated at the departure point. Its numerical
  /// diffusion per unit time is far smaller, which matters for states that
  /// stay safe only by circling.
  SolverScheme scheme = SolverScheme::LaxFriedrichs;
  double step_time = 0.1;
  /// Samples per control axis (bounds included); disturbances use the box
  /// vertices.
  std::size_t control_samples = 7;
  /// Converged once the largest pointwise update of a sweep falls below this.
  double tolerance = 1e-4;
  std::size_t max_iterations = 20000;
};

struct SolveMetadata {
  std::size_t iterations = 0;
  double residual = 0.0;
  double dt = 0.0;
  Vec dissipation;
  /// Nodes where a sweep increased V, or left V above l. Both must stay zero.
  std::size_t monotonicity_violations = 0;
  std::size_t upper_bound_violations = 0;
};

class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, std::vector<double> residuals)
      : std::runtime_error(what), residuals_(std::move(residuals)) {}
  const std::vector<double>& residuals() const { return residuals_; }

 private:
  std::vector<double> residuals_;
};

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Converged safety value V(x) sampled on a grid. V <= 0 is the backward
/// reachable tube of the failure set.
class ValueField {
 public:
  ValueField() = default;
  ValueField(ScalarField field, std::string model_id, SolveMetadata metadata);

  const ScalarField& field() const { return field_; }
  const Grid& grid() const { return field_.grid(); }
  const std::string& model_id() const { return model_id_; }
  const SolveMetadata& metadata() const { return metadata_; }

  double value(const Vec& x) const { return query(x).value; }
  /// Out-of-grid queries are clamped to the boundary and flagged.
  Sample query(const Vec& x) const;
  GradientSample gradient(const Vec& x) const;
  bool brt_contains(const Vec& x) const { return value(x) <= 0.0; }

  /// Share of grid nodes with V <= 0.
  double brt_fraction() const;
  /// Largest |V(i+1) - V(i)| / h along each axis.
  Vec lipschitz_bounds() const;

 private:
  ScalarField field_;
  std::string model_id_;
  SolveMetadata metadata_;
  std::vector<std::vector<double>> node_gradients_;
};

/// argmax_u min_d grad V(x) . f(x, u, d). A vanishing gradient returns the
/// midpoint of the control box.
Vec optimal_safe_control(const ValueField& vf, const DynamicsModel& model, const Vec& x);
Vec optimal_safe_control_from_gradient(const DynamicsModel& model, const Vec& x, const Vec& gradient);

/// Fixed-point iteration of the HJI variational inequality in fictitious
/// backward time, starting from V = l:
///   V <- min(V + dt * [H(x, p_avg) + sum_i a_i (p_i+ - p_i-) / 2], l)
/// with H = max_u min_d p . f and Lax-Friedrichs dissipation a_i. Sweeps are
/// Jacobi-style and run in parallel.
class ReachabilitySolver {
 public:
  ReachabilitySolver(const DynamicsModel& model, const FailureSet& failure, Grid grid, SolverParams params);

  /// One sweep; returns the largest pointwise change.
  double iterate();
  const std::vector<double>& values() const { return current_; }
  const std::vector<double>& terminal() const { return terminal_; }
  const std::vector<double>& residuals() const { return residuals_; }
  const SolveMetadata& metadata() const { return metadata_; }
  const Grid& grid() const { return grid_; }
  double dt() const { return dt_; }

  ValueField result() const;

 private:
  double iterate_lax_friedrichs();
  double iterate_semi_lagrangian();

  const DynamicsModel& model_;
  Grid grid_;
  SolverParams params_;
  std::vector<double> terminal_;
  std::vector<double> current_;
  std::vector<double> next_;
  std::vector<Vec> controls_;
  std::vector<Vec> disturbances_;
  std::vector<Vec> node_states_;
  std::vector<Vec> node_dissipation_;
  std::vector<double> residuals_;
  double dt_ = 0.0;
  SolveMetadata metadata_;
};

/// Iterates to convergence; throws SolverError after params.max_iterations.
ValueField solve(const DynamicsModel& model, const FailureSet& failure, const Grid& grid, const SolverParams& params);

/// Little-endian binary: "HJVF", u32 version, u32 n, per axis {f64 min, f64
/// max, u64 count, u8 periodic}, u32 id length + bytes, node values (f64,
/// row-major), f64 residual, u64 iterations.
void save(const ValueField& vf, const std::filesystem::path& path);
ValueField load(const std::filesystem::path& path);
std::vector<std::uint8_t> serialize(const ValueField& vf);
ValueField deserialize(const std::vector<std::uint8_t>& bytes);

/// Human-readable warning when the field was solved for a different model.
std::optional<std::string> model_mismatch(const ValueField& vf, const DynamicsModel& model);

}  // namespace dualguard
