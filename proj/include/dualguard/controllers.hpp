#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "dualguard/dynamics.hpp"
#include "dualguard/environment.hpp"
#include "dualguard/reachability.hpp"
#include "dualguard/safety_filter.hpp"

namespace dualguard {

struct MppiParams {
  std::size_t samples = 250;
  std::size_t horizon = 50;
  double dt = 0.02;
  double lambda = 1.0;
  Vec sigma;
  std::uint64_t seed = 0;
  /// Draw perturbations in +/- pairs. Off by default.
  bool antithetic = false;

  void validate(int control_dim) const;
};

/// H x m, one row per horizon step.
using ControlSequence = Eigen::MatrixXd;

enum class PenaltyKind { None, Obstacle, Brt, Cbf };
enum class TaskKind { Goal, Racetrack };

struct CostSpec {
  TaskKind task = TaskKind::Goal;
  PenaltyKind penalty = PenaltyKind::None;
  double penalty_weight = 1.0e4;
  double control_weight = 0.1;
  /// Goal task: sum_i q_i (x_i - goal_i)^2.
  Vec goal;
  Vec state_weights;
  /// Rollouts stop accruing cost once (x0, x1) is this close to the goal,
  /// since the episode would end there. 0 disables it.
  double goal_radius = 0.0;
  /// Racetrack task: (speed_target - V)^2 + centerline_weight * distance.
  double speed_target = 1.4;
  double centerline_weight = 1.0;
  const Racetrack* track = nullptr;
  /// Discrete CBF decay rate for the Cbf penalty.
  double cbf_gamma = 0.05;
};

/// Read-only inputs shared by every rollout of a step.
struct RolloutContext {
  const DynamicsModel& model;
  const ValueField& vf;
  const FailureSet& failure;
  const CostSpec& cost;
  double dt;
  double band;
};

/// Running cost at (x, u). The Cbf penalty needs consecutive states and is
/// added by shield_rollout instead.
double stage_cost(const CostSpec& spec, const FailureSet& failure, const ValueField& vf, const Vec& x, const Vec& u);
/// State terms and penalty only, evaluated once at the last rollout state.
double terminal_cost(const CostSpec& spec, const FailureSet& failure, const ValueField& vf, const Vec& x);
/// Performance terms without any safety penalty.
double task_cost(const CostSpec& spec, const Vec& x, const Vec& u);

struct Rollout {
  Eigen::MatrixXd states;    // (H + 1) x n
  Eigen::MatrixXd controls;  // H x m, as flown
  Eigen::MatrixXd delta;     // H x m, controls - nominal
  double cost = 0.0;
  std::vector<char> mask;    // filter activations
  double min_l = 0.0;
  double min_value = 0.0;  // NaN when V was never sampled
  /// True when any safety penalty term fired.
  bool penalized = false;
};

/// Weighted perturbation average: u + sum_k w_k delta_k with
/// w_k = exp(-(S_k - min S) / lambda) / sum. Clamped to `bounds`.
ControlSequence mppi_update(const ControlSequence& nominal, const std::vector<Eigen::MatrixXd>& deltas,
                            const std::vector<double>& costs, double lambda, const Bounds& bounds);
/// The normalized weights used by mppi_update.
std::vector<double> softmax_weights(const std::vector<double>& costs, double lambda);

/// Perturbed controls are clamped, then passed through the filter at every
/// step. Safety penalties are dropped from the cost.
Rollout safe_rollout(const RolloutContext& ctx, const Vec& x0, const ControlSequence& nominal,
                     const Eigen::MatrixXd& perturbation);
/// Unfiltered propagation; the cost carries ctx.cost.penalty.
Rollout plain_rollout(const RolloutContext& ctx, const Vec& x0, const ControlSequence& nominal,
                      const Eigen::MatrixXd& perturbation);
/// Unfiltered propagation charged C * max(0, (1 - gamma) V(x_j) - V(x_j+1)).
Rollout shield_rollout(const RolloutContext& ctx, const Vec& x0, const ControlSequence& nominal,
                       const Eigen::MatrixXd& perturbation);

/// Returns u when the next state keeps V(x+) >= (1 - gamma) V(x); otherwise
/// the smallest blend toward the optimal safe control that does, found by
/// 20 bisection steps, or the safe control itself.
Vec shield_repair(const ValueField& vf, const DynamicsModel& model, const Vec& x, const Vec& u, double gamma,
                  double dt);

enum class Method { ObstaclePenalty, BrtPenalty, ObstaclePenaltyLrf, BrtPenaltyLrf, Shield, DualGuard };

enum class RolloutKind { Plain, Safe, Shield };
enum class OutputStage { Raw, Filter, Repair };

struct MethodTraits {
  RolloutKind rollout;
  PenaltyKind penalty;
  OutputStage output;
};

MethodTraits traits(Method method);
std::string method_name(Method method);
Method parse_method(const std::string& name);
const std::vector<Method>& all_methods();

struct StepDiagnostics {
  std::vector<double> costs;
  std::vector<double> weights;
  std::size_t rollout_activations = 0;
  std::size_t penalized_rollouts = 0;
  double weight_entropy = 0.0;
  double min_rollout_l = 0.0;
  double min_rollout_value = 0.0;
  bool output_activated = false;
  Vec proposed;  // first control of the updated sequence, before the output stage
};

struct ControllerOptions {
  Method method = Method::DualGuard;
  MppiParams mppi;
  CostSpec cost;
  /// Switching band inside rollouts and at the output.
  double rollout_band = 0.0;
  double output_band = 0.0;
  bool output_stage = true;
  /// Keep every rollout of the latest step in diagnostics.
  bool keep_rollouts = false;
};

class Controller {
 public:
  Controller(const DynamicsModel& model, const ValueField& vf, const FailureSet& failure, ControllerOptions options,
             ControlSequence initial_nominal);

  Vec step(const Vec& x, StepDiagnostics* diagnostics = nullptr);

  const ControlSequence& nominal() const { return nominal_; }
  const ControllerOptions& options() const { return options_; }
  const std::vector<Rollout>& last_rollouts() const { return last_rollouts_; }

 private:
  void draw_perturbations();

  const DynamicsModel& model_;
  const ValueField& vf_;
  const FailureSet& failure_;
  ControllerOptions options_;
  MethodTraits traits_;
  ControlSequence nominal_;
  std::mt19937_64 rng_;
  std::vector<Eigen::MatrixXd> perturbations_;
  std::vector<Rollout> rollouts_;
  std::vector<Rollout> last_rollouts_;
};

/// Zeros for the planar car, (mid speed, 0) for the bicycle.
ControlSequence bootstrap_nominal(const DynamicsModel& model, std::size_t horizon);

}  // namespace dualguard
