#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dualguard/benchmark.hpp"
#include "dualguard/controllers.hpp"
#include "dualguard/dynamics.hpp"
#include "dualguard/environment.hpp"
#include "dualguard/grid.hpp"
#include "dualguard/reachability.hpp"

namespace dualguard {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class ScenarioKind { Planar, Racetrack, HalfSpace };

struct ModelConfig {
  std::string type = "dubins3d";
  double speed = 2.0;
  double turn_rate_max = 3.0;
  double disturbance_max = 0.0;
  double u_max = 1.0;
  double v_max = 2.0;
  Bicycle3D::Params bicycle;
};

struct RunConfig {
  /// Relative paths resolve against this directory.
  std::filesystem::path base_dir;
  ScenarioKind scenario = ScenarioKind::Planar;
  ModelConfig model;

  // planar
  std::uint64_t environment_seed = 3;
  ObstacleSpec obstacles;
  std::string environment_file;
  // racetrack
  std::string track_file;
  // halfspace: l(x) = x[dim] - offset
  std::size_t halfspace_dim = 0;
  double halfspace_offset = 0.0;

  std::vector<Axis> grid;
  SolverParams solver;
  /// Obstacles are grown by this much for the solve only.
  double failure_margin = 0.1;
  std::string value_field = "value_field.hjvf";

  MppiParams mppi;
  CostSpec cost;
  /// Unset bands fall back to default_switch_band.
  std::optional<double> rollout_band;
  std::optional<double> output_band;

  std::size_t episode_count = 50;
  std::uint64_t episode_seed = 11;
  EpisodeSampling sampling;
  double goal_radius = 0.1;
  std::string episodes_file = "episodes.json";

  std::vector<Method> methods;
  std::vector<std::size_t> samples{250, 60};
  std::string reference = "dualguard";
  bool relcost_success_only = false;
  std::string output_dir = "out";

  std::filesystem::path resolve(const std::string& p) const;
};

RunConfig parse_config(const nlohmann::json& j, const std::filesystem::path& base_dir);
/// Reads and validates; throws ConfigError on any schema or consistency
/// problem and std::runtime_error when the file cannot be read.
RunConfig load_config(const std::filesystem::path& path);

std::unique_ptr<DynamicsModel> make_model(const ModelConfig& m);

/// The physical world a config describes.
struct World {
  std::unique_ptr<DynamicsModel> model;
  std::optional<Environment> environment;
  std::optional<Racetrack> track;
  std::unique_ptr<HalfSpaceFailure> halfspace;
  Box2 domain;
  Grid grid;

  const FailureSet& failure() const;
};

World build_world(const RunConfig& cfg);

/// Scenario wiring for episodes. Bands left unset in the config come from
/// the field.
Scenario make_scenario(const RunConfig& cfg, const World& world, const ValueField& vf);

}  // namespace dualguard
