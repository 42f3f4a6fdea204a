#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dualguard/controllers.hpp"

namespace dualguard {

enum class Outcome { Success, Timeout, Failure };
std::string outcome_name(Outcome o);
Outcome parse_outcome(const std::string& s);

struct DisturbanceSpec {
  /// Uniform draws inside the model's disturbance box at every sim step.
  bool enabled = false;
  std::uint64_t seed = 0;
};

struct EpisodeSpec {
  std::size_t id = 0;
  Vec start;
  Vec goal;
  double horizon = 20.0;
  double dt = 0.02;
  DisturbanceSpec disturbance;
  std::uint64_t seed = 0;

  nlohmann::json to_json() const;
  static EpisodeSpec from_json(const nlohmann::json& j);
};

struct EpisodeResult {
  Outcome outcome = Outcome::Timeout;
  std::vector<Vec> trajectory;
  /// Performance terms only; safety penalties never enter.
  double cost = 0.0;
  std::size_t steps = 0;
  double mean_step_ms = 0.0;
  double min_l = 0.0;
  double min_value = 0.0;
  /// Smallest l over every sampled rollout state of the episode.
  double min_rollout_l = 0.0;
  std::size_t rollouts = 0;
  std::size_t penalized_rollouts = 0;
  std::size_t output_activations = 0;
};

/// Everything an episode needs besides the method and its sample count.
struct Scenario {
  const DynamicsModel* model = nullptr;
  const ValueField* vf = nullptr;
  const FailureSet* failure = nullptr;
  /// Set for the lap task; the goal task is used otherwise.
  const Racetrack* track = nullptr;
  CostSpec cost;
  MppiParams mppi;
  double rollout_band = 0.0;
  double output_band = 0.0;
  double goal_radius = 0.1;
};

/// Called once per controller step with the state before the step.
using StepObserver = std::function<void(const Vec& x, const Vec& u, const StepDiagnostics& d)>;

/// Closed loop until Success, Failure or the horizon.
EpisodeResult run_episode(const Scenario& scenario, Method method, std::size_t samples, const EpisodeSpec& spec,
                          bool output_stage = true, const StepObserver& observer = {});

/// Same loop driven by a fixed state-feedback law.
using Policy = std::function<Vec(const Vec& x)>;
EpisodeResult run_policy_episode(const Scenario& scenario, const Policy& policy, const EpisodeSpec& spec);

struct EpisodeSampling {
  /// Starts and goals lie within this fraction of the domain extent from
  /// its boundary.
  double boundary_fraction = 0.2;
  double min_separation = 5.0;
  double horizon = 20.0;
  double dt = 0.02;
  bool disturbance = false;
  /// Goals must clear the band at every grid heading, not only the drawn one.
  bool goal_all_headings = false;
  std::size_t max_attempts = 100000;
};

/// Rejection sampling near the domain boundary; start and goal states must
/// both have V above `band` and lie at least min_separation apart.
std::vector<EpisodeSpec> generate_episodes(const Box2& domain, const ValueField& vf, double band, std::size_t n,
                                           std::uint64_t seed, const EpisodeSampling& sampling = {});

/// Lap episodes: starts on the centerline at uniform arc positions, aligned
/// with the track, with V above `band`. The goal equals the start.
std::vector<EpisodeSpec> generate_track_episodes(const Racetrack& track, const ValueField& vf, double band,
                                                 std::size_t n, std::uint64_t seed,
                                                 const EpisodeSampling& sampling = {});

/// One line of the raw results CSV.
struct ResultRow {
  std::string method;
  std::size_t samples = 0;
  std::size_t episode = 0;
  Outcome outcome = Outcome::Timeout;
  std::size_t steps = 0;
  double cost = 0.0;
  double mean_step_ms = 0.0;
  double min_l = 0.0;
  double min_value = 0.0;
};

struct MethodMetrics {
  std::string method;
  std::size_t episodes = 0;
  double success = 0.0;  // percent
  double timeout = 0.0;
  double failure = 0.0;
  std::optional<double> relcost;
  double relcost_se = 0.0;
  double p_value = 1.0;
  std::size_t common = 0;
};

struct MetricsTable {
  std::size_t samples = 0;
  std::string reference;
  bool success_only = false;
  std::vector<MethodMetrics> rows;

  nlohmann::json to_json() const;
  std::string to_text() const;
};

/// Rows for a single sample count. RelCost compares each method with the
/// reference over episodes where neither failed (or both succeeded with
/// success_only).
MetricsTable compute_metrics(const std::vector<ResultRow>& rows, const std::string& reference, bool success_only);
/// One table per sample count, ascending.
std::vector<MetricsTable> compute_tables(const std::vector<ResultRow>& rows, const std::string& reference,
                                         bool success_only);

struct Job {
  Method method;
  std::size_t samples;
  std::size_t episode;  // index into the episode list
};

/// Runs jobs in parallel across episodes. `done` is called under a lock as
/// each job finishes.
std::vector<EpisodeResult> run_jobs(const Scenario& scenario, const std::vector<EpisodeSpec>& episodes,
                                    const std::vector<Job>& jobs,
                                    const std::function<void(const Job&, const EpisodeResult&)>& done = {});

ResultRow make_row(const Job& job, const EpisodeSpec& spec, const EpisodeResult& result, bool timing);

std::string csv_header();
std::string to_csv_line(const ResultRow& row);
ResultRow parse_csv_line(const std::string& line);
std::vector<ResultRow> read_csv(const std::string& path);
/// Sorted by (method, samples, episode) for stable output.
void sort_rows(std::vector<ResultRow>& rows);

}  // namespace dualguard
