#pragma once

#include "dualguard/dynamics.hpp"
#include "dualguard/reachability.hpp"

namespace dualguard {

struct FilterDecision {
  Vec control;
  bool activated = false;
  double value = 0.0;
};

/// Least-restrictive filter. Passes the (clamped) nominal control while
/// V(x) > band; otherwise returns the optimal safe control. The band widens
/// the continuous-time switching surface V(x) = 0 to something a discrete
/// controller can actually hit.
FilterDecision filter(const ValueField& vf, const DynamicsModel& model, const Vec& x, const Vec& nominal, double band);

/// Largest value drop one step of length dt can cause:
/// dt * sum_i L_i * max|f_i|, with L_i the per-axis Lipschitz estimate of V.
double default_switch_band(const ValueField& vf, const DynamicsModel& model, double dt);

}  // namespace dualguard
