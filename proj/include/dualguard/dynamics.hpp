#pragma once

#include <memory>
#include <string>

#include "dualguard/grid.hpp"

namespace dualguard {

/// Per-channel box bounds for controls or disturbances. A channel may have
/// zero width.
struct Bounds {
  Vec lower;
  Vec upper;

  Bounds() = default;
  Bounds(Vec lo, Vec hi);

  int size() const { return static_cast<int>(lower.size()); }
  Vec clamp(const Vec& v) const;
  Vec midpoint() const { return 0.5 * (lower + upper); }
  bool contains(const Vec& v, double tol = 0.0) const;
};

/// Extremizer of p . f(x, u, d) over the control and disturbance boxes.
struct Extremum {
  Vec control;
  Vec disturbance;
  double value = 0.0;
};

/// `maximizing` is argmax_u min_d (the safe-control branch; the reachability
/// solver uses its value). `minimizing` is argmin_u max_d.
struct HamiltonianExtrema {
  Extremum maximizing;
  Extremum minimizing;
};

class DynamicsModel {
 public:
  virtual ~DynamicsModel() = default;

  virtual std::string id() const = 0;
  virtual int state_dim() const = 0;
  int control_dim() const { return control_bounds_.size(); }
  int disturbance_dim() const { return disturbance_bounds_.size(); }
  const Bounds& control_bounds() const { return control_bounds_; }
  const Bounds& disturbance_bounds() const { return disturbance_bounds_; }

  virtual Vec flow(const Vec& x, const Vec& u, const Vec& d) const = 0;

  /// Closed-form extremizers. Control channels land on bound endpoints; a
  /// channel with a zero coefficient takes the midpoint of its bounds.
  virtual HamiltonianExtrema hamiltonian_extrema(const Vec& x, const Vec& p) const = 0;

  /// max_u min_d p . f(x, u, d); the solver's hot path.
  virtual double safety_hamiltonian(const Vec& x, const Vec& p) const {
    return hamiltonian_extrema(x, p).maximizing.value;
  }

  /// Per-dimension bound on |f_i(x, u, d)| over the control and disturbance
  /// boxes (Lax-Friedrichs dissipation coefficients).
  virtual Vec dissipation(const Vec& x) const = 0;

  /// Bound on dissipation(x) over all states.
  virtual Vec max_dissipation() const = 0;

  /// Angular state components are wrapped to [-pi, pi).
  virtual void wrap_state(Vec& /*x*/) const {}

  /// Classical RK4 with (u, d) held over the step, followed by wrap_state.
  Vec step(const Vec& x, const Vec& u, const Vec& d, double dt) const;
  Vec zero_disturbance() const { return Vec::Zero(disturbance_dim()); }

 protected:
  Bounds control_bounds_;
  Bounds disturbance_bounds_;
};

/// x' = u, u in [-u_max, u_max].
class Integrator1D final : public DynamicsModel {
 public:
  explicit Integrator1D(double u_max = 1.0);
  std::string id() const override { return "integrator1d"; }
  int state_dim() const override { return 1; }
  Vec flow(const Vec& x, const Vec& u, const Vec& d) const override;
  HamiltonianExtrema hamiltonian_extrema(const Vec& x, const Vec& p) const override;
  double safety_hamiltonian(const Vec& x, const Vec& p) const override;
  Vec dissipation(const Vec& x) const override;
  Vec max_dissipation() const override;
};

/// x' = v, v' = u, u in [-u_max, u_max].
class DoubleIntegrator final : public DynamicsModel {
 public:
  explicit DoubleIntegrator(double u_max = 1.0, double v_max = 2.0);
  std::string id() const override { return "double_integrator"; }
  int state_dim() const override { return 2; }
  Vec flow(const Vec& x, const Vec& u, const Vec& d) const override;
  HamiltonianExtrema hamiltonian_extrema(const Vec& x, const Vec& p) const override;
  double safety_hamiltonian(const Vec& x, const Vec& p) const override;
  Vec dissipation(const Vec& x) const override;
  Vec max_dissipation() const override;

 private:
  double v_max_;  // |v| bound over the grid, used only for dissipation
};

/// Fixed-speed planar car: x' = V cos(th) + d_x, y' = V sin(th) + d_y,
/// th' = u. The additive disturbance box defaults to zero width.
class Dubins3D final : public DynamicsModel {
 public:
  explicit Dubins3D(double speed = 2.0, double turn_rate_max = 3.0, double disturbance_max = 0.0);
  std::string id() const override { return "dubins3d"; }
  int state_dim() const override { return 3; }
  double speed() const { return speed_; }
  Vec flow(const Vec& x, const Vec& u, const Vec& d) const override;
  HamiltonianExtrema hamiltonian_extrema(const Vec& x, const Vec& p) const override;
  double safety_hamiltonian(const Vec& x, const Vec& p) const override;
  Vec dissipation(const Vec& x) const override;
  Vec max_dissipation() const override;
  void wrap_state(Vec& x) const override;

 private:
  double speed_;
};

/// Kinematic bicycle with controls (V, steer):
/// x' = V cos(th) + d_x, y' = V sin(th) + d_y, th' = V tan(steer) / L.
class Bicycle3D final : public DynamicsModel {
 public:
  struct Params {
    double wheelbase = 0.235;
    double speed_min = 0.7;
    double speed_max = 1.4;
    double steer_max = 25.0 * 3.14159265358979323846 / 180.0;
    double disturbance_max = 0.1;
  };
  Bicycle3D();
  explicit Bicycle3D(Params params);
  std::string id() const override { return "bicycle3d"; }
  int state_dim() const override { return 3; }
  const Params& params() const { return params_; }
  Vec flow(const Vec& x, const Vec& u, const Vec& d) const override;
  HamiltonianExtrema hamiltonian_extrema(const Vec& x, const Vec& p) const override;
  Vec dissipation(const Vec& x) const override;
  Vec max_dissipation() const override;
  void wrap_state(Vec& x) const override;

 private:
  Params params_;
};

double wrap_angle(double a);

}  // namespace dualguard
