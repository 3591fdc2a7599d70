#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cclab/dimension.hpp"
#include "cclab/vec.hpp"

namespace cclab {

/// Point of the cylindrical phase plane: v is the conformal profile, w = dv/dt.
/// Geometric use requires v > 0; the vector field itself is defined for v >= 0.
struct PhasePoint {
  double v = 0.0;
  double w = 0.0;
};

/// v0(n) = ((n-2)/n)^{(n-2)/4}, the positive rest point of the cylinder ODE.
/// It is the profile of the round cylinder scaled to scalar curvature n(n-1).
double equilibrium_v0(Dimension n);

/// Conserved energy H(v,w) = w^2 - ((n-2)^2/4) v^2 + ((n-2)^2/4) v^{2n/(n-2)}.
double hamiltonian(const PhasePoint& p, Dimension n);

/// First-order field: (dv/dt, dw/dt) = (w, ((n-2)^2/4) v - (n(n-2)/4) v^{(n+2)/(n-2)}).
/// Throws DomainError for v < 0 (fractional power).
PhasePoint vector_field(const PhasePoint& p, Dimension n);

/// Orbit parameters: the orbit passes through (epsilon, 0) at t = phase_T.
/// For epsilon in (0, v0(n)] that point is the orbit minimum and the solution
/// is periodic (constant at epsilon = v0). Values epsilon > v0 are accepted
/// at construction so escape behavior can be exercised; the periodic-orbit
/// helpers reject them.
struct FowlerParams {
  Dimension n;
  double epsilon;
  double phase_T;

  FowlerParams(Dimension n_, double epsilon_, double phase_T_ = 0.0);
};

/// Dense orbit samples on a uniform t-grid with cubic Hermite evaluation in
/// between (w = v' gives the slopes for free). Immutable after construction.
class FowlerTrajectory {
 public:
  struct Sample {
    double t;
    double v;
    double w;
  };

  FowlerTrajectory(FowlerParams params, double step, std::vector<Sample> samples);

  const FowlerParams& params() const noexcept { return params_; }
  double step() const noexcept { return step_; }
  const std::vector<Sample>& samples() const noexcept { return samples_; }
  std::size_t size() const noexcept { return samples_.size(); }
  double t_min() const noexcept { return samples_.front().t; }
  double t_max() const noexcept { return samples_.back().t; }

  /// Hermite-interpolated state at t (t must lie within [t_min, t_max]).
  PhasePoint at(double t) const;
  double v(double t) const { return at(t).v; }
  double w(double t) const { return at(t).w; }

  /// max_t |H(t) - H(t_ref)| over the stored samples, H at the initial condition.
  double max_hamiltonian_drift() const noexcept { return max_drift_; }
  double initial_hamiltonian() const noexcept { return h0_; }

 private:
  FowlerParams params_;
  double step_;
  std::vector<Sample> samples_;
  double h0_ = 0.0;
  double max_drift_ = 0.0;
};

/// Integrate the orbit with classical fixed-step RK4 from (epsilon, 0) at
/// t = phase_T, both directions as needed, sampled on a uniform grid that
/// covers [t0, t1]. Throws NumericError if v reaches <= 0 (orbit escape,
/// possible only for initial data outside the periodic family).
FowlerTrajectory integrate(const FowlerParams& params, double t0, double t1, double step = 1e-3);

/// Period of the orbit through (epsilon, 0), 0 < epsilon < v0(n), via w = 0
/// crossing events refined by bisection on the Hermite interpolant.
/// Throws ValidationError at or beyond the rest point (degenerate orbit).
double period(double epsilon, Dimension n, double step = 1e-3);

struct OrbitExtrema {
  double v_min = 0.0;
  double v_max = 0.0;
};

/// Extrema of v over a trajectory spanning at least one period (needs both a
/// minimum and a maximum event). Constant trajectories report (v, v).
OrbitExtrema orbit_extrema(const FowlerTrajectory& traj);

/// CSV export, columns t,v,w,H, one header row, 17 significant digits.
std::string trajectory_to_csv(const FowlerTrajectory& traj);

}  // namespace cclab
