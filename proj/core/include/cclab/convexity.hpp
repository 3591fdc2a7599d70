#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cclab/conformal.hpp"
#include "cclab/kelvin.hpp"
#include "cclab/moving_planes.hpp"

namespace cclab {

struct InstanceParams {
  int n = 0;
  double epsilon = 0.0;
  double t0 = 0.0;
};

/// A constant-scalar-curvature metric on the closed unit ball minus a finite
/// singular set, with nonnegative boundary mean curvature, plus the profile
/// it was built from (when radial) for dual-route curvature checks.
struct TheoremInstance {
  ConformalMetric metric;
  SingularSet singular;
  double boundary_h_min = 0.0;
  std::optional<InstanceParams> fowler;
  std::shared_ptr<const CylinderProfile> profile;  // null for non-radial instances
  bool ascending_branch = false;  // built with v'(t0) > 0 under an override
};

struct FowlerBuildOptions {
  double exclusion_radius = 1e-6;
  double step = 1e-3;
  bool allow_ascending = false;  // permit v'(t0) > 0 (boundary hypothesis fails)
};

/// Instance generated by an orbit profile restricted to t >= t0, rescaled so
/// that the unit-ball boundary corresponds to profile time 0 (x maps to
/// radius e^{-t}). Requires v'(t0) <= 0 unless allow_ascending is set.
TheoremInstance build_fowler_instance(Dimension n, double epsilon, double t0,
                                      const FowlerBuildOptions& opts = {});

/// Instance around an arbitrary factor; the boundary minimum is sampled.
TheoremInstance make_instance(ConformalFactor factor, SingularSet singular,
                              int boundary_samples = 64, std::uint64_t seed = 3301);

struct SampleSpec {
  int interior_samples = 200;
  int boundary_samples = 100;
  int completeness_rays = 4;
  int completeness_levels = 6;
  double residual_tol = 1e-8;
  double boundary_tol = 1e-10;
  std::uint64_t seed = 20260101;
};

struct RayCompletenessCheck {
  Vec singular_point;
  Vec direction;
  bool divergent = false;
  double growth_rate = 0.0;  // g-length gained per unit of -log(delta)
};

struct HypothesesReport {
  double max_residual = 0.0;
  Vec argmax_residual;
  double min_boundary_h = 0.0;
  std::vector<RayCompletenessCheck> rays;
  bool no_singular_points = false;
  bool residual_ok = false;
  bool boundary_ok = false;
  bool completeness_ok = false;

  bool pass() const { return residual_ok && boundary_ok && completeness_ok; }
};

/// Interior residual, boundary mean-curvature minimum, and the radial
/// completeness proxy (the g-length of rays into each singular point must
/// keep growing as the inner cutoff shrinks).
HypothesesReport verify_hypotheses(const TheoremInstance& inst, const SampleSpec& spec = {});

struct BallScanResult {
  Ball ball;
  double min_h = 0.0;
  Vec argmin;
};

struct ScanReport {
  std::optional<InstanceParams> instance;
  std::uint64_t seed = 0;
  int num_balls = 0;
  int boundary_samples = 0;
  bool hypotheses_pass = false;
  bool override_hypotheses = false;
  double boundary_margin = 0.0;
  std::vector<BallScanResult> balls;
  double global_min_h = 0.0;
  std::size_t argmin_ball = 0;
};

struct ScanOptions {
  int threads = 1;
  bool override_hypotheses = false;
  double boundary_margin = 1e-6;  // clearance kept from the unit sphere and exclusions
};

/// Sweep interior balls (half uniform, a quarter hugging the singular
/// exclusion, a quarter hugging the outer boundary) and record the minimum
/// inward mean curvature over sampled boundary points of each. Identical
/// seeds reproduce identical reports for any thread count.
ScanReport scan_balls(const TheoremInstance& inst, int num_balls, int boundary_samples,
                      std::uint64_t seed, const ScanOptions& opts = {});

struct ReflectedBallStep {
  Ball k_ball;  // pullback of the reflected image sphere; strictly inside b
  Ball p_ball;  // pullback of the upper half-space; its boundary passes through p
  double lambda0 = 0.0;
  bool degenerate = false;   // symmetric branch (w vanishes identically)
  double min_w = 0.0;
  double dv_dxn_at_image_q = 0.0;  // normal derivative of v at I(q) on the plane
};

struct ReflectedBallOptions {
  Lambda0Options lambda0;
};

/// One step of the reflected-ball construction: invert at p on the boundary
/// of b, run the moving-planes scan in the normalized frame, and pull the
/// reflected sphere and half-space back. Exposed as a diagnostic.
ReflectedBallStep reflected_ball_step(const TheoremInstance& inst, const Ball& b, const Vec& p,
                                      const Vec& q, const ReflectedBallOptions& opts = {});

std::string scan_report_to_json(const ScanReport& report);
std::string scan_report_to_csv(const ScanReport& report);

}  // namespace cclab
