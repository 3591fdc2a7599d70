#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cclab/conformal.hpp"
#include "cclab/kelvin.hpp"
#include "cclab/vec.hpp"

namespace cclab {

/// Reflection across the hyperplane {x_n = lambda}: last coordinate maps to
/// 2 lambda - x_n. Involutive, fixes the plane.
Vec reflect(const Vec& x, double lambda);

/// Tensor grid over [-extent, extent]^{n-1} x [-extent, lambda]. The top
/// layer lies exactly on the plane {x_n = lambda}.
struct GridSpec {
  double extent = 8.0;
  double spacing = 0.25;
};

/// Domain of one reflection pass: the half-space {x_n <= lambda} minus an
/// optional excluded ball and the singular exclusions.
struct HalfSpaceDomain {
  double lambda = 0.0;
  std::optional<Ball> excluded_ball;
  SingularSet singular;
  GridSpec grid;
};

/// Sampled reflection difference w_lambda(x) = v(x) - v(x_lambda). Points in
/// an exclusion zone are not on the grid; points whose reflection lands in
/// one are skipped and counted.
struct ReflectionField {
  double lambda = 0.0;
  double spacing = 0.0;
  std::vector<Vec> points;
  std::vector<double> w;
  std::vector<double> v_at;         // v(x)
  std::vector<double> v_reflected;  // v(x_lambda)
  std::vector<int> cells_below;     // grid layers below the plane (0 = on it)

  double min_w = 0.0;  // over interior points (cells_below >= 1)
  std::size_t argmin_index = 0;
  Vec argmin;
  double max_abs_w = 0.0;          // over all stored points
  double max_abs_w_on_plane = 0.0;
  std::size_t skipped_reflections = 0;
  std::size_t domain_excluded = 0;

  /// True when more than 1% of candidate grid points had to be skipped
  /// because their reflection hit an exclusion.
  bool unreliable = false;

  /// Minimum of w over points at least `cells` layers below the plane.
  double min_w_at_depth(int cells) const;
};

ReflectionField w_field(const ConformalFactor& v, const HalfSpaceDomain& domain, int threads = 1);

/// Difference-quotient coefficient
/// c_lambda = (n(n-2)/4) (v^p - v_l^p)/(v - v_l), p = (n+2)/(n-2),
/// continued across the diagonal by its limit (n(n+2)/4) v^{4/(n-2)}.
double c_lambda(double v_val, double v_lambda_val, Dimension n);

struct LambdaProbe {
  double lambda = 0.0;
  double min_w = 0.0;
  Vec argmin;
  std::size_t skipped = 0;
};

struct Lambda0Options {
  GridSpec grid;
  double tol = 1e-4;        // bisection width in lambda
  double tol_neg = 1e-10;   // dead band: "positive" means min_w > -tol_neg
  double lambda_start = 1.0;
  double lambda_ceiling = 64.0;
  int coarse_steps = 16;
  double degenerate_tol = 1e-6;  // max |w| below this at lambda0 => symmetric branch
  int threads = 1;
};

struct Lambda0Result {
  double lambda0 = 0.0;
  bool degenerate = false;  // w vanishes identically at lambda0 (symmetry plane)
  double lambda_bar = 0.0;  // starting height found by the upward scan
  ReflectionField field;    // full field at lambda0
  std::vector<LambdaProbe> probes;
};

/// Critical height lambda0 = inf{ l : w_lambda > 0 on the interior for all
/// lambda >= l }, located by an upward scan for a positive start, a coarse
/// downward walk, and bisection. The returned lambda0 is the verified-positive
/// end of the final bracket (one-sided, within tol of the infimum). Throws
/// NoStartError when no positive starting height exists below the ceiling.
Lambda0Result find_lambda0(const ConformalFactor& v, const std::optional<Ball>& excluded_ball,
                           const SingularSet& singular, const Lambda0Options& opts = {});

/// Far-field coefficients of a decaying solution:
/// v(x) = |x|^{2-n} (a + sum_i b_i x^i |x|^{-2}) + O(|x|^{-n}).
struct ExpansionFit {
  double a = 0.0;
  Vec b;
  std::vector<double> radii;
  std::vector<double> residual_rms;  // rms remainder per radius, in v units
  double remainder_slope = 0.0;      // log-log slope of the rms remainder
};

ExpansionFit fit_expansion(const ConformalFactor& v, const std::vector<double>& radii,
                           int samples_per_sphere = 64, std::uint64_t seed = 5150);

/// Closed form Delta(|x|^{-mu}) = -mu(n-2-mu)|x|^{-mu-2} for 0 < mu < n-2,
/// alongside a central-difference estimate at the given relative spacing.
struct GLaplacianCheck {
  double closed_form = 0.0;
  double finite_difference = 0.0;
};

GLaplacianCheck appendix_g_laplacian(double mu, const Vec& x, Dimension n, double spacing_rel = 1e-4);

/// Diagnostics for the auxiliary-function argument: where the negative
/// minimum of w_lambda sits relative to R0, and the sign of
/// c_lambda + Delta g / g (g = |x|^{-mu}) at grid points with |x| >= R0.
struct MinimumLocationReport {
  bool applicable = false;  // false when the field has no negative interior minimum
  bool argmin_inside_r0 = false;
  double min_w = 0.0;
  Vec argmin;
  double r0 = 0.0;
  double mu = 0.0;
  std::size_t sign_points = 0;
  double max_sign_value = 0.0;  // max of c_lambda + Delta g/g over checked points
  bool sign_condition_holds = false;
};

MinimumLocationReport minimum_location_check(const ReflectionField& field, double r0, Dimension n,
                                             std::optional<double> mu = std::nullopt);

/// CSV export of a reflection field: columns x1..xn,w.
std::string reflection_field_to_csv(const ReflectionField& field, int dim);

/// JSON report for a lambda scan: {lambda0, degenerate, lambda_bar, probes:
/// [{lambda, min_w, argmin, skipped}], ...}.
std::string lambda0_result_to_json(const Lambda0Result& result);

}  // namespace cclab
