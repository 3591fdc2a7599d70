#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cclab/dimension.hpp"
#include "cclab/fowler.hpp"
#include "cclab/vec.hpp"

namespace cclab {

/// Euclidean ball B(center, radius).
struct Ball {
  Vec center;
  double radius;

  Ball(Vec c, double r);
  int dim() const noexcept { return static_cast<int>(center.size()); }
  bool contains(const Vec& x) const { return dist(x, center) < radius; }
};

/// Finitely many singular points with a common exclusion radius; evaluation is
/// never requested closer than exclusion_radius to any of them.
struct SingularSet {
  std::vector<Vec> points;
  double exclusion_radius = 1e-6;

  bool empty() const noexcept { return points.empty(); }
  bool excludes(const Vec& x) const;
  /// Distance to the nearest singular point (+inf when empty).
  double distance(const Vec& x) const;
};

enum class DerivativeMode { Analytic, FiniteDifference };

/// Coarse description of where a factor lives; exclusion checks are what the
/// code enforces, the region kind is carried for reports.
enum class RegionKind { WholeSpace, PuncturedBall, ExteriorRegion, Annulus };

/// Rotationally symmetric cylinder profile v(t) with first and second
/// derivatives, defined on [t_min, t_max]. v > 0 on its interval.
class CylinderProfile {
 public:
  using Fn = std::function<double(double)>;

  CylinderProfile(Dimension n, double t_min, double t_max, Fn v, Fn dv, Fn d2v);

  Dimension dim() const noexcept { return n_; }
  double t_min() const noexcept { return t_min_; }
  double t_max() const noexcept { return t_max_; }

  double value(double t) const;
  double deriv(double t) const;
  double second_deriv(double t) const;

 private:
  void check_range(double t) const;

  Dimension n_;
  double t_min_, t_max_;
  Fn v_, dv_, d2v_;
};

CylinderProfile constant_profile(Dimension n, double value);

/// v(t) = (sech t)^{(n-2)/2}; the cylinder picture of the standard bubble.
CylinderProfile sech_profile(Dimension n);

/// Profile backed by an integrated orbit, shifted so that profile time s
/// corresponds to trajectory time s + t_offset. The second derivative comes
/// from the orbit equation, which is exact on solutions.
CylinderProfile trajectory_profile(std::shared_ptr<const FowlerTrajectory> traj, double t_offset);

/// Positive conformal factor u on a punctured/exterior domain together with
/// its gradient and Laplacian. Analytic factors carry closed-form derivative
/// evaluators; finite-difference factors derive them from u with central
/// second-order stencils at a spacing relative to the local scale.
class ConformalFactor {
 public:
  using ScalarFn = std::function<double(const Vec&)>;
  using VecFn = std::function<Vec(const Vec&)>;

  static ConformalFactor analytic(Dimension n, ScalarFn u, VecFn grad, ScalarFn lap,
                                  SingularSet singular = {},
                                  RegionKind region = RegionKind::WholeSpace);
  static ConformalFactor finite_difference(Dimension n, ScalarFn u, SingularSet singular = {},
                                           RegionKind region = RegionKind::WholeSpace,
                                           double spacing_rel = 1e-4);

  Dimension dim() const noexcept { return n_; }
  DerivativeMode mode() const noexcept { return mode_; }
  RegionKind region() const noexcept { return region_; }
  const SingularSet& singular() const noexcept { return singular_; }
  double spacing_rel() const noexcept { return spacing_rel_; }

  double u(const Vec& x) const;
  Vec grad_u(const Vec& x) const;
  double laplacian_u(const Vec& x) const;

  /// Finite-difference view of this factor (keeps u, drops analytic derivatives).
  ConformalFactor with_mode(DerivativeMode mode) const;
  ConformalFactor with_spacing(double spacing_rel) const;

  /// Stencil spacing used at x: spacing_rel * local scale, where the local
  /// scale is max(1, |x|) capped by the distance to the nearest singular point.
  double fd_spacing(const Vec& x) const;

 private:
  ConformalFactor(Dimension n) : n_(n) {}
  void check_domain(const Vec& x) const;

  Dimension n_{3};
  DerivativeMode mode_ = DerivativeMode::Analytic;
  RegionKind region_ = RegionKind::WholeSpace;
  SingularSet singular_;
  double spacing_rel_ = 1e-4;
  ScalarFn u_;
  VecFn grad_;
  ScalarFn lap_;
};

/// g = u^{4/(n-2)} * (flat metric).
struct ConformalMetric {
  ConformalFactor factor;
  Dimension dim() const noexcept { return factor.dim(); }
};

/// Residual of the critical equation: Delta u + (n(n-2)/4) u^{(n+2)/(n-2)}.
/// Zero exactly when g = u^{4/(n-2)} delta has scalar curvature n(n-1).
double yamabe_residual(const ConformalFactor& factor, const Vec& x);

/// Pointwise scalar curvature of g over the flat background:
/// R(g) = -(4(n-1)/(n-2)) u^{-(n+2)/(n-2)} Delta u.
double scalar_curvature(const ConformalFactor& factor, const Vec& x);

/// u(x) = (2 lambda / (lambda^2 + |x-center|^2))^{(n-2)/2}, the standard
/// exact solution with analytic derivatives; residual is identically zero.
ConformalFactor bubble(Dimension n, double lambda, const Vec& center);

/// u identically equal to c (flat metric rescaled).
ConformalFactor constant_factor(Dimension n, double c);

/// Radial factor u(x) = |x|^{(2-n)/2} v(-log|x|) assembled from a cylinder
/// profile; derivatives are exact in the profile data, which removes the
/// blow-up at the puncture.
ConformalFactor cyl_to_euclidean(const CylinderProfile& profile,
                                 SingularSet singular = {{}, 1e-6},
                                 RegionKind region = RegionKind::PuncturedBall);

struct EuclideanToCylOptions {
  double t_min = -6.0;
  double t_max = 12.0;
  /// Rays compared against `direction` to assert rotational symmetry.
  int symmetry_rays = 4;
  double symmetry_tol = 1e-8;
};

/// Inverse picture: v(t) = |x|^{(n-2)/2} u(x) along |x| = e^{-t} in the given
/// direction. Throws GeometryError if cross-ray probes reveal asymmetry.
CylinderProfile euclidean_to_cyl(const ConformalFactor& factor, const Vec& direction,
                                 const EuclideanToCylOptions& opts = {});

enum class Orientation { Inward, Outward };

/// Mean curvature of the round sphere ∂ball at boundary point x in the metric
/// g, normalized so the flat unit sphere with inward normal has h = 1:
/// h(g) = h0 u^{-2/(n-2)} - (2/(n-2)) u^{-n/(n-2)} du/dnu, h0 = ±1/radius.
double mean_curvature_sphere(const ConformalMetric& metric, const Ball& ball, const Vec& x,
                             Orientation orientation = Orientation::Inward);

/// h(g) = -(2/(n-2)) v^{-n/(n-2)} v'(t) for the sphere |x| = e^{-t} in the
/// metric generated by the profile, inward normal.
double cylinder_end_mean_curvature(const CylinderProfile& profile, double t);

struct AnnulusBounds {
  double r_in = 0.0;
  double r_out = 0.0;
  double inf_value = 0.0;
  double sup_value = 0.0;
};

struct AsymptoticBounds {
  double c1 = 0.0;  // inf of u(x) |x-center|^{(n-2)/2} over the sampled annuli
  double c2 = 0.0;  // sup of the same
  std::vector<AnnulusBounds> annuli;
  /// True when per-annulus bounds agree across annuli (genuine blow-up rate);
  /// false with decaying inner infima signals a removable singularity.
  bool stable = false;
};

struct AsymptoticCheckOptions {
  int directions = 4;
  double max_t_spacing = 5e-3;  // radial sampling density in t = -log r
  double stability_rel = 0.05;
  std::uint64_t seed = 7001;
};

AsymptoticBounds asymptotic_bounds_check(const ConformalFactor& factor,
                                         const std::vector<std::pair<double, double>>& annuli,
                                         std::optional<Vec> center = std::nullopt,
                                         const AsymptoticCheckOptions& opts = {});

/// CSV export of factor samples: columns x1..xn,u,ux1..uxn,lap_u.
std::string factor_samples_to_csv(const ConformalFactor& factor, const std::vector<Vec>& points);

}  // namespace cclab
