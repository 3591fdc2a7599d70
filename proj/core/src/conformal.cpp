#include "cclab/conformal.hpp"

#include <algorithm>
#include <cmath>

#include "cclab/errors.hpp"
#include "cclab/report_io.hpp"
#include "cclab/sampling.hpp"

namespace cclab {

namespace {

double positive_pow(double base, double expo, const char* what) {
  if (!(base > 0.0)) {
    throw DomainError(std::string(what) + ": expected a positive base, got " + format_g17(base));
  }
  return std::pow(base, expo);
}

}  // namespace

Ball::Ball(Vec c, double r) : center(std::move(c)), radius(r) {
  if (center.empty()) throw ValidationError("Ball: empty center");
  if (!(radius > 0.0)) throw ValidationError("Ball: radius must be positive");
}

bool SingularSet::excludes(const Vec& x) const {
  for (const auto& p : points) {
    if (dist(x, p) < exclusion_radius) return true;
  }
  return false;
}

double SingularSet::distance(const Vec& x) const {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& p : points) d = std::min(d, dist(x, p));
  return d;
}

CylinderProfile::CylinderProfile(Dimension n, double t_min, double t_max, Fn v, Fn dv, Fn d2v)
    : n_(n), t_min_(t_min), t_max_(t_max), v_(std::move(v)), dv_(std::move(dv)), d2v_(std::move(d2v)) {
  if (!(t_max_ > t_min_)) throw ValidationError("CylinderProfile: empty t range");
}

void CylinderProfile::check_range(double t) const {
  if (!(t >= t_min_ && t <= t_max_)) {
    throw DomainError("profile evaluated at t = " + format_g17(t) + " outside [" +
                      format_g17(t_min_) + ", " + format_g17(t_max_) + "]");
  }
}

double CylinderProfile::value(double t) const {
  check_range(t);
  return v_(t);
}

double CylinderProfile::deriv(double t) const {
  check_range(t);
  return dv_(t);
}

double CylinderProfile::second_deriv(double t) const {
  check_range(t);
  return d2v_(t);
}

CylinderProfile constant_profile(Dimension n, double value) {
  if (!(value > 0.0)) throw ValidationError("constant_profile: value must be positive");
  const double inf = std::numeric_limits<double>::infinity();
  return CylinderProfile(
      n, -inf, inf, [value](double) { return value; }, [](double) { return 0.0; },
      [](double) { return 0.0; });
}

CylinderProfile sech_profile(Dimension n) {
  const double k = (n.d() - 2.0) / 2.0;
  const double inf = std::numeric_limits<double>::infinity();
  auto v = [k](double t) { return std::pow(1.0 / std::cosh(t), k); };
  auto dv = [k, v](double t) { return -k * v(t) * std::tanh(t); };
  auto d2v = [k, v](double t) {
    const double th = std::tanh(t);
    const double sech = 1.0 / std::cosh(t);
    return k * v(t) * (k * th * th - sech * sech);
  };
  return CylinderProfile(n, -inf, inf, v, dv, d2v);
}

CylinderProfile trajectory_profile(std::shared_ptr<const FowlerTrajectory> traj, double t_offset) {
  if (!traj) throw ValidationError("trajectory_profile: null trajectory");
  const Dimension n = traj->params().n;
  auto v = [traj, t_offset](double s) { return traj->v(s + t_offset); };
  auto dv = [traj, t_offset](double s) { return traj->w(s + t_offset); };
  // The orbit equation gives v'' exactly on solutions.
  auto d2v = [traj, t_offset, n](double s) {
    const PhasePoint p = traj->at(s + t_offset);
    return vector_field(p, n).w;
  };
  return CylinderProfile(n, traj->t_min() - t_offset, traj->t_max() - t_offset, v, dv, d2v);
}

ConformalFactor ConformalFactor::analytic(Dimension n, ScalarFn u, VecFn grad, ScalarFn lap,
                                          SingularSet singular, RegionKind region) {
  ConformalFactor f(n);
  f.mode_ = DerivativeMode::Analytic;
  f.region_ = region;
  f.singular_ = std::move(singular);
  f.u_ = std::move(u);
  f.grad_ = std::move(grad);
  f.lap_ = std::move(lap);
  return f;
}

ConformalFactor ConformalFactor::finite_difference(Dimension n, ScalarFn u, SingularSet singular,
                                                   RegionKind region, double spacing_rel) {
  if (!(spacing_rel > 0.0 && spacing_rel < 0.5)) {
    throw ValidationError("finite_difference: spacing_rel out of range");
  }
  ConformalFactor f(n);
  f.mode_ = DerivativeMode::FiniteDifference;
  f.region_ = region;
  f.singular_ = std::move(singular);
  f.spacing_rel_ = spacing_rel;
  f.u_ = std::move(u);
  return f;
}

void ConformalFactor::check_domain(const Vec& x) const {
  if (static_cast<int>(x.size()) != n_.value()) {
    throw ValidationError("point dimension does not match the factor dimension");
  }
  if (singular_.excludes(x)) {
    throw DomainError("evaluation inside the exclusion radius of a singular point");
  }
}

double ConformalFactor::u(const Vec& x) const {
  check_domain(x);
  return u_(x);
}

double ConformalFactor::fd_spacing(const Vec& x) const {
  double scale = std::max(1.0, norm(x));
  if (!singular_.empty()) scale = std::min(scale, singular_.distance(x));
  return spacing_rel_ * scale;
}

Vec ConformalFactor::grad_u(const Vec& x) const {
  check_domain(x);
  if (mode_ == DerivativeMode::Analytic) return grad_(x);
  const double h = fd_spacing(x);
  Vec g(x.size());
  Vec probe = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + h;
    const double up = u_(probe);
    probe[i] = x[i] - h;
    const double um = u_(probe);
    probe[i] = x[i];
    g[i] = (up - um) / (2.0 * h);
  }
  return g;
}

double ConformalFactor::laplacian_u(const Vec& x) const {
  check_domain(x);
  if (mode_ == DerivativeMode::Analytic) return lap_(x);
  const double h = fd_spacing(x);
  const double u0 = u_(x);
  double lap = 0.0;
  Vec probe = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + h;
    const double up = u_(probe);
    probe[i] = x[i] - h;
    const double um = u_(probe);
    probe[i] = x[i];
    lap += (up - 2.0 * u0 + um) / (h * h);
  }
  return lap;
}

ConformalFactor ConformalFactor::with_mode(DerivativeMode mode) const {
  if (mode == mode_) return *this;
  if (mode == DerivativeMode::FiniteDifference) {
    return finite_difference(n_, u_, singular_, region_, spacing_rel_);
  }
  if (!grad_ || !lap_) {
    throw ValidationError("with_mode: no analytic derivatives available for this factor");
  }
  return analytic(n_, u_, grad_, lap_, singular_, region_);
}

ConformalFactor ConformalFactor::with_spacing(double spacing_rel) const {
  ConformalFactor f = *this;
  if (!(spacing_rel > 0.0 && spacing_rel < 0.5)) {
    throw ValidationError("with_spacing: spacing_rel out of range");
  }
  f.spacing_rel_ = spacing_rel;
  return f;
}

double yamabe_residual(const ConformalFactor& factor, const Vec& x) {
  const double nd = factor.dim().d();
  const double u = factor.u(x);
  return factor.laplacian_u(x) +
         nd * (nd - 2.0) / 4.0 * positive_pow(u, (nd + 2.0) / (nd - 2.0), "yamabe_residual");
}

double scalar_curvature(const ConformalFactor& factor, const Vec& x) {
  const double nd = factor.dim().d();
  const double u = factor.u(x);
  return -4.0 * (nd - 1.0) / (nd - 2.0) *
         positive_pow(u, -(nd + 2.0) / (nd - 2.0), "scalar_curvature") * factor.laplacian_u(x);
}

ConformalFactor bubble(Dimension n, double lambda, const Vec& center) {
  if (!(lambda > 0.0)) throw DomainError("bubble: lambda must be positive");
  if (static_cast<int>(center.size()) != n.value()) {
    throw ValidationError("bubble: center dimension mismatch");
  }
  const double nd = n.d();
  const double k = (nd - 2.0) / 2.0;
  auto u = [lambda, center, k](const Vec& x) {
    const double s = dist2(x, center);
    return std::pow(2.0 * lambda / (lambda * lambda + s), k);
  };
  auto grad = [lambda, center, k, nd, u](const Vec& x) {
    const double s = dist2(x, center);
    const double f = -(nd - 2.0) * u(x) / (lambda * lambda + s);
    return scaled(sub(x, center), f);
  };
  auto lap = [lambda, center, nd, u](const Vec& x) {
    const double d = lambda * lambda + dist2(x, center);
    return -nd * (nd - 2.0) * lambda * lambda * u(x) / (d * d);
  };
  (void)k;
  return ConformalFactor::analytic(n, u, grad, lap, {}, RegionKind::WholeSpace);
}

ConformalFactor constant_factor(Dimension n, double c) {
  if (!(c > 0.0)) throw ValidationError("constant_factor: value must be positive");
  return ConformalFactor::analytic(
      n, [c](const Vec&) { return c; },
      [nn = n.value()](const Vec&) { return zero_vec(nn); }, [](const Vec&) { return 0.0; }, {},
      RegionKind::WholeSpace);
}

ConformalFactor cyl_to_euclidean(const CylinderProfile& profile, SingularSet singular,
                                 RegionKind region) {
  const Dimension n = profile.dim();
  const double nd = n.d();
  const double m = (2.0 - nd) / 2.0;
  const double a = (nd - 2.0) * (nd - 2.0) / 4.0;

  auto u = [profile, m](const Vec& x) {
    const double r = norm(x);
    const double t = -std::log(r);
    return std::pow(r, m) * profile.value(t);
  };
  auto grad = [profile, m](const Vec& x) {
    const double r = norm(x);
    const double t = -std::log(r);
    const double f = std::pow(r, m - 2.0) * (m * profile.value(t) - profile.deriv(t));
    return scaled(x, f);
  };
  auto lap = [profile, m, a](const Vec& x) {
    const double r = norm(x);
    const double t = -std::log(r);
    return std::pow(r, m - 2.0) * (profile.second_deriv(t) - a * profile.value(t));
  };
  return ConformalFactor::analytic(n, u, grad, lap, std::move(singular), region);
}

CylinderProfile euclidean_to_cyl(const ConformalFactor& factor, const Vec& direction,
                                 const EuclideanToCylOptions& opts) {
  const Dimension n = factor.dim();
  if (static_cast<int>(direction.size()) != n.value()) {
    throw ValidationError("euclidean_to_cyl: direction dimension mismatch");
  }
  const Vec dir = normalized(direction);
  const double nd = n.d();
  const double k = (nd - 2.0) / 2.0;

  // Cross-ray probes: the cylinder picture only exists for factors that are
  // rotationally symmetric about the origin.
  {
    const auto rays = sphere_directions(n, std::max(2, opts.symmetry_rays), 9601);
    int checked = 0;
    for (int i = 0; i < 5; ++i) {
      const double t = opts.t_min + (opts.t_max - opts.t_min) * (0.1 + 0.2 * i);
      const double r = std::exp(-t);
      double ref = 0.0;
      try {
        ref = factor.u(scaled(dir, r));
      } catch (const DomainError&) {
        continue;
      }
      for (const auto& ray : rays) {
        double val = 0.0;
        try {
          val = factor.u(scaled(ray, r));
        } catch (const DomainError&) {
          continue;
        }
        if (std::fabs(val - ref) > opts.symmetry_tol * std::max(1.0, std::fabs(ref))) {
          throw GeometryError("euclidean_to_cyl: factor is not rotationally symmetric about the origin");
        }
      }
      ++checked;
    }
    if (checked == 0) {
      throw DomainError("euclidean_to_cyl: no probe radius inside the factor domain");
    }
  }

  auto v = [factor, dir, k](double t) {
    const double r = std::exp(-t);
    return std::pow(r, k) * factor.u(scaled(dir, r));
  };
  auto dv = [factor, dir, k, v](double t) {
    const double r = std::exp(-t);
    const double du_r = dot(factor.grad_u(scaled(dir, r)), dir);
    return -(k * v(t) + std::pow(r, k + 1.0) * du_r);
  };
  auto d2v = [factor, dir, k, v](double t) {
    const double r = std::exp(-t);
    return k * k * v(t) + std::pow(r, k + 2.0) * factor.laplacian_u(scaled(dir, r));
  };
  return CylinderProfile(n, opts.t_min, opts.t_max, v, dv, d2v);
}

double mean_curvature_sphere(const ConformalMetric& metric, const Ball& ball, const Vec& x,
                             Orientation orientation) {
  const double nd = metric.dim().d();
  const double away = dist(x, ball.center) - ball.radius;
  if (std::fabs(away) > 1e-12 * std::max(1.0, ball.radius)) {
    throw GeometryError("mean_curvature_sphere: point is not on the sphere (offset " +
                        format_g17(away) + ")");
  }
  const double sign = orientation == Orientation::Inward ? 1.0 : -1.0;
  const Vec nu = scaled(sub(ball.center, x), sign / ball.radius);
  const double u = metric.factor.u(x);
  const double du_nu = dot(metric.factor.grad_u(x), nu);
  return sign / ball.radius * positive_pow(u, -2.0 / (nd - 2.0), "mean_curvature_sphere") -
         2.0 / (nd - 2.0) * positive_pow(u, -nd / (nd - 2.0), "mean_curvature_sphere") * du_nu;
}

double cylinder_end_mean_curvature(const CylinderProfile& profile, double t) {
  const double nd = profile.dim().d();
  const double v = profile.value(t);
  return -2.0 / (nd - 2.0) * positive_pow(v, -nd / (nd - 2.0), "cylinder_end_mean_curvature") *
         profile.deriv(t);
}

AsymptoticBounds asymptotic_bounds_check(const ConformalFactor& factor,
                                         const std::vector<std::pair<double, double>>& annuli,
                                         std::optional<Vec> center,
                                         const AsymptoticCheckOptions& opts) {
  if (annuli.empty()) throw ValidationError("asymptotic_bounds_check: no annuli given");
  Vec c;
  if (center) {
    c = *center;
  } else if (!factor.singular().empty()) {
    c = factor.singular().points.front();
  } else {
    c = zero_vec(factor.dim().value());
  }

  const double k = (factor.dim().d() - 2.0) / 2.0;
  const auto dirs = sphere_directions(factor.dim(), std::max(1, opts.directions), opts.seed);

  AsymptoticBounds out;
  out.c1 = std::numeric_limits<double>::infinity();
  out.c2 = 0.0;
  for (const auto& [r_in, r_out] : annuli) {
    if (!(r_in > 0.0 && r_out > r_in)) {
      throw ValidationError("asymptotic_bounds_check: annulus radii must satisfy 0 < r_in < r_out");
    }
    if (!factor.singular().empty() && r_in <= factor.singular().exclusion_radius) {
      throw DomainError("asymptotic_bounds_check: annulus reaches into the exclusion radius");
    }
    AnnulusBounds ab;
    ab.r_in = r_in;
    ab.r_out = r_out;
    ab.inf_value = std::numeric_limits<double>::infinity();
    ab.sup_value = 0.0;
    const double t_lo = -std::log(r_out);
    const double t_hi = -std::log(r_in);
    const int steps = std::max(2, static_cast<int>(std::ceil((t_hi - t_lo) / opts.max_t_spacing)));
    for (int i = 0; i <= steps; ++i) {
      const double t = t_lo + (t_hi - t_lo) * static_cast<double>(i) / steps;
      const double r = std::exp(-t);
      for (const auto& dir : dirs) {
        const Vec x = axpy(r, dir, c);
        const double val = factor.u(x) * std::pow(r, k);
        ab.inf_value = std::min(ab.inf_value, val);
        ab.sup_value = std::max(ab.sup_value, val);
      }
    }
    out.c1 = std::min(out.c1, ab.inf_value);
    out.c2 = std::max(out.c2, ab.sup_value);
    out.annuli.push_back(ab);
  }

  double min_inf = std::numeric_limits<double>::infinity(), max_inf = 0.0;
  double min_sup = std::numeric_limits<double>::infinity(), max_sup = 0.0;
  for (const auto& ab : out.annuli) {
    min_inf = std::min(min_inf, ab.inf_value);
    max_inf = std::max(max_inf, ab.inf_value);
    min_sup = std::min(min_sup, ab.sup_value);
    max_sup = std::max(max_sup, ab.sup_value);
  }
  out.stable = (max_inf - min_inf) <= opts.stability_rel * max_sup &&
               (max_sup - min_sup) <= opts.stability_rel * max_sup && out.c1 > 0.0;
  return out;
}

std::string factor_samples_to_csv(const ConformalFactor& factor, const std::vector<Vec>& points) {
  const int n = factor.dim().value();
  std::vector<std::string> header;
  for (int i = 1; i <= n; ++i) header.push_back("x" + std::to_string(i));
  header.push_back("u");
  for (int i = 1; i <= n; ++i) header.push_back("ux" + std::to_string(i));
  header.push_back("lap_u");
  std::string out = csv_row(header);

  for (const auto& x : points) {
    std::vector<std::string> row;
    for (double c : x) row.push_back(format_g17(c));
    row.push_back(format_g17(factor.u(x)));
    for (double g : factor.grad_u(x)) row.push_back(format_g17(g));
    row.push_back(format_g17(factor.laplacian_u(x)));
    out += csv_row(row);
  }
  return out;
}

}  // namespace cclab
