#include "cclab/convexity.hpp"

#include <algorithm>
#include <cmath>

#include "cclab/errors.hpp"
#include "cclab/parallel.hpp"
#include "cclab/report_io.hpp"
#include "cclab/sampling.hpp"

namespace cclab {

TheoremInstance build_fowler_instance(Dimension n, double epsilon, double t0,
                                      const FowlerBuildOptions& opts) {
  const double v0 = equilibrium_v0(n);
  if (!(epsilon > 0.0) || epsilon > v0 * (1.0 + 1e-12)) {
    throw ValidationError("build_fowler_instance: epsilon must lie in (0, v0]");
  }
  if (!(opts.exclusion_radius > 0.0 && opts.exclusion_radius < 0.5)) {
    throw ValidationError("build_fowler_instance: bad exclusion radius");
  }

  TheoremInstance inst{ConformalMetric{constant_factor(n, 1.0)}, {}, 0.0, std::nullopt, nullptr, false};
  inst.singular.points = {zero_vec(n.value())};
  inst.singular.exclusion_radius = opts.exclusion_radius;
  inst.fowler = InstanceParams{n.value(), epsilon, t0};

  if (epsilon >= v0 * (1.0 - 1e-12)) {
    // Rest-point orbit: the exact cylinder metric, boundary curvature zero.
    inst.profile = std::make_shared<CylinderProfile>(constant_profile(n, v0));
  } else {
    const double t_lo = t0 - 2.0;
    const double t_hi = t0 - std::log(opts.exclusion_radius) + 2.0;
    auto traj = std::make_shared<const FowlerTrajectory>(
        integrate(FowlerParams(n, epsilon, 0.0), t_lo, t_hi, opts.step));
    const double w_t0 = traj->w(t0);
    if (w_t0 > 1e-10) {
      if (!opts.allow_ascending) {
        throw HypothesisError("build_fowler_instance: v'(t0) = " + format_g17(w_t0) +
                              " > 0; the boundary mean curvature would be negative");
      }
      inst.ascending_branch = true;
    }
    inst.profile = std::make_shared<CylinderProfile>(trajectory_profile(traj, t0));
  }

  inst.metric.factor =
      cyl_to_euclidean(*inst.profile, inst.singular, RegionKind::PuncturedBall);
  inst.boundary_h_min = cylinder_end_mean_curvature(*inst.profile, 0.0);
  return inst;
}

TheoremInstance make_instance(ConformalFactor factor, SingularSet singular, int boundary_samples,
                              std::uint64_t seed) {
  TheoremInstance inst{ConformalMetric{std::move(factor)}, std::move(singular), 0.0, std::nullopt,
                       nullptr, false};
  const Ball unit(zero_vec(inst.metric.dim().value()), 1.0);
  double h_min = std::numeric_limits<double>::infinity();
  for (const auto& dir : sphere_directions(inst.metric.dim(), boundary_samples, seed)) {
    h_min = std::min(h_min, mean_curvature_sphere(inst.metric, unit, dir));
  }
  inst.boundary_h_min = h_min;
  return inst;
}

namespace {

/// Composite Simpson over [a, b] with an even number of panels.
double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
  panels += panels % 2;
  panels = std::max(panels, 2);
  const double h = (b - a) / panels;
  double s = f(a) + f(b);
  for (int i = 1; i < panels; ++i) {
    s += f(a + h * i) * ((i % 2) ? 4.0 : 2.0);
  }
  return s * h / 3.0;
}

}  // namespace

HypothesesReport verify_hypotheses(const TheoremInstance& inst, const SampleSpec& spec) {
  const Dimension n = inst.metric.dim();
  const ConformalFactor& factor = inst.metric.factor;
  const double excl = inst.singular.exclusion_radius;

  HypothesesReport report;
  report.no_singular_points = inst.singular.empty();

  // Interior residual; half the samples are biased into the blow-up region
  // around the first singular point, where the construction is most delicate.
  Rng rng(mix_seed(spec.seed, 1));
  report.max_residual = 0.0;
  for (int i = 0; i < spec.interior_samples; ++i) {
    Vec x;
    for (int attempt = 0;; ++attempt) {
      if (attempt > 200) throw GeometryError("verify_hypotheses: could not place interior samples");
      if (!inst.singular.empty() && i % 2 == 0) {
        const Vec& s = inst.singular.points.front();
        const double r = std::exp(rng.uniform(std::log(4.0 * excl), std::log(0.5)));
        x = axpy(r, random_unit_vector(rng, n.value()), s);
      } else {
        x = scaled(random_in_unit_ball(rng, n.value()), 0.98);
      }
      if (norm(x) > 0.98) continue;
      if (!inst.singular.empty() && inst.singular.distance(x) < 2.0 * excl) continue;
      break;
    }
    const double res = std::fabs(yamabe_residual(factor, x));
    if (res > report.max_residual) {
      report.max_residual = res;
      report.argmax_residual = x;
    }
  }
  report.residual_ok = report.max_residual < spec.residual_tol;

  // Boundary mean curvature over the unit sphere.
  const Ball unit(zero_vec(n.value()), 1.0);
  report.min_boundary_h = std::numeric_limits<double>::infinity();
  for (const auto& dir : sphere_directions(n, spec.boundary_samples, mix_seed(spec.seed, 2))) {
    report.min_boundary_h = std::min(report.min_boundary_h, mean_curvature_sphere(inst.metric, unit, dir));
  }
  report.boundary_ok = report.min_boundary_h >= -spec.boundary_tol;

  // Completeness proxy: the g-length of radial segments [delta, r1] into each
  // singular point must keep growing by a bounded-below amount per level as
  // delta shrinks geometrically (log divergence or faster).
  const double metric_exp = 2.0 / (n.d() - 2.0);
  report.completeness_ok = true;
  for (const auto& s : inst.singular.points) {
    const auto dirs = sphere_directions(n, spec.completeness_rays, mix_seed(spec.seed, 3));
    for (const auto& dir : dirs) {
      double r1 = 0.5 * (1.0 - norm(s));
      r1 = std::max(r1, 16.0 * excl);
      const double level = 1.5;  // delta shrinks by e^{-1.5} per level
      int levels = spec.completeness_levels;
      const int max_levels = static_cast<int>(std::floor(std::log(r1 / (2.0 * excl)) / level));
      levels = std::max(1, std::min(levels, max_levels));

      const auto integrand = [&](double tau) {
        const double rho = std::exp(-tau);
        return std::pow(factor.u(axpy(rho, dir, s)), metric_exp) * rho;
      };

      RayCompletenessCheck check;
      check.singular_point = s;
      check.direction = dir;
      std::vector<double> increments;
      double tau_prev = -std::log(r1);
      for (int k = 1; k <= levels; ++k) {
        const double tau_k = -std::log(r1) + level * k;
        increments.push_back(simpson(integrand, tau_prev, tau_k, 160));
        tau_prev = tau_k;
      }
      std::vector<double> sorted = increments;
      std::sort(sorted.begin(), sorted.end());
      const double median = sorted[sorted.size() / 2];
      const double lowest = sorted.front();
      check.divergent = median > 0.0 && lowest > 0.3 * median;
      check.growth_rate = median / level;
      report.completeness_ok = report.completeness_ok && check.divergent;
      report.rays.push_back(std::move(check));
    }
  }
  return report;
}

namespace {

Ball propose_ball(const TheoremInstance& inst, Rng& rng, std::size_t index, double margin) {
  const int n = inst.metric.dim().value();
  const double excl = inst.singular.exclusion_radius;
  const bool has_singular = !inst.singular.empty();

  const auto admissible_radius = [&](const Vec& c) {
    double r = 1.0 - margin - norm(c);
    for (const auto& s : inst.singular.points) r = std::min(r, dist(c, s) - excl - margin);
    return r;
  };

  for (int attempt = 0; attempt < 1000; ++attempt) {
    Vec center;
    double radius = 0.0;
    const auto stratum = index % 4;
    if (stratum == 2 && has_singular) {
      // Hug the singular exclusion sphere.
      const Vec& s = inst.singular.points[index % inst.singular.points.size()];
      const double d = std::exp(rng.uniform(std::log(3.0 * excl), std::log(0.35)));
      center = axpy(d, random_unit_vector(rng, n), s);
      const double cap = admissible_radius(center);
      if (cap <= 1e-4) continue;
      radius = rng.uniform(0.3, 0.9) * cap;
    } else if (stratum == 3) {
      // Hug the outer boundary.
      const double gap = std::exp(rng.uniform(std::log(2e-3), std::log(0.2)));
      center = scaled(random_unit_vector(rng, n), 1.0 - gap);
      const double cap = admissible_radius(center);
      if (cap <= 1e-4) continue;
      radius = rng.uniform(0.3, 0.9) * cap;
    } else {
      center = random_in_unit_ball(rng, n);
      const double cap = admissible_radius(center);
      if (cap <= 1e-3) continue;
      radius = rng.uniform(0.05, 0.95) * cap;
    }
    if (radius <= 0.0) continue;
    return Ball(center, radius);
  }
  throw GeometryError("scan_balls: no admissible ball fits the exclusions");
}

}  // namespace

ScanReport scan_balls(const TheoremInstance& inst, int num_balls, int boundary_samples,
                      std::uint64_t seed, const ScanOptions& opts) {
  if (num_balls < 1 || boundary_samples < 1) {
    throw ValidationError("scan_balls: counts must be positive");
  }

  SampleSpec quick;
  quick.interior_samples = 50;
  quick.boundary_samples = 50;
  quick.completeness_rays = 2;
  quick.completeness_levels = 4;
  const HypothesesReport hypo = verify_hypotheses(inst, quick);
  if (!hypo.pass() && !opts.override_hypotheses) {
    throw HypothesisError("scan_balls: instance fails its hypotheses (residual " +
                          format_g17(hypo.max_residual) + ", boundary min h " +
                          format_g17(hypo.min_boundary_h) + "); pass override to scan anyway");
  }

  ScanReport report;
  report.instance = inst.fowler;
  report.seed = seed;
  report.num_balls = num_balls;
  report.boundary_samples = boundary_samples;
  report.hypotheses_pass = hypo.pass();
  report.override_hypotheses = opts.override_hypotheses;
  report.boundary_margin = opts.boundary_margin;
  report.balls.resize(static_cast<std::size_t>(num_balls));

  const Dimension n = inst.metric.dim();
  std::vector<Vec> shared_dirs;
  if (n.value() == 3) shared_dirs = fibonacci_sphere(boundary_samples);

  parallel_for(static_cast<std::size_t>(num_balls), resolve_thread_count(opts.threads),
               [&](std::size_t i) {
                 Rng rng(mix_seed(seed, i));
                 const Ball ball = propose_ball(inst, rng, i, opts.boundary_margin);
                 const std::vector<Vec>& dirs =
                     n.value() == 3 ? shared_dirs
                                    : sphere_directions(n, boundary_samples, mix_seed(seed, i * 31 + 7));
                 BallScanResult r{ball, std::numeric_limits<double>::infinity(), {}};
                 for (const auto& dir : dirs) {
                   const Vec x = axpy(ball.radius, dir, ball.center);
                   const double h = mean_curvature_sphere(inst.metric, ball, x);
                   if (h < r.min_h) {
                     r.min_h = h;
                     r.argmin = x;
                   }
                 }
                 report.balls[i] = std::move(r);
               });

  report.global_min_h = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < report.balls.size(); ++i) {
    if (report.balls[i].min_h < report.global_min_h) {
      report.global_min_h = report.balls[i].min_h;
      report.argmin_ball = i;
    }
  }
  return report;
}

ReflectedBallStep reflected_ball_step(const TheoremInstance& inst, const Ball& b, const Vec& p,
                                      const Vec& q, const ReflectedBallOptions& opts) {
  const Dimension n = inst.metric.dim();
  if (norm(b.center) + b.radius >= 1.0) {
    throw GeometryError("reflected_ball_step: ball closure must stay inside the unit ball");
  }
  for (const auto& s : inst.singular.points) {
    if (dist(b.center, s) - b.radius <= inst.singular.exclusion_radius) {
      throw GeometryError("reflected_ball_step: ball meets a singular exclusion");
    }
  }
  const auto snap = [&](const Vec& x) {
    return axpy(b.radius, normalized(sub(x, b.center)), b.center);
  };
  const Vec p_s = snap(p);
  const Vec q_s = snap(q);
  if (dist(p_s, q_s) < 1e-9) throw GeometryError("reflected_ball_step: p and q must be distinct");

  const Inversion inv(p_s, 1.0);
  const HalfSpace plane = invert_sphere_through_center(inv, b);
  const auto sigma_img = invert_ball(inv, Ball(zero_vec(n.value()), 1.0));
  const Ball* sigma = std::get_if<Ball>(&sigma_img);
  if (!sigma) throw GeometryError("reflected_ball_step: unit sphere image degenerated");

  const ConformalFactor v = kelvin_transform(inv, inst.metric.factor);
  const RigidMotion motion = normalize_halfspace_frame(plane, sigma->center);
  const ConformalFactor v_n = transform(v, motion);
  const Ball sigma_n = transform(*sigma, motion);

  for (const auto& s : v_n.singular().points) {
    if (s.back() > 0.0) {
      throw GeometryError("reflected_ball_step: a singular image lies above the plane");
    }
  }

  Lambda0Result lam = find_lambda0(v_n, sigma_n, v_n.singular(), opts.lambda0);

  const Vec reflected_center = motion.apply_inverse(reflect(sigma_n.center, lam.lambda0));
  const auto k_img = invert_ball(inv, Ball(reflected_center, sigma_n.radius));
  const Ball* k_ball = std::get_if<Ball>(&k_img);
  if (!k_ball) throw GeometryError("reflected_ball_step: reflected sphere maps through the center");

  const HalfSpace upper_n(unit_vec(n.value(), n.value() - 1), lam.lambda0);
  const Ball p_ball = invert_halfspace(inv, transform_inverse(upper_n, motion));

  ReflectedBallStep out;
  out.k_ball = *k_ball;
  out.p_ball = p_ball;
  out.lambda0 = lam.lambda0;
  out.degenerate = lam.degenerate;
  out.min_w = lam.field.min_w;
  const Vec q_img = motion.apply(invert_point(inv, q_s));
  out.dv_dxn_at_image_q = v_n.grad_u(q_img).back();
  return out;
}

std::string scan_report_to_json(const ScanReport& report) {
  JsonValue doc = JsonValue::object();
  if (report.instance) {
    doc.set("instance", JsonValue::object()
                            .set("n", JsonValue::integer(report.instance->n))
                            .set("epsilon", JsonValue::number(report.instance->epsilon))
                            .set("t0", JsonValue::number(report.instance->t0)));
  } else {
    doc.set("instance", JsonValue::null());
  }
  doc.set("seed", JsonValue::integer(static_cast<std::int64_t>(report.seed)))
      .set("num_balls", JsonValue::integer(report.num_balls))
      .set("boundary_samples", JsonValue::integer(report.boundary_samples))
      .set("hypotheses_pass", JsonValue::boolean(report.hypotheses_pass))
      .set("override", JsonValue::boolean(report.override_hypotheses))
      .set("tolerances", JsonValue::object().set("boundary_margin", JsonValue::number(report.boundary_margin)));
  JsonValue balls = JsonValue::array();
  for (const auto& b : report.balls) {
    balls.push(JsonValue::object()
                   .set("center", JsonValue::vec(b.ball.center))
                   .set("radius", JsonValue::number(b.ball.radius))
                   .set("min_h", JsonValue::number(b.min_h))
                   .set("argmin", JsonValue::vec(b.argmin)));
  }
  doc.set("balls", std::move(balls))
      .set("global_min_h", JsonValue::number(report.global_min_h))
      .set("argmin_ball", JsonValue::integer(static_cast<std::int64_t>(report.argmin_ball)));
  return doc.dump();
}

std::string scan_report_to_csv(const ScanReport& report) {
  if (report.balls.empty()) throw ValidationError("scan_report_to_csv: empty report");
  const std::size_t n = report.balls.front().ball.center.size();
  std::vector<std::string> header{"ball"};
  for (std::size_t i = 1; i <= n; ++i) header.push_back("c" + std::to_string(i));
  header.push_back("radius");
  header.push_back("min_h");
  for (std::size_t i = 1; i <= n; ++i) header.push_back("argmin" + std::to_string(i));
  std::string out = csv_row(header);
  for (std::size_t i = 0; i < report.balls.size(); ++i) {
    const auto& b = report.balls[i];
    std::vector<std::string> row{std::to_string(i)};
    for (double c : b.ball.center) row.push_back(format_g17(c));
    row.push_back(format_g17(b.ball.radius));
    row.push_back(format_g17(b.min_h));
    for (double c : b.argmin) row.push_back(format_g17(c));
    out += csv_row(row);
  }
  return out;
}

}  // namespace cclab
