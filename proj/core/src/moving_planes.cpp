#include "cclab/moving_planes.hpp"

#include <algorithm>
#include <cmath>

#include "cclab/errors.hpp"
#include "cclab/linalg.hpp"
#include "cclab/parallel.hpp"
#include "cclab/report_io.hpp"
#include "cclab/sampling.hpp"

namespace cclab {

Vec reflect(const Vec& x, double lambda) {
  Vec r = x;
  r.back() = 2.0 * lambda - r.back();
  return r;
}

double ReflectionField::min_w_at_depth(int cells) const {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (cells_below[i] >= cells) m = std::min(m, w[i]);
  }
  return m;
}

ReflectionField w_field(const ConformalFactor& v, const HalfSpaceDomain& domain, int threads) {
  const int n = v.dim().value();
  const GridSpec& grid = domain.grid;
  if (!(grid.extent > 0.0) || !(grid.spacing > 0.0) || grid.spacing > grid.extent) {
    throw ValidationError("w_field: bad grid spec");
  }
  if (domain.lambda < -grid.extent) {
    throw ValidationError("w_field: lambda is below the grid box");
  }

  const auto lateral_count =
      static_cast<std::size_t>(std::floor(2.0 * grid.extent / grid.spacing + 0.5)) + 1;
  const auto depth_count =
      static_cast<std::size_t>(std::floor((domain.lambda + grid.extent) / grid.spacing)) + 1;

  ReflectionField field;
  field.lambda = domain.lambda;
  field.spacing = grid.spacing;

  const auto inside_excluded = [&](const Vec& x) {
    if (domain.excluded_ball && dist(x, domain.excluded_ball->center) <= domain.excluded_ball->radius) {
      return true;
    }
    return domain.singular.excludes(x);
  };

  // Geometry pass: enumerate candidate grid points in a fixed order and keep
  // the ones in the domain whose reflection is also evaluable.
  std::vector<std::size_t> lateral_index(static_cast<std::size_t>(std::max(0, n - 1)), 0);
  Vec x(static_cast<std::size_t>(n), 0.0);
  for (std::size_t depth = 0; depth < depth_count; ++depth) {
    x[static_cast<std::size_t>(n - 1)] = domain.lambda - static_cast<double>(depth) * grid.spacing;
    std::fill(lateral_index.begin(), lateral_index.end(), 0);
    while (true) {
      for (int d = 0; d + 1 < n; ++d) {
        x[static_cast<std::size_t>(d)] =
            -grid.extent + static_cast<double>(lateral_index[static_cast<std::size_t>(d)]) * grid.spacing;
      }
      if (inside_excluded(x)) {
        ++field.domain_excluded;
      } else if (inside_excluded(reflect(x, domain.lambda))) {
        ++field.skipped_reflections;
      } else {
        field.points.push_back(x);
        field.cells_below.push_back(static_cast<int>(depth));
      }
      // Advance the lateral multi-index (row-major).
      int d = 0;
      for (; d + 1 < n; ++d) {
        if (++lateral_index[static_cast<std::size_t>(d)] < lateral_count) break;
        lateral_index[static_cast<std::size_t>(d)] = 0;
      }
      if (d + 1 >= n) break;
    }
  }

  if (field.points.empty()) throw ValidationError("w_field: empty grid after exclusions");

  field.w.resize(field.points.size());
  field.v_at.resize(field.points.size());
  field.v_reflected.resize(field.points.size());
  parallel_for(field.points.size(), threads, [&](std::size_t i) {
    const Vec& p = field.points[i];
    const double a = v.u(p);
    const double b = v.u(reflect(p, domain.lambda));
    field.v_at[i] = a;
    field.v_reflected[i] = b;
    field.w[i] = a - b;
  });

  field.min_w = std::numeric_limits<double>::infinity();
  bool has_interior = false;
  for (std::size_t i = 0; i < field.points.size(); ++i) {
    field.max_abs_w = std::max(field.max_abs_w, std::fabs(field.w[i]));
    if (field.cells_below[i] == 0) {
      field.max_abs_w_on_plane = std::max(field.max_abs_w_on_plane, std::fabs(field.w[i]));
      continue;
    }
    has_interior = true;
    if (field.w[i] < field.min_w) {
      field.min_w = field.w[i];
      field.argmin_index = i;
      field.argmin = field.points[i];
    }
  }
  if (!has_interior) throw ValidationError("w_field: no interior grid points below the plane");

  const std::size_t candidates = field.points.size() + field.skipped_reflections;
  field.unreliable =
      candidates > 0 && static_cast<double>(field.skipped_reflections) > 0.01 * static_cast<double>(candidates);
  return field;
}

double c_lambda(double v_val, double v_lambda_val, Dimension n) {
  if (!(v_val > 0.0) || !(v_lambda_val > 0.0)) {
    throw DomainError("c_lambda: both values must be positive");
  }
  const double nd = n.d();
  if (std::fabs(v_val - v_lambda_val) < 1e-9 * v_val) {
    return nd * (nd + 2.0) / 4.0 * std::pow(v_val, 4.0 / (nd - 2.0));
  }
  const double p = (nd + 2.0) / (nd - 2.0);
  return nd * (nd - 2.0) / 4.0 * (std::pow(v_val, p) - std::pow(v_lambda_val, p)) /
         (v_val - v_lambda_val);
}

Lambda0Result find_lambda0(const ConformalFactor& v, const std::optional<Ball>& excluded_ball,
                           const SingularSet& singular, const Lambda0Options& opts) {
  Lambda0Result result;

  std::optional<ReflectionField> good_field;
  const auto probe = [&](double lambda) {
    HalfSpaceDomain dom;
    dom.lambda = lambda;
    dom.excluded_ball = excluded_ball;
    dom.singular = singular;
    dom.grid = opts.grid;
    ReflectionField f = w_field(v, dom, opts.threads);
    result.probes.push_back({lambda, f.min_w, f.argmin, f.skipped_reflections});
    return f;
  };
  const auto positive = [&](double lambda) {
    ReflectionField f = probe(lambda);
    const bool ok = f.min_w > -opts.tol_neg;
    if (ok) good_field = std::move(f);
    return ok;
  };

  // Upward scan for a starting height with w_lambda > 0.
  double lambda_bar = opts.lambda_start;
  bool started = false;
  while (lambda_bar <= opts.lambda_ceiling) {
    if (positive(lambda_bar)) {
      started = true;
      break;
    }
    lambda_bar *= 2.0;
  }
  if (!started) {
    throw NoStartError("find_lambda0: no height up to " + format_g17(opts.lambda_ceiling) +
                       " has a positive reflection field");
  }
  result.lambda_bar = lambda_bar;

  // Coarse downward walk to bracket the onset.
  double good = lambda_bar;
  std::optional<double> bad;
  const double step = lambda_bar / static_cast<double>(std::max(2, opts.coarse_steps));
  for (int k = 1; k <= opts.coarse_steps; ++k) {
    double candidate = lambda_bar - static_cast<double>(k) * step;
    if (candidate < 0.0) candidate = 0.0;
    if (positive(candidate)) {
      good = candidate;
      if (candidate == 0.0) break;
    } else {
      bad = candidate;
      break;
    }
  }

  if (bad) {
    while (good - *bad > opts.tol) {
      const double mid = 0.5 * (good + *bad);
      if (positive(mid)) {
        good = mid;
      } else {
        bad = mid;
      }
    }
  }

  // Report the verified-positive end of the bracket: evaluating the field at
  // the returned height is guaranteed to reproduce a nonnegative minimum.
  result.lambda0 = good;
  result.field = std::move(*good_field);
  if (result.field.lambda != good) {
    HalfSpaceDomain dom;
    dom.lambda = good;
    dom.excluded_ball = excluded_ball;
    dom.singular = singular;
    dom.grid = opts.grid;
    result.field = w_field(v, dom, opts.threads);
  }
  result.degenerate = result.field.max_abs_w < opts.degenerate_tol;
  return result;
}

ExpansionFit fit_expansion(const ConformalFactor& v, const std::vector<double>& radii,
                           int samples_per_sphere, std::uint64_t seed) {
  if (radii.size() < 2) throw ValidationError("fit_expansion: need at least two radii");
  std::vector<double> rs = radii;
  std::sort(rs.begin(), rs.end());
  if (!(rs.front() > 0.0)) throw ValidationError("fit_expansion: radii must be positive");

  const int n = v.dim().value();
  const double nd = v.dim().d();
  const std::size_t m = static_cast<std::size_t>(n) + 1;

  std::vector<double> ata(m * m, 0.0);
  Vec aty(m, 0.0);
  std::vector<std::vector<Vec>> dirs_per_radius;
  std::vector<std::vector<double>> vals_per_radius;

  for (std::size_t j = 0; j < rs.size(); ++j) {
    const double r = rs[j];
    auto dirs = sphere_directions(v.dim(), samples_per_sphere, mix_seed(seed, j));
    std::vector<double> vals;
    vals.reserve(dirs.size());
    Vec row(m, 0.0);
    for (const auto& dir : dirs) {
      const Vec x = scaled(dir, r);
      const double y = v.u(x) * std::pow(r, nd - 2.0);
      vals.push_back(y);
      row[0] = 1.0;
      for (int i = 0; i < n; ++i) row[static_cast<std::size_t>(i) + 1] = dir[static_cast<std::size_t>(i)] / r;
      for (std::size_t a = 0; a < m; ++a) {
        aty[a] += row[a] * y;
        for (std::size_t b = 0; b < m; ++b) ata[a * m + b] += row[a] * row[b];
      }
    }
    dirs_per_radius.push_back(std::move(dirs));
    vals_per_radius.push_back(std::move(vals));
  }

  const Vec sol = solve_dense(ata, aty, m);

  ExpansionFit fit;
  fit.a = sol[0];
  fit.b.assign(sol.begin() + 1, sol.end());
  fit.radii = rs;

  std::vector<double> log_r, log_rms;
  for (std::size_t j = 0; j < rs.size(); ++j) {
    const double r = rs[j];
    double ss = 0.0;
    for (std::size_t s = 0; s < dirs_per_radius[j].size(); ++s) {
      double model = fit.a;
      for (int i = 0; i < n; ++i) {
        model += fit.b[static_cast<std::size_t>(i)] * dirs_per_radius[j][s][static_cast<std::size_t>(i)] / r;
      }
      const double res = vals_per_radius[j][s] - model;
      ss += res * res;
    }
    const double rms =
        std::sqrt(ss / static_cast<double>(dirs_per_radius[j].size())) * std::pow(r, 2.0 - nd);
    fit.residual_rms.push_back(rms);
    log_r.push_back(std::log(r));
    log_rms.push_back(std::log(std::max(rms, 1e-300)));
  }
  fit.remainder_slope = fit_line(log_r, log_rms).slope;
  return fit;
}

GLaplacianCheck appendix_g_laplacian(double mu, const Vec& x, Dimension n, double spacing_rel) {
  const double nd = n.d();
  if (!(mu > 0.0 && mu < nd - 2.0)) {
    throw ValidationError("appendix_g_laplacian: mu must lie in (0, n-2)");
  }
  const double r = norm(x);
  if (!(r > 0.0)) throw DomainError("appendix_g_laplacian: x must be nonzero");

  GLaplacianCheck out;
  out.closed_form = -mu * (nd - 2.0 - mu) * std::pow(r, -mu - 2.0);

  const double h = spacing_rel * r;
  const auto g = [mu](const Vec& y) { return std::pow(norm(y), -mu); };
  double lap = 0.0;
  Vec probe = x;
  const double g0 = g(x);
  for (std::size_t i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + h;
    const double gp = g(probe);
    probe[i] = x[i] - h;
    const double gm = g(probe);
    probe[i] = x[i];
    lap += (gp - 2.0 * g0 + gm) / (h * h);
  }
  out.finite_difference = lap;
  return out;
}

MinimumLocationReport minimum_location_check(const ReflectionField& field, double r0, Dimension n,
                                             std::optional<double> mu_opt) {
  const double nd = n.d();
  const double mu = mu_opt.value_or((nd - 2.0) / 2.0);
  if (!(mu > 0.0 && mu < nd - 2.0)) {
    throw ValidationError("minimum_location_check: mu must lie in (0, n-2)");
  }
  if (!(r0 > 0.0)) throw ValidationError("minimum_location_check: R0 must be positive");

  MinimumLocationReport report;
  report.r0 = r0;
  report.mu = mu;
  report.min_w = field.min_w;
  report.argmin = field.argmin;
  if (!(field.min_w < -1e-13)) {
    report.applicable = false;
    return report;
  }
  report.applicable = true;
  report.argmin_inside_r0 = norm(field.argmin) < r0;

  report.max_sign_value = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < field.points.size(); ++i) {
    const double r = norm(field.points[i]);
    if (r < r0) continue;
    const double c = c_lambda(field.v_at[i], field.v_reflected[i], n);
    const double value = c - mu * (nd - 2.0 - mu) / (r * r);
    report.max_sign_value = std::max(report.max_sign_value, value);
    ++report.sign_points;
  }
  report.sign_condition_holds = report.sign_points > 0 && report.max_sign_value < 0.0;
  return report;
}

std::string reflection_field_to_csv(const ReflectionField& field, int dim) {
  std::vector<std::string> header;
  for (int i = 1; i <= dim; ++i) header.push_back("x" + std::to_string(i));
  header.push_back("w");
  std::string out = csv_row(header);
  for (std::size_t i = 0; i < field.points.size(); ++i) {
    std::vector<std::string> row;
    for (double c : field.points[i]) row.push_back(format_g17(c));
    row.push_back(format_g17(field.w[i]));
    out += csv_row(row);
  }
  return out;
}

std::string lambda0_result_to_json(const Lambda0Result& result) {
  JsonValue probes = JsonValue::array();
  for (const auto& p : result.probes) {
    probes.push(JsonValue::object()
                    .set("lambda", JsonValue::number(p.lambda))
                    .set("min_w", JsonValue::number(p.min_w))
                    .set("argmin", JsonValue::vec(p.argmin))
                    .set("skipped", JsonValue::integer(static_cast<std::int64_t>(p.skipped))));
  }
  JsonValue doc = JsonValue::object();
  doc.set("lambda0", JsonValue::number(result.lambda0))
      .set("degenerate", JsonValue::boolean(result.degenerate))
      .set("lambda_bar", JsonValue::number(result.lambda_bar))
      .set("min_w", JsonValue::number(result.field.min_w))
      .set("max_abs_w", JsonValue::number(result.field.max_abs_w))
      .set("argmin", JsonValue::vec(result.field.argmin))
      .set("skipped", JsonValue::integer(static_cast<std::int64_t>(result.field.skipped_reflections)))
      .set("unreliable", JsonValue::boolean(result.field.unreliable))
      .set("probes", std::move(probes));
  return doc.dump();
}

}  // namespace cclab
