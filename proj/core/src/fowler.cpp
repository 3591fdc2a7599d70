#include "cclab/fowler.hpp"

#include <algorithm>
#include <cmath>

#include "cclab/errors.hpp"
#include "cclab/report_io.hpp"

namespace cclab {

double equilibrium_v0(Dimension n) {
  const double nd = n.d();
  return std::pow((nd - 2.0) / nd, (nd - 2.0) / 4.0);
}

double hamiltonian(const PhasePoint& p, Dimension n) {
  if (p.v < 0.0) throw DomainError("hamiltonian: v must be >= 0");
  const double nd = n.d();
  const double a = (nd - 2.0) * (nd - 2.0) / 4.0;
  return p.w * p.w - a * p.v * p.v + a * std::pow(p.v, 2.0 * nd / (nd - 2.0));
}

PhasePoint vector_field(const PhasePoint& p, Dimension n) {
  if (p.v < 0.0) throw DomainError("vector_field: v must be >= 0");
  const double nd = n.d();
  const double a = (nd - 2.0) * (nd - 2.0) / 4.0;
  const double b = nd * (nd - 2.0) / 4.0;
  return {p.w, a * p.v - b * std::pow(p.v, (nd + 2.0) / (nd - 2.0))};
}

FowlerParams::FowlerParams(Dimension n_, double epsilon_, double phase_T_)
    : n(n_), epsilon(epsilon_), phase_T(phase_T_) {
  if (!(epsilon > 0.0)) throw ValidationError("epsilon must be positive");
  if (!std::isfinite(epsilon) || !std::isfinite(phase_T)) {
    throw ValidationError("FowlerParams fields must be finite");
  }
}

FowlerTrajectory::FowlerTrajectory(FowlerParams params, double step, std::vector<Sample> samples)
    : params_(params), step_(step), samples_(std::move(samples)) {
  if (samples_.size() < 2) throw ValidationError("trajectory needs at least two samples");
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    if (!(samples_[i].v > 0.0)) throw NumericError("trajectory sample with v <= 0");
    if (i > 0 && !(samples_[i].t > samples_[i - 1].t)) {
      throw ValidationError("trajectory t values must be strictly increasing");
    }
  }
  h0_ = hamiltonian({params_.epsilon, 0.0}, params_.n);
  for (const auto& s : samples_) {
    max_drift_ = std::max(max_drift_, std::fabs(hamiltonian({s.v, s.w}, params_.n) - h0_));
  }
}

PhasePoint FowlerTrajectory::at(double t) const {
  const double t0 = samples_.front().t;
  const double t1 = samples_.back().t;
  const double slop = 1e-9 * step_;
  if (t < t0 - slop || t > t1 + slop) {
    throw DomainError("trajectory evaluation at t = " + format_g17(t) + " outside [" +
                      format_g17(t0) + ", " + format_g17(t1) + "]");
  }
  const double clamped = std::clamp(t, t0, t1);
  auto idx = static_cast<std::size_t>((clamped - t0) / step_);
  if (idx >= samples_.size() - 1) idx = samples_.size() - 2;
  const Sample& a = samples_[idx];
  const Sample& b = samples_[idx + 1];
  const double h = b.t - a.t;
  const double s = (clamped - a.t) / h;
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
  const double h10 = s3 - 2.0 * s2 + s;
  const double h01 = -2.0 * s3 + 3.0 * s2;
  const double h11 = s3 - s2;

  PhasePoint out;
  out.v = h00 * a.v + h10 * h * a.w + h01 * b.v + h11 * h * b.w;
  // Same Hermite form for w, with slopes dw/dt from the field (exact on orbits).
  const double da = vector_field({a.v, a.w}, params_.n).w;
  const double db = vector_field({b.v, b.w}, params_.n).w;
  out.w = h00 * a.w + h10 * h * da + h01 * b.w + h11 * h * db;
  return out;
}

namespace {

PhasePoint rk4_step(const PhasePoint& y, double h, Dimension n) {
  const PhasePoint k1 = vector_field(y, n);
  const PhasePoint k2 = vector_field({y.v + 0.5 * h * k1.v, y.w + 0.5 * h * k1.w}, n);
  const PhasePoint k3 = vector_field({y.v + 0.5 * h * k2.v, y.w + 0.5 * h * k2.w}, n);
  const PhasePoint k4 = vector_field({y.v + h * k3.v, y.w + h * k3.w}, n);
  return {y.v + (h / 6.0) * (k1.v + 2.0 * k2.v + 2.0 * k3.v + k4.v),
          y.w + (h / 6.0) * (k1.w + 2.0 * k2.w + 2.0 * k3.w + k4.w)};
}

}  // namespace

FowlerTrajectory integrate(const FowlerParams& params, double t0, double t1, double step) {
  if (!(t1 > t0)) throw ValidationError("integrate: t1 must be greater than t0");
  if (!(step > 0.0)) throw ValidationError("integrate: step must be positive");

  const double T = params.phase_T;
  auto k_lo = static_cast<long long>(std::floor((t0 - T) / step));
  auto k_hi = static_cast<long long>(std::ceil((t1 - T) / step));
  while (T + static_cast<double>(k_lo) * step > t0) --k_lo;
  while (T + static_cast<double>(k_hi) * step < t1) ++k_hi;
  k_lo = std::min(k_lo, 0ll);
  k_hi = std::max(k_hi, 0ll);
  if (k_hi - k_lo > 500'000'000ll) throw ValidationError("integrate: step too small for the requested span");

  const auto advance = [&](PhasePoint y, long long count, double h, auto&& emit) {
    for (long long k = 1; k <= count; ++k) {
      try {
        y = rk4_step(y, h, params.n);
      } catch (const DomainError&) {
        throw NumericError("orbit escape: v left the admissible half-plane during integration");
      }
      if (!(y.v > 0.0)) {
        throw NumericError("orbit escape: v reached <= 0 near t = " +
                           format_g17(T + static_cast<double>(k) * h));
      }
      emit(k, y);
    }
  };

  const PhasePoint start{params.epsilon, 0.0};
  std::vector<FowlerTrajectory::Sample> forward, backward;
  forward.reserve(static_cast<std::size_t>(k_hi) + 1);
  backward.reserve(static_cast<std::size_t>(-k_lo) + 1);

  advance(start, k_hi, step, [&](long long k, const PhasePoint& y) {
    forward.push_back({T + static_cast<double>(k) * step, y.v, y.w});
  });
  advance(start, -k_lo, -step, [&](long long k, const PhasePoint& y) {
    backward.push_back({T - static_cast<double>(k) * step, y.v, y.w});
  });

  std::vector<FowlerTrajectory::Sample> samples;
  samples.reserve(backward.size() + forward.size() + 1);
  for (auto it = backward.rbegin(); it != backward.rend(); ++it) samples.push_back(*it);
  samples.push_back({T, start.v, start.w});
  for (const auto& s : forward) samples.push_back(s);

  return FowlerTrajectory(params, step, std::move(samples));
}

namespace {

struct Crossing {
  double t;
  double v;
  bool is_minimum;  // w changes sign from negative to positive
};

std::vector<Crossing> refined_w_crossings(const FowlerTrajectory& traj) {
  std::vector<Crossing> out;
  const auto& s = traj.samples();
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    if (!(s[i].w * s[i + 1].w < 0.0)) continue;
    double lo = s[i].t, hi = s[i + 1].t;
    double w_lo = s[i].w;
    for (int iter = 0; iter < 80 && hi - lo > 1e-13; ++iter) {
      const double mid = 0.5 * (lo + hi);
      const double w_mid = traj.w(mid);
      if (w_lo * w_mid <= 0.0) {
        hi = mid;
      } else {
        lo = mid;
        w_lo = w_mid;
      }
    }
    const double t_star = 0.5 * (lo + hi);
    out.push_back({t_star, traj.v(t_star), s[i].w < 0.0});
  }
  return out;
}

}  // namespace

double period(double epsilon, Dimension n, double step) {
  if (!(epsilon > 0.0)) throw DomainError("period: epsilon must be positive");
  const double v0 = equilibrium_v0(n);
  if (epsilon >= v0 * (1.0 - 1e-12)) {
    throw ValidationError("period: orbit is degenerate at or beyond the rest point v0");
  }

  double window = 8.0 * 2.0 * M_PI / std::sqrt(n.d() - 2.0);
  for (int attempt = 0; attempt < 3; ++attempt) {
    const FowlerTrajectory traj = integrate(FowlerParams(n, epsilon, 0.0), 0.0, window, step);
    std::vector<double> minima;
    for (const auto& c : refined_w_crossings(traj)) {
      if (c.is_minimum) minima.push_back(c.t);
    }
    if (minima.size() >= 2) {
      return (minima.back() - minima.front()) / static_cast<double>(minima.size() - 1);
    }
    window *= 5.0;
  }
  throw NumericError("period: no full oscillation detected within the search window");
}

OrbitExtrema orbit_extrema(const FowlerTrajectory& traj) {
  const auto crossings = refined_w_crossings(traj);
  bool has_min = false, has_max = false;
  OrbitExtrema ext{traj.samples().front().v, traj.samples().front().v};
  for (const auto& c : crossings) {
    if (c.is_minimum) {
      ext.v_min = has_min ? std::min(ext.v_min, c.v) : c.v;
      has_min = true;
    } else {
      ext.v_max = has_max ? std::max(ext.v_max, c.v) : c.v;
      has_max = true;
    }
  }
  if (has_min && has_max) return ext;

  // No events: accept only a genuinely constant (rest point) trajectory.
  double w_abs = 0.0, v_ref = 0.0;
  for (const auto& s : traj.samples()) {
    w_abs = std::max(w_abs, std::fabs(s.w));
    v_ref = std::max(v_ref, std::fabs(s.v));
  }
  if (crossings.empty() && w_abs < 1e-10 * std::max(1.0, v_ref)) {
    const double v = traj.samples().front().v;
    return {v, v};
  }
  throw NumericError("orbit_extrema: trajectory spans less than one period");
}

std::string trajectory_to_csv(const FowlerTrajectory& traj) {
  std::string out = "t,v,w,H\n";
  for (const auto& s : traj.samples()) {
    out += csv_row({format_g17(s.t), format_g17(s.v), format_g17(s.w),
                    format_g17(hamiltonian({s.v, s.w}, traj.params().n))});
  }
  return out;
}

}  // namespace cclab
