#include "cclab/kelvin.hpp"

#include <cmath>

#include "cclab/errors.hpp"
#include "cclab/report_io.hpp"

namespace cclab {

Inversion::Inversion(Vec c, double rho0) : center(std::move(c)), scale(rho0) {
  if (center.empty()) throw ValidationError("Inversion: empty center");
  if (!(scale > 0.0)) throw ValidationError("Inversion: scale must be positive");
}

HalfSpace::HalfSpace(Vec n, double c) : normal(std::move(n)), offset(c) {
  normal = normalized(normal);
}

Vec invert_point(const Inversion& inv, const Vec& x) {
  const Vec d = sub(x, inv.center);
  const double s2 = norm2(d);
  if (!(s2 > 0.0)) throw DomainError("invert_point: x coincides with the inversion center");
  return axpy(inv.scale * inv.scale / s2, d, inv.center);
}

BallImage invert_ball(const Inversion& inv, const Ball& b) {
  const Vec d = sub(b.center, inv.center);
  const double dd = norm2(d);
  const double discr = dd - b.radius * b.radius;
  if (std::fabs(discr) <= 1e-12 * (dd + b.radius * b.radius)) {
    return invert_sphere_through_center(inv, b);
  }
  const double rho2 = inv.scale * inv.scale;
  const Vec center = axpy(rho2 / discr, d, inv.center);
  const double radius = rho2 * b.radius / std::fabs(discr);
  return Ball(center, radius);
}

HalfSpace invert_sphere_through_center(const Inversion& inv, const Ball& b) {
  Vec d = sub(b.center, inv.center);
  const double dn = norm(d);
  if (!(dn > 0.0)) throw GeometryError("invert_sphere_through_center: degenerate configuration");
  const Vec n_hat = scaled(d, 1.0 / dn);
  // Points x on the sphere through the center satisfy |x-p|^2 = 2 (x-p).d, so
  // images obey (y-p).d = scale^2/2. The interior maps to the far side.
  const double offset = dot(n_hat, inv.center) + inv.scale * inv.scale / (2.0 * dn);
  return HalfSpace(n_hat, offset);
}

Ball invert_halfspace(const Inversion& inv, const HalfSpace& hs) {
  const double d_signed = hs.offset - dot(hs.normal, inv.center);
  if (std::fabs(d_signed) <= 1e-14 * (1.0 + std::fabs(hs.offset))) {
    throw GeometryError("invert_halfspace: boundary plane passes through the inversion center");
  }
  if (d_signed < 0.0) {
    throw GeometryError("invert_halfspace: the half-space contains the inversion center");
  }
  const double rho2 = inv.scale * inv.scale;
  const Vec center = axpy(rho2 / (2.0 * d_signed), hs.normal, inv.center);
  return Ball(center, rho2 / (2.0 * d_signed));
}

ConformalFactor kelvin_transform(const Inversion& inv, const ConformalFactor& factor) {
  const Dimension n = factor.dim();
  if (static_cast<int>(inv.center.size()) != n.value()) {
    throw ValidationError("kelvin_transform: inversion dimension mismatch");
  }
  const double nd = n.d();
  const double k = (nd - 2.0) / 2.0;
  const Vec p = inv.center;
  const double rho2 = inv.scale * inv.scale;

  // Transport the singular points; each exclusion ball maps to a ball whose
  // radius we keep (conservatively the largest image radius).
  SingularSet image_singular;
  image_singular.exclusion_radius = factor.singular().exclusion_radius;
  for (const auto& q : factor.singular().points) {
    const Vec d = sub(q, p);
    const double dd = norm2(d);
    if (!(dd > 0.0)) {
      throw GeometryError("kelvin_transform: a singular point coincides with the inversion center");
    }
    image_singular.points.push_back(invert_point(inv, q));
    const double e = factor.singular().exclusion_radius;
    const double discr = std::fabs(dd - e * e);
    if (discr > 0.0) {
      image_singular.exclusion_radius =
          std::max(image_singular.exclusion_radius, rho2 * e / discr);
    }
  }

  RegionKind region = RegionKind::WholeSpace;
  if (factor.region() == RegionKind::PuncturedBall) region = RegionKind::ExteriorRegion;
  if (factor.region() == RegionKind::ExteriorRegion) region = RegionKind::PuncturedBall;

  auto pullback = [p, rho2](const Vec& y) {
    const Vec d = sub(y, p);
    const double s2 = norm2(d);
    if (!(s2 > 0.0)) throw DomainError("kelvin_transform: evaluation at the inversion center");
    return axpy(rho2 / s2, d, p);
  };
  auto value = [factor, p, rho2, k, pullback](const Vec& y) {
    const double s2 = dist2(y, p);
    if (!(s2 > 0.0)) throw DomainError("kelvin_transform: evaluation at the inversion center");
    return std::pow(rho2 / s2, k) * factor.u(pullback(y));
  };

  if (factor.mode() == DerivativeMode::FiniteDifference) {
    return ConformalFactor::finite_difference(n, value, std::move(image_singular), region,
                                              factor.spacing_rel());
  }

  auto grad = [factor, p, rho2, k, nd, pullback](const Vec& y) {
    const Vec d = sub(y, p);
    const double s2 = norm2(d);
    if (!(s2 > 0.0)) throw DomainError("kelvin_transform: evaluation at the inversion center");
    const Vec z = pullback(y);
    const double kfac = std::pow(rho2 / s2, k);
    const double uval = factor.u(z);
    const Vec g = factor.grad_u(z);
    // grad K * u + K * J^T grad u, with J = (rho2/s2)(I - 2 e e^T) symmetric.
    Vec out = scaled(d, (2.0 - nd) * kfac * uval / s2);
    const double radial = dot(g, d) / s2;  // (e.g) / s
    const Vec jg = axpy(-2.0 * radial, d, g);
    return add(out, scaled(jg, kfac * rho2 / s2));
  };
  auto lap = [factor, p, rho2, k, pullback](const Vec& y) {
    const double s2 = dist2(y, p);
    if (!(s2 > 0.0)) throw DomainError("kelvin_transform: evaluation at the inversion center");
    return std::pow(rho2 / s2, k + 2.0) * factor.laplacian_u(pullback(y));
  };
  return ConformalFactor::analytic(n, value, grad, lap, std::move(image_singular), region);
}

double sigma_boundary_residual(const ConformalFactor& v, const Ball& sigma, double h, const Vec& x) {
  const double nd = v.dim().d();
  const double away = dist(x, sigma.center) - sigma.radius;
  if (std::fabs(away) > 1e-12 * std::max(1.0, sigma.radius)) {
    throw GeometryError("sigma_boundary_residual: point is not on Sigma (offset " +
                        format_g17(away) + ")");
  }
  const Vec nu = scaled(sub(x, sigma.center), 1.0 / sigma.radius);  // away from the ball
  const double vv = v.u(x);
  if (!(vv > 0.0)) throw DomainError("sigma_boundary_residual: v must be positive on Sigma");
  const double dv_nu = dot(v.grad_u(x), nu);
  return dv_nu + (nd - 2.0) / (2.0 * sigma.radius) * vv +
         (nd - 2.0) / 2.0 * h * std::pow(vv, nd / (nd - 2.0));
}

RigidMotion RigidMotion::identity(int n) {
  std::vector<double> q(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) q[static_cast<std::size_t>(i) * n + i] = 1.0;
  return RigidMotion(std::move(q), zero_vec(n));
}

RigidMotion RigidMotion::translation(const Vec& shift) {
  RigidMotion m = identity(static_cast<int>(shift.size()));
  m.shift_ = shift;
  return m;
}

RigidMotion::RigidMotion(std::vector<double> q, Vec shift) : q_(std::move(q)), shift_(std::move(shift)) {
  if (q_.size() != shift_.size() * shift_.size()) {
    throw ValidationError("RigidMotion: matrix/shift size mismatch");
  }
}

Vec RigidMotion::rotate(const Vec& d) const {
  const std::size_t n = shift_.size();
  Vec out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += q_[i * n + j] * d[j];
    out[i] = s;
  }
  return out;
}

Vec RigidMotion::rotate_inverse(const Vec& d) const {
  const std::size_t n = shift_.size();
  Vec out(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += q_[i * n + j] * d[i];
    out[j] = s;
  }
  return out;
}

Vec RigidMotion::apply(const Vec& x) const { return add(rotate(x), shift_); }

Vec RigidMotion::apply_inverse(const Vec& y) const { return rotate_inverse(sub(y, shift_)); }

RigidMotion normalize_halfspace_frame(const HalfSpace& plane, const Vec& below_point) {
  const std::size_t n = plane.normal.size();

  // Householder taking the plane normal to e_n (orthogonal, possibly a
  // reflection; every quantity we compute is isometry-invariant).
  std::vector<double> q(n * n, 0.0);
  Vec u = sub(plane.normal, unit_vec(static_cast<int>(n), static_cast<int>(n) - 1));
  const double uu = norm2(u);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double val = (i == j) ? 1.0 : 0.0;
      if (uu > 1e-24) val -= 2.0 * u[i] * u[j] / uu;
      q[i * n + j] = val;
    }
  }

  // shift = -Q y0 with y0 = offset * normal a point on the plane.
  const Vec y0 = scaled(plane.normal, plane.offset);
  Vec shift(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += q[i * n + j] * y0[j];
    shift[i] = -s;
  }

  const RigidMotion motion(q, shift);
  if (motion.apply(below_point)[n - 1] <= 0.0) return motion;

  // Flip the last axis so the requested point lands below the plane.
  for (std::size_t j = 0; j < n; ++j) q[(n - 1) * n + j] = -q[(n - 1) * n + j];
  shift[n - 1] = -shift[n - 1];
  return RigidMotion(std::move(q), std::move(shift));
}

ConformalFactor transform(const ConformalFactor& factor, const RigidMotion& motion) {
  const Dimension n = factor.dim();
  SingularSet singular;
  singular.exclusion_radius = factor.singular().exclusion_radius;
  for (const auto& q : factor.singular().points) singular.points.push_back(motion.apply(q));

  auto value = [factor, motion](const Vec& y) { return factor.u(motion.apply_inverse(y)); };
  if (factor.mode() == DerivativeMode::FiniteDifference) {
    return ConformalFactor::finite_difference(n, value, std::move(singular), factor.region(),
                                              factor.spacing_rel());
  }
  auto grad = [factor, motion](const Vec& y) {
    return motion.rotate(factor.grad_u(motion.apply_inverse(y)));
  };
  auto lap = [factor, motion](const Vec& y) { return factor.laplacian_u(motion.apply_inverse(y)); };
  return ConformalFactor::analytic(n, value, grad, lap, std::move(singular), factor.region());
}

Ball transform(const Ball& b, const RigidMotion& motion) {
  return Ball(motion.apply(b.center), b.radius);
}

HalfSpace transform(const HalfSpace& hs, const RigidMotion& motion) {
  const Vec normal = motion.rotate(hs.normal);
  const Vec on_plane = motion.apply(scaled(hs.normal, hs.offset));
  return HalfSpace(normal, dot(normal, on_plane));
}

HalfSpace transform_inverse(const HalfSpace& hs, const RigidMotion& motion) {
  const Vec normal = motion.rotate_inverse(hs.normal);
  const Vec on_plane = motion.apply_inverse(scaled(hs.normal, hs.offset));
  return HalfSpace(normal, dot(normal, on_plane));
}

}  // namespace cclab
