#pragma once

#include <variant>

#include "cclab/conformal.hpp"
#include "cclab/vec.hpp"

namespace cclab {

/// Sphere inversion x -> center + scale^2 (x - center)/|x - center|^2.
/// Involutive away from the center.
struct Inversion {
  Vec center;
  double scale = 1.0;

  Inversion(Vec c, double rho0 = 1.0);
};

/// Closed half-space {x : normal . x >= offset}; the boundary plane is
/// {normal . x = offset} and normal is a unit vector.
struct HalfSpace {
  Vec normal;
  double offset = 0.0;

  HalfSpace(Vec n, double c);
  double signed_height(const Vec& x) const { return dot(normal, x) - offset; }
};

Vec invert_point(const Inversion& inv, const Vec& x);

/// Image of the sphere bounding `b`: a ball when the sphere misses the
/// inversion center, a half-space when it passes through it. In the
/// half-space case the returned region is the image of the open ball.
using BallImage = std::variant<Ball, HalfSpace>;
BallImage invert_ball(const Inversion& inv, const Ball& b);

/// Exact through-center case: image plane of the sphere bounding `b` when the
/// inversion center lies on it (the center is snapped onto the sphere first).
HalfSpace invert_sphere_through_center(const Inversion& inv, const Ball& b);

/// Preimage/image of a half-space whose boundary misses the inversion center
/// and which does not contain it: a ball whose boundary passes through the
/// center. Throws GeometryError otherwise.
Ball invert_halfspace(const Inversion& inv, const HalfSpace& hs);

/// Kelvin transform v(y) = (scale/|y - center|)^{n-2} u(I(y)). Solutions of
/// the critical equation map to solutions; analytic derivatives are chained
/// through the inversion, the finite-difference mode is preserved.
ConformalFactor kelvin_transform(const Inversion& inv, const ConformalFactor& factor);

/// Residual of the boundary equation on Sigma = ∂B(a, r), exterior side:
/// dv/dnu + ((n-2)/(2r)) v + ((n-2)/2) h v^{n/(n-2)}, with nu pointing away
/// from the ball (inward for the exterior region).
double sigma_boundary_residual(const ConformalFactor& v, const Ball& sigma, double h, const Vec& x);

/// Isometry x -> Q x + shift with Q orthogonal (stored row-major).
class RigidMotion {
 public:
  static RigidMotion identity(int n);
  static RigidMotion translation(const Vec& shift);

  RigidMotion(std::vector<double> q, Vec shift);

  int dim() const noexcept { return static_cast<int>(shift_.size()); }
  Vec apply(const Vec& x) const;
  Vec apply_inverse(const Vec& y) const;
  /// Directions transform without the shift: Q d (and Q^T d for the inverse).
  Vec rotate(const Vec& d) const;
  Vec rotate_inverse(const Vec& d) const;

 private:
  std::vector<double> q_;  // n x n, row-major, orthogonal
  Vec shift_;
};

/// Isometry taking the boundary plane of `plane` to {x_n = 0} with
/// `below_point` strictly below it. Realizes the coordinate choice used by
/// the moving-planes scan.
RigidMotion normalize_halfspace_frame(const HalfSpace& plane, const Vec& below_point);

ConformalFactor transform(const ConformalFactor& factor, const RigidMotion& motion);
Ball transform(const Ball& b, const RigidMotion& motion);
HalfSpace transform(const HalfSpace& hs, const RigidMotion& motion);
HalfSpace transform_inverse(const HalfSpace& hs, const RigidMotion& motion);

}  // namespace cclab
