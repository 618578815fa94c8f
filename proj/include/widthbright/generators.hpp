#pragma once

#include "widthbright/support_body.hpp"

#include <cstdint>
#include <limits>
#include <string>

namespace wb {

// Ball of radius r centred at the origin: only the l = 0 coefficient,
// 2 sqrt(pi) r. Throws InputError for r <= 0.
SupportFunction ball(double r);

// Ellipsoid with semi-axes (a, b, c) along x, y, z: closed form
// sqrt(a^2 u1^2 + b^2 u2^2 + c^2 u3^2) projected onto degrees <= lmax.
// The truncation error (max deviation on the projection grid) is recorded.
SupportFunction ellipsoid(double a, double b, double c, int lmax);

struct BodyRecipe {
  enum class Kind { ball, ellipsoid, constant_width, random_convex };

  Kind kind = Kind::ball;
  double radius = 1.0;
  Vec3 axes = Vec3::Ones();
  SupportFunction gauge;
  SupportFunction odd;
  double eps_request = std::numeric_limits<double>::infinity();
  double eps = 0.0;  // the value actually used (constant_width)
  double rho = 0.0;  // max spectral radius of p I + hess p over the grid
  std::uint64_t seed = 0;
  int lmax = 0;
  double roughness = 0.5;
  SupportFunction resolved;
};

std::string kind_name(BodyRecipe::Kind k);

// h = gauge + eps * p with eps = min(eps_request, 0.9 m / rho), where m is
// the gauge's least curvature eigenvalue and rho the largest spectral radius
// of p I + hess p over the grid. When rho is zero (p a pure translation) an
// infinite request falls back to eps = 1.
// Throws InputError if p is not odd or is zero, NotConvexError if the gauge
// is not even and strictly convex.
BodyRecipe constant_width_body(const SupportFunction& gauge,
                               const SupportFunction& p, double eps_request,
                               const GridBasis& gb);

// Ball(1) plus seeded Gaussian coefficients on degrees 2..lmax with standard
// deviation roughness^(l-2) / (l (l + 1)), halved until the least curvature
// eigenvalue on the grid is at least 0.1. Throws InputError for roughness
// outside (0, 1), NumericalError after 60 halvings.
SupportFunction random_convex(std::uint64_t seed, int lmax, double roughness,
                              const GridBasis& gb);

// Seeded odd function with unit coefficient norm on the given odd degrees
// (each >= 3), for sweeps.
SupportFunction random_odd(std::uint64_t seed, int lmax,
                           std::span<const int> degrees);

// Single basis function Y_lm as a support-function-shaped object.
SupportFunction harmonic(int l, int m, double amplitude = 1.0);

}  // namespace wb
