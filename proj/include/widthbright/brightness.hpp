#pragma once

#include "widthbright/gauss_boundary.hpp"
#include "widthbright/support_body.hpp"

#include <span>
#include <string>
#include <vector>

namespace wb {

struct BrightnessProfile {
  enum class Method { support_formula, mesh_shadow };

  std::vector<Vec3> directions;
  std::vector<double> areas;
  Method method = Method::support_formula;
};

std::string method_name(BrightnessProfile::Method m);

// (C f)(a) = integral of f(u) |<a, u>| du for each direction a.
//
// The kink of |t| limits a direct quadrature sum to O(h^2) accuracy, so the
// kernel is replaced by its Legendre projection K onto degrees <= the grid's
// resolution bound L:  (C f)(a) = sum_i w_i f_i K(<a, u_i>). By Funk-Hecke
// this is exact (up to rounding) for samples of any function of degree <= L,
// and the odd-degree part of f is annihilated identically since K is even.
std::vector<double> cosine_transform(std::span<const double> f,
                                     const SphericalGrid& grid,
                                     std::span<const Vec3> directions);

// The literal quadrature sum_i w_i f_i |<a, u_i>|. Kept as an independent
// check on cosine_transform.
std::vector<double> cosine_transform_direct(std::span<const double> f,
                                            const SphericalGrid& grid,
                                            std::span<const Vec3> directions);

// Legendre coefficients k_l, l <= degree, of |t| on [-1, 1]:
// |t| ~ sum_l k_l P_l(t), k_l = (2l + 1)/2 * integral |t| P_l(t) dt.
std::vector<double> abs_kernel_series(int degree);

// sum_l series[l] P_l(t).
double legendre_series(std::span<const double> series, double t);

// Shadow areas V_2(K | a-perp) = 1/2 C[det(h I + hess h)](a). Directions
// default to the grid nodes. Throws NotConvexError for a non-certified h.
BrightnessProfile brightness_profile(const SupportFunction& h,
                                     const GridBasis& gb,
                                     std::span<const Vec3> directions);
BrightnessProfile brightness_profile(const SupportFunction& h,
                                     const GridBasis& gb);

// Area of the convex hull of the mesh vertices projected onto a-perp.
// Throws NumericalError when fewer than three hull vertices remain.
double mesh_shadow(const BodyMesh& mesh, const Vec3& a);
BrightnessProfile mesh_shadow_profile(const BodyMesh& mesh,
                                      std::span<const Vec3> directions);

// Orthonormal basis (b1, b2) of a-perp.
std::pair<Vec3, Vec3> orthonormal_complement(const Vec3& a);

struct ProportionalBrightness {
  double beta = 0.0;
  // q = det(h1 I + hess h1) - beta det(h2 I + hess h2), per node. Odd
  // exactly when the profiles are proportional.
  std::vector<double> residual_odd;
  double max_even_residual = 0.0;
  // max |b1(a) - beta b2(a)| / max b1: how far the profiles are from
  // proportional.
  double profile_misfit = 0.0;
};

// beta is the weighted least-squares ratio of the two brightness profiles
// over the directions (defaults: grid nodes with quadrature weights).
ProportionalBrightness proportional_brightness_residual(
    const SupportFunction& h1, const SupportFunction& h2, const GridBasis& gb);

// Quadrature-weighted variance of a profile sampled at the grid nodes.
double weighted_variance(std::span<const double> values,
                         std::span<const double> weights);

}  // namespace wb
