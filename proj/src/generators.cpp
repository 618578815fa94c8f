#include "widthbright/generators.hpp"

#include "widthbright/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace wb {

namespace {
const double kY00 = 0.5 / std::sqrt(std::numbers::pi);
}

std::string kind_name(BodyRecipe::Kind k) {
  switch (k) {
    case BodyRecipe::Kind::ball: return "ball";
    case BodyRecipe::Kind::ellipsoid: return "ellipsoid";
    case BodyRecipe::Kind::constant_width: return "constant_width";
    case BodyRecipe::Kind::random_convex: return "random_convex";
  }
  return "unknown";
}

SupportFunction ball(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw InputError("ball radius must be positive, got " + std::to_string(r));
  }
  SupportFunction h(0, {r / kY00}, "ball(" + std::to_string(r) + ")");
  ClosedForm f;
  f.kind = ClosedForm::Kind::ball;
  f.axes = Vec3::Constant(r);
  h.set_closed_form(f, 0.0);
  return h;
}

SupportFunction ellipsoid(double a, double b, double c, int lmax) {
  if (!(a > 0.0 && b > 0.0 && c > 0.0)) {
    throw InputError("ellipsoid semi-axes must be positive");
  }
  const std::string label = "ellipsoid(" + std::to_string(a) + "," +
                            std::to_string(b) + "," + std::to_string(c) + ")";
  ClosedForm f;
  f.kind = ClosedForm::Kind::ellipsoid;
  f.axes = Vec3(a, b, c);
  if (a == b && b == c) {
    SupportFunction h = ball(a).padded(lmax);
    h.set_label(label);
    h.set_closed_form(f, 0.0);
    return h;
  }
  // Projection grid well beyond the target degree; the closed form is
  // analytic so the quadrature error is far below the truncation error.
  const int nt = 2 * lmax + 24;
  const GridBasis fine(SphericalGrid(nt, 2 * nt), lmax);
  std::vector<double> samples(fine.grid().size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    samples[i] = f.evaluate(fine.grid().node(i));
  }
  std::vector<double> coeffs = fine.analyze(samples);
  // Exactly even by symmetry; drop quadrature noise in odd degrees.
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (harmonic_degree(k) % 2 == 1) coeffs[k] = 0.0;
  }
  SupportFunction h(lmax, coeffs, label);
  const std::vector<double> back = fine.synthesize_values(coeffs);
  double err = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    err = std::max(err, std::abs(back[i] - samples[i]));
  }
  h.set_closed_form(f, err);
  return h;
}

SupportFunction harmonic(int l, int m, double amplitude) {
  if (l < 0 || m < -l || m > l) throw InputError("invalid harmonic index");
  SupportFunction h(l, "Y(" + std::to_string(l) + "," + std::to_string(m) + ")");
  h.set_coeff(l, m, amplitude);
  return h;
}

BodyRecipe constant_width_body(const SupportFunction& gauge,
                               const SupportFunction& p, double eps_request,
                               const GridBasis& gb) {
  if (!p.is_odd()) throw InputError("constant_width_body: perturbation is not odd");
  if (std::all_of(p.coeffs().begin(), p.coeffs().end(),
                  [](double c) { return c == 0.0; })) {
    throw InputError("constant_width_body: perturbation is zero");
  }
  if (!gauge.is_even()) throw NotConvexError("constant_width_body: gauge is not even");
  if (!(eps_request > 0.0)) {
    throw InputError("constant_width_body: eps must be positive");
  }
  const ConvexityCertificate cert = certify_convex(gauge, gb);
  if (!(cert.min_eigenvalue > 0.0)) {
    throw NotConvexError("constant_width_body: gauge is not strictly convex");
  }
  const JetField jp = sample_jets(p, gb);
  double rho = 0.0;
  for (std::size_t i = 0; i < jp.size(); ++i) {
    const double a = jp.value[i] + jp.h11[i];
    const double b = jp.value[i] + jp.h22[i];
    const double hd = 0.5 * (a - b);
    const double r = std::sqrt(hd * hd + jp.h12[i] * jp.h12[i]);
    rho = std::max(rho, std::abs(0.5 * (a + b)) + r);
  }

  BodyRecipe recipe;
  recipe.kind = BodyRecipe::Kind::constant_width;
  recipe.gauge = gauge;
  recipe.odd = p;
  recipe.eps_request = eps_request;
  recipe.rho = rho;
  double eps = eps_request;
  // Relative to the scale of p's coefficients; below this p I + hess p is
  // rounding noise, which happens exactly for degree-1 p.
  double pscale = 0.0;
  for (double c : p.coeffs()) pscale = std::max(pscale, std::abs(c));
  if (rho > 1e-12 * pscale) {
    eps = std::min(eps_request, 0.9 * cert.min_eigenvalue / rho);
  } else if (!std::isfinite(eps)) {
    eps = 1.0;
  }
  recipe.eps = eps;
  recipe.resolved = minkowski_sum(gauge, p.scaled(eps));
  recipe.resolved.set_label("constant_width(" + gauge.label() + "," + p.label() + ")");
  recipe.lmax = recipe.resolved.lmax();
  return recipe;
}

SupportFunction random_convex(std::uint64_t seed, int lmax, double roughness,
                              const GridBasis& gb) {
  if (!(roughness > 0.0 && roughness < 1.0)) {
    throw InputError("random_convex: roughness must lie in (0, 1)");
  }
  if (lmax < 2) throw InputError("random_convex: lmax must be >= 2");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> noise(harmonic_count(lmax), 0.0);
  for (int l = 2; l <= lmax; ++l) {
    const double sigma = std::pow(roughness, l - 2) / (l * (l + 1.0));
    for (int m = -l; m <= l; ++m) noise[harmonic_index(l, m)] = sigma * normal(rng);
  }
  double scale = 1.0;
  for (int attempt = 0; attempt <= 60; ++attempt) {
    SupportFunction h(lmax, "random_convex(seed=" + std::to_string(seed) + ")");
    auto c = h.coeffs();
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = scale * noise[k];
    c[0] = 1.0 / kY00;
    if (certify_convex(h, gb).min_eigenvalue >= 0.1) return h;
    scale *= 0.5;
  }
  throw NumericalError("random_convex: no convex body after 60 halvings");
}

SupportFunction random_odd(std::uint64_t seed, int lmax,
                           std::span<const int> degrees) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  SupportFunction p(lmax, "random_odd(seed=" + std::to_string(seed) + ")");
  double norm2 = 0.0;
  for (int l : degrees) {
    if (l % 2 == 0 || l > lmax) {
      throw InputError("random_odd: degree " + std::to_string(l) +
                       " is even or above lmax");
    }
    for (int m = -l; m <= l; ++m) {
      const double c = normal(rng);
      p.set_coeff(l, m, c);
      norm2 += c * c;
    }
  }
  if (norm2 > 0.0) {
    for (double& c : p.coeffs()) c /= std::sqrt(norm2);
  }
  return p;
}

}  // namespace wb
