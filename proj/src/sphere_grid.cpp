#include "widthbright/errors.hpp"
#include "widthbright/simd.hpp"
#include "widthbright/sphere_core.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

namespace wb {

void gauss_legendre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  // (P_n(x), P_n'(x)) by the three-term recurrence.
  auto legendre = [n](double x) {
    double p0 = 1.0, p1 = x;
    for (int j = 2; j <= n; ++j) {
      const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    return std::pair{p1, n * (x * p1 - p0) / (x * x - 1.0)};
  };
  for (int k = 0; k < (n + 1) / 2; ++k) {
    // Tricomi's initial guess, then Newton.
    double x = std::cos(std::numbers::pi * (k + 0.75) / (n + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = legendre(x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre(x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[k] = x;
    nodes[n - 1 - k] = -x;
    weights[k] = w;
    weights[n - 1 - k] = w;
  }
  if (n % 2 == 1) nodes[n / 2] = 0.0;
}

SphericalGrid::SphericalGrid(int n_theta, int n_phi)
    : n_theta_(n_theta), n_phi_(n_phi) {
  if (n_theta < 2) {
    throw InputError("grid needs n_theta >= 2, got " + std::to_string(n_theta));
  }
  if (n_phi <= 0 || n_phi % 2 != 0) {
    throw InputError("grid needs a positive even n_phi, got " +
                     std::to_string(n_phi));
  }
  std::vector<double> ct, wt;
  gauss_legendre(n_theta, ct, wt);

  const std::size_t n = static_cast<std::size_t>(n_theta) * n_phi;
  nodes_.resize(n);
  weights_.resize(n);
  antipode_.resize(n);
  frames_.resize(n);

  const double dphi = 2.0 * std::numbers::pi / n_phi;
  const int half_phi = n_phi / 2;
  auto antipode_of = [&](int k, int j) {
    return index(n_theta - 1 - k, (j + half_phi) % n_phi);
  };
  auto is_rep = [&](int k, int j) {
    const int mirror = n_theta - 1 - k;
    return k < mirror || (k == mirror && j < half_phi);
  };

  for (int k = 0; k < n_theta; ++k) {
    for (int j = 0; j < n_phi; ++j) {
      if (!is_rep(k, j)) continue;
      const std::size_t i = index(k, j);
      const double c = ct[k];
      const double s = std::sqrt((1.0 - c) * (1.0 + c));
      const double phi = dphi * (j + 0.5);
      const double cp = std::cos(phi), sp = std::sin(phi);
      nodes_[i] = Vec3(s * cp, s * sp, c);
      frames_[i].e1 = Vec3(c * cp, c * sp, -s);
      frames_[i].e2 = Vec3(-sp, cp, 0.0);
      weights_[i] = wt[k] * dphi;

      const std::size_t a = antipode_of(k, j);
      nodes_[a] = -nodes_[i];
      frames_[a].e1 = frames_[i].e1;
      frames_[a].e2 = -frames_[i].e2;
      weights_[a] = wt[n_theta - 1 - k] * dphi;
      antipode_[i] = a;
      antipode_[a] = i;
      reps_.push_back(i);
    }
  }

  xs_.resize(n);
  ys_.resize(n);
  zs_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs_[i] = nodes_[i].x();
    ys_[i] = nodes_[i].y();
    zs_[i] = nodes_[i].z();
  }
}

Mat2 SphericalGrid::antipodal_frame_change(std::size_t) const {
  Mat2 r;
  r << 1.0, 0.0, 0.0, -1.0;
  return r;
}

int SphericalGrid::resolution_lmax() const {
  // GL with n_theta nodes integrates cos(theta)-polynomials of degree
  // 2 n_theta - 1; the trapezoid rule in phi is exact for frequencies
  // below n_phi.
  const int by_theta = n_theta_ - 1;
  const int by_phi = n_phi_ / 2 - 1;
  return by_theta < by_phi ? by_theta : by_phi;
}

SphericalGrid make_grid(int n_theta, int n_phi) {
  return SphericalGrid(n_theta, n_phi);
}

double integrate(const SphericalGrid& grid, std::span<const double> f) {
  if (f.size() != grid.size()) {
    throw InputError("integrate: " + std::to_string(f.size()) +
                     " values for " + std::to_string(grid.size()) + " nodes");
  }
  return simd::active().dot(grid.weights().data(), f.data(), f.size());
}

}  // namespace wb
