#include "widthbright/brightness.hpp"

#include "widthbright/errors.hpp"
#include "widthbright/simd.hpp"

#include <algorithm>
#include <cmath>

namespace wb {

std::string method_name(BrightnessProfile::Method m) {
  return m == BrightnessProfile::Method::support_formula ? "support_formula"
                                                         : "mesh_shadow";
}

std::vector<double> abs_kernel_series(int degree) {
  // |t| P_l(t) is a polynomial of degree l + 1 on [0, 1]; integrate it there
  // exactly with Gauss-Legendre and double (odd l vanish).
  std::vector<double> gx, gw;
  gauss_legendre(degree / 2 + 2, gx, gw);
  std::vector<double> series(degree + 1, 0.0);
  for (std::size_t q = 0; q < gx.size(); ++q) {
    const double t = 0.5 * (gx[q] + 1.0);
    const double w = 0.5 * gw[q];
    double p0 = 1.0, p1 = t;
    for (int l = 0; l <= degree; ++l) {
      const double pl = l == 0 ? 1.0 : p1;
      if (l % 2 == 0) series[l] += 2.0 * w * t * pl;
      if (l >= 1) {
        const double p2 = ((2 * l + 1) * t * p1 - l * p0) / (l + 1);
        p0 = p1;
        p1 = p2;
      }
    }
  }
  for (int l = 0; l <= degree; ++l) series[l] *= (2.0 * l + 1.0) / 2.0;
  return series;
}

double legendre_series(std::span<const double> series, double t) {
  double acc = series.empty() ? 0.0 : series[0];
  double p0 = 1.0, p1 = t;
  if (series.size() > 1) acc += series[1] * t;
  for (std::size_t l = 1; l + 1 < series.size(); ++l) {
    const double p2 = ((2.0 * l + 1.0) * t * p1 - l * p0) / (l + 1.0);
    p0 = p1;
    p1 = p2;
    acc += series[l + 1] * p1;
  }
  return acc;
}

namespace {

std::vector<double> weighted_samples(std::span<const double> f,
                                     const SphericalGrid& grid,
                                     const char* who) {
  if (f.size() != grid.size()) {
    throw InputError(std::string(who) + ": " + std::to_string(f.size()) +
                     " samples for " + std::to_string(grid.size()) + " nodes");
  }
  std::vector<double> wf(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) wf[i] = grid.weight(i) * f[i];
  return wf;
}

}  // namespace

std::vector<double> cosine_transform(std::span<const double> f,
                                     const SphericalGrid& grid,
                                     std::span<const Vec3> directions) {
  const std::vector<double> wf = weighted_samples(f, grid, "cosine_transform");
  const int degree = grid.resolution_lmax();
  const std::vector<double> series = abs_kernel_series(degree);
  const auto& k = simd::active();
  std::vector<double> out(directions.size());
  for (std::size_t d = 0; d < directions.size(); ++d) {
    const Vec3& a = directions[d];
    out[d] = k.legendre_projection_sum(a.x(), a.y(), a.z(), grid.xs().data(),
                                       grid.ys().data(), grid.zs().data(),
                                       wf.data(), wf.size(), series.data(),
                                       degree);
  }
  return out;
}

std::vector<double> cosine_transform_direct(std::span<const double> f,
                                            const SphericalGrid& grid,
                                            std::span<const Vec3> directions) {
  const std::vector<double> wf = weighted_samples(f, grid, "cosine_transform_direct");
  const auto& k = simd::active();
  std::vector<double> out(directions.size());
  for (std::size_t d = 0; d < directions.size(); ++d) {
    const Vec3& a = directions[d];
    out[d] = k.abs_projection_sum(a.x(), a.y(), a.z(), grid.xs().data(),
                                  grid.ys().data(), grid.zs().data(),
                                  wf.data(), wf.size());
  }
  return out;
}

BrightnessProfile brightness_profile(const SupportFunction& h,
                                     const GridBasis& gb,
                                     std::span<const Vec3> directions) {
  const JetField jets = sample_jets(h, gb);
  const ConvexityCertificate cert = certify_convex(jets);
  if (!cert.convex()) {
    throw NotConvexError("brightness_profile: support function is not convex");
  }
  const std::vector<double> det = curvature_det(jets);
  BrightnessProfile p;
  p.method = BrightnessProfile::Method::support_formula;
  p.directions.assign(directions.begin(), directions.end());
  p.areas = cosine_transform(det, gb.grid(), directions);
  for (double& a : p.areas) a *= 0.5;
  return p;
}

BrightnessProfile brightness_profile(const SupportFunction& h,
                                     const GridBasis& gb) {
  return brightness_profile(h, gb, gb.grid().nodes());
}

std::pair<Vec3, Vec3> orthonormal_complement(const Vec3& a) {
  const Vec3 n = a.normalized();
  // Cross with the coordinate axis least aligned with n.
  Vec3 helper = Vec3::UnitX();
  if (std::abs(n.y()) < std::abs(n[0]) && std::abs(n.y()) <= std::abs(n.z())) {
    helper = Vec3::UnitY();
  } else if (std::abs(n.z()) < std::abs(n[0])) {
    helper = Vec3::UnitZ();
  }
  const Vec3 b1 = n.cross(helper).normalized();
  const Vec3 b2 = n.cross(b1);
  return {b1, b2};
}

namespace {

// Monotone chain hull area of 2D points; collinear points (within tol) are
// dropped from the hull.
double hull_area(std::vector<Vec2>& pts, std::size_t& hull_size) {
  std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  double scale = 0.0;
  for (const Vec2& p : pts) scale = std::max(scale, p.cwiseAbs().maxCoeff());
  const double tol = 1e-12 * scale * scale;
  auto cross = [](const Vec2& o, const Vec2& a, const Vec2& b) {
    return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
  };
  std::vector<Vec2> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= tol) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= tol) --k;
    hull[k++] = pts[i];
  }
  hull_size = k > 0 ? k - 1 : 0;
  double area = 0.0;
  for (std::size_t i = 0; i + 1 < k; ++i) {
    area += hull[i].x() * hull[i + 1].y() - hull[i + 1].x() * hull[i].y();
  }
  return 0.5 * area;
}

}  // namespace

double mesh_shadow(const BodyMesh& mesh, const Vec3& a) {
  const auto [b1, b2] = orthonormal_complement(a);
  std::vector<Vec2> pts;
  pts.reserve(mesh.vertices.size());
  for (const Vec3& v : mesh.vertices) pts.emplace_back(v.dot(b1), v.dot(b2));
  std::size_t hull_size = 0;
  const double area = pts.size() >= 3 ? hull_area(pts, hull_size) : 0.0;
  if (hull_size < 3) {
    throw NumericalError("mesh_shadow: projected hull has fewer than 3 vertices");
  }
  return area;
}

BrightnessProfile mesh_shadow_profile(const BodyMesh& mesh,
                                      std::span<const Vec3> directions) {
  BrightnessProfile p;
  p.method = BrightnessProfile::Method::mesh_shadow;
  p.directions.assign(directions.begin(), directions.end());
  p.areas.reserve(directions.size());
  for (const Vec3& a : directions) p.areas.push_back(mesh_shadow(mesh, a));
  return p;
}

double weighted_variance(std::span<const double> values,
                         std::span<const double> weights) {
  if (values.size() != weights.size()) {
    throw InputError("weighted_variance: length mismatch");
  }
  double wsum = 0.0, mean = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    wsum += weights[i];
    mean += weights[i] * values[i];
  }
  mean /= wsum;
  double var = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double d = values[i] - mean;
    var += weights[i] * d * d;
  }
  return var / wsum;
}

ProportionalBrightness proportional_brightness_residual(
    const SupportFunction& h1, const SupportFunction& h2, const GridBasis& gb) {
  const SphericalGrid& g = gb.grid();
  const JetField j1 = sample_jets(h1, gb);
  const JetField j2 = sample_jets(h2, gb);
  if (!certify_convex(j1).convex() || !certify_convex(j2).convex()) {
    throw NotConvexError("proportional_brightness_residual: both bodies must "
                         "be convex");
  }
  const std::vector<double> d1 = curvature_det(j1);
  const std::vector<double> d2 = curvature_det(j2);
  std::vector<double> b1 = cosine_transform(d1, g, g.nodes());
  std::vector<double> b2 = cosine_transform(d2, g, g.nodes());
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    b1[i] *= 0.5;
    b2[i] *= 0.5;
    num += g.weight(i) * b1[i] * b2[i];
    den += g.weight(i) * b2[i] * b2[i];
  }
  ProportionalBrightness r;
  r.beta = num / den;
  r.residual_odd.resize(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    r.residual_odd[i] = d1[i] - r.beta * d2[i];
  }
  double b1max = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double even = 0.5 * (r.residual_odd[i] + r.residual_odd[g.antipode(i)]);
    r.max_even_residual = std::max(r.max_even_residual, std::abs(even));
    r.profile_misfit = std::max(r.profile_misfit, std::abs(b1[i] - r.beta * b2[i]));
    b1max = std::max(b1max, std::abs(b1[i]));
  }
  if (b1max > 0.0) r.profile_misfit /= b1max;
  return r;
}

}  // namespace wb
