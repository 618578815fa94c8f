#include "test_util.hpp"

#include "widthbright/errors.hpp"
#include "widthbright/generators.hpp"
#include "widthbright/support_body.hpp"

#include <doctest.h>

#include <numbers>

using namespace wb;

namespace {

const GridBasis& basis12() {
  static const GridBasis gb(make_grid(32, 64), 12);
  return gb;
}

double max_dev(const std::vector<double>& v, double target) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x - target));
  return m;
}

}  // namespace

TEST_CASE("ball widths") {
  CHECK(max_dev(width(ball(1.0), basis12()), 2.0) < 1e-12);
  CHECK(max_dev(width(ball(2.0), basis12()), 4.0) < 1e-12);
  CHECK(max_dev(sample(ball(1.0), basis12()), 1.0) < 1e-14);
}

TEST_CASE("width ignores odd parts and translations") {
  const GridBasis& gb = basis12();
  const SupportFunction h = random_convex(4, 8, 0.5, gb);
  SupportFunction g = minkowski_sum(h, harmonic(5, 2, 0.01)).translated({0.1, -0.2, 0.3});
  CHECK(wbtest::max_abs_diff(width(h, gb), width(g, gb)) < 1e-13);
}

TEST_CASE("parity split") {
  const SupportFunction b = ball(1.5);
  const SupportFunction s = central_symmetral(b);
  CHECK(s.coeffs()[0] == b.coeffs()[0]);
  const SupportFunction p = odd_part(b);
  for (double c : p.coeffs()) CHECK(c == 0.0);

  const SupportFunction h = minkowski_sum(central_symmetral(random_convex(1, 6, 0.5, basis12())),
                                          harmonic(3, -1, 0.05));
  const SupportFunction e = central_symmetral(h), o = odd_part(h);
  CHECK(e.is_even());
  CHECK(o.is_odd());
  const SupportFunction back = minkowski_sum(e, o);
  for (std::size_t k = 0; k < h.coeffs().size(); ++k) CHECK(back.coeffs()[k] == h.coeffs()[k]);
  CHECK(o.odd_shape_norm() == doctest::Approx(0.05));
  CHECK(ball(1.0).translated({1, 2, 3}).odd_shape_norm() == 0.0);
}

TEST_CASE("Minkowski sum of balls") {
  const SupportFunction s = minkowski_sum(ball(0.5), ball(1.25));
  CHECK(s.coeffs()[0] == doctest::Approx(ball(1.75).coeffs()[0]).epsilon(1e-15));
  const SupportFunction mixed = minkowski_sum(ball(1.0), harmonic(4, 0, 0.1));
  CHECK(mixed.lmax() == 4);
  CHECK(mixed.coeff(4, 0) == 0.1);
}

TEST_CASE("translation adds a linear function") {
  const HarmonicBasis hb(1);
  const Vec3 v(0.3, -0.7, 1.1);
  const SupportFunction t = ball(1.0).translated(v);
  for (const Vec3& u : wbtest::random_directions(20, 2)) {
    CHECK(std::abs(evaluate(t, hb, u) - (1.0 + v.dot(u))) < 1e-14);
  }
  const std::vector<double> lc = linear_coeffs(v);
  REQUIRE(lc.size() == 3);
  const double k = std::sqrt(3.0 / (4.0 * std::numbers::pi));
  CHECK(lc[0] * k == doctest::Approx(v.y()));
  CHECK(lc[1] * k == doctest::Approx(v.z()));
  CHECK(lc[2] * k == doctest::Approx(v.x()));
}

TEST_CASE("padding and scaling") {
  const SupportFunction h = harmonic(3, 1, 2.0);
  CHECK(h.padded(6).coeffs().size() == harmonic_count(6));
  CHECK(h.padded(6).coeff(3, 1) == 2.0);
  CHECK_THROWS_AS(h.padded(2), InputError);
  CHECK(SupportFunction(5).padded(1).lmax() == 1);
  CHECK(h.scaled(-0.5).coeff(3, 1) == -1.0);
  CHECK_THROWS_AS(SupportFunction(1, std::vector<double>(3, 0.0)), InputError);
}

TEST_CASE("ball certificate") {
  const ConvexityCertificate c = certify_convex(ball(1.0), basis12());
  CHECK(std::abs(c.min_eigenvalue - 1.0) < 1e-10);
  CHECK(std::abs(c.det_min - 1.0) < 1e-10);
  CHECK(c.convex());
  const ConvexityCertificate c2 = certify_convex(ball(2.0), basis12());
  CHECK(std::abs(c2.det_min - 4.0) < 1e-10);
}

TEST_CASE("a large perturbation is refused") {
  const SupportFunction h = minkowski_sum(ball(1.0), harmonic(4, 0, 1.5));
  const ConvexityCertificate c = certify_convex(h, basis12());
  CHECK_FALSE(c.convex());
  CHECK(c.min_eigenvalue < 0.0);
  CHECK(c.node_of_min < basis12().grid().size());
  CHECK_THROWS_AS(volume(h, basis12()), NotConvexError);
  // The tolerance is honoured.
  CHECK(certify_convex(h, basis12(), 1e6).convex());
}

TEST_CASE("volumes") {
  const GridBasis& gb = basis12();
  const double pi = std::numbers::pi;
  CHECK(std::abs(volume(ball(1.0), gb) - 4.0 * pi / 3.0) < 1e-8);
  CHECK(std::abs(volume(ball(0.5), gb) - pi / 6.0) < 1e-8);
  const SupportFunction e = ellipsoid(1.0, 1.5, 2.0, 12);
  CHECK(std::abs(volume(e, gb) / (4.0 * pi) - 1.0) < 1e-3);
  const SupportFunction h = random_convex(8, 10, 0.5, gb);
  CHECK(std::abs(volume(h.translated({0.4, 0.1, -0.3}), gb) - volume(h, gb)) < 1e-12);
  CHECK(std::abs(volume(h.scaled(2.0), gb) - 8.0 * volume(h, gb)) < 1e-11);
}

TEST_CASE("homothety fit recovers an exact model") {
  const GridBasis& gb = basis12();
  const SupportFunction h1 = ball(1.0).scaled(2.0).translated({0, 0, 0.3});
  const HomothetyFit f = homothety_fit(h1, ball(1.0), gb);
  CHECK(std::abs(f.lambda - 2.0) < 1e-12);
  CHECK((f.translation - Vec3(0, 0, 0.3)).norm() < 1e-12);
  CHECK(f.residual < 1e-10);

  const SupportFunction h = random_convex(5, 8, 0.5, gb);
  const HomothetyFit g = homothety_fit(h.scaled(0.7).translated({1, -1, 0.5}), h, gb);
  CHECK(std::abs(g.lambda - 0.7) < 1e-12);
  CHECK((g.translation - Vec3(1, -1, 0.5)).norm() < 1e-12);

  const HomothetyFit bad = homothety_fit(ellipsoid(1, 1, 2, 12), ball(1.0), gb);
  CHECK(bad.residual > 1e-2);

  CHECK_THROWS_AS(homothety_fit(ball(1.0), SupportFunction(2), gb), NumericalError);
  CHECK_THROWS_AS(homothety_fit(ball(1.0), ball(1.0).translated({1, 0, 0}).scaled(0.0)
                                    .translated({1, 0, 0}),
                                gb),
                  NumericalError);
}
