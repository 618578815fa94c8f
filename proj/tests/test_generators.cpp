#include "test_util.hpp"

#include "widthbright/errors.hpp"
#include "widthbright/generators.hpp"

#include <doctest.h>

#include <numbers>

using namespace wb;

namespace {

const GridBasis& basis12() {
  static const GridBasis gb(make_grid(32, 64), 12);
  return gb;
}

}  // namespace

TEST_CASE("ball coefficients") {
  const SupportFunction b = ball(1.0);
  CHECK(b.lmax() == 0);
  CHECK(b.coeffs()[0] == doctest::Approx(2.0 * std::sqrt(std::numbers::pi)).epsilon(1e-15));
  REQUIRE(b.closed_form().has_value());
  CHECK(b.closed_form()->tag() == "ball");
  CHECK(b.truncation_error() == 0.0);
  CHECK_THROWS_AS(ball(0.0), InputError);
  CHECK_THROWS_AS(ball(-1.0), InputError);
  CHECK_THROWS_AS(ball(std::numeric_limits<double>::quiet_NaN()), InputError);
}

TEST_CASE("ellipsoid with equal axes is a ball") {
  const SupportFunction e = ellipsoid(1.0, 1.0, 1.0, 8);
  CHECK(e.coeffs()[0] == doctest::Approx(ball(1.0).coeffs()[0]).epsilon(1e-15));
  for (std::size_t k = 1; k < e.coeffs().size(); ++k) CHECK(e.coeffs()[k] == 0.0);
}

TEST_CASE("ellipsoid projection") {
  const SupportFunction e = ellipsoid(1.0, 1.0, 2.0, 12);
  CHECK(e.lmax() == 12);
  CHECK(e.is_even());
  CHECK(e.truncation_error() < 1e-4);
  CHECK(e.truncation_error() > 0.0);
  REQUIRE(e.closed_form().has_value());
  CHECK(e.closed_form()->tag() == "ellipsoid");
  // Axially symmetric: only m = 0 terms.
  for (int l = 0; l <= 12; ++l) {
    for (int m = -l; m <= l; ++m) {
      if (m != 0) CHECK(std::abs(e.coeff(l, m)) < 1e-14);
    }
  }
  const HarmonicBasis hb(12);
  for (const Vec3& u : wbtest::random_directions(50, 1)) {
    const double exact = std::sqrt(u.x() * u.x() + u.y() * u.y() + 4.0 * u.z() * u.z());
    CHECK(std::abs(evaluate(e, hb, u) - exact) <= e.truncation_error() * 1.5);
    CHECK(e.closed_form()->evaluate(u) == doctest::Approx(exact).epsilon(1e-15));
  }
  CHECK(ellipsoid(1.0, 2.0, 3.0, 6).truncation_error() >
        ellipsoid(1.0, 2.0, 3.0, 12).truncation_error());
  CHECK_THROWS_AS(ellipsoid(1.0, 0.0, 1.0, 4), InputError);
  CHECK_THROWS_AS(ellipsoid(1.0, 2.0, 1.0, -1), InputError);
}

TEST_CASE("constant width body with automatic eps") {
  const GridBasis& gb = basis12();
  const SupportFunction p = harmonic(3, 0);
  const BodyRecipe r = constant_width_body(ball(1.0), p, std::numeric_limits<double>::infinity(), gb);

  // rho from pointwise jets, independent of the tabulated basis.
  double rho = 0.0;
  const std::vector<double> c(p.coeffs().begin(), p.coeffs().end());
  const SphericalGrid& g = gb.grid();
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Jet2 j = jet(gb.basis(), c, g.node(i), g.frame(i));
    const Mat2 m = j.value * Mat2::Identity() + j.hess;
    rho = std::max(rho, Eigen::SelfAdjointEigenSolver<Mat2>(m).eigenvalues().cwiseAbs().maxCoeff());
  }
  CHECK(std::abs(r.rho - rho) < 1e-12);
  CHECK(std::abs(r.eps - 0.9 / rho) < 1e-12);
  CHECK(r.kind == BodyRecipe::Kind::constant_width);

  const ConvexityCertificate cert = certify_convex(r.resolved, gb);
  CHECK(cert.convex());
  CHECK(cert.min_eigenvalue >= 0.1 - 1e-9);
  const std::vector<double> w = width(r.resolved, gb);
  for (double x : w) CHECK(std::abs(x - 2.0) < 1e-12);
}

TEST_CASE("constant width body honours a smaller request") {
  const GridBasis& gb = basis12();
  const BodyRecipe r = constant_width_body(ball(1.0), harmonic(5, 2), 0.01, gb);
  CHECK(r.eps == 0.01);
  CHECK(r.resolved.coeff(5, 2) == doctest::Approx(0.01));
  const BodyRecipe big = constant_width_body(ball(1.0), harmonic(5, 2), 1e6, gb);
  CHECK(big.eps < 1.0);
}

TEST_CASE("constant width body errors") {
  const GridBasis& gb = basis12();
  CHECK_THROWS_AS(constant_width_body(ball(1.0), harmonic(2, 0), 0.1, gb), InputError);
  CHECK_THROWS_AS(constant_width_body(ball(1.0), SupportFunction(3), 0.1, gb), InputError);
  CHECK_THROWS_AS(constant_width_body(ball(1.0).translated({1, 0, 0}), harmonic(3, 0), 0.1, gb),
                  NotConvexError);
  const SupportFunction bad = minkowski_sum(ball(1.0), harmonic(4, 0, 1.5));
  CHECK_THROWS_AS(constant_width_body(bad, harmonic(3, 0), 0.1, gb), NotConvexError);
  // A pure translation gives rho = 0 and the fallback eps.
  const BodyRecipe t = constant_width_body(ball(1.0), SupportFunction(1).translated({0, 0, 1}),
                                           std::numeric_limits<double>::infinity(), gb);
  CHECK(t.rho < 1e-12);
  CHECK(t.eps == 1.0);
}

TEST_CASE("random convex bodies are seeded and certified") {
  const GridBasis& gb = basis12();
  const SupportFunction a = random_convex(0, 12, 0.5, gb);
  const SupportFunction b = random_convex(0, 12, 0.5, gb);
  const SupportFunction c = random_convex(1, 12, 0.5, gb);
  REQUIRE(a.coeffs().size() == b.coeffs().size());
  for (std::size_t k = 0; k < a.coeffs().size(); ++k) CHECK(a.coeffs()[k] == b.coeffs()[k]);
  CHECK(a.coeffs()[5] != c.coeffs()[5]);
  CHECK(certify_convex(a, gb).min_eigenvalue >= 0.1);
  CHECK(a.coeffs()[0] == doctest::Approx(ball(1.0).coeffs()[0]));
  for (int k = 1; k <= 3; ++k) CHECK(a.coeffs()[k] == 0.0);
  CHECK_THROWS_AS(random_convex(0, 12, 0.0, gb), InputError);
  CHECK_THROWS_AS(random_convex(0, 12, 1.0, gb), InputError);
  CHECK_THROWS_AS(random_convex(0, 13, 0.5, gb), InputError);
}

TEST_CASE("random odd functions") {
  const std::vector<int> deg{3, 7};
  const SupportFunction p = random_odd(5, 9, deg);
  CHECK(p.is_odd());
  double n2 = 0.0;
  for (int l = 0; l <= 9; ++l) {
    for (int m = -l; m <= l; ++m) {
      const double c = p.coeff(l, m);
      if (l != 3 && l != 7) CHECK(c == 0.0);
      n2 += c * c;
    }
  }
  CHECK(std::abs(n2 - 1.0) < 1e-14);
  CHECK(std::abs(p.odd_shape_norm() - 1.0) < 1e-14);
  CHECK_THROWS_AS(random_odd(5, 9, std::vector<int>{4}), InputError);
  CHECK_THROWS_AS(random_odd(5, 5, std::vector<int>{7}), InputError);
}

TEST_CASE("single harmonic") {
  const SupportFunction y = harmonic(4, -3, 0.25);
  CHECK(y.lmax() == 4);
  for (std::size_t k = 0; k < y.coeffs().size(); ++k) {
    CHECK(y.coeffs()[k] == (k == harmonic_index(4, -3) ? 0.25 : 0.0));
  }
  CHECK_THROWS_AS(harmonic(2, 3), InputError);
  CHECK(kind_name(BodyRecipe::Kind::random_convex) == "random_convex");
}
