#include "widthbright/errors.hpp"
#include "widthbright/sphere_core.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <tuple>

namespace wb {
namespace {

using Exponents = std::tuple<int, int, int>;
using PolyMap = std::map<Exponents, long double>;

long double factorial(int n) {
  long double r = 1.0L;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

long double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0L;
  return factorial(n) / (factorial(k) * factorial(n - k));
}

PolyMap multiply(const PolyMap& p, const PolyMap& q) {
  PolyMap r;
  for (const auto& [ep, cp] : p) {
    for (const auto& [eq, cq] : q) {
      const Exponents e{std::get<0>(ep) + std::get<0>(eq),
                        std::get<1>(ep) + std::get<1>(eq),
                        std::get<2>(ep) + std::get<2>(eq)};
      r[e] += cp * cq;
    }
  }
  return r;
}

// (x^2 + y^2 + z^2)^k
PolyMap r_squared_power(int k) {
  PolyMap r{{{0, 0, 0}, 1.0L}};
  const PolyMap r2{{{2, 0, 0}, 1.0L}, {{0, 2, 0}, 1.0L}, {{0, 0, 2}, 1.0L}};
  for (int i = 0; i < k; ++i) r = multiply(r, r2);
  return r;
}

// Re and Im of (x + i y)^m.
PolyMap azimuthal(int m, bool imaginary) {
  PolyMap r;
  for (int j = 0; j <= m; ++j) {
    if ((j % 2 == 1) != imaginary) continue;
    const int sign = ((imaginary ? (j - 1) / 2 : j / 2) % 2 == 0) ? 1 : -1;
    r[{m - j, j, 0}] += sign * binomial(m, j);
  }
  return r;
}

// r^(l-m) P_l^m(z / r) as a polynomial in (x, y, z), without the
// sin^m factor (that is carried by the azimuthal polynomial).
PolyMap legendre_part(int l, int m) {
  PolyMap r;
  for (int k = 0; 2 * k <= l - m; ++k) {
    const long double c = ((k % 2 == 0) ? 1.0L : -1.0L) *
                          binomial(l, k) * binomial(2 * l - 2 * k, l) *
                          factorial(l - 2 * k) / factorial(l - 2 * k - m) /
                          std::pow(2.0L, l);
    for (const auto& [e, cr] : r_squared_power(k)) {
      r[{std::get<0>(e), std::get<1>(e), std::get<2>(e) + l - 2 * k - m}] +=
          c * cr;
    }
  }
  return r;
}

PolyMap solid_harmonic(int l, int m) {
  const int am = m < 0 ? -m : m;
  long double norm = std::sqrt((2.0L * l + 1.0L) / (4.0L * std::numbers::pi_v<long double>) *
                               factorial(l - am) / factorial(l + am));
  if (m != 0) norm *= std::sqrt(2.0L);
  PolyMap p = multiply(legendre_part(l, am), azimuthal(am, m < 0));
  for (auto& [e, c] : p) c *= norm;
  return p;
}

PolyMap derivative(const PolyMap& p, int axis) {
  PolyMap r;
  for (const auto& [e, c] : p) {
    int ex[3] = {std::get<0>(e), std::get<1>(e), std::get<2>(e)};
    if (ex[axis] == 0) continue;
    const long double f = ex[axis];
    ex[axis] -= 1;
    r[{ex[0], ex[1], ex[2]}] += c * f;
  }
  return r;
}

}  // namespace

HarmonicBasis::HarmonicBasis(int lmax) : lmax_(lmax) {
  if (lmax < 0 || lmax > kMaxDegree) {
    throw InputError("harmonic degree must be in [0, " +
                     std::to_string(kMaxDegree) + "], got " +
                     std::to_string(lmax));
  }
  auto to_poly = [](const PolyMap& m) {
    Poly p;
    for (const auto& [e, c] : m) {
      if (c == 0.0L) continue;
      p.push_back({std::get<0>(e), std::get<1>(e), std::get<2>(e),
                   static_cast<double>(c)});
    }
    return p;
  };
  entries_.reserve(size());
  for (int l = 0; l <= lmax; ++l) {
    for (int m = -l; m <= l; ++m) {
      const PolyMap v = solid_harmonic(l, m);
      Entry e;
      e.degree = l;
      e.value = to_poly(v);
      PolyMap d[3];
      for (int a = 0; a < 3; ++a) {
        d[a] = derivative(v, a);
        e.grad[a] = to_poly(d[a]);
      }
      e.hess[0] = to_poly(derivative(d[0], 0));
      e.hess[1] = to_poly(derivative(d[0], 1));
      e.hess[2] = to_poly(derivative(d[0], 2));
      e.hess[3] = to_poly(derivative(d[1], 1));
      e.hess[4] = to_poly(derivative(d[1], 2));
      e.hess[5] = to_poly(derivative(d[2], 2));
      entries_.push_back(std::move(e));
    }
  }
}

std::size_t HarmonicBasis::monomial_slot(int a, int b, int c) const {
  const int n = lmax_ + 1;
  return (static_cast<std::size_t>(a) * n + b) * n + c;
}

void HarmonicBasis::fill_monomials(const Vec3& x,
                                   std::vector<double>& table) const {
  const int n = lmax_ + 1;
  std::vector<double> px(n), py(n), pz(n);
  px[0] = py[0] = pz[0] = 1.0;
  for (int i = 1; i < n; ++i) {
    px[i] = px[i - 1] * x.x();
    py[i] = py[i - 1] * x.y();
    pz[i] = pz[i - 1] * x.z();
  }
  table.assign(static_cast<std::size_t>(n) * n * n, 0.0);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; a + b < n; ++b) {
      const double ab = px[a] * py[b];
      for (int c = 0; a + b + c < n; ++c) {
        table[monomial_slot(a, b, c)] = ab * pz[c];
      }
    }
  }
}

double HarmonicBasis::eval_poly(const Poly& p,
                                const std::vector<double>& table) const {
  double s = 0.0;
  for (const Term& t : p) s += t.coef * table[monomial_slot(t.a, t.b, t.c)];
  return s;
}

double HarmonicBasis::evaluate(std::size_t k, const Vec3& x) const {
  const double r = x.norm();
  std::vector<double> table;
  fill_monomials(x / r, table);
  return eval_poly(entries_.at(k).value, table);
}

void HarmonicBasis::extension_jets(const Vec3& x,
                                   std::span<CartesianJet> out) const {
  if (out.size() != size()) {
    throw InputError("extension_jets: output span has wrong length");
  }
  std::vector<double> table;
  fill_monomials(x, table);
  const double r2 = x.squaredNorm();
  const double r = std::sqrt(r2);
  const Mat3 xxT = x * x.transpose();
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    const Entry& e = entries_[k];
    const double R = eval_poly(e.value, table);
    Vec3 dR;
    for (int a = 0; a < 3; ++a) dR[a] = eval_poly(e.grad[a], table);
    Mat3 d2R;
    d2R(0, 0) = eval_poly(e.hess[0], table);
    d2R(0, 1) = d2R(1, 0) = eval_poly(e.hess[1], table);
    d2R(0, 2) = d2R(2, 0) = eval_poly(e.hess[2], table);
    d2R(1, 1) = eval_poly(e.hess[3], table);
    d2R(1, 2) = d2R(2, 1) = eval_poly(e.hess[4], table);
    d2R(2, 2) = eval_poly(e.hess[5], table);

    // p~ = r^s R with s = 1 - l.
    const double s = 1.0 - e.degree;
    const double rs = std::pow(r, s);
    const double rs2 = rs / r2;        // r^(s-2)
    const double rs4 = rs2 / r2;       // r^(s-4)
    CartesianJet& j = out[k];
    j.value = rs * R;
    j.grad = rs * dR + s * rs2 * R * x;
    const Mat3 cross = x * dR.transpose();
    j.hess = rs * d2R + s * rs2 * (cross + cross.transpose()) +
             s * rs2 * R * Mat3::Identity() + s * (s - 2.0) * rs4 * R * xxT;
  }
}

Jet2 jet(const HarmonicBasis& basis, std::span<const double> coeffs,
         const Vec3& u, const TangentFrame& frame) {
  if (coeffs.size() > basis.size()) {
    throw InputError("jet: " + std::to_string(coeffs.size()) +
                     " coefficients for a basis of size " +
                     std::to_string(basis.size()));
  }
  std::vector<CartesianJet> jets(basis.size());
  basis.extension_jets(u, jets);
  double value = 0.0;
  Vec3 grad = Vec3::Zero();
  Mat3 hess = Mat3::Zero();
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    value += coeffs[k] * jets[k].value;
    grad += coeffs[k] * jets[k].grad;
    hess += coeffs[k] * jets[k].hess;
  }
  Jet2 out;
  out.value = value;
  out.grad = Vec2(frame.e1.dot(grad), frame.e2.dot(grad));
  const Vec3 he1 = hess * frame.e1;
  const Vec3 he2 = hess * frame.e2;
  const double h12 = frame.e2.dot(he1);
  out.hess << frame.e1.dot(he1) - value, h12, h12, frame.e2.dot(he2) - value;
  return out;
}

Jet2 JetField::at(std::size_t i) const {
  Jet2 j;
  j.value = value[i];
  j.grad = Vec2(g1[i], g2[i]);
  j.hess << h11[i], h12[i], h12[i], h22[i];
  return j;
}

}  // namespace wb
