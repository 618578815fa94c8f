#include "widthbright/support_body.hpp"

#include "widthbright/errors.hpp"
#include "widthbright/simd.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace wb {

double ClosedForm::evaluate(const Vec3& u) const {
  if (kind == Kind::ball) return axes[0] * u.norm();
  return std::sqrt(axes[0] * axes[0] * u[0] * u[0] +
                   axes[1] * axes[1] * u[1] * u[1] +
                   axes[2] * axes[2] * u[2] * u[2]);
}

std::string ClosedForm::tag() const {
  return kind == Kind::ball ? "ball" : "ellipsoid";
}

SupportFunction::SupportFunction(int lmax, std::string label)
    : lmax_(lmax), coeffs_(harmonic_count(lmax), 0.0), label_(std::move(label)) {
  if (lmax < 0) throw InputError("support function degree must be >= 0");
}

SupportFunction::SupportFunction(int lmax, std::vector<double> coeffs,
                                 std::string label)
    : lmax_(lmax), coeffs_(std::move(coeffs)), label_(std::move(label)) {
  if (lmax < 0) throw InputError("support function degree must be >= 0");
  if (coeffs_.size() != harmonic_count(lmax)) {
    throw InputError("support function of degree " + std::to_string(lmax) +
                     " needs " + std::to_string(harmonic_count(lmax)) +
                     " coefficients, got " + std::to_string(coeffs_.size()));
  }
  for (double c : coeffs_) {
    if (!std::isfinite(c)) throw InputError("non-finite harmonic coefficient");
  }
}

void SupportFunction::set_closed_form(ClosedForm form, double truncation_error) {
  closed_form_ = form;
  truncation_error_ = truncation_error;
}

SupportFunction SupportFunction::padded(int lmax) const {
  SupportFunction out(lmax, label_);
  const std::size_t keep = std::min(coeffs_.size(), out.coeffs_.size());
  std::copy_n(coeffs_.begin(), keep, out.coeffs_.begin());
  for (std::size_t k = keep; k < coeffs_.size(); ++k) {
    if (coeffs_[k] != 0.0) {
      throw InputError("cannot truncate a degree-" + std::to_string(lmax_) +
                       " support function to degree " + std::to_string(lmax));
    }
  }
  out.closed_form_ = closed_form_;
  out.truncation_error_ = truncation_error_;
  return out;
}

SupportFunction SupportFunction::scaled(double factor) const {
  SupportFunction out = *this;
  for (double& c : out.coeffs_) c *= factor;
  if (out.closed_form_) {
    out.closed_form_->axes *= std::abs(factor);
    if (factor < 0) out.closed_form_.reset();
    out.truncation_error_ *= std::abs(factor);
  }
  return out;
}

std::vector<double> linear_coeffs(const Vec3& v) {
  // <v, u> = sum over degree-1 harmonics; Y_1,-1 = k y, Y_1,0 = k z,
  // Y_1,1 = k x with k = sqrt(3 / (4 pi)), and ||Y||^2 = 1 gives c = v_i / k.
  const double k = std::sqrt(3.0 / (4.0 * std::numbers::pi));
  return {v.y() / k, v.z() / k, v.x() / k};
}

SupportFunction SupportFunction::translated(const Vec3& v) const {
  SupportFunction out = lmax_ >= 1 ? *this : padded(1);
  const auto lin = linear_coeffs(v);
  for (int m = -1; m <= 1; ++m) out.coeffs_[harmonic_index(1, m)] += lin[m + 1];
  out.closed_form_.reset();
  out.truncation_error_ = 0.0;
  return out;
}

double SupportFunction::odd_shape_norm() const {
  double s = 0.0;
  for (int l = 3; l <= lmax_; l += 2) {
    for (int m = -l; m <= l; ++m) {
      const double c = coeffs_[harmonic_index(l, m)];
      s += c * c;
    }
  }
  return std::sqrt(s);
}

bool SupportFunction::is_even(double tol) const {
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (harmonic_degree(k) % 2 == 1 && std::abs(coeffs_[k]) > tol) return false;
  }
  return true;
}

bool SupportFunction::is_odd(double tol) const {
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (harmonic_degree(k) % 2 == 0 && std::abs(coeffs_[k]) > tol) return false;
  }
  return true;
}

double evaluate(const SupportFunction& h, const HarmonicBasis& basis,
                const Vec3& u) {
  if (h.lmax() > basis.lmax()) {
    throw InputError("evaluate: basis degree below the support function's");
  }
  double s = 0.0;
  for (std::size_t k = 0; k < h.coeffs().size(); ++k) {
    s += h.coeffs()[k] * basis.evaluate(k, u);
  }
  return s;
}

std::vector<double> sample(const SupportFunction& h, const GridBasis& gb) {
  return gb.synthesize_values(h.coeffs());
}

JetField sample_jets(const SupportFunction& h, const GridBasis& gb) {
  return gb.synthesize(h.coeffs());
}

std::vector<double> curvature_det(const JetField& j) {
  std::vector<double> out(j.size());
  simd::active().shifted_det2(j.value.data(), j.h11.data(), j.h12.data(),
                              j.h22.data(), out.data(), out.size());
  return out;
}

std::vector<double> curvature_min_eig(const JetField& j) {
  std::vector<double> out(j.size());
  simd::active().shifted_min_eig2(j.value.data(), j.h11.data(), j.h12.data(),
                                  j.h22.data(), out.data(), out.size());
  return out;
}

std::vector<double> width(const SupportFunction& h, const GridBasis& gb) {
  const std::vector<double> v = sample(h, gb);
  const SphericalGrid& g = gb.grid();
  std::vector<double> w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) w[i] = v[i] + v[g.antipode(i)];
  return w;
}

namespace {

SupportFunction keep_parity(const SupportFunction& h, int parity) {
  SupportFunction out = h;
  auto c = out.coeffs();
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (harmonic_degree(k) % 2 != parity) c[k] = 0.0;
  }
  return out;
}

}  // namespace

SupportFunction central_symmetral(const SupportFunction& h) {
  SupportFunction out = keep_parity(h, 0);
  out.set_label(h.label().empty() ? "symmetral" : h.label() + ":symmetral");
  return out;
}

SupportFunction odd_part(const SupportFunction& h) {
  SupportFunction out(h.lmax(), std::vector<double>(h.coeffs().begin(), h.coeffs().end()),
                      h.label().empty() ? "odd" : h.label() + ":odd");
  auto c = out.coeffs();
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (harmonic_degree(k) % 2 == 0) c[k] = 0.0;
  }
  return out;
}

SupportFunction minkowski_sum(const SupportFunction& a,
                              const SupportFunction& b) {
  const int lmax = std::max(a.lmax(), b.lmax());
  SupportFunction out(lmax);
  auto c = out.coeffs();
  for (std::size_t k = 0; k < a.coeffs().size(); ++k) c[k] += a.coeffs()[k];
  for (std::size_t k = 0; k < b.coeffs().size(); ++k) c[k] += b.coeffs()[k];
  out.set_label(a.label() + "+" + b.label());
  if (a.closed_form() && b.closed_form() &&
      a.closed_form()->kind == ClosedForm::Kind::ball &&
      b.closed_form()->kind == ClosedForm::Kind::ball) {
    ClosedForm f;
    f.axes = a.closed_form()->axes + b.closed_form()->axes;
    out.set_closed_form(f, a.truncation_error() + b.truncation_error());
  }
  return out;
}

ConvexityCertificate certify_convex(const JetField& jets, double tol_psd) {
  const std::vector<double> eig = curvature_min_eig(jets);
  const std::vector<double> det = curvature_det(jets);
  ConvexityCertificate cert;
  cert.tolerance = tol_psd;
  const auto it = std::min_element(eig.begin(), eig.end());
  cert.node_of_min = static_cast<std::size_t>(it - eig.begin());
  cert.min_eigenvalue = *it;
  cert.det_min = *std::min_element(det.begin(), det.end());
  return cert;
}

ConvexityCertificate certify_convex(const SupportFunction& h,
                                    const GridBasis& gb, double tol_psd) {
  return certify_convex(sample_jets(h, gb), tol_psd);
}

double volume(const SupportFunction& h, const GridBasis& gb) {
  const JetField jets = sample_jets(h, gb);
  const ConvexityCertificate cert = certify_convex(jets);
  if (!cert.convex()) {
    throw NotConvexError("volume: support function is not convex (least "
                         "curvature eigenvalue " +
                         std::to_string(cert.min_eigenvalue) + ")");
  }
  std::vector<double> integrand = curvature_det(jets);
  for (std::size_t i = 0; i < integrand.size(); ++i) {
    integrand[i] *= jets.value[i];
  }
  return integrate(gb.grid(), integrand) / 3.0;
}

HomothetyFit homothety_fit(const SupportFunction& h1, const SupportFunction& h2,
                           const GridBasis& gb) {
  const std::vector<double> f1 = sample(h1, gb);
  const std::vector<double> f2 = sample(h2, gb);
  const SphericalGrid& g = gb.grid();

  // Columns: h2, u_x, u_y, u_z.
  Eigen::Matrix4d normal = Eigen::Matrix4d::Zero();
  Eigen::Vector4d rhs = Eigen::Vector4d::Zero();
  double total_weight = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Vec3& u = g.node(i);
    const Eigen::Vector4d row(f2[i], u.x(), u.y(), u.z());
    const double w = g.weight(i);
    normal.noalias() += w * row * row.transpose();
    rhs += w * f1[i] * row;
    total_weight += w;
  }
  const Eigen::LDLT<Eigen::Matrix4d> ldlt(normal);
  // h2 in span{u_x, u_y, u_z} (or zero) makes the system singular.
  const double scale = normal.diagonal().maxCoeff();
  if (ldlt.info() != Eigen::Success ||
      ldlt.vectorD().cwiseAbs().minCoeff() < 1e-12 * scale) {
    throw NumericalError("homothety_fit: reference support function is zero "
                         "or a pure translation");
  }
  const Eigen::Vector4d x = ldlt.solve(rhs);

  HomothetyFit fit;
  fit.lambda = x[0];
  fit.translation = Vec3(x[1], x[2], x[3]);
  double misfit = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double r = f1[i] - fit.lambda * f2[i] - fit.translation.dot(g.node(i));
    misfit += g.weight(i) * r * r;
  }
  fit.residual = std::sqrt(misfit / total_weight);
  return fit;
}

}  // namespace wb
