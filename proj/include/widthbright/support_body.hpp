#pragma once

#include "widthbright/sphere_core.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace wb {

// Exact evaluator for bodies whose support function is known in closed form.
struct ClosedForm {
  enum class Kind { ball, ellipsoid };
  Kind kind = Kind::ball;
  Vec3 axes = Vec3::Ones();  // ball: radius in axes[0]

  double evaluate(const Vec3& u) const;
  std::string tag() const;  // "ball" or "ellipsoid"
};

// A support function h(u) = sum_k coeffs[k] Y_k(u) on S^2, in the real
// orthonormal harmonic basis of sphere_core.hpp. When a closed form is
// attached, truncation_error() is the max deviation between it and the
// coefficients measured at construction.
class SupportFunction {
 public:
  SupportFunction() : SupportFunction(0) {}
  explicit SupportFunction(int lmax, std::string label = {});
  SupportFunction(int lmax, std::vector<double> coeffs, std::string label = {});

  int lmax() const { return lmax_; }
  std::span<const double> coeffs() const { return coeffs_; }
  std::span<double> coeffs() { return coeffs_; }
  double coeff(int l, int m) const { return coeffs_.at(harmonic_index(l, m)); }
  void set_coeff(int l, int m, double c) { coeffs_.at(harmonic_index(l, m)) = c; }

  const std::string& label() const { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  const std::optional<ClosedForm>& closed_form() const { return closed_form_; }
  double truncation_error() const { return truncation_error_; }
  void set_closed_form(ClosedForm form, double truncation_error);

  // Same function expressed with degree <= lmax (zero padding). Truncating
  // below the current degree throws unless the dropped coefficients are 0.
  SupportFunction padded(int lmax) const;

  SupportFunction scaled(double factor) const;

  // Adds <v, u>. Degree-1 harmonics are sqrt(3/(4 pi)) (y, z, x) for
  // m = -1, 0, 1.
  SupportFunction translated(const Vec3& v) const;

  // L2 norm of the odd-degree coefficients with degree >= 3 (the odd part
  // that is not a translation).
  double odd_shape_norm() const;
  bool is_even(double tol = 0.0) const;
  bool is_odd(double tol = 0.0) const;

 private:
  int lmax_;
  std::vector<double> coeffs_;
  std::optional<ClosedForm> closed_form_;
  double truncation_error_ = 0.0;
  std::string label_;
};

// Degree-1 coefficients (m = -1, 0, 1) of u -> <v, u>.
std::vector<double> linear_coeffs(const Vec3& v);

// Point evaluation.
double evaluate(const SupportFunction& h, const HarmonicBasis& basis,
                const Vec3& u);

// Grid samples of h. The grid basis must have lmax >= h.lmax().
std::vector<double> sample(const SupportFunction& h, const GridBasis& gb);
JetField sample_jets(const SupportFunction& h, const GridBasis& gb);

// Per-node determinant and least eigenvalue of h I + hess h.
std::vector<double> curvature_det(const JetField& jets);
std::vector<double> curvature_min_eig(const JetField& jets);

struct ConvexityCertificate {
  double min_eigenvalue = 0.0;
  double det_min = 0.0;
  std::size_t node_of_min = 0;
  double tolerance = 1e-9;

  bool convex() const { return min_eigenvalue >= -tolerance; }
};

constexpr double kDefaultPsdTolerance = 1e-9;

// w(u) = h(u) + h(-u), using the grid's antipode table.
std::vector<double> width(const SupportFunction& h, const GridBasis& gb);

// Even and odd parts: zero the odd / even degree coefficients.
SupportFunction central_symmetral(const SupportFunction& h);
SupportFunction odd_part(const SupportFunction& h);

// Coefficientwise sum, padding to the larger degree.
SupportFunction minkowski_sum(const SupportFunction& a,
                              const SupportFunction& b);

ConvexityCertificate certify_convex(const SupportFunction& h,
                                    const GridBasis& gb,
                                    double tol_psd = kDefaultPsdTolerance);
ConvexityCertificate certify_convex(const JetField& jets,
                                    double tol_psd = kDefaultPsdTolerance);

// (1/3) * integral of h det(h I + hess h). Throws NotConvexError unless h
// certifies as convex.
double volume(const SupportFunction& h, const GridBasis& gb);

struct HomothetyFit {
  double lambda = 0.0;
  Vec3 translation = Vec3::Zero();
  double residual = 0.0;  // quadrature-weighted RMS misfit
};

// Least squares h1 ~ lambda h2 + <v, u> over the grid nodes. Throws
// NumericalError when h2 is (numerically) zero or itself linear.
HomothetyFit homothety_fit(const SupportFunction& h1, const SupportFunction& h2,
                           const GridBasis& gb);

}  // namespace wb
