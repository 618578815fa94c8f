#include "widthbright/simd.hpp"

#include <cmath>

namespace wb::simd {
namespace {

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

double abs_projection_sum(double ax, double ay, double az, const double* x,
                          const double* y, const double* z, const double* wf,
                          std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    s += wf[i] * std::abs(ax * x[i] + ay * y[i] + az * z[i]);
  }
  return s;
}

double legendre_projection_sum(double ax, double ay, double az,
                               const double* x, const double* y,
                               const double* z, const double* wf,
                               std::size_t n, const double* series, int degree) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = ax * x[i] + ay * y[i] + az * z[i];
    double p0 = 1.0, p1 = t;
    double acc = series[0];
    if (degree >= 1) acc += series[1] * t;
    for (int l = 1; l < degree; ++l) {
      const double p2 = ((2 * l + 1) * t * p1 - l * p0) / (l + 1);
      p0 = p1;
      p1 = p2;
      acc += series[l + 1] * p1;
    }
    s += wf[i] * acc;
  }
  return s;
}

void combine_columns(const double* const* columns, const double* coeffs,
                     std::size_t n_cols, std::size_t n, double* out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = 0.0;
  for (std::size_t k = 0; k < n_cols; ++k) {
    const double c = coeffs[k];
    const double* col = columns[k];
    for (std::size_t i = 0; i < n; ++i) out[i] += c * col[i];
  }
}

void shifted_det2(const double* v, const double* h11, const double* h12,
                  const double* h22, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = (v[i] + h11[i]) * (v[i] + h22[i]) - h12[i] * h12[i];
  }
}

void shifted_min_eig2(const double* v, const double* h11, const double* h12,
                      const double* h22, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double a = v[i] + h11[i];
    const double b = v[i] + h22[i];
    const double half_diff = 0.5 * (a - b);
    out[i] = 0.5 * (a + b) - std::sqrt(half_diff * half_diff + h12[i] * h12[i]);
  }
}

}  // namespace

const Kernels& scalar_kernels() {
  static const Kernels k{Isa::scalar,
                         dot,
                         abs_projection_sum,
                         legendre_projection_sum,
                         combine_columns,
                         shifted_det2,
                         shifted_min_eig2};
  return k;
}

}  // namespace wb::simd
