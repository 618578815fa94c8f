// Compiled with -mavx2 -mfma. Only reached after the dispatcher has checked
// the CPU, and includes nothing that could leak AVX code into inline
// functions shared with other translation units.

#include "widthbright/simd.hpp"

#include <immintrin.h>

#include <cmath>

namespace wb::simd {
namespace {

double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

double abs_projection_sum_avx2(double ax, double ay, double az,
                               const double* x, const double* y,
                               const double* z, const double* wf,
                               std::size_t n) {
  const __m256d vax = _mm256_set1_pd(ax);
  const __m256d vay = _mm256_set1_pd(ay);
  const __m256d vaz = _mm256_set1_pd(az);
  const __m256d abs_mask =
      _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d d = _mm256_mul_pd(vax, _mm256_loadu_pd(x + i));
    d = _mm256_fmadd_pd(vay, _mm256_loadu_pd(y + i), d);
    d = _mm256_fmadd_pd(vaz, _mm256_loadu_pd(z + i), d);
    d = _mm256_and_pd(d, abs_mask);
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(wf + i), d, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += wf[i] * std::abs(ax * x[i] + ay * y[i] + az * z[i]);
  return s;
}

double legendre_projection_sum_avx2(double ax, double ay, double az,
                                    const double* x, const double* y,
                                    const double* z, const double* wf,
                                    std::size_t n, const double* series,
                                    int degree) {
  const __m256d vax = _mm256_set1_pd(ax);
  const __m256d vay = _mm256_set1_pd(ay);
  const __m256d vaz = _mm256_set1_pd(az);
  __m256d total = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d t = _mm256_mul_pd(vax, _mm256_loadu_pd(x + i));
    t = _mm256_fmadd_pd(vay, _mm256_loadu_pd(y + i), t);
    t = _mm256_fmadd_pd(vaz, _mm256_loadu_pd(z + i), t);
    __m256d p0 = _mm256_set1_pd(1.0);
    __m256d p1 = t;
    __m256d acc = _mm256_set1_pd(series[0]);
    if (degree >= 1) acc = _mm256_fmadd_pd(_mm256_set1_pd(series[1]), t, acc);
    for (int l = 1; l < degree; ++l) {
      const __m256d a = _mm256_set1_pd((2.0 * l + 1.0) / (l + 1.0));
      const __m256d b = _mm256_set1_pd(static_cast<double>(l) / (l + 1.0));
      const __m256d p2 = _mm256_fmsub_pd(_mm256_mul_pd(a, t), p1, _mm256_mul_pd(b, p0));
      p0 = p1;
      p1 = p2;
      acc = _mm256_fmadd_pd(_mm256_set1_pd(series[l + 1]), p1, acc);
    }
    total = _mm256_fmadd_pd(_mm256_loadu_pd(wf + i), acc, total);
  }
  double s = hsum(total);
  for (; i < n; ++i) {
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

void combine_columns_avx2(const double* const* columns, const double* coeffs,
                          std::size_t n_cols, std::size_t n, double* out) {
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256d a0 = _mm256_setzero_pd();
    __m256d a1 = _mm256_setzero_pd();
    for (std::size_t k = 0; k < n_cols; ++k) {
      const __m256d c = _mm256_set1_pd(coeffs[k]);
      a0 = _mm256_fmadd_pd(c, _mm256_loadu_pd(columns[k] + i), a0);
      a1 = _mm256_fmadd_pd(c, _mm256_loadu_pd(columns[k] + i + 4), a1);
    }
    _mm256_storeu_pd(out + i, a0);
    _mm256_storeu_pd(out + i + 4, a1);
  }
  for (; i < n; ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < n_cols; ++k) s = std::fma(coeffs[k], columns[k][i], s);
    out[i] = s;
  }
}

void shifted_det2_avx2(const double* v, const double* h11, const double* h12,
                       const double* h22, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vv = _mm256_loadu_pd(v + i);
    const __m256d a = _mm256_add_pd(vv, _mm256_loadu_pd(h11 + i));
    const __m256d b = _mm256_add_pd(vv, _mm256_loadu_pd(h22 + i));
    const __m256d c = _mm256_loadu_pd(h12 + i);
    _mm256_storeu_pd(out + i, _mm256_fmsub_pd(a, b, _mm256_mul_pd(c, c)));
  }
  for (; i < n; ++i) {
    out[i] = std::fma(v[i] + h11[i], v[i] + h22[i], -(h12[i] * h12[i]));
  }
}

void shifted_min_eig2_avx2(const double* v, const double* h11,
                           const double* h12, const double* h22, double* out,
                           std::size_t n) {
  const __m256d half = _mm256_set1_pd(0.5);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vv = _mm256_loadu_pd(v + i);
    const __m256d a = _mm256_add_pd(vv, _mm256_loadu_pd(h11 + i));
    const __m256d b = _mm256_add_pd(vv, _mm256_loadu_pd(h22 + i));
    const __m256d c = _mm256_loadu_pd(h12 + i);
    const __m256d hd = _mm256_mul_pd(half, _mm256_sub_pd(a, b));
    const __m256d r = _mm256_sqrt_pd(_mm256_fmadd_pd(hd, hd, _mm256_mul_pd(c, c)));
    _mm256_storeu_pd(out + i, _mm256_fmsub_pd(half, _mm256_add_pd(a, b), r));
  }
  for (; i < n; ++i) {
    const double a = v[i] + h11[i];
    const double b = v[i] + h22[i];
    const double hd = 0.5 * (a - b);
    out[i] = 0.5 * (a + b) - std::sqrt(hd * hd + h12[i] * h12[i]);
  }
}

}  // namespace

const Kernels& avx2_kernel_table() {
  static const Kernels k{Isa::avx2,
                         dot_avx2,
                         abs_projection_sum_avx2,
                         legendre_projection_sum_avx2,
                         combine_columns_avx2,
                         shifted_det2_avx2,
                         shifted_min_eig2_avx2};
  return k;
}

}  // namespace wb::simd
