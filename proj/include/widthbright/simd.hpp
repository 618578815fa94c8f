#pragma once

#include <cstddef>
#include <string_view>

// Inner-loop kernels with a scalar reference implementation and an AVX2/FMA
// variant. The variant is chosen once at startup from the CPU features; it can
// be pinned with WIDTHBRIGHT_SIMD=scalar|avx2 or programmatically for
// equivalence testing.

namespace wb::simd {

enum class Isa { scalar, avx2 };

struct Kernels {
  Isa isa;

  // sum_i a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);

  // sum_i wf[i] * |ax*x[i] + ay*y[i] + az*z[i]|
  double (*abs_projection_sum)(double ax, double ay, double az, const double* x,
                               const double* y, const double* z,
                               const double* wf, std::size_t n);

  // sum_i wf[i] * sum_{l <= degree} series[l] P_l(t_i),
  // t_i = ax*x[i] + ay*y[i] + az*z[i], P_l the Legendre polynomials.
  double (*legendre_projection_sum)(double ax, double ay, double az,
                                    const double* x, const double* y,
                                    const double* z, const double* wf,
                                    std::size_t n, const double* series,
                                    int degree);

  // out[i] = sum_k coeffs[k] * columns[k][i], k in [0, n_cols). Each out[i]
  // is accumulated in column order, so sign-mirrored rows give exactly
  // sign-mirrored results.
  void (*combine_columns)(const double* const* columns, const double* coeffs,
                          std::size_t n_cols, std::size_t n, double* out);

  // out[i] = (v[i] + h11[i]) * (v[i] + h22[i]) - h12[i]^2
  void (*shifted_det2)(const double* v, const double* h11, const double* h12,
                       const double* h22, double* out, std::size_t n);

  // out[i] = least eigenvalue of [[v+h11, h12], [h12, v+h22]]
  void (*shifted_min_eig2)(const double* v, const double* h11,
                           const double* h12, const double* h22, double* out,
                           std::size_t n);
};

const Kernels& scalar_kernels();

// nullptr when the build or the CPU lacks AVX2+FMA.
const Kernels* avx2_kernels();

// The dispatched kernel table.
const Kernels& active();

// Overrides the dispatch. Returns false (and leaves dispatch unchanged) when
// the requested ISA is unavailable.
bool set_active(Isa isa);

std::string_view isa_name(Isa isa);

}  // namespace wb::simd
