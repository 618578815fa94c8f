#include "widthbright/errors.hpp"
#include "widthbright/parallel.hpp"
#include "widthbright/simd.hpp"
#include "widthbright/sphere_core.hpp"

#include <numeric>
#include <string>

namespace wb {

GridBasis::GridBasis(SphericalGrid grid, int lmax)
    : grid_(std::move(grid)), basis_(lmax) {
  if (lmax > grid_.resolution_lmax()) {
    throw InputError("lmax " + std::to_string(lmax) +
                     " exceeds the grid's resolution bound " +
                     std::to_string(grid_.resolution_lmax()));
  }
  const std::size_t n = grid_.size();
  const std::size_t k_count = basis_.size();
  for (auto* t : {&value_, &g1_, &g2_, &h11_, &h12_, &h22_}) {
    t->assign(n * k_count, 0.0);
  }
  parallel_for(n, [&](std::size_t i) {
    std::vector<CartesianJet> jets(k_count);
    basis_.extension_jets(grid_.node(i), jets);
    const TangentFrame& f = grid_.frame(i);
    for (std::size_t k = 0; k < k_count; ++k) {
      const CartesianJet& j = jets[k];
      const Vec3 he1 = j.hess * f.e1;
      const Vec3 he2 = j.hess * f.e2;
      const std::size_t at = k * n + i;
      value_[at] = j.value;
      g1_[at] = f.e1.dot(j.grad);
      g2_[at] = f.e2.dot(j.grad);
      h11_[at] = f.e1.dot(he1) - j.value;
      h12_[at] = f.e2.dot(he1);
      h22_[at] = f.e2.dot(he2) - j.value;
    }
  });
}

std::span<const double> GridBasis::column(const std::vector<double>& t,
                                          std::size_t k) const {
  return std::span<const double>(t).subspan(k * grid_.size(), grid_.size());
}

std::span<const double> GridBasis::value_column(std::size_t k) const {
  return column(value_, k);
}

void GridBasis::combine(const std::vector<double>& table,
                        std::span<const std::size_t> columns,
                        std::span<const double> coeffs,
                        std::vector<double>& out) const {
  std::vector<const double*> ptrs(columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    ptrs[j] = table.data() + columns[j] * grid_.size();
  }
  out.assign(grid_.size(), 0.0);
  simd::active().combine_columns(ptrs.data(), coeffs.data(), ptrs.size(),
                                 grid_.size(), out.data());
}

JetField GridBasis::synthesize_subset(std::span<const std::size_t> columns,
                                      std::span<const double> coeffs) const {
  if (columns.size() != coeffs.size()) {
    throw InputError("synthesize_subset: column/coefficient count mismatch");
  }
  for (std::size_t c : columns) {
    if (c >= size()) throw InputError("synthesize_subset: column out of range");
  }
  JetField f;
  combine(value_, columns, coeffs, f.value);
  combine(g1_, columns, coeffs, f.g1);
  combine(g2_, columns, coeffs, f.g2);
  combine(h11_, columns, coeffs, f.h11);
  combine(h12_, columns, coeffs, f.h12);
  combine(h22_, columns, coeffs, f.h22);
  return f;
}

JetField GridBasis::synthesize(std::span<const double> coeffs) const {
  if (coeffs.size() > size()) {
    throw InputError("synthesize: " + std::to_string(coeffs.size()) +
                     " coefficients for a basis of size " +
                     std::to_string(size()));
  }
  std::vector<std::size_t> columns(coeffs.size());
  std::iota(columns.begin(), columns.end(), std::size_t{0});
  return synthesize_subset(columns, coeffs);
}

std::vector<double> GridBasis::synthesize_values(
    std::span<const double> coeffs) const {
  if (coeffs.size() > size()) {
    throw InputError("synthesize_values: too many coefficients");
  }
  std::vector<std::size_t> columns(coeffs.size());
  std::iota(columns.begin(), columns.end(), std::size_t{0});
  std::vector<double> out;
  combine(value_, columns, coeffs, out);
  return out;
}

std::vector<double> GridBasis::analyze(std::span<const double> f) const {
  if (f.size() != grid_.size()) {
    throw InputError("analyze: sample count does not match the grid");
  }
  std::vector<double> wf(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) wf[i] = grid_.weight(i) * f[i];
  std::vector<double> c(size());
  for (std::size_t k = 0; k < size(); ++k) {
    c[k] = simd::active().dot(value_.data() + k * grid_.size(), wf.data(),
                              grid_.size());
  }
  return c;
}

}  // namespace wb
