#include "widthbright/theorem_lab.hpp"

#include "widthbright/brightness.hpp"
#include "widthbright/errors.hpp"
#include "widthbright/parallel.hpp"
#include "widthbright/simd.hpp"

#include <algorithm>
#include <cmath>

namespace wb {

double sigma_form(const Mat2& a, const Mat2& b) {
  return 0.5 * (a.trace() * b.trace() - (a * b).trace());
}

double ParityReport::max_identity_residual() const {
  double m = 0.0;
  for (double r : identity_residual) m = std::max(m, std::abs(r));
  return m;
}

namespace {

Mat2 shifted_hessian(const JetField& j, std::size_t i) {
  Mat2 m;
  m << j.value[i] + j.h11[i], j.h12[i], j.h12[i], j.value[i] + j.h22[i];
  return m;
}

}  // namespace

ParityReport parity_decomposition_check(const SupportFunction& h,
                                        const GridBasis& gb) {
  const SphericalGrid& g = gb.grid();
  const JetField jh = sample_jets(h, gb);
  const JetField j0 = sample_jets(central_symmetral(h), gb);
  const JetField jp = sample_jets(odd_part(h), gb);
  const std::vector<double> dh = curvature_det(jh);
  const std::vector<double> d0 = curvature_det(j0);
  const std::vector<double> dp = curvature_det(jp);

  std::vector<double> sig(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    sig[i] = sigma_form(shifted_hessian(jp, i), shifted_hessian(j0, i));
  }
  ParityReport r;
  r.identity_residual.resize(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const std::size_t a = g.antipode(i);
    r.identity_residual[i] = dh[i] - (dp[i] + 2.0 * sig[i] + d0[i]);
    r.max_even_violation_det_p =
        std::max(r.max_even_violation_det_p, std::abs(dp[i] - dp[a]));
    r.max_odd_violation_sigma =
        std::max(r.max_odd_violation_sigma, std::abs(sig[i] + sig[a]));
    const Mat2 rr = g.antipodal_frame_change(i);
    const Mat2 hi = jp.at(i).hess;
    const Mat2 ha = jp.at(a).hess;
    r.max_hessian_parity_violation = std::max(
        r.max_hessian_parity_violation,
        (ha + rr * hi * rr.transpose()).cwiseAbs().maxCoeff());
  }
  return r;
}

std::vector<double> det_p_identity_residual(const SupportFunction& h,
                                            double beta, const GridBasis& gb) {
  const std::vector<double> d0 = curvature_det(sample_jets(central_symmetral(h), gb));
  const std::vector<double> dp = curvature_det(sample_jets(odd_part(h), gb));
  std::vector<double> r(d0.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = dp[i] + (1.0 - beta) * d0[i];
  return r;
}

DetExtremes odd_sign_obstruction(const SupportFunction& p, const GridBasis& gb) {
  if (!p.is_odd()) {
    throw InputError("odd_sign_obstruction: input has even-degree coefficients");
  }
  const std::vector<double> d = curvature_det(sample_jets(p, gb));
  const auto [lo, hi] = std::minmax_element(d.begin(), d.end());
  return {*hi, *lo};
}

std::string status_name(TerminalStatus s) {
  switch (s) {
    case TerminalStatus::converged_to_gauge: return "converged_to_gauge";
    case TerminalStatus::stalled: return "stalled";
    case TerminalStatus::infeasible: return "infeasible";
  }
  return "unknown";
}

std::vector<std::size_t> odd_variable_columns(int lmax, int max_odd_degree) {
  std::vector<std::size_t> cols;
  for (int l = 3; l <= std::min(lmax, max_odd_degree); l += 2) {
    for (int m = -l; m <= l; ++m) cols.push_back(harmonic_index(l, m));
  }
  return cols;
}

BrightnessVariance::BrightnessVariance(const SupportFunction& gauge,
                                       const GridBasis& gb,
                                       std::vector<std::size_t> columns,
                                       VarianceObjective objective)
    : gb_(gb), columns_(std::move(columns)), objective_(objective) {
  if (objective_ == VarianceObjective::automatic) {
    bool is_ball = true;
    for (std::size_t k = 1; k < gauge.coeffs().size(); ++k) {
      if (gauge.coeffs()[k] != 0.0) is_ball = false;
    }
    objective_ = is_ball ? VarianceObjective::absolute : VarianceObjective::relative;
  }
  gauge_jets_ = sample_jets(gauge, gb);

  // C f(a) = sum over antipodal pairs j of w_j (f_j + f_j') K(<a, u_j>), and
  // C f(-a) = C f(a), so both sides fold onto the pair representatives.
  const SphericalGrid& g = gb.grid();
  const std::vector<double> series = abs_kernel_series(g.resolution_lmax());
  const auto reps = g.pair_representatives();
  const std::size_t n = reps.size();
  folded_.resize(n * n);
  dir_weights_.resize(n);
  for (std::size_t r = 0; r < n; ++r) {
    const Vec3& a = g.node(reps[r]);
    dir_weights_[r] = g.weight(reps[r]);
    for (std::size_t j = 0; j < n; ++j) {
      folded_[r * n + j] =
          g.weight(reps[j]) * legendre_series(series, a.dot(g.node(reps[j])));
    }
  }
  if (objective_ == VarianceObjective::relative) {
    const std::vector<double> d = curvature_det(gauge_jets_);
    std::vector<double> pair_sum(n);
    for (std::size_t j = 0; j < n; ++j) pair_sum[j] = d[reps[j]] + d[g.antipode(reps[j])];
    base_.resize(n);
    for (std::size_t r = 0; r < n; ++r) {
      base_[r] = 0.5 * simd::active().dot(&folded_[r * n], pair_sum.data(), n);
    }
  }
}

BrightnessVariance::Value BrightnessVariance::operator()(
    std::span<const double> c) const {
  JetField j = gb_.synthesize_subset(columns_, c);
  for (std::size_t i = 0; i < j.size(); ++i) {
    j.value[i] += gauge_jets_.value[i];
    j.h11[i] += gauge_jets_.h11[i];
    j.h12[i] += gauge_jets_.h12[i];
    j.h22[i] += gauge_jets_.h22[i];
  }
  const std::vector<double> eig = curvature_min_eig(j);
  const std::vector<double> d = curvature_det(j);

  const SphericalGrid& g = gb_.grid();
  const auto reps = g.pair_representatives();
  const std::size_t n = reps.size();
  std::vector<double> pair_sum(n);
  for (std::size_t k = 0; k < n; ++k) pair_sum[k] = d[reps[k]] + d[g.antipode(reps[k])];
  std::vector<double> b(n);
  const auto& kern = simd::active();
  for (std::size_t r = 0; r < n; ++r) {
    b[r] = 0.5 * kern.dot(&folded_[r * n], pair_sum.data(), n);
    if (objective_ == VarianceObjective::relative) b[r] /= base_[r];
  }
  return {weighted_variance(b, dir_weights_),
          *std::min_element(eig.begin(), eig.end())};
}

OptimizerTrace minimize_brightness_variance(const SupportFunction& gauge,
                                            const SupportFunction& init_odd,
                                            const GridBasis& gb,
                                            const OptimizerOptions& opts) {
  if (!init_odd.is_odd()) {
    throw InputError("minimize_brightness_variance: start is not odd");
  }
  if (!gauge.is_even()) {
    throw InputError("minimize_brightness_variance: gauge is not even");
  }
  const int lmax = gb.lmax();
  const std::vector<std::size_t> cols = odd_variable_columns(lmax, opts.max_odd_degree);
  const SupportFunction start = init_odd.padded(std::max(init_odd.lmax(), lmax));
  for (std::size_t k = harmonic_count(std::min(lmax, opts.max_odd_degree));
       k < start.coeffs().size(); ++k) {
    if (start.coeffs()[k] != 0.0) {
      throw InputError("minimize_brightness_variance: start has degrees beyond "
                       "the optimizer's variables");
    }
  }
  const BrightnessVariance objective(gauge, gb, cols, opts.objective);

  std::vector<double> c(cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) c[j] = start.coeffs()[cols[j]];

  auto norm = [](std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
  };
  auto make_final = [&](std::span<const double> coeffs) {
    SupportFunction p(lmax, "optimizer");
    for (std::size_t j = 0; j < cols.size(); ++j) p.coeffs()[cols[j]] = coeffs[j];
    return p;
  };

  OptimizerTrace trace;
  trace.objective = objective.objective();
  BrightnessVariance::Value cur = objective(c);
  trace.iterations.push_back({norm(c), cur.variance, cur.min_eigenvalue, 0.0});
  trace.final_odd = make_final(c);
  if (!(cur.min_eigenvalue >= opts.min_eigenvalue_floor)) {
    trace.terminal_status = TerminalStatus::infeasible;
    return trace;
  }

  auto converged = [&] {
    return norm(c) < opts.converged_norm && cur.variance < opts.converged_variance;
  };
  std::vector<double> grad(c.size());
  double step = 0.0;
  trace.terminal_status = TerminalStatus::stalled;
  for (int it = 0; it < opts.max_iterations; ++it) {
    if (converged()) {
      trace.terminal_status = TerminalStatus::converged_to_gauge;
      break;
    }
    parallel_for(c.size(), [&](std::size_t j) {
      std::vector<double> cp = c, cm = c;
      cp[j] += opts.fd_step;
      cm[j] -= opts.fd_step;
      grad[j] = (objective(cp).variance - objective(cm).variance) / (2.0 * opts.fd_step);
    });
    const double gnorm = norm(grad);
    if (!(gnorm > 0.0)) break;
    // The objective is quartic near the gauge, so useful steps grow as the
    // iterate shrinks: restart each search from 4x the last accepted step.
    step = step > 0.0 ? 4.0 * step : norm(c) / gnorm;
    if (!(step > 0.0)) step = 1.0;
    bool accepted = false;
    std::vector<double> trial(c.size());
    for (int halving = 0; halving < 80; ++halving, step *= 0.5) {
      for (std::size_t j = 0; j < c.size(); ++j) trial[j] = c[j] - step * grad[j];
      const BrightnessVariance::Value v = objective(trial);
      if (v.min_eigenvalue < opts.min_eigenvalue_floor) continue;
      if (v.variance <= cur.variance - opts.armijo * step * gnorm * gnorm) {
        c = trial;
        cur = v;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
    trace.iterations.push_back({norm(c), cur.variance, cur.min_eigenvalue, step});
    trace.final_odd = make_final(c);
  }
  if (trace.terminal_status != TerminalStatus::converged_to_gauge && converged()) {
    trace.terminal_status = TerminalStatus::converged_to_gauge;
  }
  return trace;
}

}  // namespace wb
