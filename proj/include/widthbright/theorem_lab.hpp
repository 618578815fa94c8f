#pragma once

#include "widthbright/support_body.hpp"

#include <span>
#include <string>
#include <vector>

namespace wb {

// sigma(A, B) = (tr A tr B - tr AB) / 2 on 2x2 matrices; sigma(A, A) = det A
// and det(A + B) = det A + 2 sigma(A, B) + det B.
double sigma_form(const Mat2& a, const Mat2& b);

struct ParityReport {
  // max |sigma(u) + sigma(-u)| with sigma = sigma(p I + hess p, h0 I + hess h0)
  double max_odd_violation_sigma = 0.0;
  // max |D_p(u) - D_p(-u)| with D_p = det(p I + hess p)
  double max_even_violation_det_p = 0.0;
  // max |hess p(-u) + R hess p(u) R^T| (frame-aware oddness of hess p)
  double max_hessian_parity_violation = 0.0;
  // D_h - (D_p + 2 sigma + D_0) per node
  std::vector<double> identity_residual;

  double max_identity_residual() const;
};

// Splits h = h0 + p by parity and checks the determinant decomposition and
// the parity of each term node by node against the antipode.
ParityReport parity_decomposition_check(const SupportFunction& h,
                                        const GridBasis& gb);

// R(u) = D_p(u) + (1 - beta) D_0(u). Vanishing R is what constant relative
// brightness beta against the symmetral would force.
std::vector<double> det_p_identity_residual(const SupportFunction& h,
                                            double beta, const GridBasis& gb);

struct DetExtremes {
  double max_det = 0.0;
  double min_det = 0.0;
};

// Extremes of det(p I + hess p) over the grid for an odd p. Throws
// InputError for non-odd input.
DetExtremes odd_sign_obstruction(const SupportFunction& p, const GridBasis& gb);

enum class TerminalStatus { converged_to_gauge, stalled, infeasible };
std::string status_name(TerminalStatus s);

enum class VarianceObjective {
  automatic,  // absolute for a ball gauge, relative otherwise
  absolute,   // variance of the brightness profile
  relative,   // variance of the profile divided by the gauge's profile
};

struct OptimizerOptions {
  int max_iterations = 500;
  int max_odd_degree = 7;          // variables: odd degrees 3..this
  double fd_step = 1e-5;           // central differences
  double min_eigenvalue_floor = 0.01;
  double converged_norm = 1e-3;
  double converged_variance = 1e-10;
  double armijo = 1e-4;
  VarianceObjective objective = VarianceObjective::automatic;
};

struct OptimizerIterate {
  double coeff_norm = 0.0;
  double variance = 0.0;
  double min_eigenvalue = 0.0;
  double step = 0.0;
};

struct OptimizerTrace {
  std::vector<OptimizerIterate> iterations;  // entry 0 is the start
  TerminalStatus terminal_status = TerminalStatus::stalled;
  SupportFunction final_odd;  // odd part at the last accepted iterate
  VarianceObjective objective = VarianceObjective::absolute;
};

// Variables of the optimizer: the harmonic indices of odd degrees
// 3..max_odd_degree (capped at lmax), in coefficient order.
std::vector<std::size_t> odd_variable_columns(int lmax, int max_odd_degree);

// The objective F(c): brightness variance of gauge + sum_j c_j Y_{columns_j}
// over the grid nodes as directions, with quadrature weights. Uses the
// antipodal symmetry of the grid to fold both nodes and directions in half.
class BrightnessVariance {
 public:
  BrightnessVariance(const SupportFunction& gauge, const GridBasis& gb,
                     std::vector<std::size_t> columns,
                     VarianceObjective objective);

  struct Value {
    double variance;
    double min_eigenvalue;
  };
  Value operator()(std::span<const double> c) const;

  std::size_t dimension() const { return columns_.size(); }
  VarianceObjective objective() const { return objective_; }

 private:
  const GridBasis& gb_;
  std::vector<std::size_t> columns_;
  VarianceObjective objective_;
  JetField gauge_jets_;
  std::vector<double> folded_;      // [direction rep][node rep] w_j |<a, u_j>|
  std::vector<double> dir_weights_;
  std::vector<double> base_;        // gauge profile (relative objective)
};

// Projected-descent search for a zero of the brightness variance among
// constant-width bodies gauge + odd. Gradient by central differences,
// backtracking line search, steps halved until the convexity certificate
// stays above the floor. init_odd must be odd; its degree-1 part (a
// translation) is ignored.
OptimizerTrace minimize_brightness_variance(const SupportFunction& gauge,
                                            const SupportFunction& init_odd,
                                            const GridBasis& gb,
                                            const OptimizerOptions& opts = {});

}  // namespace wb
