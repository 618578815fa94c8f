#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <vector>

namespace wb {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;

// Orthonormal tangent pair at a node, oriented so that e1 x e2 = u.
struct TangentFrame {
  Vec3 e1;
  Vec3 e2;
};

// Product quadrature on the unit sphere: Gauss-Legendre in cos(theta) times a
// uniform azimuth. Rings are ordered north to south and each ring is sampled
// at azimuths phi_j = 2*pi*(j + 1/2) / n_phi. With n_phi even the node set is
// closed under u -> -u, and antipodes are stored as exact negations.
//
// Frames are e1 = d/dtheta, e2 = d/dphi (normalized). At the antipode the
// frame is (e1, -e2), i.e. frame(-u) = frame(u) * diag(1, -1).
class SphericalGrid {
 public:
  SphericalGrid(int n_theta, int n_phi);

  int n_theta() const { return n_theta_; }
  int n_phi() const { return n_phi_; }
  std::size_t size() const { return nodes_.size(); }
  std::size_t index(int ring, int azimuth) const {
    return static_cast<std::size_t>(ring) * n_phi_ + azimuth;
  }

  const Vec3& node(std::size_t i) const { return nodes_[i]; }
  double weight(std::size_t i) const { return weights_[i]; }
  std::size_t antipode(std::size_t i) const { return antipode_[i]; }
  const TangentFrame& frame(std::size_t i) const { return frames_[i]; }

  std::span<const Vec3> nodes() const { return nodes_; }
  std::span<const double> weights() const { return weights_; }
  std::span<const std::size_t> antipodes() const { return antipode_; }

  // Coordinates in structure-of-arrays form for the kernels.
  std::span<const double> xs() const { return xs_; }
  std::span<const double> ys() const { return ys_; }
  std::span<const double> zs() const { return zs_; }

  // R such that frame(antipode(i)) expressed in frame(i) coordinates is R:
  // (e1', e2') = (e1, e2) R. Always diag(1, -1) for this grid.
  Mat2 antipodal_frame_change(std::size_t i) const;

  // Largest harmonic degree L for which products Y_lm * Y_l'm' (l, l' <= L)
  // are integrated exactly.
  int resolution_lmax() const;

  // Index of the first node of each antipodal pair (i < antipode(i)).
  std::span<const std::size_t> pair_representatives() const { return reps_; }

 private:
  int n_theta_;
  int n_phi_;
  std::vector<Vec3> nodes_;
  std::vector<double> weights_;
  std::vector<std::size_t> antipode_;
  std::vector<TangentFrame> frames_;
  std::vector<double> xs_, ys_, zs_;
  std::vector<std::size_t> reps_;
};

// Throws InputError for n_theta < 2 or odd / non-positive n_phi.
SphericalGrid make_grid(int n_theta, int n_phi);

// sum_i w_i f_i. Throws InputError on length mismatch.
double integrate(const SphericalGrid& grid, std::span<const double> f);

// Gauss-Legendre nodes (descending) and weights on [-1, 1]; nodes are
// symmetrized so x[n-1-k] == -x[k] exactly.
void gauss_legendre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights);

// Real spherical harmonics, orthonormal on S^2, no Condon-Shortley phase:
//   m > 0: sqrt(2) N_lm P_l^m(cos t) cos(m p)
//   m = 0: N_l0 P_l(cos t)
//   m < 0: sqrt(2) N_l|m| P_l^|m|(cos t) sin(|m| p)
// Coefficient vectors are ordered (l, m) lexicographically, m from -l to l.
constexpr std::size_t harmonic_index(int l, int m) {
  return static_cast<std::size_t>(l * l + l + m);
}
constexpr std::size_t harmonic_count(int lmax) {
  return static_cast<std::size_t>((lmax + 1) * (lmax + 1));
}
constexpr int harmonic_degree(std::size_t k) {
  int l = 0;
  while (harmonic_count(l) <= k) ++l;
  return l;
}

// Value, Cartesian gradient and Cartesian Hessian of a function on R^3.
struct CartesianJet {
  double value = 0.0;
  Vec3 grad = Vec3::Zero();
  Mat3 hess = Mat3::Zero();
};

// Each basis function is carried as a homogeneous polynomial (its solid
// harmonic R_lm, degree l). The degree-1 homogeneous extension of Y_lm is
// |x|^(1-l) R_lm(x); its derivatives are closed-form in R_lm and its
// polynomial derivatives.
class HarmonicBasis {
 public:
  static constexpr int kMaxDegree = 20;

  explicit HarmonicBasis(int lmax);

  int lmax() const { return lmax_; }
  std::size_t size() const { return harmonic_count(lmax_); }

  // Y_k(x / |x|).
  double evaluate(std::size_t k, const Vec3& x) const;

  // Jets of the extensions |x| Y_k(x / |x|) for all k, written to out
  // (out.size() must be size()).
  void extension_jets(const Vec3& x, std::span<CartesianJet> out) const;

 private:
  struct Term {
    int a, b, c;  // exponents of x, y, z
    double coef;
  };
  using Poly = std::vector<Term>;
  struct Entry {
    int degree;
    Poly value;
    Poly grad[3];
    Poly hess[6];  // xx, xy, xz, yy, yz, zz
  };

  void fill_monomials(const Vec3& x, std::vector<double>& table) const;
  double eval_poly(const Poly& p, const std::vector<double>& table) const;
  std::size_t monomial_slot(int a, int b, int c) const;

  int lmax_;
  std::vector<Entry> entries_;
};

// Value, tangential gradient and tangential Hessian of a function on S^2 at a
// node, in that node's frame.
struct Jet2 {
  double value = 0.0;
  Vec2 grad = Vec2::Zero();
  Mat2 hess = Mat2::Zero();
};

// Jet of p = sum_k coeffs[k] Y_k at unit u in the given frame, from the
// closed-form derivatives of the extension p~:
//   grad = frame components of d p~(u)   (d p~(u) = p u + grad p)
//   hess = frame restriction of d^2 p~(u) - p I
// Throws InputError when coeffs.size() > basis.size().
Jet2 jet(const HarmonicBasis& basis, std::span<const double> coeffs,
         const Vec3& u, const TangentFrame& frame);

// Same data for a whole grid, structure-of-arrays.
struct JetField {
  std::vector<double> value, g1, g2, h11, h12, h22;

  std::size_t size() const { return value.size(); }
  Jet2 at(std::size_t i) const;
};

// A grid with every basis function's frame jet tabulated at every node.
// Tables are column-major: column k holds basis function k at all nodes.
class GridBasis {
 public:
  GridBasis(SphericalGrid grid, int lmax);

  const SphericalGrid& grid() const { return grid_; }
  const HarmonicBasis& basis() const { return basis_; }
  int lmax() const { return basis_.lmax(); }
  std::size_t size() const { return basis_.size(); }

  // Jets of sum_k coeffs[k] Y_k. coeffs may be shorter than size() (missing
  // entries are zero); longer throws InputError.
  JetField synthesize(std::span<const double> coeffs) const;
  // Values only.
  std::vector<double> synthesize_values(std::span<const double> coeffs) const;
  // Jets of sum_j coeffs[j] Y_{columns[j]}.
  JetField synthesize_subset(std::span<const std::size_t> columns,
                             std::span<const double> coeffs) const;

  std::span<const double> value_column(std::size_t k) const;

  // Quadrature projection c_k = sum_i w_i f_i Y_k(u_i).
  std::vector<double> analyze(std::span<const double> f) const;

 private:
  std::span<const double> column(const std::vector<double>& t,
                                 std::size_t k) const;
  void combine(const std::vector<double>& table,
               std::span<const std::size_t> columns,
               std::span<const double> coeffs, std::vector<double>& out) const;

  SphericalGrid grid_;
  HarmonicBasis basis_;
  std::vector<double> value_, g1_, g2_, h11_, h12_, h22_;
};

}  // namespace wb
