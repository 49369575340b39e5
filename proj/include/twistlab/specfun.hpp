#pragma once
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "twistlab/lattice.hpp"

namespace twistlab {

using MultiIndex = std::vector<int>;

int order(const MultiIndex& a);
// All multi-indices of length d with |alpha| = k, lexicographic.
std::vector<MultiIndex> multi_indices(int d, int k);
std::string to_string(const MultiIndex& a);

// Rows h_0..h_nmax evaluated at y, row-major (nmax+1) x y.size().
std::vector<double> hermite_table(int nmax, const std::vector<double>& y);
double hermite_value(int n, double y);

Field hermite_function(int n, const GridSpec& grid);
Field hermite_nd(const MultiIndex& alpha, const GridSpec& grid);

double laguerre_polynomial(int n, double delta, double y);

// Phi_{alpha,beta}(x, y) = A(Phi_alpha, Phi_beta)(y, -x) on a grid of dimension 2d (d = 1, 2),
// evaluated through the ambiguity transform of 1-d Hermite factors. Requires 2pi/h^2
// to be an integer so the frequency lattice of the transform is the position lattice.
Field special_hermite(const MultiIndex& alpha, const MultiIndex& beta, const GridSpec& grid);
// Closed form of the diagonal elements, (2pi)^{-d/2} prod L^0_{b_j}(r_j^2/2) e^{-r_j^2/4}.
Field special_hermite_diagonal(const MultiIndex& beta, const GridSpec& grid);

// phi_k(z) = L_k^{d-1}(|z|^2/2) e^{-|z|^2/4}.
Field laguerre_kernel(int k, const GridSpec& grid);
// g_lambda(z) = e^{-lambda |z|^2}.
Field gaussian_dilated(double lambda, const GridSpec& grid);

class BasisCatalog {
 public:
  // grid is the 2d-dimensional grid; Hermite functions live on grid.with_dim(d).
  BasisCatalog(int d, int k_max, const GridSpec& grid);

  int d() const { return d_; }
  int k_max() const { return k_max_; }
  const GridSpec& grid() const { return grid_; }
  GridSpec base_grid() const { return grid_.with_dim(d_); }

  const Field& hermite(const MultiIndex& a) const;
  const Field& special(const MultiIndex& a, const MultiIndex& b) const;
  const Field& laguerre(int k) const;
  std::vector<MultiIndex> indices() const;  // all |alpha| <= k_max

  static std::size_t memory_budget_bytes;

 private:
  int d_, k_max_;
  GridSpec grid_;
  std::map<MultiIndex, Field> hermite_;
  std::map<std::pair<MultiIndex, MultiIndex>, Field> special_;
  std::vector<Field> laguerre_;
};

struct M1Row {
  int k;
  double m1_self_window;     // ||Phi_k||_{M^1} with window Phi_k
  double m1_gauss_window;    // ||Phi_k||_{M^1} with window Phi_0
  double l1_special_diag;    // ||Phi_{k,k}||_{L^1}
  double l1_laguerre_kernel; // ||phi_k||_{L^1}
};
// d = 1 only. Evaluated on a 1-d self-dual grid with `points` samples per axis.
std::vector<M1Row> m1_norm_growth_table(int k_min, int k_max, int d = 1, int points = 512);

}  // namespace twistlab
