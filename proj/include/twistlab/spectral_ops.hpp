#pragma once
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "twistlab/lattice.hpp"
#include "twistlab/specfun.hpp"
#include "twistlab/twisted.hpp"

namespace twistlab {

// ---- differential operators (spectral differentiation) ----

// Fields whose boundary ratio exceeds this are rejected as wrapped.
inline double wrap_tolerance = 1e-8;

Field spectral_derivative(const Field& f, int axis);
// -Delta + w|x|^2; w = 1/4 is the rotation-free part of the twisted Laplacian.
Field apply_hermite_operator(const Field& f, double w = 1.0);
Field apply_twisted_laplacian(const Field& f);  // -Delta + |z|^2/4 - i sum (x_j d_{y_j} - y_j d_{x_j})
Field ladder_raise(const Field& f, int axis);   // (-d_j + x_j) f
Field ladder_lower(const Field& f, int axis);   // (d_j + x_j) f

// ---- multipliers ----

// Values m(d + 2k) for k = 0..K.
struct MultiplierSpec {
  std::vector<cplx> values;
  std::string description;
  int K() const { return static_cast<int>(values.size()) - 1; }
  cplx operator()(int k) const { return values.at(k); }
  static MultiplierSpec from_function(const std::function<cplx(double)>& m, int d, int K,
                                      std::string description);
};

enum class Which { hermite, landau };

struct MultiplierResult {
  Field field;
  double truncation_residual = 0;  // ||f - sum_{k<=K} proj_k f||
  double tail_bound = 0;           // |m(d+2K)| * residual
};

// Coefficients c_{alpha,beta} = <f, Phi_{alpha,beta}> for alpha, beta <= K (d = 1).
struct SpectralCoeffs {
  int K = 0;
  Eigen::MatrixXcd c;  // rows alpha, columns beta
};

// Special Hermite analysis/synthesis on a self-dual 2-d grid, using
// Phi_{a,b}(x,y) = (2pi)^{-1/2} int e^{ixu} h_a(u + y/2) h_b(u - y/2) du
// with all Hermite factors read from one table on the half-step lattice.
class LandauExpansion {
 public:
  // Throws BandLimitError for K > max_resolved(grid). The flows and
  // multipliers clamp their truncation to max_resolved instead; the
  // discarded levels then show up in the reported truncation residual.
  LandauExpansion(const GridSpec& grid, int K);
  static int max_resolved(const GridSpec& grid);
  SpectralCoeffs analyze(const Field& f) const;
  Field synthesize(const SpectralCoeffs& c) const;
  const GridSpec& grid() const { return grid_; }
  int K() const { return K_; }

 private:
  GridSpec grid_;
  int K_;
  std::vector<double> table_;  // h_k on half-step lattice, (K+1) x 3N
  int offset_;
};

// Hermite analysis/synthesis on R^d, d = 1 or 2; coefficients indexed by
// alpha in [0,K]^d (row-major), entries with |alpha| > K ignored on synthesis.
class HermiteExpansion {
 public:
  HermiteExpansion(const GridSpec& grid, int K);
  std::vector<cplx> analyze(const Field& f) const;
  Field synthesize(const std::vector<cplx>& c) const;
  int K() const { return K_; }
  const GridSpec& grid() const { return grid_; }

 private:
  GridSpec grid_;
  int K_;
  Eigen::MatrixXd H_;  // (K+1) x N table of h_k on the axis
};

inline constexpr int default_truncation = 48;

MultiplierResult multiplier_apply(const Field& f, const MultiplierSpec& m, Which which,
                                  double residual_tolerance = -1);

Field project_hermite(const Field& f, int k);
enum class ProjectionRoute { spectral, twisted };
Field project_landau(const Field& f, int k, ProjectionRoute route, int K = default_truncation);

// ---- metaplectic intertwiner ----

// A_J f(x,y) = (2pi)^{-d/2} int e^{i x.u} f(u + y/2, u - y/2) du, the unitary
// normalization. Exact lattice map on self-dual grids (d = 1).
Field metaplectic_AJ(const Field& f, bool adjoint = false);
// A_J (I x m(H)) A_J^* f with m(H) acting on the second variable.
MultiplierResult transferred_multiplier(const Field& f, const MultiplierSpec& m);

// ---- flows ----

enum class Route { spectral, kernel, weyl_symbol, subordination, gamma_integral, transferred };

Field heat_kernel(double t, const GridSpec& grid);   // (16 pi sinh t)^{-d} e^{-coth(t)|z|^2/4}
Symbol heat_weyl_symbol(double t);
Field heat_flow(const Field& f, double t, Route route, int K = default_truncation);
Field fractional_heat_flow(const Field& f, double t, double nu, Route route,
                           int K = default_truncation);
Field negative_power(const Field& f, double nu, Route route, int K = default_truncation);
Field bessel_potential(const Field& f, double nu, Route route, int K = default_truncation);
Field riesz_mean(const Field& f, double u, double v, int K = default_truncation);

struct SchrodingerResult {
  Field field;
  cplx phase = 1;  // constant c of the kernel route (1 on the spectral route)
  // Kernel route: the lattice sum resolves the chirps only for |z| below this
  // radius; samples outside it are aliased. Infinite on the spectral route.
  double resolved_radius = INFINITY;
};
// kernel route: c (2pi)^{d/2} f x q_t, q_t(z) = (16 pi sin t)^{-d} e^{(i/4) cot t |z|^2}.
SchrodingerResult schrodinger_flow(const Field& f, double t, Route route,
                                   int K = default_truncation);
Field oscillating_multiplier(const Field& f, double t, double gamma, double delta, Which which,
                             int K = default_truncation);
Field wave_flow(const Field& f, const Field& g, double t, int K = default_truncation);

// Twisted heat flow of the unit-mass Gaussian (mu/pi) e^{-mu|z|^2}, evaluated at z = 0 (d = 1).
double heat_of_gaussian_at_origin(double s, double mu);
// sup |e^{-t sqrt(L)} f_mu| / ||f_mu||_{L^1} for the unit-mass Gaussian witness f_mu,
// by subordination of the closed form above (d = 1).
double fractional_heat_witness_ratio(double t, double mu);

// ---- Landau matrix ----

Eigen::MatrixXd landau_hamiltonian_matrix(int d);  // [[-J/2, I], [-I/4, -J/2]]
struct LandauMatrix {
  Eigen::MatrixXd L;
  std::vector<double> singular_values;  // descending
  double ell_minus, ell_plus;
};
// e^{-2tL} = I - sin(2t) L + (1 - cos 2t) L^2.
LandauMatrix landau_symplectic_matrix(double t, int d = 1);

// Riesz transform R_j(H) = A_j H^{-1/2} on R^d.
Field riesz_transform_hermite(const Field& f, int axis, int K = default_truncation);
// Matrix of R_1(H) on span{h_0..h_K} (d = 1) computed from the sampled operator.
Eigen::MatrixXd riesz_coefficient_matrix(int K, const GridSpec& grid);

}  // namespace twistlab
