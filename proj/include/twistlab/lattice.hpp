#pragma once
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "twistlab/core.hpp"

namespace twistlab {

// Uniform lattice x_j = -R + j h, j = 0..N-1, on every axis of R^n.
struct GridSpec {
  int dim = 1;
  int points = 64;
  double half_width = 8.0;

  GridSpec() = default;
  GridSpec(int dim, int points, double half_width);

  double spacing() const { return 2.0 * half_width / points; }
  std::size_t size() const;
  int center() const { return points / 2; }
  double coord(int i) const { return (i - center()) * spacing(); }
  double cell() const;  // quadrature weight h^n
  std::vector<double> axis() const;

  // Grid carrying the FFT output: spacing pi/R, half-width pi/h.
  GridSpec dual() const;
  // Output grid of symplectic_fourier: spacing pi/(N h).
  GridSpec symplectic_dual() const;
  GridSpec with_dim(int n) const { return {n, points, half_width}; }

  // h^2 = 2 pi / N: each axis is self-dual under the Fourier transform.
  static GridSpec landau(int dim, int points);
  // h^2 = pi / N: the grid is mapped to itself by symplectic_fourier.
  static GridSpec symplectic_self_dual(int dim, int points);
  // R from the turning-point rule R >= sqrt(2(2K+n)) + 4.
  static GridSpec for_hermite(int dim, int points, int k_max);

  bool matches(const GridSpec& o) const;
  std::string describe() const;
};

struct Field {
  GridSpec grid;
  std::vector<cplx> values;
  std::string label;

  Field() = default;
  explicit Field(const GridSpec& g, std::string label = {});
  Field(const GridSpec& g, std::vector<cplx> v, std::string label = {});

  std::size_t size() const { return values.size(); }
  cplx& operator[](std::size_t k) { return values[k]; }
  const cplx& operator[](std::size_t k) const { return values[k]; }
  cplx& at2(int i, int j) { return values[static_cast<std::size_t>(i) * grid.points + j]; }
  const cplx& at2(int i, int j) const { return values[static_cast<std::size_t>(i) * grid.points + j]; }

  // Sample fn(x) at every lattice point; x has grid.dim entries.
  static Field sample(const GridSpec& g, const std::function<cplx(const double*)>& fn,
                      std::string label = {});

  Field& operator+=(const Field& o);
  Field& operator-=(const Field& o);
  Field& operator*=(cplx s);
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(cplx s, Field a);

void require_same_grid(const Field& a, const Field& b, const char* what);
// Unpacks a flat row-major index into per-axis indices.
void unflatten(const GridSpec& g, std::size_t k, int* idx);

cplx inner(const Field& f, const Field& g);  // sum f conj(g) h^n
double l2_norm(const Field& f);
double max_abs(const Field& f);
double distance(const Field& a, const Field& b);        // ||a-b||_2
double relative_error(const Field& a, const Field& ref);  // ||a-ref|| / ||ref||
// max |f| on the outermost grid shell divided by max |f|.
double boundary_ratio(const Field& f);
// Throws BandLimitError when the boundary ratio exceeds tol.
void check_schwartz(const Field& f, double tol = 1e-10);

double quadrature_lp_norm(const Field& f, double p);

// Ff(xi) = (2pi)^{-n/2} int e^{-i xi.x} f(x) dx on grid.dual().
// A positive band_limit demands Nyquist frequency pi/h >= band_limit.
Field fourier(const Field& f, double band_limit = 0.0);
Field inverse_fourier(const Field& F);
// pi^{-d} int e^{-2i sigma(zeta,z)} f(z) dz = 2^d Ff(2J zeta), on grid.symplectic_dual().
Field symplectic_fourier(const Field& f);
// Transform along the first half of the axes; needs a self-dual grid.
Field partial_fourier_first_block(const Field& f, bool inverse = false);

struct SymplecticForm {
  int d;
  explicit SymplecticForm(int d_) : d(d_) {}
  Eigen::MatrixXd matrix() const;  // J = [[0, I], [-I, 0]]
  double operator()(const double* z, const double* w) const;  // Jz . w
};

namespace detail {
// Centered DFT along one axis of an N^dim array:
// out_k = scale * sum_j e^{sign i 2pi (j-c)(k-c)/N} in_j, c = N/2.
void centered_dft_axis(cplx* v, int dim, int N, int axis, int sign, double scale);
}  // namespace detail

}  // namespace twistlab
