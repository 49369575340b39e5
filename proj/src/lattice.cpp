#include "twistlab/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "twistlab/fft.hpp"

namespace twistlab {

GridSpec::GridSpec(int n, int N, double R) : dim(n), points(N), half_width(R) {
  if (n < 1 || n > 4) throw ParameterError("grid dimension must be in 1..4");
  if (N < 2 || N % 2 != 0) throw GridError("points per axis must be a positive even integer");
  if (!(R > 0) || !std::isfinite(R)) throw ParameterError("half width must be positive");
}

std::size_t GridSpec::size() const {
  std::size_t s = 1;
  for (int a = 0; a < dim; ++a) s *= static_cast<std::size_t>(points);
  return s;
}

double GridSpec::cell() const { return std::pow(spacing(), dim); }

std::vector<double> GridSpec::axis() const {
  std::vector<double> x(points);
  for (int i = 0; i < points; ++i) x[i] = coord(i);
  return x;
}

GridSpec GridSpec::dual() const { return {dim, points, pi / spacing()}; }

GridSpec GridSpec::symplectic_dual() const { return {dim, points, pi / (2.0 * spacing())}; }

GridSpec GridSpec::landau(int dim, int points) {
  return {dim, points, 0.5 * points * std::sqrt(2.0 * pi / points)};
}

GridSpec GridSpec::symplectic_self_dual(int dim, int points) {
  return {dim, points, 0.5 * points * std::sqrt(pi / points)};
}

GridSpec GridSpec::for_hermite(int dim, int points, int k_max) {
  return {dim, points, std::sqrt(2.0 * (2.0 * k_max + dim)) + 4.0};
}

bool GridSpec::matches(const GridSpec& o) const {
  return dim == o.dim && points == o.points &&
         std::abs(half_width - o.half_width) <= 1e-12 * std::max(half_width, o.half_width);
}

std::string GridSpec::describe() const {
  std::ostringstream s;
  s << "grid(dim=" << dim << ", N=" << points << ", R=" << half_width << ")";
  return s.str();
}

Field::Field(const GridSpec& g, std::string l) : grid(g), values(g.size()), label(std::move(l)) {}

Field::Field(const GridSpec& g, std::vector<cplx> v, std::string l)
    : grid(g), values(std::move(v)), label(std::move(l)) {
  if (values.size() != grid.size()) throw DataError("field size does not match grid");
}

Field Field::sample(const GridSpec& g, const std::function<cplx(const double*)>& fn,
                    std::string label) {
  Field f(g, std::move(label));
  const std::size_t n = g.size();
  parallel_for(static_cast<std::size_t>(g.points), [&](std::size_t i0) {
    std::size_t block = n / g.points;
    int idx[4];
    double x[4];
    for (std::size_t r = 0; r < block; ++r) {
      std::size_t k = i0 * block + r;
      unflatten(g, k, idx);
      for (int a = 0; a < g.dim; ++a) x[a] = g.coord(idx[a]);
      f.values[k] = fn(x);
    }
  });
  return f;
}

void unflatten(const GridSpec& g, std::size_t k, int* idx) {
  for (int a = g.dim - 1; a >= 0; --a) {
    idx[a] = static_cast<int>(k % g.points);
    k /= g.points;
  }
}

void require_same_grid(const Field& a, const Field& b, const char* what) {
  if (!a.grid.matches(b.grid))
    throw GridError(std::string(what) + ": grid mismatch " + a.grid.describe() + " vs " +
                    b.grid.describe());
}

Field& Field::operator+=(const Field& o) {
  require_same_grid(*this, o, "field addition");
  for (std::size_t k = 0; k < values.size(); ++k) values[k] += o.values[k];
  return *this;
}
Field& Field::operator-=(const Field& o) {
  require_same_grid(*this, o, "field subtraction");
  for (std::size_t k = 0; k < values.size(); ++k) values[k] -= o.values[k];
  return *this;
}
Field& Field::operator*=(cplx s) {
  for (auto& v : values) v *= s;
  return *this;
}
Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(cplx s, Field a) { return a *= s; }

cplx inner(const Field& f, const Field& g) {
  require_same_grid(f, g, "inner product");
  cplx s = 0;
  for (std::size_t k = 0; k < f.size(); ++k) s += f.values[k] * std::conj(g.values[k]);
  return s * f.grid.cell();
}

double l2_norm(const Field& f) { return quadrature_lp_norm(f, 2.0); }

double max_abs(const Field& f) {
  double m = 0;
  for (auto v : f.values) m = std::max(m, std::abs(v));
  return m;
}

double distance(const Field& a, const Field& b) { return l2_norm(a - b); }

double relative_error(const Field& a, const Field& ref) {
  double r = l2_norm(ref);
  double e = distance(a, ref);
  return r > 0 ? e / r : e;
}

double boundary_ratio(const Field& f) {
  const auto& g = f.grid;
  double m = max_abs(f), edge = 0;
  if (m == 0) return 0;
  int idx[4];
  for (std::size_t k = 0; k < f.size(); ++k) {
    unflatten(g, k, idx);
    bool shell = false;
    for (int a = 0; a < g.dim; ++a) shell |= (idx[a] == 0 || idx[a] == g.points - 1);
    if (shell) edge = std::max(edge, std::abs(f.values[k]));
  }
  return edge / m;
}

void check_schwartz(const Field& f, double tol) {
  double r = boundary_ratio(f);
  if (r > tol)
    throw BandLimitError("field '" + f.label + "' does not decay on " + f.grid.describe() +
                         " (boundary ratio " + std::to_string(r) + ")");
}

double quadrature_lp_norm(const Field& f, double p) {
  if (!(p >= 1.0)) throw ParameterError("Lebesgue exponent must satisfy p >= 1");
  if (std::isinf(p)) return max_abs(f);
  double s = 0;
  for (auto v : f.values) s += std::pow(std::abs(v), p);
  return std::pow(s * f.grid.cell(), 1.0 / p);
}

namespace detail {

void centered_dft_axis(cplx* v, int dim, int N, int axis, int sign, double scale) {
  std::size_t stride = 1;
  for (int a = axis + 1; a < dim; ++a) stride *= N;
  std::size_t outer = 1;
  for (int a = 0; a < axis; ++a) outer *= N;
  const std::size_t block = stride * N;
  const double post_sign = (N / 2) % 2 ? -1.0 : 1.0;
  parallel_for(outer, [&](std::size_t o) {
    cplx* base = v + o * block;
    for (int j = 1; j < N; j += 2)
      for (std::size_t s = 0; s < stride; ++s) base[j * stride + s] = -base[j * stride + s];
    fft::dft_many(base, N, static_cast<int>(stride), static_cast<int>(stride), 1, sign);
    for (int k = 0; k < N; ++k) {
      double c = scale * post_sign * (k % 2 ? -1.0 : 1.0);
      for (std::size_t s = 0; s < stride; ++s) base[k * stride + s] *= c;
    }
  });
}

}  // namespace detail

Field fourier(const Field& f, double band_limit) {
  const auto& g = f.grid;
  if (band_limit > 0 && pi / g.spacing() < band_limit)
    throw BandLimitError("Nyquist frequency " + std::to_string(pi / g.spacing()) +
                         " below band limit " + std::to_string(band_limit));
  Field out(g.dual(), f.values, f.label.empty() ? "" : "F[" + f.label + "]");
  const double scale = g.spacing() / std::sqrt(2.0 * pi);
  for (int a = 0; a < g.dim; ++a)
    detail::centered_dft_axis(out.values.data(), g.dim, g.points, a, -1, scale);
  return out;
}

Field inverse_fourier(const Field& F) {
  const auto& g = F.grid;
  Field out(g.dual(), F.values, F.label);
  const double scale = g.spacing() / std::sqrt(2.0 * pi);
  for (int a = 0; a < g.dim; ++a)
    detail::centered_dft_axis(out.values.data(), g.dim, g.points, a, +1, scale);
  return out;
}

Field symplectic_fourier(const Field& f) {
  const auto& g = f.grid;
  if (g.dim % 2) throw ParameterError("symplectic Fourier transform needs an even dimension");
  const int d = g.dim / 2, N = g.points;
  Field F = fourier(f);
  Field out(g.symplectic_dual(), f.label.empty() ? "" : "Fs[" + f.label + "]");
  const double amp = std::pow(2.0, d);
  int m[4], k[4];
  for (std::size_t q = 0; q < out.size(); ++q) {
    unflatten(out.grid, q, m);
    // (2J zeta)_j = 2 zeta_{j+d}, (2J zeta)_{j+d} = -2 zeta_j; 2 zeta lands on the FFT lattice.
    for (int j = 0; j < d; ++j) {
      k[j] = m[j + d];
      k[j + d] = (N - m[j]) % N;
    }
    std::size_t src = 0;
    for (int a = 0; a < g.dim; ++a) src = src * N + k[a];
    out.values[q] = amp * F.values[src];
  }
  return out;
}

Field partial_fourier_first_block(const Field& f, bool inverse) {
  const auto& g = f.grid;
  if (g.dim % 2) throw ParameterError("partial Fourier transform needs an even dimension");
  if (!g.dual().matches(g))
    throw GridError("partial Fourier transform needs a self-dual grid (h^2 = 2pi/N), got " +
                    g.describe());
  Field out(g, f.values, f.label);
  const double scale = g.spacing() / std::sqrt(2.0 * pi);
  for (int a = 0; a < g.dim / 2; ++a)
    detail::centered_dft_axis(out.values.data(), g.dim, g.points, a, inverse ? +1 : -1, scale);
  return out;
}

Eigen::MatrixXd SymplecticForm::matrix() const {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(2 * d, 2 * d);
  J.topRightCorner(d, d).setIdentity();
  J.bottomLeftCorner(d, d) = -Eigen::MatrixXd::Identity(d, d);
  return J;
}

double SymplecticForm::operator()(const double* z, const double* w) const {
  double s = 0;
  for (int j = 0; j < d; ++j) s += z[j + d] * w[j] - z[j] * w[j + d];
  return s;
}

}  // namespace twistlab
