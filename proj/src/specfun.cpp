#include "twistlab/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "twistlab/fft.hpp"
#include "twistlab/phasespace.hpp"

namespace twistlab {

int order(const MultiIndex& a) { return std::accumulate(a.begin(), a.end(), 0); }

std::vector<MultiIndex> multi_indices(int d, int k) {
  std::vector<MultiIndex> out;
  MultiIndex cur(d, 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == d - 1) {
      cur[pos] = left;
      out.push_back(cur);
      return;
    }
    for (int v = left; v >= 0; --v) {
      cur[pos] = v;
      rec(pos + 1, left - v);
    }
  };
  if (d >= 1 && k >= 0) rec(0, k);
  std::sort(out.begin(), out.end());
  return out;
}

std::string to_string(const MultiIndex& a) {
  std::ostringstream s;
  for (std::size_t i = 0; i < a.size(); ++i) s << (i ? "," : "") << a[i];
  return s.str();
}

std::vector<double> hermite_table(int nmax, const std::vector<double>& y) {
  if (nmax < 0) throw ParameterError("Hermite order must be nonnegative");
  const std::size_t m = y.size();
  std::vector<double> t(static_cast<std::size_t>(nmax + 1) * m);
  const double c0 = std::pow(pi, -0.25);
  for (std::size_t i = 0; i < m; ++i) t[i] = c0 * std::exp(-0.5 * y[i] * y[i]);
  if (nmax >= 1)
    for (std::size_t i = 0; i < m; ++i) t[m + i] = std::sqrt(2.0) * y[i] * t[i];
  for (int n = 1; n < nmax; ++n) {
    const double a = std::sqrt(2.0 / (n + 1)), b = std::sqrt(double(n) / (n + 1));
    const double* h0 = &t[(n - 1) * m];
    const double* h1 = &t[n * m];
    double* h2 = &t[(n + 1) * m];
    for (std::size_t i = 0; i < m; ++i) h2[i] = a * y[i] * h1[i] - b * h0[i];
  }
  return t;
}

double hermite_value(int n, double y) { return hermite_table(n, {y})[n]; }

namespace {
void check_turning_point(int n, const GridSpec& g) {
  if (std::sqrt(2.0 * n + 1.0) > g.half_width)
    throw BandLimitError("Hermite order " + std::to_string(n) + " has its turning point outside " +
                         g.describe());
}

// Returns h_0..h_nmax sampled on the axis of g.
std::vector<double> axis_table(int nmax, const GridSpec& g) {
  check_turning_point(nmax, g);
  return hermite_table(nmax, g.axis());
}
}  // namespace

Field hermite_function(int n, const GridSpec& grid) {
  if (grid.dim != 1) throw GridError("hermite_function needs a 1-d grid");
  auto t = axis_table(n, grid);
  Field f(grid, "h_" + std::to_string(n));
  for (int i = 0; i < grid.points; ++i) f[i] = t[static_cast<std::size_t>(n) * grid.points + i];
  return f;
}

Field hermite_nd(const MultiIndex& alpha, const GridSpec& grid) {
  if (static_cast<int>(alpha.size()) != grid.dim)
    throw ParameterError("multi-index length does not match grid dimension");
  for (int a : alpha)
    if (a < 0) throw ParameterError("multi-index entries must be nonnegative");
  const int nmax = *std::max_element(alpha.begin(), alpha.end());
  auto t = axis_table(nmax, grid);
  const std::size_t N = grid.points;
  Field f(grid, "Phi_" + to_string(alpha));
  int idx[4];
  for (std::size_t k = 0; k < f.size(); ++k) {
    unflatten(grid, k, idx);
    double v = 1;
    for (int a = 0; a < grid.dim; ++a) v *= t[alpha[a] * N + idx[a]];
    f[k] = v;
  }
  return f;
}

double laguerre_polynomial(int n, double delta, double y) {
  if (n < 0) throw ParameterError("Laguerre degree must be nonnegative");
  if (!(delta > -1)) throw ParameterError("Laguerre type must exceed -1");
  if (y < 0) throw ParameterError("Laguerre argument must be nonnegative");
  double l0 = 1, l1 = 1 + delta - y;
  if (n == 0) return l0;
  for (int k = 1; k < n; ++k) {
    double l2 = ((2 * k + 1 + delta - y) * l1 - (k + delta) * l0) / (k + 1);
    l0 = l1;
    l1 = l2;
  }
  return l1;
}

namespace {

// 1-d Phi_{a,b} on the N x N grid (z1 = row, z2 = column).
std::vector<cplx> special_hermite_1d(int a, int b, const GridSpec& g1) {
  const int N = g1.points, c = g1.center();
  const double h = g1.spacing();
  const double Mreal = 2 * pi / (h * h);
  const int M = static_cast<int>(std::lround(Mreal));
  if (M < 2 || std::abs(M - Mreal) > 1e-9 * Mreal)
    throw GridError("special Hermite generation needs 2pi/h^2 to be an integer, got " +
                    std::to_string(Mreal) + " on " + g1.describe());
  auto t = axis_table(std::max(a, b), g1);
  const double* ha = &t[static_cast<std::size_t>(a) * N];
  const double* hb = &t[static_cast<std::size_t>(b) * N];
  std::vector<cplx> out(static_cast<std::size_t>(N) * N);
  const double scale = h / std::sqrt(2 * pi);
  parallel_for(N, [&](std::size_t pcol) {
    const int p = static_cast<int>(pcol), s = p - c;  // x = s h
    std::vector<cplx> buf(M, 0.0);
    for (int j = 0; j < N; ++j) {
      int jj = j - s;
      if (jj < 0 || jj >= N) continue;
      int y = j - c;
      buf[((y % M) + M) % M] += ha[j] * hb[jj];
    }
    fft::dft(buf.data(), M, -1);
    const double x = s * h;
    for (int i1 = 0; i1 < N; ++i1) {
      int k = -(i1 - c);  // xi = -z1 = k h
      double xi = k * h;
      out[static_cast<std::size_t>(i1) * N + p] =
          std::polar(scale, x * xi / 2) * buf[((k % M) + M) % M];
    }
  });
  return out;
}

}  // namespace

Field special_hermite(const MultiIndex& alpha, const MultiIndex& beta, const GridSpec& grid) {
  if (grid.dim % 2) throw GridError("special Hermite functions need an even-dimensional grid");
  const int d = grid.dim / 2;
  if (static_cast<int>(alpha.size()) != d || static_cast<int>(beta.size()) != d)
    throw ParameterError("multi-index length must equal half the grid dimension");
  for (int j = 0; j < d; ++j)
    if (alpha[j] < 0 || beta[j] < 0) throw ParameterError("multi-index entries must be nonnegative");
  const GridSpec g1 = grid.with_dim(1);
  const std::size_t N = grid.points;
  Field f(grid, "Phi_" + to_string(alpha) + ";" + to_string(beta));
  if (d == 1) {
    f.values = special_hermite_1d(alpha[0], beta[0], g1);
    return f;
  }
  // Axes are (x_1..x_d, y_1..y_d); the pair (x_j, y_j) carries the 1-d factor.
  std::vector<std::vector<cplx>> fac(d);
  for (int j = 0; j < d; ++j) fac[j] = special_hermite_1d(alpha[j], beta[j], g1);
  int idx[4];
  for (std::size_t k = 0; k < f.size(); ++k) {
    unflatten(grid, k, idx);
    cplx v = 1;
    for (int j = 0; j < d; ++j) v *= fac[j][idx[j] * N + idx[j + d]];
    f[k] = v;
  }
  return f;
}

Field special_hermite_diagonal(const MultiIndex& beta, const GridSpec& grid) {
  if (grid.dim % 2) throw GridError("special Hermite functions need an even-dimensional grid");
  const int d = grid.dim / 2;
  if (static_cast<int>(beta.size()) != d) throw ParameterError("multi-index length mismatch");
  const double c = std::pow(2 * pi, -0.5 * d);
  return Field::sample(
      grid,
      [&](const double* z) {
        double v = c;
        for (int j = 0; j < d; ++j) {
          double r2 = z[j] * z[j] + z[j + d] * z[j + d];
          v *= laguerre_polynomial(beta[j], 0, r2 / 2) * std::exp(-r2 / 4);
        }
        return cplx(v);
      },
      "Phi_diag_" + to_string(beta));
}

Field laguerre_kernel(int k, const GridSpec& grid) {
  if (grid.dim % 2) throw GridError("Laguerre kernels need an even-dimensional grid");
  if (k < 0) throw ParameterError("Laguerre kernel order must be nonnegative");
  const int d = grid.dim / 2;
  return Field::sample(
      grid,
      [&](const double* z) {
        double r2 = 0;
        for (int a = 0; a < grid.dim; ++a) r2 += z[a] * z[a];
        return cplx(laguerre_polynomial(k, d - 1, r2 / 2) * std::exp(-r2 / 4));
      },
      "phi_" + std::to_string(k));
}

Field gaussian_dilated(double lambda, const GridSpec& grid) {
  if (!(lambda > 0)) throw ParameterError("Gaussian dilation must be positive");
  return Field::sample(
      grid,
      [&](const double* z) {
        double r2 = 0;
        for (int a = 0; a < grid.dim; ++a) r2 += z[a] * z[a];
        return cplx(std::exp(-lambda * r2));
      },
      "g_" + std::to_string(lambda));
}

std::size_t BasisCatalog::memory_budget_bytes = std::size_t(1) << 30;

BasisCatalog::BasisCatalog(int d, int k_max, const GridSpec& grid)
    : d_(d), k_max_(k_max), grid_(grid) {
  if (d < 1 || d > 2) throw ParameterError("catalog dimension must be 1 or 2");
  if (grid.dim != 2 * d) throw GridError("catalog grid must have dimension 2d");
  if (k_max < 0) throw ParameterError("catalog order must be nonnegative");
  auto idx = indices();
  std::size_t bytes = idx.size() * idx.size() * grid.size() * sizeof(cplx);
  if (bytes > memory_budget_bytes)
    throw ParameterError("basis catalog needs " + std::to_string(bytes >> 20) +
                         " MiB, above the configured budget");
  const GridSpec base = base_grid();
  for (const auto& a : idx) hermite_.emplace(a, hermite_nd(a, base));
  std::vector<std::pair<MultiIndex, MultiIndex>> pairs;
  for (const auto& a : idx)
    for (const auto& b : idx) pairs.emplace_back(a, b);
  std::vector<Field> built(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t i) {
    built[i] = special_hermite(pairs[i].first, pairs[i].second, grid);
  });
  for (std::size_t i = 0; i < pairs.size(); ++i) special_.emplace(pairs[i], std::move(built[i]));
  for (int k = 0; k <= k_max; ++k) laguerre_.push_back(laguerre_kernel(k, grid));
}

std::vector<MultiIndex> BasisCatalog::indices() const {
  std::vector<MultiIndex> out;
  for (int k = 0; k <= k_max_; ++k)
    for (auto& a : multi_indices(d_, k)) out.push_back(a);
  return out;
}

const Field& BasisCatalog::hermite(const MultiIndex& a) const {
  auto it = hermite_.find(a);
  if (it == hermite_.end()) throw ParameterError("index " + to_string(a) + " beyond catalog");
  return it->second;
}

const Field& BasisCatalog::special(const MultiIndex& a, const MultiIndex& b) const {
  auto it = special_.find({a, b});
  if (it == special_.end())
    throw ParameterError("index " + to_string(a) + ";" + to_string(b) + " beyond catalog");
  return it->second;
}

const Field& BasisCatalog::laguerre(int k) const {
  if (k < 0 || k > k_max_) throw ParameterError("Laguerre kernel order beyond catalog");
  return laguerre_[k];
}

std::vector<M1Row> m1_norm_growth_table(int k_min, int k_max, int d, int points) {
  if (d != 1) throw ParameterError("M^1 growth table is implemented for d = 1");
  if (k_min < 0 || k_max < k_min) throw ParameterError("invalid order range");
  const GridSpec g1 = GridSpec::landau(1, points);
  const GridSpec g2 = GridSpec::landau(2, points);
  MixedNormSpec one{1, 1, 0, Flavor::modulation, false};
  const Field h0 = hermite_function(0, g1);
  std::vector<M1Row> rows;
  for (int k = k_min; k <= k_max; ++k) {
    Field hk = hermite_function(k, g1);
    Field diag = special_hermite_diagonal({k}, g2);
    double l1 = quadrature_lp_norm(diag, 1.0);
    rows.push_back({k, gabor_mixed_norm(hk, hk, one), gabor_mixed_norm(hk, h0, one), l1,
                    std::sqrt(2 * pi) * l1});
  }
  return rows;
}

}  // namespace twistlab
