#include "twistlab/spectral_ops.hpp"

#include <algorithm>
#include <cmath>

#include "twistlab/fft.hpp"
#include "twistlab/quadrature.hpp"

namespace twistlab {

// ---------------------------------------------------------------- operators

namespace {

void check_wrap(const Field& f) {
  double r = boundary_ratio(f);
  if (r > wrap_tolerance)
    throw BandLimitError("spectral differentiation would wrap: boundary ratio " +
                         std::to_string(r) + " on " + f.grid.describe());
}

// Multiplies the Fourier samples by i xi_axis and transforms back.
Field derivative_from(const Field& F, int axis) {
  const auto& G = F.grid;
  Field D = F;
  int idx[4];
  for (std::size_t k = 0; k < D.size(); ++k) {
    unflatten(G, k, idx);
    // The Nyquist sample has no odd-symmetric partner; drop it.
    D.values[k] *= idx[axis] == 0 ? cplx(0) : I * G.coord(idx[axis]);
  }
  return inverse_fourier(D);
}

Field laplacian_from(const Field& F) {
  const auto& G = F.grid;
  Field D = F;
  int idx[4];
  for (std::size_t k = 0; k < D.size(); ++k) {
    unflatten(G, k, idx);
    double r2 = 0;
    for (int a = 0; a < G.dim; ++a) r2 += G.coord(idx[a]) * G.coord(idx[a]);
    D.values[k] *= -r2;
  }
  return inverse_fourier(D);
}

Field with_grid(Field f, const GridSpec& g) {
  f.grid = g;
  return f;
}

}  // namespace

Field spectral_derivative(const Field& f, int axis) {
  if (axis < 0 || axis >= f.grid.dim) throw ParameterError("axis out of range");
  check_wrap(f);
  return with_grid(derivative_from(fourier(f), axis), f.grid);
}

Field apply_hermite_operator(const Field& f, double w) {
  check_wrap(f);
  const auto& G = f.grid;
  Field out = with_grid(laplacian_from(fourier(f)), G);
  out *= -1.0;
  int idx[4];
  for (std::size_t k = 0; k < f.size(); ++k) {
    unflatten(G, k, idx);
    double r2 = 0;
    for (int a = 0; a < G.dim; ++a) r2 += G.coord(idx[a]) * G.coord(idx[a]);
    out.values[k] += w * r2 * f.values[k];
  }
  out.label = "H f";
  return out;
}

Field apply_twisted_laplacian(const Field& f) {
  const auto& G = f.grid;
  if (G.dim % 2) throw ParameterError("the twisted Laplacian acts on even-dimensional fields");
  check_wrap(f);
  const int d = G.dim / 2;
  Field F = fourier(f);
  Field out = with_grid(laplacian_from(F), G);
  out *= -1.0;
  std::vector<Field> grad;
  for (int a = 0; a < G.dim; ++a) grad.push_back(with_grid(derivative_from(F, a), G));
  int idx[4];
  for (std::size_t k = 0; k < f.size(); ++k) {
    unflatten(G, k, idx);
    double r2 = 0;
    cplx rot = 0;
    for (int j = 0; j < d; ++j) {
      double x = G.coord(idx[j]), y = G.coord(idx[j + d]);
      r2 += x * x + y * y;
      rot += x * grad[j + d].values[k] - y * grad[j].values[k];
    }
    out.values[k] += 0.25 * r2 * f.values[k] - I * rot;
  }
  out.label = "L f";
  return out;
}

Field ladder_raise(const Field& f, int axis) {
  Field out = spectral_derivative(f, axis);
  out *= -1.0;
  int idx[4];
  for (std::size_t k = 0; k < f.size(); ++k) {
    unflatten(f.grid, k, idx);
    out.values[k] += f.grid.coord(idx[axis]) * f.values[k];
  }
  return out;
}

Field ladder_lower(const Field& f, int axis) {
  Field out = spectral_derivative(f, axis);
  int idx[4];
  for (std::size_t k = 0; k < f.size(); ++k) {
    unflatten(f.grid, k, idx);
    out.values[k] += f.grid.coord(idx[axis]) * f.values[k];
  }
  return out;
}

// --------------------------------------------------------------- multipliers

MultiplierSpec MultiplierSpec::from_function(const std::function<cplx(double)>& m, int d, int K,
                                             std::string description) {
  if (K < 0) throw ParameterError("truncation order must be nonnegative");
  MultiplierSpec s;
  s.description = std::move(description);
  for (int k = 0; k <= K; ++k) {
    cplx v = m(d + 2.0 * k);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw ParameterError("multiplier is not finite at eigenvalue " + std::to_string(d + 2 * k));
    s.values.push_back(v);
  }
  return s;
}

namespace {
void require_self_dual_2d(const GridSpec& g, const char* what) {
  if (g.dim != 2) throw ParameterError(std::string(what) + " is implemented for d = 1 (fields on R^2)");
  if (!g.dual().matches(g))
    throw GridError(std::string(what) + " needs a self-dual grid (h^2 = 2pi/N), got " + g.describe());
}
}  // namespace

// Unresolved levels alias onto resolved ones and the sampled basis stops being
// orthogonal, so the Hermite factors need a margin of 5 past the turning point.
int LandauExpansion::max_resolved(const GridSpec& grid) {
  double r = grid.half_width - 5;
  return r < 1 ? 0 : static_cast<int>(std::floor((r * r - 1) / 2));
}

LandauExpansion::LandauExpansion(const GridSpec& grid, int K) : grid_(grid), K_(K) {
  require_self_dual_2d(grid, "special Hermite expansion");
  if (K < 0) throw ParameterError("truncation order must be nonnegative");
  if (K > max_resolved(grid))
    throw BandLimitError("truncation order " + std::to_string(K) + " exceeds the " +
                         std::to_string(max_resolved(grid)) + " levels resolved on " + grid.describe());
  const int N = grid.points;
  offset_ = 3 * (N / 2);
  std::vector<double> y(3 * N);
  for (int m = 0; m < 3 * N; ++m) y[m] = (m - offset_) * grid.spacing() / 2;
  table_ = hermite_table(K, y);
}

SpectralCoeffs LandauExpansion::analyze(const Field& f) const {
  require_same_grid(f, Field(grid_), "special Hermite analysis");
  const int N = grid_.points, c = N / 2, K1 = K_ + 1, W = 3 * N;
  std::vector<cplx> G = f.values;
  detail::centered_dft_axis(G.data(), 2, N, 0, -1, 1.0);
  const int chunks = std::min(N, 16);
  std::vector<Eigen::MatrixXd> re(chunks, Eigen::MatrixXd::Zero(K1, K1)), im = re;
  parallel_for(chunks, [&](std::size_t ch) {
    Eigen::MatrixXd U(N, K1), Vr(N, K1), Vi(N, K1);
    for (int j = N * ch / chunks; j < static_cast<int>(N * (ch + 1) / chunks); ++j) {
      const int J = j - c;
      for (int i = 0; i < N; ++i) {
        const int Y = i - c;
        const int ms = 2 * Y + J + offset_, mr = 2 * Y - J + offset_;
        const cplx g = G[static_cast<std::size_t>(i) * N + j];
        for (int a = 0; a < K1; ++a) {
          U(i, a) = table_[static_cast<std::size_t>(a) * W + ms];
          double v = table_[static_cast<std::size_t>(a) * W + mr];
          Vr(i, a) = g.real() * v;
          Vi(i, a) = g.imag() * v;
        }
      }
      re[ch].noalias() += U.transpose() * Vr;
      im[ch].noalias() += U.transpose() * Vi;
    }
  });
  const double h = grid_.spacing();
  const double scale = h * h * h / std::sqrt(2 * pi);
  SpectralCoeffs out{K_, Eigen::MatrixXcd::Zero(K1, K1)};
  for (int ch = 0; ch < chunks; ++ch) {
    out.c.real() += re[ch];
    out.c.imag() += im[ch];
  }
  out.c *= scale;
  return out;
}

Field LandauExpansion::synthesize(const SpectralCoeffs& coeffs) const {
  if (coeffs.K != K_) throw ParameterError("coefficient truncation does not match expansion");
  const int N = grid_.points, c = N / 2, K1 = K_ + 1, W = 3 * N;
  Field out(grid_, "synthesis");
  const Eigen::MatrixXd Cr = coeffs.c.real(), Ci = coeffs.c.imag();
  parallel_for(N, [&](std::size_t ju) {
    const int j = static_cast<int>(ju), J = j - c;
    Eigen::MatrixXd U(N, K1), V(N, K1);
    for (int i = 0; i < N; ++i) {
      const int Y = i - c;
      const int ms = 2 * Y + J + offset_, mr = 2 * Y - J + offset_;
      for (int a = 0; a < K1; ++a) {
        U(i, a) = table_[static_cast<std::size_t>(a) * W + ms];
        V(i, a) = table_[static_cast<std::size_t>(a) * W + mr];
      }
    }
    Eigen::MatrixXd Pr = U * Cr, Pi = U * Ci;
    for (int i = 0; i < N; ++i)
      out.values[static_cast<std::size_t>(i) * N + j] =
          cplx(Pr.row(i).dot(V.row(i)), Pi.row(i).dot(V.row(i)));
  });
  const double h = grid_.spacing();
  detail::centered_dft_axis(out.values.data(), 2, N, 0, +1, h / std::sqrt(2 * pi));
  return out;
}

HermiteExpansion::HermiteExpansion(const GridSpec& grid, int K) : grid_(grid), K_(K) {
  if (grid.dim < 1 || grid.dim > 2) throw ParameterError("Hermite expansion supports d = 1, 2");
  if (K < 0) throw ParameterError("truncation order must be nonnegative");
  if (std::sqrt(2.0 * K + 1) > grid.half_width)
    throw BandLimitError("truncation order " + std::to_string(K) + " exceeds " + grid.describe());
  auto t = hermite_table(K, grid.axis());
  H_ = Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      t.data(), K + 1, grid.points);
}

std::vector<cplx> HermiteExpansion::analyze(const Field& f) const {
  require_same_grid(f, Field(grid_), "Hermite analysis");
  const int N = grid_.points, K1 = K_ + 1;
  const double h = grid_.spacing();
  using RM = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  if (grid_.dim == 1) {
    Eigen::Map<const Eigen::VectorXcd> v(f.values.data(), N);
    Eigen::VectorXcd c = h * (H_.cast<cplx>() * v);
    return {c.data(), c.data() + K1};
  }
  Eigen::Map<const RM> F(f.values.data(), N, N);
  RM C = h * h * (H_.cast<cplx>() * F * H_.transpose().cast<cplx>());
  return {C.data(), C.data() + static_cast<std::size_t>(K1) * K1};
}

Field HermiteExpansion::synthesize(const std::vector<cplx>& c) const {
  const int N = grid_.points, K1 = K_ + 1;
  using RM = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Field out(grid_, "synthesis");
  if (grid_.dim == 1) {
    Eigen::Map<const Eigen::VectorXcd> v(c.data(), K1);
    Eigen::VectorXcd f = H_.transpose().cast<cplx>() * v;
    std::copy(f.data(), f.data() + N, out.values.begin());
    return out;
  }
  RM C = Eigen::Map<const RM>(c.data(), K1, K1);
  for (int a = 0; a < K1; ++a)
    for (int b = 0; b < K1; ++b)
      if (a + b > K_) C(a, b) = 0;
  RM F = H_.transpose().cast<cplx>() * C * H_.cast<cplx>();
  std::copy(F.data(), F.data() + static_cast<std::size_t>(N) * N, out.values.begin());
  return out;
}

namespace {

MultiplierResult finish(Field out, const Field& f, const Field& projected, cplx last, double tol) {
  MultiplierResult r;
  r.field = std::move(out);
  r.field.grid = f.grid;
  r.truncation_residual = distance(f, with_grid(projected, f.grid));
  r.tail_bound = std::abs(last) * r.truncation_residual;
  if (tol >= 0 && r.truncation_residual > tol)
    throw TruncationError("truncation residual " + std::to_string(r.truncation_residual) +
                          " above tolerance " + std::to_string(tol));
  return r;
}

}  // namespace

MultiplierResult multiplier_apply(const Field& f, const MultiplierSpec& m, Which which,
                                  double tol) {
  int K = m.K();
  if (K < 0) throw ParameterError("empty multiplier");
  if (which == Which::landau) {
    K = std::min(K, LandauExpansion::max_resolved(f.grid));
    LandauExpansion E(f.grid, K);
    SpectralCoeffs c = E.analyze(f);
    Field projected = E.synthesize(c);
    for (int b = 0; b <= K; ++b) c.c.col(b) *= m(b);
    return finish(E.synthesize(c), f, projected, m(K), tol);
  }
  HermiteExpansion E(f.grid, K);
  auto c = E.analyze(f);
  std::vector<cplx> kept(c.size(), 0.0), scaled(c.size(), 0.0);
  const int K1 = K + 1;
  for (std::size_t i = 0; i < c.size(); ++i) {
    int ord = f.grid.dim == 1 ? static_cast<int>(i) : static_cast<int>(i / K1 + i % K1);
    if (ord > K) continue;
    kept[i] = c[i];
    scaled[i] = m(ord) * c[i];
  }
  return finish(E.synthesize(scaled), f, E.synthesize(kept), m(K), tol);
}

Field project_hermite(const Field& f, int k) {
  if (k < 0) throw ParameterError("projection order must be nonnegative");
  Field out(f.grid, "P_" + std::to_string(k) + " f");
  for (const auto& a : multi_indices(f.grid.dim, k)) {
    Field phi = hermite_nd(a, f.grid);
    cplx c = inner(f, phi);
    for (std::size_t i = 0; i < out.size(); ++i) out.values[i] += c * phi.values[i];
  }
  return out;
}

Field project_landau(const Field& f, int k, ProjectionRoute route, int K) {
  if (k < 0) throw ParameterError("projection order must be nonnegative");
  if (route == ProjectionRoute::twisted) {
    if (f.grid.dim != 2) throw ParameterError("twisted projection route is implemented for d = 1");
    Field q = twisted_convolution(f, laguerre_kernel(k, f.grid), Twist::landau);
    q *= std::sqrt(2 * pi) / (8 * pi);
    q.label = "Q_" + std::to_string(k) + " f";
    return q;
  }
  K = std::min(K, LandauExpansion::max_resolved(f.grid));
  if (k > K) throw ParameterError("projection order beyond truncation");
  LandauExpansion E(f.grid, K);
  SpectralCoeffs c = E.analyze(f);
  for (int b = 0; b <= K; ++b)
    if (b != k) c.c.col(b).setZero();
  Field out = E.synthesize(c);
  out.label = "Q_" + std::to_string(k) + " f";
  return out;
}

// ------------------------------------------------------------ intertwiner

Field metaplectic_AJ(const Field& f, bool adjoint) {
  const auto& G = f.grid;
  require_self_dual_2d(G, "metaplectic_AJ");
  const int N = G.points, c = N / 2;
  const double scale = G.spacing() / std::sqrt(2 * pi);
  Field out(G, adjoint ? "A_J* f" : "A_J f");
  auto idx = [&](int s, int r) { return static_cast<std::size_t>(s + c) * N + (r + c); };
  // For fixed y = J h the samples f(u + y/2, u - y/2), u = (2Q + (J mod 2)) h / 2,
  // sit on lattice points; the u-integral is a length-N DFT in Q.
  parallel_for(N, [&](std::size_t ju) {
    const int J = static_cast<int>(ju) - c, odd = J & 1;
    std::vector<cplx> buf(N);
    if (!adjoint) {
      for (int Q = -c; Q < c; ++Q) {
        const int P = 2 * Q + odd, s = (P + J) / 2, r = (P - J) / 2;
        bool in = s >= -c && s < c && r >= -c && r < c;
        buf[(Q + N) % N] = in ? f.values[idx(s, r)] : cplx(0);
      }
      fft::dft(buf.data(), N, +1);
      for (int X = -c; X < c; ++X)
        out.values[idx(X, J)] = scale * std::polar(1.0, odd * pi * X / N) * buf[(X + N) % N];
    } else {
      for (int X = -c; X < c; ++X)
        buf[(X + N) % N] = std::polar(1.0, -odd * pi * X / N) * f.values[idx(X, J)];
      fft::dft(buf.data(), N, -1);
      for (int Q = -c; Q < c; ++Q) {
        const int P = 2 * Q + odd, s = (P + J) / 2, r = (P - J) / 2;
        if (s >= -c && s < c && r >= -c && r < c) out.values[idx(s, r)] = scale * buf[(Q + N) % N];
      }
    }
  });
  return out;
}

MultiplierResult transferred_multiplier(const Field& f, const MultiplierSpec& m) {
  const int K = std::min(m.K(), LandauExpansion::max_resolved(f.grid));
  if (K < 0) throw ParameterError("empty multiplier");
  Field g = metaplectic_AJ(f, true);
  const int N = g.grid.points;
  const double h = g.grid.spacing();
  auto t = hermite_table(K, g.grid.axis());
  using RM = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::MatrixXcd H = Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                                Eigen::RowMajor>>(t.data(), K + 1, N)
                           .cast<cplx>();
  Eigen::Map<const RM> Gm(g.values.data(), N, N);
  RM B = h * Gm * H.transpose();  // b_k(s) = <g(s, .), h_k>
  Field projected(g.grid), scaled(g.grid);
  Eigen::Map<RM>(projected.values.data(), N, N) = B * H;
  for (int k = 0; k <= K; ++k) B.col(k) *= m(k);
  Eigen::Map<RM>(scaled.values.data(), N, N) = B * H;
  MultiplierResult r;
  r.field = metaplectic_AJ(scaled, false);
  r.truncation_residual = distance(g, projected);
  r.tail_bound = std::abs(m(K)) * r.truncation_residual;
  return r;
}

// ------------------------------------------------------------------- flows

Field heat_kernel(double t, const GridSpec& grid) {
  if (!(t > 0)) throw ParameterError("heat kernel needs t > 0");
  if (grid.dim % 2) throw GridError("heat kernel lives on an even-dimensional grid");
  const int d = grid.dim / 2;
  const double amp = std::pow(16 * pi * std::sinh(t), -d), a = 0.25 / std::tanh(t);
  return Field::sample(
      grid,
      [&](const double* z) {
        double r2 = 0;
        for (int k = 0; k < grid.dim; ++k) r2 += z[k] * z[k];
        return cplx(amp * std::exp(-a * r2));
      },
      "p_t");
}

Symbol heat_weyl_symbol(double t) { return Symbol::heat_theta(t); }

namespace {
MultiplierSpec spec_of(const std::function<cplx(double)>& m, int K, const char* what) {
  return MultiplierSpec::from_function(m, 1, K, what);
}
}  // namespace

Field heat_flow(const Field& f, double t, Route route, int K) {
  if (!(t > 0)) throw ParameterError("heat flow needs t > 0");
  auto m = [t](double x) { return cplx(std::exp(-t * x)); };
  switch (route) {
    case Route::spectral:
      return multiplier_apply(f, spec_of(m, K, "heat"), Which::landau).field;
    case Route::transferred:
      return transferred_multiplier(f, spec_of(m, K, "heat")).field;
    case Route::kernel: {
      if (t < 1e-6) throw BandLimitError("heat kernel unresolved for t < 1e-6");
      if (f.grid.dim != 2) throw ParameterError("kernel route is implemented for d = 1");
      Field out = twisted_convolution(f, heat_kernel(t, f.grid), Twist::landau);
      out *= std::sqrt(2 * pi);
      return out;
    }
    case Route::weyl_symbol:
      return weyl_apply(heat_weyl_symbol(t), f);
    default:
      throw ParameterError("unsupported heat route");
  }
}

Field fractional_heat_flow(const Field& f, double t, double nu, Route route, int K) {
  if (!(nu > 0 && nu <= 1)) throw ParameterError("fractional order must lie in (0, 1]");
  if (!(t > 0)) throw ParameterError("fractional heat flow needs t > 0");
  auto exact = [t, nu](double x) { return cplx(std::exp(-t * std::pow(x, nu))); };
  switch (route) {
    case Route::spectral:
      return multiplier_apply(f, spec_of(exact, K, "fractional heat"), Which::landau).field;
    case Route::transferred:
      return transferred_multiplier(f, spec_of(exact, K, "fractional heat")).field;
    case Route::subordination: {
      if (std::abs(nu - 0.5) > 1e-15)
        throw ParameterError("subordination route is implemented for nu = 1/2");
      QuadratureRule rule = subordination_rule(t, 1.0);
      auto m = [&](double x) {
        return cplx(rule.integrate(std::function<double(double)>([x](double s) { return std::exp(-s * x); })));
      };
      return transferred_multiplier(f, spec_of(m, K, "subordinated heat")).field;
    }
    default:
      throw ParameterError("unsupported fractional heat route");
  }
}

Field negative_power(const Field& f, double nu, Route route, int K) {
  if (!(nu > 0)) throw ParameterError("negative power needs nu > 0");
  if (route == Route::spectral)
    return multiplier_apply(f, spec_of([nu](double x) { return cplx(std::pow(x, -nu)); }, K,
                                       "negative power"),
                            Which::landau)
        .field;
  if (route == Route::gamma_integral)
    return transferred_multiplier(
               f, spec_of([nu](double x) { return cplx(gamma_integral(x, nu)); }, K,
                          "negative power (gamma integral)"))
        .field;
  throw ParameterError("unsupported negative power route");
}

Field bessel_potential(const Field& f, double nu, Route route, int K) {
  if (!(nu > 0)) throw ParameterError("Bessel potential needs nu > 0");
  if (route == Route::spectral)
    return multiplier_apply(
               f, spec_of([nu](double x) { return cplx(std::pow(1 + x, -nu)); }, K, "Bessel"),
               Which::landau)
        .field;
  if (route == Route::gamma_integral)
    return transferred_multiplier(
               f, spec_of([nu](double x) { return cplx(bessel_integral(x, nu)); }, K,
                          "Bessel (gamma integral)"))
        .field;
  throw ParameterError("unsupported Bessel potential route");
}

Field riesz_mean(const Field& f, double u, double v, int K) {
  if (!(u > 0) || !(v > 0)) throw ParameterError("Riesz means need u > 0 and v > 0");
  return multiplier_apply(
             f, spec_of([u, v](double x) { return riesz_integral(x, u, v); }, K, "Riesz mean"),
             Which::landau)
      .field;
}

SchrodingerResult schrodinger_flow(const Field& f, double t, Route route, int K) {
  auto m = [t](double x) { return std::polar(1.0, -t * x); };
  Field spectral = multiplier_apply(f, spec_of(m, K, "Schrodinger"), Which::landau).field;
  if (route == Route::spectral) return {spectral, 1.0, INFINITY};
  if (route != Route::kernel) throw ParameterError("unsupported Schrodinger route");
  if (std::abs(std::sin(t)) < 1e-4)
    throw SingularTimeError("Schrodinger kernel is singular at t = " + std::to_string(t) +
                            " (t in pi Z)");
  const auto& G = f.grid;
  const double cot = std::cos(t) / std::sin(t);
  if (std::abs(cot) * G.half_width * G.spacing() / 2 > pi)
    throw BandLimitError("Schrodinger kernel chirp is not resolved on " + G.describe());
  const double amp = 1.0 / (16 * pi * std::sin(t));
  Field q = Field::sample(G, [&](const double* z) {
    return amp * std::polar(1.0, 0.25 * cot * (z[0] * z[0] + z[1] * z[1]));
  });
  Field raw = twisted_convolution(f, q, Twist::landau);
  raw *= std::sqrt(2 * pi);
  // The integrand in w near z oscillates at about |z|(1 + |cot t|)/2 plus the
  // band B of f; it is resolved while that stays below pi/h.
  Field F = fourier(f);
  const double fmax = max_abs(F);
  double band = 0;
  int idx[2];
  for (std::size_t i = 0; i < F.size(); ++i)
    if (std::abs(F.values[i]) > 1e-13 * fmax) {
      unflatten(F.grid, i, idx);
      band = std::max(band, std::hypot(F.grid.coord(idx[0]), F.grid.coord(idx[1])));
    }
  const double radius = std::max(0.0, 2 * (pi / G.spacing() - band) / (1 + std::abs(cot)));
  std::size_t k = 0;
  double best = -1;
  for (std::size_t i = 0; i < spectral.size(); ++i) {
    unflatten(G, i, idx);
    if (std::hypot(G.coord(idx[0]), G.coord(idx[1])) > radius) continue;
    if (std::abs(spectral.values[i]) > best) best = std::abs(spectral.values[i]), k = i;
  }
  if (best <= 0) throw BandLimitError("Schrodinger kernel route has no resolved samples on " + G.describe());
  cplx c = spectral.values[k] / raw.values[k];
  c /= std::abs(c);
  raw *= c;
  return {raw, c, radius};
}

Field oscillating_multiplier(const Field& f, double t, double gamma, double delta, Which which,
                             int K) {
  if (!(gamma > 0 && gamma <= 2)) throw ParameterError("oscillation exponent must lie in (0, 2]");
  if (!(delta >= 0)) throw ParameterError("decay exponent must be nonnegative");
  const int d = which == Which::landau ? f.grid.dim / 2 : f.grid.dim;
  auto m = [=](double x) { return std::pow(x, -delta / 2) * std::polar(1.0, t * std::pow(x, gamma / 2)); };
  return multiplier_apply(f, MultiplierSpec::from_function(m, d, K, "oscillating"), which).field;
}

Field wave_flow(const Field& f, const Field& g, double t, int K) {
  require_same_grid(f, g, "wave flow");
  K = std::min(K, LandauExpansion::max_resolved(f.grid));
  LandauExpansion E(f.grid, K);
  SpectralCoeffs a = E.analyze(f), b = E.analyze(g);
  for (int k = 0; k <= K; ++k) {
    double w = std::sqrt(1.0 + 2 * k);
    a.c.col(k) = a.c.col(k) * std::cos(t * w) + b.c.col(k) * (std::sin(t * w) / w);
  }
  Field out = E.synthesize(a);
  out.label = "wave";
  return out;
}

double heat_of_gaussian_at_origin(double s, double mu) {
  // e^{-sL} f = (2pi)^{1/2} f x p_s and sigma(0, w) = 0, so the value is 4 int f p_s.
  return mu / (4 * pi * std::sinh(s) * (mu + 0.25 / std::tanh(s)));
}

double fractional_heat_witness_ratio(double t, double mu) {
  QuadratureRule rule = subordination_rule(t, 1.0);
  return rule.integrate(
      std::function<double(double)>([mu](double s) { return heat_of_gaussian_at_origin(s, mu); }));
}

// ------------------------------------------------------------ Landau matrix

Eigen::MatrixXd landau_hamiltonian_matrix(int d) {
  if (d < 1) throw ParameterError("dimension must be positive");
  Eigen::MatrixXd J = SymplecticForm(d).matrix();
  const int n = 2 * d;
  Eigen::MatrixXd L(2 * n, 2 * n);
  L << -J / 2, Eigen::MatrixXd::Identity(n, n), -Eigen::MatrixXd::Identity(n, n) / 4, -J / 2;
  return L;
}

LandauMatrix landau_symplectic_matrix(double t, int d) {
  Eigen::MatrixXd L = landau_hamiltonian_matrix(d);
  const int n = static_cast<int>(L.rows());
  LandauMatrix out;
  out.L = Eigen::MatrixXd::Identity(n, n) - std::sin(2 * t) * L + (1 - std::cos(2 * t)) * L * L;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(out.L);
  auto s = svd.singularValues();
  out.singular_values.assign(s.data(), s.data() + s.size());
  std::sort(out.singular_values.rbegin(), out.singular_values.rend());
  out.ell_plus = out.singular_values.front();
  out.ell_minus = out.singular_values.back();
  return out;
}

Field riesz_transform_hermite(const Field& f, int axis, int K) {
  const int d = f.grid.dim;
  auto inv_sqrt = MultiplierSpec::from_function([](double x) { return cplx(std::pow(x, -0.5)); },
                                                d, K, "H^{-1/2}");
  return ladder_raise(multiplier_apply(f, inv_sqrt, Which::hermite).field, axis);
}

Eigen::MatrixXd riesz_coefficient_matrix(int K, const GridSpec& grid) {
  if (grid.dim != 1) throw ParameterError("coefficient matrix is computed for d = 1");
  Eigen::MatrixXd R(K + 1, K + 1);
  std::vector<Field> basis;
  for (int n = 0; n <= K + 1; ++n) basis.push_back(hermite_function(n, grid));
  for (int n = 0; n <= K; ++n) {
    Field r = riesz_transform_hermite(basis[n], 0, K + 1);
    for (int m = 0; m <= K; ++m) R(m, n) = inner(r, basis[m]).real();
  }
  return R;
}

}  // namespace twistlab
