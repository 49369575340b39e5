#include "twistlab/twisted.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "twistlab/fft.hpp"
#include "twistlab/spectral_ops.hpp"

namespace twistlab {

TwistConstants twist_constants(Twist tw, int d) {
  if (tw == Twist::weyl) return {2.0, std::pow(pi, -d)};
  return {0.5, std::pow(4.0, d) * std::pow(2 * pi, -0.5 * d)};
}

namespace {
int pos_mod(long long a, int m) { return static_cast<int>(((a % m) + m) % m); }
}  // namespace

Field twisted_convolution(const Field& a, const Field& b, Twist tw) {
  require_same_grid(a, b, "twisted convolution");
  const auto& G = a.grid;
  if (G.dim != 2) throw ParameterError("fast twisted convolution is implemented for d = 1");
  const int N = G.points, c = G.center();
  const double h = G.spacing();
  const auto K = twist_constants(tw, 1);

  int M = 0, s = 0;
  for (int m = 1; m <= 8 && !M; ++m) {
    double sr = K.theta * h * h * (2.0 * N * m) / (2 * pi);
    if (std::abs(sr - std::round(sr)) < 1e-9 * std::max(1.0, sr)) {
      M = 2 * N * m;
      s = static_cast<int>(std::lround(sr));
    }
  }
  if (!M)
    throw GridError("twisted convolution needs theta*h^2*M/(2pi) integral for M a multiple of 2N; " +
                    G.describe() + " is incompatible");

  // Zero-padded row transforms, stored twice over so shifted reads never wrap.
  auto rows = [&](const Field& f, std::vector<double>& re, std::vector<double>& im) {
    re.assign(static_cast<std::size_t>(N) * 2 * M, 0.0);
    im.assign(re.size(), 0.0);
    parallel_for(N, [&](std::size_t r) {
      std::vector<cplx> buf(M, 0.0);
      for (int n = 0; n < N; ++n) buf[pos_mod(n - c, M)] = f.values[r * N + n];
      fft::dft(buf.data(), M, -1);
      double* pr = &re[r * 2 * M];
      double* pi_ = &im[r * 2 * M];
      for (int k = 0; k < 2 * M; ++k) {
        pr[k] = buf[k % M].real();
        pi_[k] = buf[k % M].imag();
      }
    });
  };
  std::vector<double> Are, Aim, Bre, Bim;
  rows(a, Are, Aim);
  rows(b, Bre, Bim);

  Field out(G, "twisted");
  const double pref = K.scale * h * h / M;
  parallel_for(N, [&](std::size_t iu) {
    const int I = static_cast<int>(iu) - c;
    std::vector<double> sre(M, 0.0), sim(M, 0.0);
    for (int J = -c; J < c; ++J) {
      const int r = I - J;
      if (r < -c || r >= c) continue;
      const int oa = pos_mod(-static_cast<long long>(s) * J, M);
      const int ob = pos_mod(static_cast<long long>(s) * r, M);
      const double* ar = &Are[static_cast<std::size_t>(r + c) * 2 * M + oa];
      const double* ai = &Aim[static_cast<std::size_t>(r + c) * 2 * M + oa];
      const double* br = &Bre[static_cast<std::size_t>(J + c) * 2 * M + ob];
      const double* bi = &Bim[static_cast<std::size_t>(J + c) * 2 * M + ob];
      double* __restrict outr = sre.data();
      double* __restrict outi = sim.data();
      for (int k = 0; k < M; ++k) {
        outr[k] += ar[k] * br[k] - ai[k] * bi[k];
        outi[k] += ar[k] * bi[k] + ai[k] * br[k];
      }
    }
    std::vector<cplx> buf(M);
    for (int k = 0; k < M; ++k) buf[k] = cplx(sre[k], sim[k]);
    fft::dft(buf.data(), M, +1);
    for (int n = 0; n < N; ++n) out.values[iu * N + n] = pref * buf[pos_mod(n - c, M)];
  });
  return out;
}

cplx twisted_convolution_at(const Field& a, const Field& b, const int* z, Twist tw) {
  require_same_grid(a, b, "twisted convolution");
  const auto& G = a.grid;
  if (G.dim % 2) throw ParameterError("twisted convolution needs an even dimension");
  const int n = G.dim, d = n / 2, N = G.points, c = G.center();
  const double h = G.spacing();
  const auto K = twist_constants(tw, d);
  SymplecticForm sigma(d);
  double zc[4], wc[4];
  for (int k = 0; k < n; ++k) zc[k] = (z[k] - c) * h;
  int w[4];
  cplx acc = 0;
  for (std::size_t q = 0; q < b.size(); ++q) {
    unflatten(G, q, w);
    std::size_t src = 0;
    bool inside = true;
    for (int k = 0; k < n; ++k) {
      int j = z[k] - w[k] + c;
      inside &= (j >= 0 && j < N);
      src = src * N + j;
      wc[k] = (w[k] - c) * h;
    }
    if (!inside) continue;
    acc += std::polar(1.0, K.theta * sigma(zc, wc)) * a.values[src] * b.values[q];
  }
  return K.scale * G.cell() * acc;
}

Field twisted_convolution_direct(const Field& a, const Field& b, Twist tw) {
  Field out(a.grid, "twisted direct");
  parallel_for(out.size(), [&](std::size_t k) {
    int z[4];
    unflatten(a.grid, k, z);
    out.values[k] = twisted_convolution_at(a, b, z, tw);
  });
  return out;
}

Field weyl_product(const Field& a, const Field& b) {
  require_same_grid(a, b, "Weyl product");
  if (!a.grid.symplectic_dual().matches(a.grid))
    throw GridError("Weyl product needs a grid mapped to itself by the symplectic Fourier "
                    "transform (h^2 = pi/N), got " + a.grid.describe());
  Field as = symplectic_fourier(a);
  as.grid = a.grid;
  return twisted_convolution(as, b, Twist::weyl);
}

Symbol Symbol::heat_theta(double t) {
  if (!(t > 0)) throw ParameterError("heat symbol needs t > 0");
  return {Kind::heat_theta, t, {}};
}

Symbol Symbol::sampled(Field a) {
  if (a.grid.dim != 2) throw ParameterError("sampled symbols are supported on R^2 (d = 1)");
  return {Kind::sampled, 0, std::move(a)};
}

namespace {

// Theta_t^w on R^2 through its kernel
// (2pi)^{-2} (cosh t)^{-1} (pi / tanh t) e^{i sigma(w,z)/2} e^{-|z-w|^2 / (4 tanh t)}.
Field apply_heat_theta(double t, const Field& f) {
  const auto& G = f.grid;
  if (G.dim != 2) throw ParameterError("heat Weyl symbol route is implemented for d = 1");
  const int N = G.points, c = G.center();
  const double h = G.spacing(), tau = std::tanh(t);
  const double C = std::pow(2 * pi, -2) / std::cosh(t) * (pi / tau) * h * h;
  using Mat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::MatrixXd Gk(N, N);
  Mat P(N, N);  // P(i, j) = e^{i z_i w_j / 2}
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      double r = (i - j) * h;
      Gk(i, j) = std::exp(-r * r / (4 * tau));
      P(i, j) = std::polar(1.0, (i - c) * h * (j - c) * h / 2);
    }
  Eigen::Map<const Mat> F(f.values.data(), N, N);  // F(j1, j2)
  Field out(G, "Theta^w f");
  parallel_for(N, [&](std::size_t i1) {
    // T(i2, j1) = sum_j2 G(i2, j2) P(i1, j2) f(j1, j2)
    Mat Fi = F.array().rowwise() * P.row(i1).array();
    Mat T = Gk.cast<cplx>() * Fi.transpose();
    for (int i2 = 0; i2 < N; ++i2) {
      cplx acc = 0;
      for (int j1 = 0; j1 < N; ++j1)
        acc += Gk(i1, j1) * std::conj(P(i2, j1)) * T(i2, j1);
      out.values[i1 * N + i2] = C * acc;
    }
  });
  return out;
}

Field apply_sampled(const Field& a, const Field& f) {
  const auto& Gf = f.grid;
  const auto& Ga = a.grid;
  if (Gf.dim != 1) throw ParameterError("sampled symbols act on fields on R (d = 1)");
  const int Nf = Gf.points, Na = Ga.points, cf = Gf.center(), ca = Ga.center();
  const double hf = Gf.spacing(), ha = Ga.spacing();
  if (std::abs(ha - hf / 2) > 1e-12 * hf || Na < 2 * Nf)
    throw GridError("sampled symbol grid must have spacing h_f/2 and at least 2N_f points; got " +
                    Ga.describe() + " for " + Gf.describe());
  std::vector<cplx> phase(static_cast<std::size_t>(Na) * (2 * Nf + 1));
  // e^{i xi_l (x - y)} with x - y = D hf, D in [-Nf, Nf].
  for (int D = -Nf; D <= Nf; ++D)
    for (int l = 0; l < Na; ++l)
      phase[static_cast<std::size_t>(D + Nf) * Na + l] = std::polar(1.0, (l - ca) * ha * D * hf);
  Field out(Gf, "a^w f");
  const double C = ha / (2 * pi) * hf;
  parallel_for(Nf, [&](std::size_t iu) {
    const int i = static_cast<int>(iu);
    cplx acc = 0;
    for (int j = 0; j < Nf; ++j) {
      if (f.values[j] == cplx(0)) continue;
      int m = (i - cf) + (j - cf) + ca;  // midpoint index on the symbol grid
      if (m < 0 || m >= Na) continue;
      const cplx* row = &a.values[static_cast<std::size_t>(m) * Na];
      const cplx* ph = &phase[static_cast<std::size_t>(i - j + Nf) * Na];
      cplx k = 0;
      for (int l = 0; l < Na; ++l) k += ph[l] * row[l];
      acc += k * f.values[j];
    }
    out.values[iu] = C * acc;
  });
  return out;
}

}  // namespace

Field weyl_apply(const Symbol& a, const Field& f) {
  switch (a.kind) {
    case Symbol::Kind::identity:
      return f;
    case Symbol::Kind::hermite:
      return apply_hermite_operator(f);
    case Symbol::Kind::landau:
      return apply_twisted_laplacian(f);
    case Symbol::Kind::heat_theta:
      return apply_heat_theta(a.t, f);
    case Symbol::Kind::sampled:
      return apply_sampled(a.samples, f);
  }
  throw ParameterError("unknown symbol kind");
}

}  // namespace twistlab
