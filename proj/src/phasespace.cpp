#include "twistlab/phasespace.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>

namespace twistlab {
namespace {

std::atomic<std::size_t> g_budget{std::size_t(1) << 24};

void require_window(const Field& f, const Field& g) {
  require_same_grid(f, g, "phase-space transform");
  if (max_abs(g) == 0) throw ParameterError("window is identically zero");
}

// Runs make(p, row) then visit(chunk, p, row) for every slice p. Slices are
// split into contiguous chunks; chunks run in parallel, slices within a chunk
// in order, so per-chunk reductions are deterministic.
void drive_slices(std::size_t nslices, std::size_t row_len, std::size_t chunks,
                  const std::function<void(std::size_t, cplx*)>& make,
                  const std::function<void(std::size_t, std::size_t, const cplx*)>& visit) {
  chunks = std::max<std::size_t>(1, std::min(chunks, nslices));
  parallel_for(chunks, [&](std::size_t c) {
    std::vector<cplx> row(row_len);
    std::size_t lo = nslices * c / chunks, hi = nslices * (c + 1) / chunks;
    for (std::size_t p = lo; p < hi; ++p) {
      make(p, row.data());
      visit(c, p, row.data());
    }
  });
}

// Row p of V_g f: product f(y) conj g(y - x_p), then the centered DFT.
std::function<void(std::size_t, cplx*)> gabor_row_maker(const Field& f, const Field& g) {
  return [&f, &g](std::size_t p, cplx* row) {
    const auto& G = f.grid;
    const int n = G.dim, N = G.points, c = G.center();
    int shift[4], idx[4];
    unflatten(G, p, shift);
    for (int a = 0; a < n; ++a) shift[a] -= c;
    for (std::size_t k = 0; k < G.size(); ++k) {
      unflatten(G, k, idx);
      std::size_t src = 0;
      bool inside = true;
      for (int a = 0; a < n; ++a) {
        int j = idx[a] - shift[a];
        inside &= (j >= 0 && j < N);
        src = src * N + j;
      }
      row[k] = inside ? f.values[k] * std::conj(g.values[src]) : cplx(0);
    }
    const double scale = G.spacing() / std::sqrt(2.0 * pi);
    for (int a = 0; a < n; ++a) detail::centered_dft_axis(row, n, N, a, -1, scale);
  };
}

struct NormPlan {
  MixedNormSpec spec;
  GridSpec pos, freq;
  double amp;
  std::vector<double> xsq, xisq;

  NormPlan(const MixedNormSpec& s, const GridSpec& p, const GridSpec& f, double a)
      : spec(s), pos(p), freq(f), amp(a), xsq(p.size()), xisq(f.size()) {
    int idx[4];
    for (std::size_t k = 0; k < p.size(); ++k) {
      unflatten(p, k, idx);
      double r = 0;
      for (int j = 0; j < p.dim; ++j) r += p.coord(idx[j]) * p.coord(idx[j]);
      xsq[k] = r;
    }
    for (std::size_t k = 0; k < f.size(); ++k) {
      unflatten(f, k, idx);
      double r = 0;
      for (int j = 0; j < f.dim; ++j) r += f.coord(idx[j]) * f.coord(idx[j]);
      xisq[k] = r;
    }
  }

  double weighted(std::size_t p, std::size_t q, cplx v) const {
    double m = std::abs(v);
    if (!std::isfinite(m)) throw DataError("non-finite phase-space sample");
    if (spec.s != 0) m *= std::pow(1.0 + xsq[p] + xisq[q], spec.s / 2);
    return m;
  }

  double run(std::size_t chunks, const std::function<void(std::size_t, cplx*)>& make) const {
    const std::size_t P = pos.size(), Q = freq.size();
    const double cx = pos.cell(), cxi = freq.cell();
    const double pe = spec.p, qe = spec.q;
    if (spec.flavor == Flavor::amalgam) {
      std::vector<double> inner(P);
      drive_slices(P, Q, chunks, make, [&](std::size_t, std::size_t p, const cplx* row) {
        double acc = 0;
        for (std::size_t q = 0; q < Q; ++q) {
          double m = weighted(p, q, row[q]);
          acc = std::isinf(pe) ? std::max(acc, m) : acc + std::pow(m, pe);
        }
        inner[p] = std::isinf(pe) ? acc : std::pow(acc * cxi, 1.0 / pe);
      });
      double acc = 0;
      for (double v : inner) acc = std::isinf(qe) ? std::max(acc, v) : acc + std::pow(v, qe);
      return amp * (std::isinf(qe) ? acc : std::pow(acc * cx, 1.0 / qe));
    }
    chunks = std::max<std::size_t>(1, std::min(chunks, P));
    std::vector<std::vector<double>> acc(chunks, std::vector<double>(Q, 0.0));
    drive_slices(P, Q, chunks, make, [&](std::size_t c, std::size_t p, const cplx* row) {
      auto& a = acc[c];
      for (std::size_t q = 0; q < Q; ++q) {
        double m = weighted(p, q, row[q]);
        a[q] = std::isinf(pe) ? std::max(a[q], m) : a[q] + std::pow(m, pe);
      }
    });
    double total = 0;
    for (std::size_t q = 0; q < Q; ++q) {
      double v = 0;
      for (std::size_t c = 0; c < chunks; ++c) v = std::isinf(pe) ? std::max(v, acc[c][q]) : v + acc[c][q];
      if (!std::isinf(pe)) v = std::pow(v * cx, 1.0 / pe);
      total = std::isinf(qe) ? std::max(total, v) : total + std::pow(v, qe);
    }
    return amp * (std::isinf(qe) ? total : std::pow(total * cxi, 1.0 / qe));
  }
};

constexpr std::size_t kChunks = 64;

void check_budget(std::size_t samples) {
  if (samples > phase_space_budget())
    throw ParameterError("phase-space array of " + std::to_string(samples) +
                         " samples exceeds the memory budget; use the slice-wise norm routines");
}

}  // namespace

PhaseSpaceField::PhaseSpaceField(const GridSpec& pos, const GridSpec& freq, std::string l)
    : position(pos), frequency(freq), label(std::move(l)) {
  check_budget(pos.size() * freq.size());
  values.assign(pos.size() * freq.size(), cplx(0));
}

void set_phase_space_budget(std::size_t samples) { g_budget = samples; }
std::size_t phase_space_budget() { return g_budget; }

void gabor_slices(const Field& f, const Field& g,
                  const std::function<void(std::size_t, const cplx*)>& visit) {
  require_window(f, g);
  auto make = gabor_row_maker(f, g);
  drive_slices(f.grid.size(), f.grid.size(), kChunks, make,
               [&](std::size_t, std::size_t p, const cplx* row) { visit(p, row); });
}

PhaseSpaceField gabor_transform(const Field& f, const Field& g) {
  require_window(f, g);
  PhaseSpaceField out(f.grid, f.grid.dual(), "V");
  const std::size_t Q = out.slice_size();
  gabor_slices(f, g, [&](std::size_t p, const cplx* row) {
    std::copy(row, row + Q, out.values.begin() + p * Q);
  });
  return out;
}

PhaseSpaceField symplectic_gabor(const Field& f, const Field& g) {
  const auto& G = f.grid;
  if (G.dim % 2) throw ParameterError("symplectic Gabor transform needs an even dimension");
  require_window(f, g);
  const int d = G.dim / 2, N = G.points;
  PhaseSpaceField out(G, G.symplectic_dual(), "symplectic V");
  const std::size_t Q = out.slice_size();
  // Source FFT index of each zeta index under xi = 2 J zeta.
  std::vector<std::size_t> src(Q);
  int m[4], k[4];
  for (std::size_t q = 0; q < Q; ++q) {
    unflatten(out.frequency, q, m);
    for (int j = 0; j < d; ++j) {
      k[j] = m[j + d];
      k[j + d] = (N - m[j]) % N;
    }
    std::size_t s = 0;
    for (int a = 0; a < G.dim; ++a) s = s * N + k[a];
    src[q] = s;
  }
  const double amp = std::pow(2.0, d);
  gabor_slices(f, g, [&](std::size_t p, const cplx* row) {
    for (std::size_t q = 0; q < Q; ++q) out.values[p * Q + q] = amp * row[src[q]];
  });
  return out;
}

PhaseSpaceField ambiguity(const Field& f, const Field& g) {
  PhaseSpaceField out = gabor_transform(f, g);
  out.label = "A";
  const auto& P = out.position;
  const auto& F = out.frequency;
  const std::size_t Q = out.slice_size();
  int a[4], b[4];
  for (std::size_t p = 0; p < out.slices(); ++p) {
    unflatten(P, p, a);
    for (std::size_t q = 0; q < Q; ++q) {
      unflatten(F, q, b);
      double ph = 0;
      for (int j = 0; j < P.dim; ++j) ph += P.coord(a[j]) * F.coord(b[j]);
      out.values[p * Q + q] *= std::polar(1.0, ph / 2);
    }
  }
  return out;
}

PhaseSpaceField wigner(const Field& f, const Field& g) {
  require_same_grid(f, g, "wigner");
  const auto& G = f.grid;
  const int n = G.dim, N = G.points, c = G.center();
  PhaseSpaceField out(G, G.symplectic_dual(), "W");
  const std::size_t Q = out.slice_size();
  const double scale = G.spacing() / std::sqrt(2.0 * pi);
  const double amp = std::pow(2.0 / std::sqrt(2.0 * pi), n);
  parallel_for(out.slices(), [&](std::size_t p) {
    cplx* row = out.values.data() + p * Q;
    int x[4], v[4];
    unflatten(G, p, x);
    for (std::size_t k = 0; k < Q; ++k) {
      unflatten(G, k, v);
      std::size_t ip = 0, im = 0;
      bool inside = true;
      for (int a = 0; a < n; ++a) {
        int u = v[a] - c, jp = x[a] + u, jm = x[a] - u;
        inside &= (jp >= 0 && jp < N && jm >= 0 && jm < N);
        ip = ip * N + jp;
        im = im * N + jm;
      }
      row[k] = inside ? f.values[ip] * std::conj(g.values[im]) : cplx(0);
    }
    for (int a = 0; a < n; ++a) detail::centered_dft_axis(row, n, N, a, -1, scale);
    for (std::size_t k = 0; k < Q; ++k) row[k] *= amp;
  });
  return out;
}

void MixedNormSpec::validate() const {
  if (!(p >= 1) || !(q >= 1)) throw ParameterError("mixed-norm exponents must be >= 1");
  if (!std::isfinite(s)) throw ParameterError("weight exponent must be finite");
}

double mixed_norm(const PhaseSpaceField& F, const MixedNormSpec& spec) {
  spec.validate();
  NormPlan plan(spec, F.position, F.frequency, 1.0);
  const std::size_t Q = F.slice_size();
  return plan.run(kChunks, [&](std::size_t p, cplx* row) {
    std::copy(F.values.begin() + p * Q, F.values.begin() + (p + 1) * Q, row);
  });
}

double gabor_mixed_norm(const Field& f, const Field& g, const MixedNormSpec& spec) {
  spec.validate();
  require_window(f, g);
  const auto& G = f.grid;
  if (spec.symplectic && G.dim % 2) throw ParameterError("symplectic norm needs an even dimension");
  // Under xi = 2J zeta only |zeta| = |xi|/2 and the cell size change, so the
  // FFT-ordered rows can be reduced directly on the halved lattice.
  GridSpec freq = spec.symplectic ? G.symplectic_dual() : G.dual();
  double amp = spec.symplectic ? std::pow(2.0, G.dim / 2) : 1.0;
  NormPlan plan(spec, G, freq, amp);
  return plan.run(kChunks, gabor_row_maker(f, g));
}

double separable_gabor_mixed_norm(const std::vector<Field>& f, const std::vector<Field>& g,
                                  const MixedNormSpec& spec) {
  spec.validate();
  if (spec.s != 0) throw ParameterError("separable norm evaluation requires s = 0");
  if (f.empty() || f.size() != g.size()) throw ParameterError("factor count mismatch");
  const int n = static_cast<int>(f.size());
  if (spec.symplectic && n % 2) throw ParameterError("symplectic norm needs an even dimension");
  MixedNormSpec one = spec;
  one.symplectic = false;
  double prod = 1;
  for (int j = 0; j < n; ++j) {
    if (f[j].grid.dim != 1) throw ParameterError("separable factors must be 1-d fields");
    prod *= gabor_mixed_norm(f[j], g[j], one);
  }
  if (spec.symplectic) {
    double r = spec.flavor == Flavor::amalgam ? spec.p : spec.q;
    prod *= std::pow(2.0, n / 2) * (std::isinf(r) ? 1.0 : std::pow(2.0, -n / r));
  }
  return prod;
}

Exponent Exponent::from_reciprocal(Rational r) {
  if (r < 0 || r > 1) throw ParameterError("exponent must lie in [1, inf]");
  return Exponent{r};
}

Exponent Exponent::parse(const std::string& raw) {
  std::string s;
  for (char ch : raw)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += static_cast<char>(std::tolower(ch));
  if (s == "inf" || s == "infinity" || s == "∞") return Exponent{Rational(0)};
  try {
    auto slash = s.find('/');
    Rational p;
    if (slash != std::string::npos) {
      p = Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    } else {
      auto dot = s.find('.');
      if (dot == std::string::npos) {
        p = Rational(std::stoll(s));
      } else {
        std::string frac = s.substr(dot + 1);
        long long den = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
        long long whole = dot ? std::stoll(s.substr(0, dot)) : 0;
        p = Rational(whole * den + (frac.empty() ? 0 : std::stoll(frac)), den);
      }
    }
    if (p < 1) throw ParameterError("exponent must be >= 1: " + raw);
    return Exponent{Rational(1) / p};
  } catch (const std::logic_error&) {
    throw ParameterError("cannot parse exponent '" + raw + "'");
  }
}

double Exponent::value() const {
  if (inv.numerator() == 0) return std::numeric_limits<double>::infinity();
  return static_cast<double>(inv.denominator()) / static_cast<double>(inv.numerator());
}

std::string Exponent::str() const {
  if (inv.numerator() == 0) return "inf";
  Rational p = Rational(1) / inv;
  std::ostringstream s;
  s << p.numerator();
  if (p.denominator() != 1) s << '/' << p.denominator();
  return s.str();
}

std::string IndexTuple::str() const {
  std::string s = "(";
  for (int i = 0; i < 6; ++i) s += (i ? "," : "") + e[i].str();
  return s + ")";
}

bool weyl_product_admissible(const IndexTuple& t) {
  const Rational one(1), zero(0);
  Rational lhs = std::max(one + t.q(2).inv - t.q(0).inv - t.q(1).inv, zero);
  Rational rhs = std::min({t.p(0).inv, t.p(1).inv, t.p(2).conj_inv(), t.q(0).conj_inv(),
                           t.q(1).conj_inv(), t.q(2).inv, t.p(0).inv + t.p(1).inv - t.p(2).inv});
  return lhs <= rhs;
}

namespace {
bool restated_common(const IndexTuple& t) {
  const Rational one(1);
  Rational Q = t.q(0).inv + t.q(1).inv;
  return t.p(2).inv <= t.p(0).inv + t.p(1).inv && t.q(2).inv <= t.q(0).inv &&
         t.q(2).inv <= t.q(1).inv && one <= Q &&
         std::max({one - t.p(1).inv + t.q(2).inv, one - t.p(0).inv + t.q(2).inv,
                   t.p(2).inv + t.q(2).inv}) <= Q;
}
}  // namespace

bool weyl_product_restated_literal(const IndexTuple& t) {
  return restated_common(t) && Rational(1) + t.q(2).inv <= t.q(0).inv + t.q(1).inv;
}

bool weyl_product_restated_corrected(const IndexTuple& t) {
  return restated_common(t) && Rational(1) + t.q(2).inv + t.p(2).inv <=
                                   t.q(0).inv + t.q(1).inv + t.p(0).inv + t.p(1).inv;
}

HeatIndexResult heat_index_constants(const Exponent& p1, const Exponent& q1, const Exponent& p2,
                                     const Exponent& q2, double nu, int d) {
  if (!(nu > 0 && nu <= 1)) throw ParameterError("fractional order must lie in (0, 1]");
  if (d < 1) throw ParameterError("dimension must be positive");
  Rational gap = std::max(p2.inv - p1.inv, Rational(0));
  double g = static_cast<double>(gap.numerator()) / static_cast<double>(gap.denominator());
  return {q2.inv <= q1.inv, d / nu * g};
}

}  // namespace twistlab
