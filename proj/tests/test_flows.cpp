#include <gtest/gtest.h>

#include <cmath>

#include "twistlab/quadrature.hpp"
#include "twistlab/spectral_ops.hpp"
#include "twistlab/specfun.hpp"

using namespace twistlab;

namespace {

const GridSpec G = GridSpec::landau(2, 96);

Field phi(int a, int b, const GridSpec& g = G) { return special_hermite({a}, {b}, g); }

Field blob(const GridSpec& g = G) {
  return Field::sample(g, [](const double* z) {
    double x = z[0] - 0.6, y = z[1] + 0.3;
    return std::exp(-0.4 * (x * x + y * y)) * std::polar(1.0, 0.4 * z[0]);
  });
}

double rel(const Field& a, const Field& b) { return l2_norm(a - b) / l2_norm(b); }

std::size_t origin(const GridSpec& g) { return static_cast<std::size_t>(g.points / 2) * g.points + g.points / 2; }

}  // namespace

TEST(Heat, EigenDecay) {
  for (int b : {0, 1, 3}) {
    Field p = phi(2, b);
    for (double t : {0.1, 1.0})
      EXPECT_LT(distance(heat_flow(p, t, Route::spectral), std::exp(-t * (2 * b + 1)) * p), 1e-8);
  }
}

TEST(Heat, Semigroup) {
  Field f = blob();
  Field two = heat_flow(heat_flow(f, 0.3, Route::spectral), 0.5, Route::spectral);
  EXPECT_LT(rel(two, heat_flow(f, 0.8, Route::spectral)), 1e-9);
  Field k = heat_flow(heat_flow(f, 0.3, Route::kernel), 0.5, Route::kernel);
  EXPECT_LT(rel(k, heat_flow(f, 0.8, Route::kernel)), 1e-9);
}

TEST(Heat, RoutesAgree) {
  Field f = blob();
  Field s = heat_flow(f, 0.5, Route::spectral);
  for (Route r : {Route::kernel, Route::weyl_symbol, Route::transferred})
    EXPECT_LT(rel(heat_flow(f, 0.5, r), s), 1e-6) << static_cast<int>(r);
}

TEST(Heat, KernelValueAndPositivity) {
  Field p = heat_kernel(1.0, G);
  EXPECT_NEAR(p[origin(G)].real(), 0.016928478284473914748, 1e-15);
  for (auto v : p.values) {
    ASSERT_GE(v.real(), 0);
    ASSERT_EQ(v.imag(), 0);
  }
  EXPECT_THROW(heat_flow(blob(), 1e-8, Route::kernel), BandLimitError);
}

TEST(Heat, GaussianWitnessClosedForm) {
  EXPECT_NEAR(heat_of_gaussian_at_origin(0.3, 2.0), 0.18285785287889476016, 1e-15);
  const GridSpec g = GridSpec::landau(2, 128);
  for (double mu : {0.3, 1.0})
    for (double s : {0.2, 0.7}) {
      Field f = Field::sample(g, [mu](const double* z) {
        return cplx(mu / pi * std::exp(-mu * (z[0] * z[0] + z[1] * z[1])));
      });
      double grid_value = heat_flow(f, s, Route::kernel)[origin(g)].real();
      EXPECT_NEAR(grid_value, heat_of_gaussian_at_origin(s, mu), 1e-9) << mu << " " << s;
    }
  EXPECT_NEAR(fractional_heat_witness_ratio(0.1, 1e12), 15.914188913853466002, 1e-7);
}

TEST(FractionalHeat, EigenAndSubordination) {
  Field p = phi(1, 2);
  for (double nu : {0.3, 0.5, 1.0})
    EXPECT_LT(distance(fractional_heat_flow(p, 0.7, nu, Route::spectral), std::exp(-0.7 * std::pow(5.0, nu)) * p), 1e-8);
  Field f = blob();
  Field s = fractional_heat_flow(f, 0.4, 0.5, Route::spectral);
  EXPECT_LT(rel(fractional_heat_flow(f, 0.4, 0.5, Route::subordination), s), 1e-6);
  EXPECT_LT(rel(fractional_heat_flow(f, 0.4, 0.5, Route::transferred), s), 1e-8);
  EXPECT_LT(rel(fractional_heat_flow(f, 0.4, 1.0, Route::spectral), heat_flow(f, 0.4, Route::spectral)), 1e-12);
  EXPECT_THROW(fractional_heat_flow(f, 0.4, 0.3, Route::subordination), ParameterError);
  EXPECT_THROW(fractional_heat_flow(f, 0.4, 1.5, Route::spectral), ParameterError);
}

TEST(NegativePower, ScalarAndRoutes) {
  Field p = phi(0, 1);
  EXPECT_LT(distance(negative_power(p, 0.7, Route::spectral), 0.46346305677196980277 * p), 1e-7);
  EXPECT_LT(distance(bessel_potential(p, 0.7, Route::spectral), 0.37892914162759952059 * p), 1e-7);
  Field f = blob();
  EXPECT_LT(rel(negative_power(f, 0.7, Route::gamma_integral), negative_power(f, 0.7, Route::spectral)), 1e-6);
  EXPECT_LT(rel(bessel_potential(f, 0.4, Route::gamma_integral), bessel_potential(f, 0.4, Route::spectral)), 1e-6);
  // L^{-1} inverts L
  Field Lf = apply_twisted_laplacian(f);
  EXPECT_LT(rel(negative_power(Lf, 1.0, Route::spectral), f), 1e-6);
}

TEST(RieszMean, FrozenValuesOnLevels) {
  struct Case {
    int b;
    double u, v;
    cplx want;
  };
  for (auto c : {Case{0, 1, 1, {0.84147098480789650665, -0.4596976941318602826}},
                 Case{0, 2.5, 0.7, {0.96931204539488019227, -0.19607996252851962751}},
                 Case{2, 0.5, 2, {-0.27650001553280801261, -0.10812112517912800077}}}) {
    double lam = 2 * c.b + 1;
    EXPECT_LT(std::abs(riesz_integral(lam, c.u, c.v) - c.want), 1e-12);
    EXPECT_LT(std::abs(riesz_integral_direct(lam, c.u, c.v) - c.want), 1e-8);
    Field p = phi(1, c.b);
    EXPECT_LT(rel(riesz_mean(p, c.u, c.v), c.want * p), 1e-9);
  }
  EXPECT_THROW(riesz_mean(phi(0, 0), 0, 1), ParameterError);
}

TEST(RieszMean, AgreesWithTanhSinhOracle) {
  for (double lam : {1.0, 3.0, 7.0})
    for (double u : {0.3, 1.0, 4.0})
      for (double v : {0.5, 1.0, 2.5})
        EXPECT_LT(std::abs(riesz_integral(lam, u, v) - riesz_integral_direct(lam, u, v)), 1e-10)
            << lam << " " << u << " " << v;
}

// e^{-i v lambda} 1F1(u; u+1; i v lambda), 30-digit mpmath
TEST(RieszMean, HighFrequencyFrozen) {
  EXPECT_LT(std::abs(riesz_integral(67, 0.5, 2) - cplx(0.022836212671938914819, -0.076800002741420224942)), 1e-13);
  EXPECT_LT(std::abs(riesz_integral(67, 2.5, 2) - cplx(0.00020407463814213795218, -0.018640677210387596021)), 1e-13);
  EXPECT_LT(std::abs(riesz_integral(201, 0.3, 3) - cplx(0.10412236728778947729, 0.079818172969835611354)), 1e-13);
}

TEST(Schrodinger, UnitaryPeriodicSingular) {
  Field f = blob();
  for (double t : {0.4, 2.0}) {
    auto r = schrodinger_flow(f, t, Route::spectral);
    EXPECT_NEAR(l2_norm(r.field), l2_norm(f), 1e-9);
  }
  // spectrum in 2N+1, so e^{-2 pi i L} is the identity and e^{-i pi L} = -1
  EXPECT_LT(rel(schrodinger_flow(f, 2 * pi, Route::spectral).field, f), 1e-7);
  EXPECT_LT(rel(schrodinger_flow(f, pi, Route::spectral).field, -1.0 * f), 1e-7);
  EXPECT_THROW(schrodinger_flow(f, pi, Route::kernel), SingularTimeError);
  EXPECT_THROW(schrodinger_flow(f, 1e-6, Route::kernel), SingularTimeError);
}

TEST(Schrodinger, KernelPhaseIsConstant) {
  const GridSpec g = GridSpec::landau(2, 192);
  Field f = phi(0, 0, g) + phi(1, 2, g);
  auto s = schrodinger_flow(f, 1.1, Route::spectral).field;
  auto k = schrodinger_flow(f, 1.1, Route::kernel);
  EXPECT_NEAR(std::abs(k.phase), 1, 1e-9);
  EXPECT_TRUE(std::isfinite(k.resolved_radius));
  int idx[2];
  double worst = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    unflatten(g, i, idx);
    if (std::hypot(g.coord(idx[0]), g.coord(idx[1])) <= k.resolved_radius)
      worst = std::max(worst, std::abs(k.field[i] - s[i]));
  }
  EXPECT_LT(worst / max_abs(s), 1e-6);
}

TEST(Oscillating, QuadraticCaseIsSchrodinger) {
  Field f = blob();
  // e^{+itL} from the oscillating family equals the Schrodinger flow at -t
  Field o = oscillating_multiplier(f, 0.6, 2.0, 0.0, Which::landau);
  EXPECT_LT(rel(o, schrodinger_flow(f, -0.6, Route::spectral).field), 1e-12);
}

TEST(Oscillating, BoundedOnL2) {
  Field f = blob();
  for (double gamma : {0.5, 1.0, 1.5, 2.0})
    for (double delta : {0.0, 0.5, 1.0})
      for (double t : {0.3, 3.0}) {
        double r = l2_norm(oscillating_multiplier(f, t, gamma, delta, Which::landau)) / l2_norm(f);
        EXPECT_LE(r, 1 + 1e-9) << gamma << " " << delta << " " << t;
      }
  EXPECT_THROW(oscillating_multiplier(f, 1, 2.5, 0, Which::landau), ParameterError);
  const GridSpec g1 = GridSpec::landau(1, 96);
  Field h = hermite_function(2, g1);
  EXPECT_LT(rel(oscillating_multiplier(h, 0.5, 1.0, 1.0, Which::hermite),
                std::polar(std::pow(5.0, -0.5), 0.5 * std::sqrt(5.0)) * h),
            1e-9);
}

TEST(Wave, InitialData) {
  Field p = phi(0, 0), zero(G);
  for (double t : {0.3, 1.7})
    EXPECT_LT(rel(wave_flow(p, zero, t), std::cos(t) * p), 1e-9);
  Field f = blob(), g = phi(1, 1) + phi(0, 2);
  EXPECT_LT(rel(wave_flow(f, g, 0), f), 1e-6);
  const double dt = 1e-4;
  Field v = wave_flow(f, g, dt) - wave_flow(f, g, -dt);
  v *= 1 / (2 * dt);
  EXPECT_LT(rel(v, g), 1e-6);
}
