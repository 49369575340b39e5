#include <gtest/gtest.h>

#include <cmath>

#include "twistlab/spectral_ops.hpp"
#include "twistlab/specfun.hpp"
#include "twistlab/twisted.hpp"

using namespace twistlab;

namespace {

const GridSpec G = GridSpec::landau(2, 96);

Field phi(int a, int b, const GridSpec& g = G) { return special_hermite({a}, {b}, g); }

Field blob(const GridSpec& g, double a, double x0, double y0, cplx tilt) {
  return Field::sample(g, [=](const double* z) {
    double x = z[0] - x0, y = z[1] - y0;
    return std::exp(-a * (x * x + y * y)) * (1.0 + tilt * z[0]);
  });
}

double rel(const Field& a, const Field& b) { return l2_norm(a - b) / l2_norm(b); }

}  // namespace

TEST(Twisted, GroundStateIdempotent) {
  Field p = phi(0, 0);
  EXPECT_LT(rel(twisted_convolution(p, p), 4.0 * p), 1e-8);
}

TEST(Twisted, OrthogonalLevelsAnnihilate) {
  for (auto [b, m] : {std::pair{0, 1}, {1, 0}, {2, 3}, {0, 3}})
    EXPECT_LT(l2_norm(twisted_convolution(phi(1, b), phi(m, 2))), 1e-8) << b << m;
}

TEST(Twisted, NonCommutative) {
  Field ab = twisted_convolution(phi(0, 1), phi(1, 0));
  Field ba = twisted_convolution(phi(1, 0), phi(0, 1));
  EXPECT_LT(rel(ab, 4.0 * phi(0, 0)), 1e-8);
  EXPECT_LT(rel(ba, 4.0 * phi(1, 1)), 1e-8);
  EXPECT_GT(l2_norm(ab - ba), 1.0);
}

TEST(Twisted, FastMatchesDirect) {
  const GridSpec s = GridSpec::landau(2, 16);
  for (Twist tw : {Twist::landau, Twist::weyl}) {
    if (tw == Twist::weyl) continue;  // weyl phase needs h^2 = pi/N
    Field a = blob(s, 0.4, 0.3, 0, {0, 0.5}), b = blob(s, 0.7, 0, -0.5, {0.2, 0});
    Field d = twisted_convolution_direct(a, b, tw);
    EXPECT_LT(max_abs(twisted_convolution(a, b, tw) - d) / max_abs(d), 1e-12);
    int z[2] = {9, 6};
    EXPECT_LT(std::abs(twisted_convolution_at(a, b, z, tw) - d[9 * 16 + 6]), 1e-12 * max_abs(d));
  }
  const GridSpec w = GridSpec::symplectic_self_dual(2, 16);
  Field a = blob(w, 0.4, 0.3, 0, {0, 0.5}), b = blob(w, 0.7, 0, -0.5, {0.2, 0});
  Field d = twisted_convolution_direct(a, b, Twist::weyl);
  EXPECT_LT(max_abs(twisted_convolution(a, b, Twist::weyl) - d) / max_abs(d), 1e-12);
}

TEST(Twisted, AssociativeAndBilinear) {
  const GridSpec g = GridSpec::landau(2, 64);
  Field a = blob(g, 0.5, 0.4, 0, {0, 0.3}), b = blob(g, 0.6, 0, 0.3, {0.1, 0});
  Field c = blob(g, 0.8, -0.2, 0.1, {0, 0});
  Field l = twisted_convolution(twisted_convolution(a, b), c);
  Field r = twisted_convolution(a, twisted_convolution(b, c));
  EXPECT_LT(rel(l, r), 1e-8);
  cplx s{0.3, -1.2};
  Field lin = twisted_convolution(a + s * b, c);
  EXPECT_LT(rel(lin, twisted_convolution(a, c) + s * twisted_convolution(b, c)), 1e-13);
}

TEST(Twisted, Constants) {
  auto l = twist_constants(Twist::landau, 1), w = twist_constants(Twist::weyl, 1);
  EXPECT_DOUBLE_EQ(l.theta, 0.5);
  EXPECT_NEAR(l.scale, 4 / std::sqrt(2 * pi), 1e-15);
  EXPECT_DOUBLE_EQ(w.theta, 2.0);
  EXPECT_NEAR(w.scale, 1 / pi, 1e-15);
}

// Weyl symbols of the rank-one projections onto h0 and h1.
namespace {
const GridSpec S = GridSpec::symplectic_self_dual(2, 64);
Field p0(const GridSpec& g = S) {
  return Field::sample(g, [](const double* z) { return 2 * std::exp(-z[0] * z[0] - z[1] * z[1]); });
}
Field p1(const GridSpec& g = S) {
  return Field::sample(g, [](const double* z) {
    double r = z[0] * z[0] + z[1] * z[1];
    return -2 * (1 - 2 * r) * std::exp(-r);
  });
}
}  // namespace

TEST(WeylProduct, ProjectionAlgebra) {
  EXPECT_LT(rel(weyl_product(p0(), p0()), p0()), 1e-8);
  EXPECT_LT(rel(weyl_product(p1(), p1()), p1()), 1e-8);
  EXPECT_LT(l2_norm(weyl_product(p0(), p1())), 1e-8);
}

TEST(WeylProduct, RejectsWrongGrid) {
  Field a = blob(G, 1, 0, 0, 0);
  EXPECT_THROW(weyl_product(a, a), GridError);
}

TEST(WeylApply, BuiltinSymbols) {
  const GridSpec g1 = GridSpec::for_hermite(1, 128, 8);
  Field h3 = hermite_function(3, g1);
  EXPECT_LT(rel(weyl_apply(Symbol::identity(), h3), h3), 1e-14);
  EXPECT_LT(rel(weyl_apply(Symbol::hermite(), h3), 7.0 * h3), 1e-9);
  Field p = phi(1, 2);
  EXPECT_LT(rel(weyl_apply(Symbol::landau(), p), 5.0 * p), 1e-8);
  EXPECT_LT(rel(weyl_apply(Symbol::landau(), p), apply_twisted_laplacian(p)), 1e-8);
}

TEST(WeylApply, SampledProjection) {
  GridSpec gf(1, 64, 8.0);
  GridSpec gs(2, 128, 8.0);  // spacing h_f / 2, 2 N_f points
  ASSERT_NEAR(gs.spacing(), gf.spacing() / 2, 1e-15);
  Field h0 = hermite_function(0, gf), h1 = hermite_function(1, gf), h2 = hermite_function(2, gf);
  Symbol P = Symbol::sampled(p0(gs));
  EXPECT_LT(rel(weyl_apply(P, h0), h0), 1e-8);
  EXPECT_LT(l2_norm(weyl_apply(P, h1)) + l2_norm(weyl_apply(P, h2)), 1e-8);
  Symbol Q = Symbol::sampled(p1(gs));
  EXPECT_LT(rel(weyl_apply(Q, h1), h1), 1e-8);
}

TEST(WeylApply, RealSymbolGivesSelfAdjoint) {
  GridSpec gf(1, 64, 8.0), gs(2, 128, 8.0);
  Field a = Field::sample(gs, [](const double* z) {
    return std::exp(-0.5 * (z[0] - 0.3) * (z[0] - 0.3) - 0.2 * z[1] * z[1]) * (1 + z[1]);
  });
  Symbol A = Symbol::sampled(a);
  Field f = Field::sample(gf, [](const double* x) { return std::exp(-0.4 * x[0] * x[0]) * cplx(1, x[0]); });
  Field g = Field::sample(gf, [](const double* x) { return std::exp(-(x[0] - 1) * (x[0] - 1)); });
  EXPECT_LT(std::abs(inner(weyl_apply(A, f), g) - inner(f, weyl_apply(A, g))), 1e-10);
}

TEST(WeylApply, CompositionMatchesProduct) {
  GridSpec gf(1, 64, 8.0), gs(2, 128, 8.0);
  Field f = Field::sample(gf, [](const double* x) { return std::exp(-0.4 * x[0] * x[0]) * cplx(1, x[0]); });
  // p0 # p1 = 0, so the composition kills every input
  EXPECT_LT(l2_norm(weyl_apply(Symbol::sampled(p0(gs)), weyl_apply(Symbol::sampled(p1(gs)), f))), 1e-8);
  Field half = 0.5 * p0(gs) + 0.5 * p1(gs);
  Field twice = weyl_apply(Symbol::sampled(half), weyl_apply(Symbol::sampled(half), f));
  EXPECT_LT(rel(twice, 0.5 * weyl_apply(Symbol::sampled(half), f)), 1e-8);
}

TEST(WeylApply, HeatSymbolMatchesSpectralHeat) {
  const GridSpec g = GridSpec::landau(2, 96);
  Field f = blob(g, 0.3, 0.7, -0.4, {0, 0.5});
  for (double t : {0.2, 1.0}) {
    Field a = weyl_apply(Symbol::heat_theta(t), f);
    EXPECT_LT(rel(a, heat_flow(f, t, Route::spectral)), 1e-7) << t;
  }
}
