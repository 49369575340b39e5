#pragma once
#include "twistlab/lattice.hpp"

namespace twistlab {

// Two normalizations of the twisted convolution on R^{2d}, sigma(z,w) = Jz.w:
//   weyl:   a x b(z) = pi^{-d} int e^{2i sigma(z,w)} a(z-w) b(w) dw
//           (composition law of Weyl symbols: a # b = F_sigma(a) x b)
//   landau: a x b(z) = 4^d (2pi)^{-d/2} int e^{(i/2) sigma(z,w)} a(z-w) b(w) dw
//           (Phi_{a,b} x Phi_{m,n} = 4^d delta_{b,m} Phi_{a,n}; heat and
//           projections of L act by this product)
// The two are intertwined by the dilation z -> 2z.
enum class Twist { landau, weyl };

struct TwistConstants {
  double theta;  // phase e^{i theta sigma(z,w)}
  double scale;  // prefactor in front of the integral
};
TwistConstants twist_constants(Twist tw, int d);

// Exact lattice evaluation (equal to the rectangle-rule sum of the defining
// integral, with a(z-w) = 0 off the grid) in O(N^3 log N) for d = 1.
// Needs theta h^2 M / (2pi) integral for some M = 2Nm, m <= 8.
Field twisted_convolution(const Field& a, const Field& b, Twist tw = Twist::landau);
// Rectangle-rule sum evaluated directly; O(N^{2n}), any even dimension.
Field twisted_convolution_direct(const Field& a, const Field& b, Twist tw = Twist::landau);
cplx twisted_convolution_at(const Field& a, const Field& b, const int* z_index,
                            Twist tw = Twist::landau);

// a # b = F_sigma(a) x_weyl b; the grid must satisfy h^2 = pi/N.
Field weyl_product(const Field& a, const Field& b);

struct Symbol {
  enum class Kind { identity, hermite, landau, heat_theta, sampled };
  Kind kind = Kind::identity;
  double t = 0;  // heat_theta time
  Field samples; // sampled symbol a(x, xi) on R^2

  static Symbol identity() { return {Kind::identity, 0, {}}; }
  // |x|^2 + |xi|^2
  static Symbol hermite() { return {Kind::hermite, 0, {}}; }
  // sum_j (xi_j - y_j/2)^2 + (eta_j + x_j/2)^2
  static Symbol landau() { return {Kind::landau, 0, {}}; }
  // (cosh t)^{-d} exp(-tanh t |zeta - Jz/2|^2), the Weyl symbol of e^{-tL}
  static Symbol heat_theta(double t);
  static Symbol sampled(Field a);
};

// a^w f(x) = (2pi)^{-d} int int e^{i xi.(x-y)} a((x+y)/2, xi) f(y) dy dxi.
// Sampled symbols (d = 1) need spacing h_f/2 and at least 2 N_f points per axis.
Field weyl_apply(const Symbol& a, const Field& f);

}  // namespace twistlab
