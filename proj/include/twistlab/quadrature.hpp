#pragma once
#include <functional>
#include <vector>

#include "twistlab/core.hpp"

namespace twistlab {

struct QuadratureRule {
  std::vector<double> nodes, weights;
  double integrate(const std::function<double(double)>& g) const;
  cplx integrate(const std::function<cplx(double)>& g) const;
};

// Fixed tanh-sinh rule on [a, b] with 2m+1 nodes, step tau_max/m.
QuadratureRule tanh_sinh_rule(double a, double b, int m = 100, double tau_max = 3.15);

// eta_t(s) = t (2 sqrt(pi))^{-1} s^{-3/2} e^{-t^2/(4s)}, the density subordinating L^{1/2} to L.
double subordination_density(double t, double s);
// Rule with sum_i W_i g(s_i) ~ int_0^inf g(s) eta_t(s) ds for g decaying at least like
// e^{-lambda_min s}: substitution s = e^x, then tanh-sinh on a truncated x interval.
QuadratureRule subordination_rule(double t, double lambda_min = 1.0, int m = 100);

// Gamma(nu)^{-1} int_0^inf y^{nu-1} e^{-y lambda} dy (equals lambda^{-nu}).
double gamma_integral(double lambda, double nu);
// Gamma(nu)^{-1} int_0^inf y^{nu-1} e^{-y} e^{-y lambda} dy (equals (1+lambda)^{-nu}).
double bessel_integral(double lambda, double nu);
// u v^{-u} int_0^v (v-t)^{u-1} e^{-i t lambda} dt: a power series next to the
// singular endpoint, Gauss-Legendre panels elsewhere.
cplx riesz_integral(double lambda, double u, double v);
// Same integral by endpoint-singular tanh-sinh; an independent oracle, reliable
// only for v lambda below about 20 when u < 1.
cplx riesz_integral_direct(double lambda, double u, double v);

}  // namespace twistlab
