#include "twistlab/quadrature.hpp"

#include <cmath>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace twistlab {

double QuadratureRule::integrate(const std::function<double(double)>& g) const {
  double s = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * g(nodes[i]);
  return s;
}

cplx QuadratureRule::integrate(const std::function<cplx(double)>& g) const {
  cplx s = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * g(nodes[i]);
  return s;
}

QuadratureRule tanh_sinh_rule(double a, double b, int m, double tau_max) {
  if (!(b > a) || m < 1) throw ParameterError("invalid tanh-sinh interval");
  QuadratureRule r;
  const double step = tau_max / m, mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int k = -m; k <= m; ++k) {
    double tau = k * step, u = 0.5 * pi * std::sinh(tau);
    double ch = std::cosh(u);
    r.nodes.push_back(mid + half * std::tanh(u));
    r.weights.push_back(half * 0.5 * pi * std::cosh(tau) / (ch * ch) * step);
  }
  return r;
}

double subordination_density(double t, double s) {
  if (s <= 0) return 0;
  return t / (2 * std::sqrt(pi)) * std::pow(s, -1.5) * std::exp(-t * t / (4 * s));
}

QuadratureRule subordination_rule(double t, double lambda_min, int m) {
  if (!(t > 0)) throw ParameterError("subordination needs t > 0");
  if (!(lambda_min > 0)) throw ParameterError("subordination needs a positive spectral floor");
  // Below x = log(t^2/170) the factor e^{-t^2/(4s)} is under 1e-18; above
  // log(40/lambda_min) the integrand is killed by e^{-lambda s}.
  double a = std::log(t * t / 170), b = std::log(40 / lambda_min);
  if (b <= a) b = a + 10;
  QuadratureRule x = tanh_sinh_rule(a, b, m);
  QuadratureRule r;
  for (std::size_t i = 0; i < x.nodes.size(); ++i) {
    double s = std::exp(x.nodes[i]);
    r.nodes.push_back(s);
    r.weights.push_back(x.weights[i] * s * subordination_density(t, s));
  }
  return r;
}

double gamma_integral(double lambda, double nu) {
  if (!(nu > 0)) throw ParameterError("negative power needs nu > 0");
  if (!(lambda > 0)) throw ParameterError("gamma integral needs lambda > 0");
  // y = e^x turns the integrand into e^{nu x - lambda e^x}, smooth on the line.
  boost::math::quadrature::exp_sinh<double> right;
  boost::math::quadrature::exp_sinh<double> left;
  auto g = [&](double x) { return std::exp(nu * x - lambda * std::exp(x)); };
  double x0 = std::log(nu / lambda);  // peak of the integrand
  double s = right.integrate([&](double x) { return g(x0 + x); }, 0.0,
                             std::numeric_limits<double>::infinity());
  s += left.integrate([&](double x) { return g(x0 - x); }, 0.0,
                      std::numeric_limits<double>::infinity());
  return s / std::tgamma(nu);
}

double bessel_integral(double lambda, double nu) { return gamma_integral(1.0 + lambda, nu); }

cplx riesz_integral(double lambda, double u, double v) {
  if (!(u > 0) || !(v > 0)) throw ParameterError("Riesz means need u > 0 and v > 0");
  // With t = v(1 - r): e^{-ia} int_0^1 u r^{u-1} e^{iar} dr, a = v lambda.
  const double a = v * lambda, r0 = std::min(1.0, 1 / std::max(std::abs(a), 1.0));
  // Power series on [0, r0], where |a r| <= 1.
  cplx head = 0, term = std::pow(r0, u);
  for (int n = 0; n < 40; ++n) {
    head += term / (n + u);
    term *= cplx(0, a * r0) / double(n + 1);
  }
  head *= u;
  // Panels of phase width at most one radian on [r0, 1].
  using GL = boost::math::quadrature::gauss<double, 20>;
  double re = 0, im = 0;
  const int panels = static_cast<int>(std::ceil(std::abs(a) * (1 - r0)));
  for (int k = 0; k < panels; ++k) {
    double lo = r0 + (1 - r0) * k / panels, hi = r0 + (1 - r0) * (k + 1) / panels;
    re += GL::integrate([&](double r) { return u * std::pow(r, u - 1) * std::cos(a * r); }, lo, hi);
    im += GL::integrate([&](double r) { return u * std::pow(r, u - 1) * std::sin(a * r); }, lo, hi);
  }
  return std::polar(1.0, -a) * (head + cplx(re, im));
}

cplx riesz_integral_direct(double lambda, double u, double v) {
  if (!(u > 0) || !(v > 0)) throw ParameterError("Riesz means need u > 0 and v > 0");
  boost::math::quadrature::tanh_sinh<double> ts;
  const double c = u * std::pow(v, -u);
  auto w = [&](double t, double tc) {
    // tc = v - t supplied by the integrator near the right endpoint.
    return c * std::pow(tc > 0 ? tc : v - t, u - 1);
  };
  double re = ts.integrate([&](double t, double tc) { return w(t, tc) * std::cos(t * lambda); },
                           0.0, v);
  double im = ts.integrate([&](double t, double tc) { return -w(t, tc) * std::sin(t * lambda); },
                           0.0, v);
  return {re, im};
}

}  // namespace twistlab
