#pragma once
#include <array>
#include <functional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "twistlab/lattice.hpp"

namespace twistlab {

// Samples F(x, xi): x on `position`, xi on `frequency`, position-major.
struct PhaseSpaceField {
  GridSpec position;
  GridSpec frequency;
  std::vector<cplx> values;
  std::string label;

  PhaseSpaceField(const GridSpec& pos, const GridSpec& freq, std::string label = {});
  std::size_t slice_size() const { return frequency.size(); }
  std::size_t slices() const { return position.size(); }
  cplx& at(std::size_t p, std::size_t q) { return values[p * slice_size() + q]; }
  const cplx& at(std::size_t p, std::size_t q) const { return values[p * slice_size() + q]; }
};

// Samples allowed in one materialized PhaseSpaceField (default 2^24, about 256 MiB).
void set_phase_space_budget(std::size_t samples);
std::size_t phase_space_budget();

// Calls visit(p, row) with row[q] = V_g f(x_p, xi_q) on the FFT dual lattice.
// Slices are produced in parallel; visit must only touch slice-local state.
void gabor_slices(const Field& f, const Field& g,
                  const std::function<void(std::size_t, const cplx*)>& visit);

PhaseSpaceField gabor_transform(const Field& f, const Field& g);
// 2^d V_g f(z, 2J zeta); frequency lattice spacing is half the FFT spacing.
PhaseSpaceField symplectic_gabor(const Field& f, const Field& g);
// A(f,g)(x,xi) = (2pi)^{-n/2} int e^{-i xi.y} f(y + x/2) conj g(y - x/2) dy = e^{i x.xi/2} V_g f.
PhaseSpaceField ambiguity(const Field& f, const Field& g);
// W(f,g)(x,xi) = (2pi)^{-n} int e^{-i xi.y} f(x + y/2) conj g(x - y/2) dy; frequency spacing pi/(N h).
PhaseSpaceField wigner(const Field& f, const Field& g);

enum class Flavor { modulation, amalgam };

struct MixedNormSpec {
  double p = 2, q = 2, s = 0;
  Flavor flavor = Flavor::modulation;
  bool symplectic = false;
  void validate() const;
};

double mixed_norm(const PhaseSpaceField& F, const MixedNormSpec& spec);
// ||f||_{M^{p,q}_s} or ||f||_{W^{p,q}_s} with window g, evaluated slice by slice.
double gabor_mixed_norm(const Field& f, const Field& g, const MixedNormSpec& spec);
// Same for tensor products f = f_1 x ... x f_n, g = g_1 x ... x g_n of 1-d fields (s = 0 only).
double separable_gabor_mixed_norm(const std::vector<Field>& f, const std::vector<Field>& g,
                                  const MixedNormSpec& spec);

using Rational = boost::rational<long long>;

// An exponent p in [1, inf], stored as its reciprocal.
struct Exponent {
  Rational inv;
  static Exponent parse(const std::string& s);  // "1", "4/3", "inf", ...
  static Exponent from_reciprocal(Rational r);
  Rational conj_inv() const { return Rational(1) - inv; }  // 1/p'
  double value() const;
  std::string str() const;
};

struct IndexTuple {
  std::array<Exponent, 6> e;  // p0, q0, p1, q1, p2, q2
  const Exponent& p(int i) const { return e[2 * i]; }
  const Exponent& q(int i) const { return e[2 * i + 1]; }
  std::string str() const;
};

// max{1 + 1/q2 - 1/q0 - 1/q1, 0} <= min{1/p0, 1/p1, 1/p2', 1/q0', 1/q1', 1/q2, 1/p0 + 1/p1 - 1/p2}.
bool weyl_product_admissible(const IndexTuple& t);
// The two-display system as printed alongside the condition above.
bool weyl_product_restated_literal(const IndexTuple& t);
// Same system with the last display's term 1 + 1/q2 replaced by the
// constraint 1 + 1/q2 + 1/p2 <= 1/q0 + 1/q1 + 1/p0 + 1/p1; equivalent to the condition.
bool weyl_product_restated_corrected(const IndexTuple& t);

struct HeatIndexResult {
  bool admissible;
  double small_time_exponent;
};
HeatIndexResult heat_index_constants(const Exponent& p1, const Exponent& q1, const Exponent& p2,
                                     const Exponent& q2, double nu, int d);

}  // namespace twistlab
