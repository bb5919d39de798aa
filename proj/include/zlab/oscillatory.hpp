#pragma once

#include <complex>
#include <span>

#include "zlab/freq_geometry.hpp"
#include "zlab/relations.hpp"

namespace zlab {

struct RegularityTriple {
  double k = 0.0;
  double l = 0.0;
  int d = 1;
};

// SCHRO:   <xi>^k / (<xi1>^k <xi2>^l)
// WAVE_N:  <xi>^l |xi| / (<xi1>^k <xi2>^k)
// WAVE_NT: <xi>^(l-1) |xi|^2 / (<xi1>^k <xi2>^k)
enum class WeightVariant { Schro, WaveN, WaveNT };

struct QuadratureSpec {
  int inner = 8;
  int outer = 16;
  int time = 16;
  double rel_tol = 1e-8;
  int max_refinements = 6;

  void validate() const;
  QuadratureSpec doubled() const;
};

// <xi> = sqrt(1 + |xi|^2)
double jbracket(std::span<const double> xi);

double weight(std::span<const double> xi1, std::span<const double> xi2, const RegularityTriple& r,
              WeightVariant v);

// int_0^t cos(sigma s) ds
double time_integral_cos(double sigma, double t);
// E(zeta) = int_0^t exp(-i s zeta) ds
std::complex<double> time_integral_exp(double zeta, double t);

// int_{A ∩ (xi - B)} weight_SCHRO(xi1, xi - xi1) * int_0^t cos(sigma_pm s) ds dxi1
// A and B must be boxes (or d = 1 balls).
double I_pm(const FreqSet& a, const FreqSet& b, const RegularityTriple& r, double t, Sign sign,
            std::span<const double> xi, const QuadratureSpec& q = {});

// L2 norm in xi of the bilinear expression of the case, at t_eval:
//  SCHRO_LOW_L:  || (I+ + I-)/2 ||
//  SCHRO_HIGH_L: the two disjoint-support pieces A + (-B) and B + (-A) of
//                int w_N [e^{it|xi|} E(zeta+) - e^{-it|xi|} E(zeta-)],
//                combined as sqrt(|first|^2 + |second|^2)
//  SOL_LOW_L:    || int_0^t int w_S cos(s(|xi|^2-|xi1|^2)) cos(s|xi2|) ||
//  SOL_HIGH_L:   || int_0^t cos((t-s)|xi|) int w_NT cos(s(|xi1|^2-|xi2|^2)) ||
double lhs_norm(const ConstructionCase& c, const RegularityTriple& r, const QuadratureSpec& q = {});

// |A| + |B| for SCHRO_LOW_L and SOL_LOW_L, sqrt(|A||B|) otherwise.
double rhs_norm(const ConstructionCase& c);

// ||I-|| (SCHRO_LOW_L) or ||J-|| = || int w_N E(zeta-) || over A + (-B)
// (SCHRO_HIGH_L).
double upper_bound_minus_term(const ConstructionCase& c, const RegularityTriple& r, const QuadratureSpec& q = {});
// The resonant companions ||I+|| and ||J+||.
double resonant_term_norm(const ConstructionCase& c, const RegularityTriple& r, const QuadratureSpec& q = {});

}  // namespace zlab
