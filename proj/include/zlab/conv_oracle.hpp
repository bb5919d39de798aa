#pragma once

#include <random>
#include <string>

#include "zlab/freq_geometry.hpp"

namespace zlab {

// ||chi_A * chi_B||_{L2}, exact. Per axis the convolution of two interval
// indicators is a trapezoid with squared norm 2m^3/3 + m^2 (M - m), m and M
// the shorter and longer lengths; the d-dimensional value is the product.
double conv_l2_boxes(const Box& a, const Box& b);

// Exact value for unions of boxes (d = 1 balls count as intervals) whose
// pairwise convolution supports are disjoint. Throws UnsupportedShapeError
// otherwise.
double conv_l2_exact(const FreqSet& a, const FreqSet& b);

// Riemann approximation on cells [j h, (j+1) h)^d. Cells carry their exact
// coverage fraction for boxes and a sub-sampled one for ball boundaries.
// Throws ResolutionError if some constituent is less than 4 cells thick.
double conv_l2_grid(const FreqSet& a, const FreqSet& b, double h);

struct LemmaReport {
  double lhs = 0.0;  // |R|^{1/2} |B|
  double rhs = 0.0;  // ||chi_A * chi_B||
  double margin = 0.0;
  std::string method;  // "exact" or "grid"
  double h = 0.0;
  double eps_h = 0.0;
  bool applicable = false;
  bool holds = false;
  std::string detail;
};

// Checks |R|^{1/2}|B| <= ||chi_A * chi_B|| given R - B ⊆ A. The grid
// method runs at h and h/2 and accepts lhs <= rhs (1 + eps_h) with
// eps_h = |v_h - v_{h/2}| / v_{h/2}.
LemmaReport lemma_check(const FreqSet& a, const FreqSet& b, const FreqSet& r, double h);

std::string to_json(const LemmaReport& rep);

struct BoxTriple {
  Box a, b, r;
};

// Random B and R (corners in [-5, 5], sides in [0.05, 2]) with A the box
// R - B inflated by a random margin in [0, 0.5] per side, so R - B ⊆ A.
BoxTriple random_contained_triple(std::mt19937_64& rng, int d);

}  // namespace zlab
