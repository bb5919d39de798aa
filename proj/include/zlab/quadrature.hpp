#pragma once

#include <vector>

#include "zlab/freq_geometry.hpp"

namespace zlab {

// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> x;
  std::vector<double> w;
};

// Cached; safe to call from several threads.
const GaussRule& gauss_legendre(int n);

// Flat list of quadrature nodes in R^d: point i is pts[i*d .. i*d+d).
struct NodeSet {
  std::size_t d = 0;
  std::vector<double> pts;
  std::vector<double> w;

  std::size_t size() const { return w.size(); }
  const double* point(std::size_t i) const { return pts.data() + i * d; }
  void clear(std::size_t dim) {
    d = dim;
    pts.clear();
    w.clear();
  }
};

// Appends the tensor rule with n nodes per axis on box b. Degenerate boxes
// contribute nothing.
void append_box_nodes(const Box& b, int n, NodeSet& out);

// Appends nodes for ball(c1, r1) ∩ ball(c2, r2), d in {2, 3}. The lens is
// sliced along the axis through the centres; on each slab the binding sphere
// is parametrised by z = cz + r cos(theta) so the cross-section radius
// r sin(theta) has no square-root endpoint singularity.
void append_lens_nodes(const Ball& b1, const Ball& b2, int n, NodeSet& out);

// Appends nodes for ball(c, R) split radially at r_split (0 < r_split < R),
// d in {2, 3}. Polar/spherical coordinates with Gauss-Legendre in the radius
// (and in cos(polar angle) for d = 3), trapezoid in azimuth.
void append_ball_nodes(const FreqVector& c, double R, double r_split, int n, NodeSet& out);

// Per-axis breakpoints of (chi_A * chi_B)(xi) for boxes A, B: the support
// A + B cut at loA+hiB and hiA+loB, giving up to 3^d pieces on which the
// overlap volume is a polynomial.
std::vector<Box> sum_support_pieces(const Box& a, const Box& b);

}  // namespace zlab
