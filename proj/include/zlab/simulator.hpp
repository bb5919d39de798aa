#pragma once

#include <complex>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "zlab/freq_geometry.hpp"
#include "zlab/oscillatory.hpp"

namespace zlab {

using cplx = std::complex<double>;

// Lattice Fourier coefficients at xi_j = j * dxi, j in [-M, M]^d (d = 1, 2),
// stored row-major with the last axis fastest.
struct SpectralField {
  int d = 1;
  double dxi = 1.0;
  int M = 0;
  std::vector<cplx> c;

  SpectralField() = default;
  SpectralField(int d_, double dxi_, int M_);

  std::size_t side() const { return static_cast<std::size_t>(2 * M + 1); }
  std::size_t size() const { return c.size(); }
  std::size_t index(std::span<const int> j) const;
  // Lattice index of entry `flat`, written to j[0..d).
  void unravel(std::size_t flat, int* j) const;
  double xi_sq(std::size_t flat) const;
  // Flat position of -j for the entry at `flat`.
  std::size_t mirror(std::size_t flat) const;
  bool same_lattice(const SpectralField& o) const;
  SpectralField zeros_like() const;
  // Largest |j|_inf over nonzero coefficients (-1 if all zero).
  int support_radius() const;

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(double a);
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double a, SpectralField f);

// Data (u, n, n_t) at t = 0, or a solution at some later time.
struct DataTriple {
  SpectralField u0;
  SpectralField n0;
  SpectralField n1;

  DataTriple scaled(double a) const;
};

struct Solution {
  SpectralField u;
  SpectralField n;
  SpectralField nt;
};

struct HklNorm {
  double u_part = 0.0;
  double n_part = 0.0;
  double nt_part = 0.0;
  double total = 0.0;
};

// max_j |c(-xi_j) - conj(c(xi_j))|
double reality_defect(const SpectralField& f);

// u0 = chi_A / <xi>^k (SCHRO_LOW_L, SOL_LOW_L) or (chi_A + chi_B) / <xi>^k
// (SCHRO_HIGH_L, SOL_HIGH_L); n0 = (chi_B(xi) + chi_B(-xi)) / <xi>^l for the
// first pair and 0 otherwise; n1 = 0. Throws ResolutionError when the sets
// are not inside |j| <= M/2 or contain no lattice point.
DataTriple make_counterexample_data(const ConstructionCase& c, const RegularityTriple& r, double dxi, int M);

// Gaussian profiles u0 = amp_u exp(-|xi|^2), n0 = amp_n exp(-|xi|^2),
// n1 = 0, zeroed outside |j| <= M/2.
DataTriple make_smooth_data(int d, double dxi, int M, double amp_u, double amp_n);

// e^{it Delta}: multiply by exp(-i t |xi|^2).
SpectralField linear_schrodinger(const SpectralField& f, double t);

// n = cos(t|xi|) psi + sin(t|xi|)/|xi| phi (limit t at xi = 0),
// n_t = cos(t|xi|) phi - |xi| sin(t|xi|) psi.
Solution linear_wave(const SpectralField& psi, const SpectralField& phi, double t);

// Coefficients of the product of the two functions: dxi^d sum_i a_i b_{j-i},
// kept for |j| <= M. Computed with zero-padded FFTs, so no wrap-around.
SpectralField lattice_product(const SpectralField& a, const SpectralField& b);

// Coefficients of the complex conjugate function: conj(c(-xi)).
SpectralField conj_reflect(const SpectralField& f);

// Second Picard iterate, i.e. the second derivative of the flow at zero data
// in directions phi0, phi1, with Gauss-Legendre quadrature in s. Inputs must
// be supported in |j| <= M/2 (AliasingError otherwise).
Solution picard_second(const DataTriple& phi0, const DataTriple& phi1, double t, int s_nodes = 64);

struct EvolveOptions {
  int steps = 100;
  int picard_iters = 3;
  bool nonlinear = true;
  // Called after every substep with the current time and state.
  std::function<void(double, const Solution&)> observer;
};

// Duhamel march in multiplier form: trapezoidal quadrature on each substep,
// fixed-point iterated picard_iters times. Throws StabilityError when a
// component grows past 10x the total norm at the start of a substep.
Solution evolve(const DataTriple& data, double t, const EvolveOptions& opt = {});

// [S(eps Phi) + S(-eps Phi)] / eps^2
Solution second_gateaux_fd(const DataTriple& phi, double t, double eps, int steps = 100, int picard_iters = 3);

HklNorm hkl_norm(const Solution& s, const RegularityTriple& r);
HklNorm hkl_norm(const DataTriple& d, const RegularityTriple& r);

// Plain lattice L2 distance of all three components over the L2 size of b.
double relative_l2_gap(const Solution& a, const Solution& b);

// JSON header {"d","dxi","M","t","k","l"} followed by CSV rows
// "j1,...,jd,re,im" for nonzero coefficients.
std::string snapshot_header(const SpectralField& f, double t, const RegularityTriple& r);
std::string snapshot_csv(const SpectralField& f);

}  // namespace zlab
