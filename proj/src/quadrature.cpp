#include "zlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include <gsl/gsl_integration.h>

#include "zlab/errors.hpp"

namespace zlab {

const GaussRule& gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, GaussRule> cache;
  if (n < 1) throw PreconditionError("Gauss-Legendre rule needs n >= 1");
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  gsl_integration_glfixed_table* t = gsl_integration_glfixed_table_alloc(static_cast<std::size_t>(n));
  if (!t) throw NumericalError("GSL could not allocate a Gauss-Legendre table");
  GaussRule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < n; ++i) {
    gsl_integration_glfixed_point(-1.0, 1.0, static_cast<std::size_t>(i), &r.x[i], &r.w[i], t);
  }
  gsl_integration_glfixed_table_free(t);
  return cache.emplace(n, std::move(r)).first->second;
}

void append_box_nodes(const Box& b, int n, NodeSet& out) {
  const std::size_t d = b.dim();
  if (out.d != d) throw DimensionError("append_box_nodes: node set dimension mismatch");
  for (std::size_t j = 0; j < d; ++j) {
    if (!(b.hi[j] > b.lo[j])) return;
  }
  const GaussRule& g = gauss_legendre(n);
  std::vector<int> idx(d, 0);
  std::vector<double> half(d), mid(d);
  for (std::size_t j = 0; j < d; ++j) {
    half[j] = 0.5 * (b.hi[j] - b.lo[j]);
    mid[j] = 0.5 * (b.hi[j] + b.lo[j]);
  }
  while (true) {
    double w = 1.0;
    for (std::size_t j = 0; j < d; ++j) {
      out.pts.push_back(mid[j] + half[j] * g.x[idx[j]]);
      w *= half[j] * g.w[idx[j]];
    }
    out.w.push_back(w);
    std::size_t j = 0;
    while (j < d && ++idx[j] == n) idx[j++] = 0;
    if (j == d) break;
  }
}

namespace {

// Orthonormal frame whose first vector is e.
std::vector<FreqVector> frame(const FreqVector& e) {
  const std::size_t d = e.size();
  std::vector<FreqVector> f{e};
  for (std::size_t k = 0; k < d && f.size() < d; ++k) {
    FreqVector v(d, 0.0);
    v[k] = 1.0;
    for (const auto& u : f) {
      double p = 0.0;
      for (std::size_t j = 0; j < d; ++j) p += v[j] * u[j];
      for (std::size_t j = 0; j < d; ++j) v[j] -= p * u[j];
    }
    double nv = 0.0;
    for (double x : v) nv += x * x;
    nv = std::sqrt(nv);
    if (nv < 1e-8) continue;
    for (double& x : v) x /= nv;
    f.push_back(std::move(v));
  }
  return f;
}

void check_low_dim(std::size_t d) {
  if (d != 2 && d != 3) throw UnsupportedShapeError("ball quadrature is implemented for d = 2 and d = 3");
}

// Cross-section of radius rho orthogonal to f[0] at base point p.
void append_section(const std::vector<FreqVector>& f, const FreqVector& p, double rho, double wz, int n,
                    NodeSet& out) {
  const std::size_t d = p.size();
  const GaussRule& g = gauss_legendre(n);
  if (d == 2) {
    for (int i = 0; i < n; ++i) {
      const double s = rho * g.x[i];
      for (std::size_t j = 0; j < d; ++j) out.pts.push_back(p[j] + s * f[1][j]);
      out.w.push_back(wz * rho * g.w[i]);
    }
    return;
  }
  const int m = 2 * n;
  const double dphi = 2.0 * std::numbers::pi / m;
  for (int i = 0; i < n; ++i) {
    const double rr = 0.5 * rho * (1.0 + g.x[i]);
    const double wr = 0.5 * rho * g.w[i] * rr;
    for (int a = 0; a < m; ++a) {
      const double phi = (a + 0.5) * dphi;
      const double cp = std::cos(phi), sp = std::sin(phi);
      for (std::size_t j = 0; j < d; ++j) out.pts.push_back(p[j] + rr * (cp * f[1][j] + sp * f[2][j]));
      out.w.push_back(wz * wr * dphi);
    }
  }
}

}  // namespace

void append_lens_nodes(const Ball& b1, const Ball& b2, int n, NodeSet& out) {
  const std::size_t d = b1.dim();
  check_low_dim(d);
  if (out.d != d || b2.dim() != d) throw DimensionError("append_lens_nodes: dimension mismatch");
  FreqVector e(d, 0.0);
  double dist = 0.0;
  for (std::size_t j = 0; j < d; ++j) dist += (b2.center[j] - b1.center[j]) * (b2.center[j] - b1.center[j]);
  dist = std::sqrt(dist);
  if (dist > 1e-14 * std::max(1.0, b1.radius + b2.radius)) {
    for (std::size_t j = 0; j < d; ++j) e[j] = (b2.center[j] - b1.center[j]) / dist;
  } else {
    dist = 0.0;
    e[0] = 1.0;
  }
  const auto f = frame(e);
  const double r1 = b1.radius, r2 = b2.radius;
  const double zlo = std::max(-r1, dist - r2);
  const double zhi = std::min(r1, dist + r2);
  if (!(zhi > zlo)) return;

  std::vector<double> cuts{zlo};
  if (dist > 0.0) {
    const double zs = (dist * dist + r1 * r1 - r2 * r2) / (2.0 * dist);
    if (zs > zlo && zs < zhi) cuts.push_back(zs);
  }
  cuts.push_back(zhi);

  const GaussRule& g = gauss_legendre(n);
  FreqVector p(d);
  for (std::size_t piece = 0; piece + 1 < cuts.size(); ++piece) {
    const double za = cuts[piece], zb = cuts[piece + 1];
    const double zm = 0.5 * (za + zb);
    const double q1 = r1 * r1 - zm * zm;
    const double q2 = r2 * r2 - (zm - dist) * (zm - dist);
    const double cz = q1 <= q2 ? 0.0 : dist;
    const double r = q1 <= q2 ? r1 : r2;
    const double ta = std::acos(std::clamp((za - cz) / r, -1.0, 1.0));
    const double tb = std::acos(std::clamp((zb - cz) / r, -1.0, 1.0));
    // tb <= ta; z = cz + r cos(theta), |dz| = r sin(theta) dtheta
    const double half = 0.5 * (ta - tb), mid = 0.5 * (ta + tb);
    for (int i = 0; i < n; ++i) {
      const double th = mid + half * g.x[i];
      const double z = cz + r * std::cos(th);
      const double rho = r * std::sin(th);
      const double wz = half * g.w[i] * rho;
      for (std::size_t j = 0; j < d; ++j) p[j] = b1.center[j] + z * e[j];
      append_section(f, p, rho, wz, n, out);
    }
  }
}

void append_ball_nodes(const FreqVector& c, double R, double r_split, int n, NodeSet& out) {
  const std::size_t d = c.size();
  check_low_dim(d);
  if (out.d != d) throw DimensionError("append_ball_nodes: dimension mismatch");
  std::vector<double> radii{0.0};
  if (r_split > 0.0 && r_split < R) radii.push_back(r_split);
  radii.push_back(R);
  const GaussRule& g = gauss_legendre(n);
  const int m = 2 * n;
  const double dphi = 2.0 * std::numbers::pi / m;
  for (std::size_t piece = 0; piece + 1 < radii.size(); ++piece) {
    const double ra = radii[piece], rb = radii[piece + 1];
    const double half = 0.5 * (rb - ra), mid = 0.5 * (rb + ra);
    for (int i = 0; i < n; ++i) {
      const double rr = mid + half * g.x[i];
      const double wr = half * g.w[i];
      if (d == 2) {
        for (int a = 0; a < m; ++a) {
          const double phi = (a + 0.5) * dphi;
          out.pts.push_back(c[0] + rr * std::cos(phi));
          out.pts.push_back(c[1] + rr * std::sin(phi));
          out.w.push_back(wr * rr * dphi);
        }
      } else {
        for (int b = 0; b < n; ++b) {
          const double mu = g.x[b];
          const double st = std::sqrt(1.0 - mu * mu);
          for (int a = 0; a < m; ++a) {
            const double phi = (a + 0.5) * dphi;
            out.pts.push_back(c[0] + rr * mu);
            out.pts.push_back(c[1] + rr * st * std::cos(phi));
            out.pts.push_back(c[2] + rr * st * std::sin(phi));
            out.w.push_back(wr * rr * rr * g.w[b] * dphi);
          }
        }
      }
    }
  }
}

std::vector<Box> sum_support_pieces(const Box& a, const Box& b) {
  const std::size_t d = a.dim();
  if (b.dim() != d) throw DimensionError("sum_support_pieces: dimension mismatch");
  std::vector<std::vector<double>> cuts(d);
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<double> c{a.lo[j] + b.lo[j], a.lo[j] + b.hi[j], a.hi[j] + b.lo[j], a.hi[j] + b.hi[j]};
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    cuts[j] = std::move(c);
  }
  std::vector<Box> out;
  for (std::size_t j = 0; j < d; ++j) {
    if (cuts[j].size() < 2) return out;  // degenerate support
  }
  std::vector<std::size_t> idx(d, 0);
  while (true) {
    std::vector<double> lo(d), hi(d);
    for (std::size_t j = 0; j < d; ++j) {
      lo[j] = cuts[j][idx[j]];
      hi[j] = cuts[j][idx[j] + 1];
    }
    out.emplace_back(std::move(lo), std::move(hi));
    std::size_t j = 0;
    while (j < d && ++idx[j] + 1 == cuts[j].size()) idx[j++] = 0;
    if (j == d) break;
  }
  return out;
}

}  // namespace zlab
