#include "zlab/conv_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "zlab/errors.hpp"
#include "zlab/fft.hpp"

namespace zlab {

namespace {

double trapezoid_sq(double p, double q) {
  const double m = std::min(p, q), big = std::max(p, q);
  return 2.0 * m * m * m / 3.0 + m * m * (big - m);
}

Box interval_of(const Ball& b) { return Box({b.center[0] - b.radius}, {b.center[0] + b.radius}); }

std::vector<Box> boxes_of(const FreqSet& s) {
  std::vector<Box> out = s.boxes();
  for (const auto& b : s.balls()) {
    if (s.dim() != 1) throw UnsupportedShapeError("exact convolution norm needs boxes (balls only in d = 1)");
    out.push_back(interval_of(b));
  }
  return out;
}

bool interiors_overlap(const Box& a, const Box& b) {
  for (std::size_t j = 0; j < a.dim(); ++j) {
    if (a.hi[j] <= b.lo[j] || b.hi[j] <= a.lo[j]) return false;
  }
  return true;
}

Box minkowski_sum(const Box& a, const Box& b) {
  std::vector<double> lo(a.dim()), hi(a.dim());
  for (std::size_t j = 0; j < a.dim(); ++j) {
    lo[j] = a.lo[j] + b.lo[j];
    hi[j] = a.hi[j] + b.hi[j];
  }
  return Box(std::move(lo), std::move(hi));
}

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Dense coverage array on the cell lattice.
struct Grid {
  std::vector<long> origin;
  std::vector<int> shape;
  std::vector<double> c;
};

std::size_t cell_count(const std::vector<int>& shape) {
  std::size_t n = 1;
  for (int s : shape) n *= static_cast<std::size_t>(s);
  return n;
}

// Visits every multi-index of `shape` in row-major order.
template <class F>
void for_each_index(const std::vector<int>& shape, F f) {
  std::vector<int> idx(shape.size(), 0);
  std::size_t flat = 0;
  while (true) {
    f(idx, flat++);
    std::size_t j = shape.size();
    while (j > 0) {
      --j;
      if (++idx[j] < shape[j]) break;
      idx[j] = 0;
      if (j == 0) return;
    }
  }
}

void bounding_cells(const std::vector<double>& lo, const std::vector<double>& hi, double h, Grid& g) {
  const std::size_t d = lo.size();
  g.origin.resize(d);
  g.shape.resize(d);
  for (std::size_t j = 0; j < d; ++j) {
    const long a = static_cast<long>(std::floor(lo[j] / h));
    long b = static_cast<long>(std::ceil(hi[j] / h));
    if (b <= a) b = a + 1;
    g.origin[j] = a;
    g.shape[j] = static_cast<int>(b - a);
  }
  g.c.assign(cell_count(g.shape), 0.0);
}

Grid box_grid(const Box& b, double h) {
  Grid g;
  bounding_cells(b.lo, b.hi, h, g);
  const std::size_t d = b.dim();
  std::vector<std::vector<double>> frac(d);
  for (std::size_t j = 0; j < d; ++j) {
    for (int i = 0; i < g.shape[j]; ++i) {
      const double c0 = static_cast<double>(g.origin[j] + i) * h;
      const double ov = std::min(b.hi[j], c0 + h) - std::max(b.lo[j], c0);
      frac[j].push_back(std::max(0.0, ov) / h);
    }
  }
  for_each_index(g.shape, [&](const std::vector<int>& idx, std::size_t flat) {
    double v = 1.0;
    for (std::size_t j = 0; j < d; ++j) v *= frac[j][idx[j]];
    g.c[flat] = v;
  });
  return g;
}

Grid ball_grid(const Ball& b, double h) {
  const std::size_t d = b.dim();
  std::vector<double> lo(d), hi(d);
  for (std::size_t j = 0; j < d; ++j) {
    lo[j] = b.center[j] - b.radius;
    hi[j] = b.center[j] + b.radius;
  }
  Grid g;
  bounding_cells(lo, hi, h, g);
  const int sub = d <= 2 ? 16 : 8;
  const double r2 = b.radius * b.radius;
  std::vector<int> sub_shape(d, sub);
  for_each_index(g.shape, [&](const std::vector<int>& idx, std::size_t flat) {
    double near = 0.0, far = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      const double c0 = static_cast<double>(g.origin[j] + idx[j]) * h - b.center[j];
      const double c1 = c0 + h;
      const double dn = (c0 > 0.0) ? c0 : (c1 < 0.0 ? -c1 : 0.0);
      const double df = std::max(std::abs(c0), std::abs(c1));
      near += dn * dn;
      far += df * df;
    }
    if (far <= r2) {
      g.c[flat] = 1.0;
      return;
    }
    if (near >= r2) return;
    long inside = 0;
    for_each_index(sub_shape, [&](const std::vector<int>& s, std::size_t) {
      double q = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        const double x = (static_cast<double>(g.origin[j] + idx[j]) + (s[j] + 0.5) / sub) * h - b.center[j];
        q += x * x;
      }
      if (q < r2) ++inside;
    });
    g.c[flat] = static_cast<double>(inside) / std::pow(static_cast<double>(sub), static_cast<double>(d));
  });
  return g;
}

std::vector<Grid> grids_of(const FreqSet& s, double h) {
  std::vector<Grid> out;
  for (const auto& b : s.boxes()) {
    double thin = b.hi[0] - b.lo[0];
    for (std::size_t j = 1; j < b.dim(); ++j) thin = std::min(thin, b.hi[j] - b.lo[j]);
    if (thin < 4.0 * h) throw ResolutionError("grid spacing h is too coarse: fewer than 4 cells across a box");
    out.push_back(box_grid(b, h));
  }
  for (const auto& b : s.balls()) {
    if (2.0 * b.radius < 4.0 * h) throw ResolutionError("grid spacing h is too coarse: fewer than 4 cells across a ball");
    out.push_back(s.dim() == 1 ? box_grid(interval_of(b), h) : ball_grid(b, h));
  }
  return out;
}

Grid convolve(const Grid& a, const Grid& b) {
  Grid out;
  const std::size_t d = a.shape.size();
  out.origin.resize(d);
  out.shape.resize(d);
  for (std::size_t j = 0; j < d; ++j) {
    out.origin[j] = a.origin[j] + b.origin[j];
    out.shape[j] = a.shape[j] + b.shape[j] - 1;
  }
  const double work = static_cast<double>(a.c.size()) * static_cast<double>(b.c.size());
  out.c = work < static_cast<double>(1L << 20) ? convolve_direct(a.c, a.shape, b.c, b.shape)
                                                 : convolve_fft(a.c, a.shape, b.c, b.shape);
  return out;
}

bool grids_overlap(const Grid& a, const Grid& b) {
  for (std::size_t j = 0; j < a.shape.size(); ++j) {
    if (a.origin[j] + a.shape[j] <= b.origin[j] || b.origin[j] + b.shape[j] <= a.origin[j]) return false;
  }
  return true;
}

}  // namespace

double conv_l2_boxes(const Box& a, const Box& b) {
  if (a.dim() != b.dim()) throw DimensionError("conv_l2_boxes: dimension mismatch");
  double v = 1.0;
  for (std::size_t j = 0; j < a.dim(); ++j) v *= trapezoid_sq(a.hi[j] - a.lo[j], b.hi[j] - b.lo[j]);
  return std::sqrt(v);
}

double conv_l2_exact(const FreqSet& a, const FreqSet& b) {
  if (a.dim() != b.dim()) throw DimensionError("conv_l2_exact: dimension mismatch");
  const auto ba = boxes_of(a), bb = boxes_of(b);
  std::vector<Box> supports;
  double total = 0.0;
  for (const auto& x : ba) {
    for (const auto& y : bb) {
      Box s = minkowski_sum(x, y);
      for (const auto& o : supports) {
        if (interiors_overlap(s, o)) throw UnsupportedShapeError("convolution supports overlap; no exact formula");
      }
      supports.push_back(std::move(s));
      const double v = conv_l2_boxes(x, y);
      total += v * v;
    }
  }
  return std::sqrt(total);
}

double conv_l2_grid(const FreqSet& a, const FreqSet& b, double h) {
  if (a.dim() != b.dim()) throw DimensionError("conv_l2_grid: dimension mismatch");
  if (!(h > 0.0)) throw PreconditionError("grid spacing must be positive");
  const std::size_t d = a.dim();
  const auto ga = grids_of(a, h), gb = grids_of(b, h);
  std::vector<Grid> outs;
  for (const auto& x : ga)
    for (const auto& y : gb) outs.push_back(convolve(x, y));

  // Group overlapping outputs so contributions landing on the same cell add
  // before squaring.
  std::vector<std::size_t> parent(outs.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < outs.size(); ++i)
    for (std::size_t j = i + 1; j < outs.size(); ++j)
      if (grids_overlap(outs[i], outs[j])) parent[find(j)] = find(i);

  double sumsq = 0.0;
  for (std::size_t root = 0; root < outs.size(); ++root) {
    if (find(root) != root) continue;
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < outs.size(); ++i)
      if (find(i) == root) members.push_back(i);
    if (members.size() == 1) {
      for (double v : outs[root].c) sumsq += v * v;
      continue;
    }
    Grid acc;
    acc.origin = outs[members[0]].origin;
    std::vector<long> end(d);
    for (std::size_t j = 0; j < d; ++j) end[j] = acc.origin[j] + outs[members[0]].shape[j];
    for (std::size_t m : members) {
      for (std::size_t j = 0; j < d; ++j) {
        acc.origin[j] = std::min(acc.origin[j], outs[m].origin[j]);
        end[j] = std::max(end[j], outs[m].origin[j] + outs[m].shape[j]);
      }
    }
    acc.shape.resize(d);
    for (std::size_t j = 0; j < d; ++j) acc.shape[j] = static_cast<int>(end[j] - acc.origin[j]);
    acc.c.assign(cell_count(acc.shape), 0.0);
    for (std::size_t m : members) {
      const Grid& g = outs[m];
      for_each_index(g.shape, [&](const std::vector<int>& idx, std::size_t flat) {
        std::size_t off = 0;
        for (std::size_t j = 0; j < d; ++j) {
          off = off * static_cast<std::size_t>(acc.shape[j]) +
                static_cast<std::size_t>(g.origin[j] - acc.origin[j] + idx[j]);
        }
        acc.c[off] += g.c[flat];
      });
    }
    for (double v : acc.c) sumsq += v * v;
  }
  const double dd = static_cast<double>(d);
  return std::pow(h, dd) * std::pow(h, 0.5 * dd) * std::sqrt(sumsq);
}

LemmaReport lemma_check(const FreqSet& a, const FreqSet& b, const FreqSet& r, double h) {
  LemmaReport rep;
  rep.lhs = std::sqrt(measure(r)) * measure(b);
  try {
    const ContainmentCertificate cert = minkowski_diff_subset(r, b, a);
    rep.applicable = cert.holds;
    rep.detail = cert.detail;
  } catch (const UnsupportedShapeError& e) {
    rep.applicable = false;
    rep.detail = e.what();
  }
  try {
    rep.rhs = conv_l2_exact(a, b);
    rep.method = "exact";
    rep.h = 0.0;
    rep.eps_h = 0.0;
  } catch (const UnsupportedShapeError&) {
    const double v1 = conv_l2_grid(a, b, h);
    const double v2 = conv_l2_grid(a, b, 0.5 * h);
    rep.rhs = v2;
    rep.method = "grid";
    rep.h = h;
    rep.eps_h = std::abs(v1 - v2) / v2;
  }
  rep.margin = rep.rhs - rep.lhs;
  rep.holds = rep.applicable && rep.lhs <= rep.rhs * (1.0 + rep.eps_h);
  if (!rep.applicable) rep.detail = "premise R - B ⊆ A fails: " + rep.detail;
  return rep;
}

std::string to_json(const LemmaReport& rep) {
  std::ostringstream os;
  os << "{\"lhs\":" << num(rep.lhs) << ",\"rhs\":" << num(rep.rhs) << ",\"margin\":" << num(rep.margin)
     << ",\"method\":\"" << rep.method << "\",\"h\":" << num(rep.h) << ",\"applicable\":"
     << (rep.applicable ? "true" : "false") << ",\"eps_h\":" << num(rep.eps_h)
     << ",\"holds\":" << (rep.holds ? "true" : "false") << '}';
  return os.str();
}

BoxTriple random_contained_triple(std::mt19937_64& rng, int d) {
  if (d < 1) throw PreconditionError("d must be >= 1");
  std::uniform_real_distribution<double> corner(-5.0, 5.0), side(0.05, 2.0), pad(0.0, 0.5);
  auto box = [&]() {
    std::vector<double> lo(d), hi(d);
    for (int j = 0; j < d; ++j) {
      lo[j] = corner(rng);
      hi[j] = lo[j] + side(rng);
    }
    return Box(std::move(lo), std::move(hi));
  };
  Box b = box();
  Box r = box();
  std::vector<double> lo(d), hi(d);
  for (int j = 0; j < d; ++j) {
    lo[j] = r.lo[j] - b.hi[j] - pad(rng);
    hi[j] = r.hi[j] - b.lo[j] + pad(rng);
  }
  return {Box(std::move(lo), std::move(hi)), std::move(b), std::move(r)};
}

}  // namespace zlab
