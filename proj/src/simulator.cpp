#include "zlab/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include <fftw3.h>

#include "zlab/errors.hpp"
#include "zlab/fft.hpp"
#include "zlab/quadrature.hpp"

namespace zlab {

// ---------------------------------------------------------------------------
// SpectralField

SpectralField::SpectralField(int d_, double dxi_, int M_) : d(d_), dxi(dxi_), M(M_) {
  if (d != 1 && d != 2) throw DimensionError("spectral fields support d = 1 and d = 2");
  if (!(dxi > 0.0)) throw PreconditionError("lattice spacing must be positive");
  if (M < 1) throw PreconditionError("lattice half-width M must be >= 1");
  c.assign(d == 1 ? side() : side() * side(), cplx(0.0, 0.0));
}

std::size_t SpectralField::index(std::span<const int> j) const {
  if (static_cast<int>(j.size()) != d) throw DimensionError("lattice index has the wrong dimension");
  std::size_t flat = 0;
  for (int a = 0; a < d; ++a) {
    if (j[a] < -M || j[a] > M) throw PreconditionError("lattice index out of range");
    flat = flat * side() + static_cast<std::size_t>(j[a] + M);
  }
  return flat;
}

void SpectralField::unravel(std::size_t flat, int* j) const {
  if (d == 1) {
    j[0] = static_cast<int>(flat) - M;
    return;
  }
  j[0] = static_cast<int>(flat / side()) - M;
  j[1] = static_cast<int>(flat % side()) - M;
}

double SpectralField::xi_sq(std::size_t flat) const {
  int j[2];
  unravel(flat, j);
  double s = 0.0;
  for (int a = 0; a < d; ++a) s += (j[a] * dxi) * (j[a] * dxi);
  return s;
}

std::size_t SpectralField::mirror(std::size_t flat) const { return c.size() - 1 - flat; }

bool SpectralField::same_lattice(const SpectralField& o) const {
  return d == o.d && M == o.M && dxi == o.dxi;
}

SpectralField SpectralField::zeros_like() const { return SpectralField(d, dxi, M); }

int SpectralField::support_radius() const {
  int r = -1;
  int j[2];
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == cplx(0.0, 0.0)) continue;
    unravel(i, j);
    for (int a = 0; a < d; ++a) r = std::max(r, std::abs(j[a]));
  }
  return r;
}

namespace {

void require_same(const SpectralField& a, const SpectralField& b) {
  if (!a.same_lattice(b)) throw PreconditionError("fields live on different lattices");
}

}  // namespace

SpectralField& SpectralField::operator+=(const SpectralField& o) {
  require_same(*this, o);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.c[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
  require_same(*this, o);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= o.c[i];
  return *this;
}

SpectralField& SpectralField::operator*=(double a) {
  for (auto& x : c) x *= a;
  return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double a, SpectralField f) { return f *= a; }

DataTriple DataTriple::scaled(double a) const { return {a * u0, a * n0, a * n1}; }

double reality_defect(const SpectralField& f) {
  double m = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) m = std::max(m, std::abs(f.c[f.mirror(i)] - std::conj(f.c[i])));
  return m;
}

// ---------------------------------------------------------------------------
// Data

namespace {

void check_inside_half_lattice(const FreqSet& s, double dxi, int M, const char* name) {
  const double reach = 0.5 * M * dxi;
  if (s.max_abs() > reach) {
    throw ResolutionError(std::string("lattice does not cover set ") + name + " within |j| <= M/2 (need M*dxi/2 >= " +
                          std::to_string(s.max_abs()) + ")");
  }
}

}  // namespace

DataTriple make_counterexample_data(const ConstructionCase& c, const RegularityTriple& r, double dxi, int M) {
  if (r.d != c.d) throw DimensionError("regularity triple and construction case disagree on d");
  const CaseSets sets = build_sets(c);
  check_inside_half_lattice(sets.A, dxi, M, "A");
  check_inside_half_lattice(sets.B, dxi, M, "B");
  DataTriple out{SpectralField(c.d, dxi, M), SpectralField(c.d, dxi, M), SpectralField(c.d, dxi, M)};
  const bool u_only = c.id == CaseId::SchroHighL || c.id == CaseId::SolHighL;
  const FreqSet minus_b = sets.B.reflected();
  long in_a = 0, in_b = 0;
  int j[2];
  std::vector<double> xi(static_cast<std::size_t>(c.d));
  for (std::size_t i = 0; i < out.u0.size(); ++i) {
    out.u0.unravel(i, j);
    for (int a = 0; a < c.d; ++a) xi[a] = j[a] * dxi;
    const double br = std::sqrt(1.0 + out.u0.xi_sq(i));
    const bool a_hit = contains(sets.A, xi);
    const bool b_hit = contains(sets.B, xi);
    in_a += a_hit;
    in_b += b_hit;
    if (u_only) {
      out.u0.c[i] = (static_cast<double>(a_hit) + static_cast<double>(b_hit)) / std::pow(br, r.k);
    } else {
      out.u0.c[i] = static_cast<double>(a_hit) / std::pow(br, r.k);
      const double chi = static_cast<double>(b_hit) + static_cast<double>(contains(minus_b, xi));
      out.n0.c[i] = chi / std::pow(br, r.l);
    }
  }
  if (in_a == 0 || in_b == 0) throw ResolutionError("lattice spacing too coarse: no lattice point inside A or B");
  return out;
}

DataTriple make_smooth_data(int d, double dxi, int M, double amp_u, double amp_n) {
  DataTriple out{SpectralField(d, dxi, M), SpectralField(d, dxi, M), SpectralField(d, dxi, M)};
  const int half = M / 2;
  int j[2];
  for (std::size_t i = 0; i < out.u0.size(); ++i) {
    out.u0.unravel(i, j);
    bool inside = true;
    for (int a = 0; a < d; ++a) inside = inside && std::abs(j[a]) <= half;
    if (!inside) continue;
    const double g = std::exp(-out.u0.xi_sq(i));
    out.u0.c[i] = amp_u * g;
    out.n0.c[i] = amp_n * g;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Linear propagators

SpectralField linear_schrodinger(const SpectralField& f, double t) {
  SpectralField out = f;
  for (std::size_t i = 0; i < out.size(); ++i) out.c[i] *= std::polar(1.0, -t * f.xi_sq(i));
  return out;
}

namespace {

// sin(t a) / a with the limit t at a = 0
double w1(double t, double a) { return a == 0.0 ? t : std::sin(t * a) / a; }

}  // namespace

Solution linear_wave(const SpectralField& psi, const SpectralField& phi, double t) {
  require_same(psi, phi);
  Solution s{psi.zeros_like(), psi.zeros_like(), psi.zeros_like()};
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const double a = std::sqrt(psi.xi_sq(i));
    const double co = std::cos(t * a);
    s.n.c[i] = co * psi.c[i] + w1(t, a) * phi.c[i];
    s.nt.c[i] = co * phi.c[i] - a * std::sin(t * a) * psi.c[i];
  }
  return s;
}

// ---------------------------------------------------------------------------
// Products

namespace {

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};
using CBuf = std::unique_ptr<fftw_complex, FftwFree>;

// In-place complex plans per (d, P), created once and reused through the
// new-array execute interface.
class PlanCache {
 public:
  struct Plans {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
  };

  ~PlanCache() {
    for (auto& [key, p] : plans_) {
      fftw_destroy_plan(p.fwd);
      fftw_destroy_plan(p.bwd);
    }
  }

  Plans get(int d, int p) {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    auto it = plans_.find({d, p});
    if (it != plans_.end()) return it->second;
    const std::size_t total = d == 1 ? static_cast<std::size_t>(p) : static_cast<std::size_t>(p) * p;
    CBuf scratch(fftw_alloc_complex(total));
    const int n[2] = {p, p};
    Plans pl;
    pl.fwd = fftw_plan_dft(d, n, scratch.get(), scratch.get(), FFTW_FORWARD, FFTW_ESTIMATE);
    pl.bwd = fftw_plan_dft(d, n, scratch.get(), scratch.get(), FFTW_BACKWARD, FFTW_ESTIMATE);
    if (!pl.fwd || !pl.bwd) throw NumericalError("FFTW planning failed");
    plans_.emplace(std::make_pair(d, p), pl);
    return pl;
  }

 private:
  std::map<std::pair<int, int>, Plans> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

std::size_t padded_pos(const SpectralField& f, std::size_t flat, int p) {
  int j[2];
  f.unravel(flat, j);
  std::size_t pos = 0;
  for (int a = 0; a < f.d; ++a) pos = pos * static_cast<std::size_t>(p) + static_cast<std::size_t>((j[a] + p) % p);
  return pos;
}

}  // namespace

SpectralField lattice_product(const SpectralField& a, const SpectralField& b) {
  require_same(a, b);
  // Inputs live in [-M, M]; the linear convolution reaches 2M. With period
  // P >= 3M + 1 the wrapped tail never lands on |j| <= M.
  const int p = good_fft_size(3 * a.M + 1);
  const std::size_t total = a.d == 1 ? static_cast<std::size_t>(p) : static_cast<std::size_t>(p) * p;
  const auto plans = plan_cache().get(a.d, p);
  CBuf fa(fftw_alloc_complex(total)), fb(fftw_alloc_complex(total));
  if (!fa || !fb) throw NumericalError("FFT buffer allocation failed");
  std::fill_n(&fa.get()[0][0], 2 * total, 0.0);
  std::fill_n(&fb.get()[0][0], 2 * total, 0.0);
  std::vector<std::size_t> pos(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    pos[i] = padded_pos(a, i, p);
    fa.get()[pos[i]][0] = a.c[i].real();
    fa.get()[pos[i]][1] = a.c[i].imag();
    fb.get()[pos[i]][0] = b.c[i].real();
    fb.get()[pos[i]][1] = b.c[i].imag();
  }
  fftw_execute_dft(plans.fwd, fa.get(), fa.get());
  fftw_execute_dft(plans.fwd, fb.get(), fb.get());
  for (std::size_t i = 0; i < total; ++i) {
    const cplx x(fa.get()[i][0], fa.get()[i][1]), y(fb.get()[i][0], fb.get()[i][1]);
    const cplx z = x * y;
    fa.get()[i][0] = z.real();
    fa.get()[i][1] = z.imag();
  }
  fftw_execute_dft(plans.bwd, fa.get(), fa.get());
  const double scale = std::pow(a.dxi, a.d) / static_cast<double>(total);
  SpectralField out = a.zeros_like();
  for (std::size_t i = 0; i < out.size(); ++i) out.c[i] = scale * cplx(fa.get()[pos[i]][0], fa.get()[pos[i]][1]);
  return out;
}

SpectralField conj_reflect(const SpectralField& f) {
  SpectralField out = f.zeros_like();
  for (std::size_t i = 0; i < f.size(); ++i) out.c[i] = std::conj(f.c[f.mirror(i)]);
  return out;
}

// ---------------------------------------------------------------------------
// Second Picard iterate

namespace {

void require_half_support(const SpectralField& f, const char* what) {
  if (f.support_radius() > f.M / 2) {
    throw AliasingError(std::string(what) + " is not confined to |j| <= M/2");
  }
}

void require_half_support(const DataTriple& d) {
  require_same(d.u0, d.n0);
  require_same(d.u0, d.n1);
  require_half_support(d.u0, "u0");
  require_half_support(d.n0, "n0");
  require_half_support(d.n1, "n1");
}

}  // namespace

Solution picard_second(const DataTriple& phi0, const DataTriple& phi1, double t, int s_nodes) {
  if (!(t > 0.0)) throw PreconditionError("t must be positive");
  if (s_nodes < 2) throw PreconditionError("s_nodes must be >= 2");
  require_half_support(phi0);
  require_half_support(phi1);
  require_same(phi0.u0, phi1.u0);
  const SpectralField& ref = phi0.u0;
  Solution out{ref.zeros_like(), ref.zeros_like(), ref.zeros_like()};
  const GaussRule& g = gauss_legendre(s_nodes);
  const cplx minus_i(0.0, -1.0);

  for (int q = 0; q < s_nodes; ++q) {
    const double s = 0.5 * t * (1.0 + g.x[q]);
    const double ws = 0.5 * t * g.w[q];
    const SpectralField u0s = linear_schrodinger(phi0.u0, s);
    const SpectralField u1s = linear_schrodinger(phi1.u0, s);
    const SpectralField n0s = linear_wave(phi0.n0, phi0.n1, s).n;
    const SpectralField n1s = linear_wave(phi1.n0, phi1.n1, s).n;
    const SpectralField src_u = lattice_product(u0s, n1s) + lattice_product(u1s, n0s);
    const SpectralField src_n = lattice_product(u0s, conj_reflect(u1s)) + lattice_product(u1s, conj_reflect(u0s));
    const double tau = t - s;
    for (std::size_t i = 0; i < ref.size(); ++i) {
      const double xs = ref.xi_sq(i), a = std::sqrt(xs);
      out.u.c[i] += ws * minus_i * std::polar(1.0, -tau * xs) * src_u.c[i];
      out.n.c[i] += ws * w1(tau, a) * (-xs) * src_n.c[i];
      out.nt.c[i] += ws * std::cos(tau * a) * (-xs) * src_n.c[i];
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Time stepping

namespace {

double l2(const SpectralField& f) {
  double s = 0.0;
  for (const auto& x : f.c) s += std::norm(x);
  return std::sqrt(s * std::pow(f.dxi, f.d));
}

}  // namespace

Solution evolve(const DataTriple& data, double t, const EvolveOptions& opt) {
  if (!(t > 0.0)) throw PreconditionError("t must be positive");
  if (opt.steps < 1) throw PreconditionError("steps must be >= 1");
  if (opt.picard_iters < 0) throw PreconditionError("picard_iters must be >= 0");
  require_half_support(data);

  const SpectralField& ref = data.u0;
  const std::size_t n = ref.size();
  const double h = t / opt.steps;
  std::vector<cplx> e_s(n);
  std::vector<double> co(n), sn_a(n), w1h(n), lap(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double xs = ref.xi_sq(i), a = std::sqrt(xs);
    e_s[i] = std::polar(1.0, -h * xs);
    co[i] = std::cos(h * a);
    sn_a[i] = a * std::sin(h * a);
    w1h[i] = w1(h, a);
    lap[i] = -xs;
  }
  const cplx ih2(0.0, 0.5 * h);

  Solution cur{data.u0, data.n0, data.n1};
  for (int step = 0; step < opt.steps; ++step) {
    const double before = std::sqrt(std::pow(l2(cur.u), 2) + std::pow(l2(cur.n), 2) + std::pow(l2(cur.nt), 2));
    SpectralField g0 = ref.zeros_like(), a0 = ref.zeros_like();
    if (opt.nonlinear) {
      g0 = lattice_product(cur.u, conj_reflect(cur.u));
      a0 = lattice_product(cur.n, cur.u);
    }
    // Parts of the trapezoid that only involve the start of the substep.
    SpectralField u_base = ref.zeros_like(), nt_base = ref.zeros_like();
    Solution next{ref.zeros_like(), ref.zeros_like(), ref.zeros_like()};
    for (std::size_t i = 0; i < n; ++i) {
      u_base.c[i] = e_s[i] * (cur.u.c[i] - ih2 * a0.c[i]);
      next.n.c[i] = co[i] * cur.n.c[i] + w1h[i] * cur.nt.c[i] + 0.5 * h * w1h[i] * lap[i] * g0.c[i];
      nt_base.c[i] = -sn_a[i] * cur.n.c[i] + co[i] * cur.nt.c[i] + 0.5 * h * co[i] * lap[i] * g0.c[i];
    }
    next.u = u_base;
    next.nt = nt_base;
    if (opt.nonlinear) {
      for (int it = 0; it < opt.picard_iters; ++it) {
        const SpectralField a1 = lattice_product(next.n, next.u);
        const SpectralField g1 = lattice_product(next.u, conj_reflect(next.u));
        for (std::size_t i = 0; i < n; ++i) {
          next.u.c[i] = u_base.c[i] - ih2 * a1.c[i];
          next.nt.c[i] = nt_base.c[i] + 0.5 * h * lap[i] * g1.c[i];
        }
      }
    }
    if (before > 0.0) {
      for (const SpectralField* f : {&next.u, &next.n, &next.nt}) {
        const double v = l2(*f);
        if (!std::isfinite(v) || v > 10.0 * before) {
          throw StabilityError("evolution diverged at step " + std::to_string(step + 1) + " of " +
                               std::to_string(opt.steps));
        }
      }
    }
    cur = std::move(next);
    if (opt.observer) opt.observer(h * (step + 1), cur);
  }
  return cur;
}

Solution second_gateaux_fd(const DataTriple& phi, double t, double eps, int steps, int picard_iters) {
  if (!(eps > 0.0)) throw PreconditionError("eps must be positive");
  EvolveOptions opt;
  opt.steps = steps;
  opt.picard_iters = picard_iters;
  const Solution plus = evolve(phi.scaled(eps), t, opt);
  const Solution minus = evolve(phi.scaled(-eps), t, opt);
  const double inv = 1.0 / (eps * eps);
  return {inv * (plus.u + minus.u), inv * (plus.n + minus.n), inv * (plus.nt + minus.nt)};
}

// ---------------------------------------------------------------------------
// Norms and output

namespace {

double sobolev(const SpectralField& f, double s) {
  double acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) acc += std::pow(1.0 + f.xi_sq(i), s) * std::norm(f.c[i]);
  return std::sqrt(acc * std::pow(f.dxi, f.d));
}

}  // namespace

HklNorm hkl_norm(const Solution& s, const RegularityTriple& r) {
  require_same(s.u, s.n);
  require_same(s.u, s.nt);
  HklNorm h;
  h.u_part = sobolev(s.u, r.k);
  h.n_part = sobolev(s.n, r.l);
  h.nt_part = sobolev(s.nt, r.l - 1.0);
  h.total = std::sqrt(h.u_part * h.u_part + h.n_part * h.n_part + h.nt_part * h.nt_part);
  return h;
}

HklNorm hkl_norm(const DataTriple& d, const RegularityTriple& r) { return hkl_norm(Solution{d.u0, d.n0, d.n1}, r); }

double relative_l2_gap(const Solution& a, const Solution& b) {
  const double num = std::sqrt(std::pow(l2(a.u - b.u), 2) + std::pow(l2(a.n - b.n), 2) + std::pow(l2(a.nt - b.nt), 2));
  const double den = std::sqrt(std::pow(l2(b.u), 2) + std::pow(l2(b.n), 2) + std::pow(l2(b.nt), 2));
  if (den == 0.0) return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return num / den;
}

std::string snapshot_header(const SpectralField& f, double t, const RegularityTriple& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "{\"d\":%d,\"dxi\":%.17g,\"M\":%d,\"t\":%.17g,\"k\":%.17g,\"l\":%.17g}", f.d, f.dxi,
                f.M, t, r.k, r.l);
  return buf;
}

std::string snapshot_csv(const SpectralField& f) {
  std::ostringstream os;
  os << (f.d == 1 ? "j1,re,im\n" : "j1,j2,re,im\n");
  int j[2];
  char buf[96];
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f.c[i] == cplx(0.0, 0.0)) continue;
    f.unravel(i, j);
    for (int a = 0; a < f.d; ++a) os << j[a] << ',';
    std::snprintf(buf, sizeof buf, "%.16e,%.16e\n", f.c[i].real(), f.c[i].imag());
    os << buf;
  }
  return os.str();
}

}  // namespace zlab
