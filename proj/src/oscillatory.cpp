#include "zlab/oscillatory.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <vector>

#include "zlab/errors.hpp"
#include "zlab/quadrature.hpp"

namespace zlab {

void QuadratureSpec::validate() const {
  if (inner < 2 || outer < 2 || time < 2) throw PreconditionError("quadrature node counts must be >= 2");
  if (!(rel_tol > 0.0)) throw PreconditionError("rel_tol must be positive");
  if (max_refinements < 0) throw PreconditionError("max_refinements must be >= 0");
}

QuadratureSpec QuadratureSpec::doubled() const {
  QuadratureSpec q = *this;
  q.inner *= 2;
  q.outer *= 2;
  q.time *= 2;
  return q;
}

double jbracket(std::span<const double> xi) {
  double s = 1.0;
  for (double x : xi) s += x * x;
  return std::sqrt(s);
}

namespace {

double sq(const double* v, std::size_t d) {
  double s = 0.0;
  for (std::size_t j = 0; j < d; ++j) s += v[j] * v[j];
  return s;
}

double weight_raw(const double* xi, const double* xi1, const double* xi2, std::size_t d, const RegularityTriple& r,
                  WeightVariant v) {
  const double n = sq(xi, d), n1 = sq(xi1, d), n2 = sq(xi2, d);
  // <x>^p = (1 + |x|^2)^(p/2)
  switch (v) {
    case WeightVariant::Schro:
      return std::pow(1.0 + n, 0.5 * r.k) / (std::pow(1.0 + n1, 0.5 * r.k) * std::pow(1.0 + n2, 0.5 * r.l));
    case WeightVariant::WaveN:
      return std::pow(1.0 + n, 0.5 * r.l) * std::sqrt(n) /
             (std::pow(1.0 + n1, 0.5 * r.k) * std::pow(1.0 + n2, 0.5 * r.k));
    case WeightVariant::WaveNT:
      return std::pow(1.0 + n, 0.5 * (r.l - 1.0)) * n /
             (std::pow(1.0 + n1, 0.5 * r.k) * std::pow(1.0 + n2, 0.5 * r.k));
  }
  return 0.0;
}

// xi1 ranges over x, xi2 = xi - xi1 over y.
struct Pair {
  bool is_box = true;
  Box x, y;
  Ball bx, by;
};

Box as_box(const Ball& b) {
  return Box({b.center[0] - b.radius}, {b.center[0] + b.radius});
}

std::vector<Pair> make_pairs(const FreqSet& xs, const FreqSet& ys) {
  if (xs.dim() != ys.dim()) throw DimensionError("dimension mismatch between interacting sets");
  const std::size_t d = xs.dim();
  std::vector<Box> xb = xs.boxes(), yb = ys.boxes();
  std::vector<Ball> xl, yl;
  for (const auto& b : xs.balls()) {
    if (d == 1) xb.push_back(as_box(b));
    else xl.push_back(b);
  }
  for (const auto& b : ys.balls()) {
    if (d == 1) yb.push_back(as_box(b));
    else yl.push_back(b);
  }
  if ((!xb.empty() || !yb.empty()) && (!xl.empty() || !yl.empty())) {
    throw UnsupportedShapeError("bilinear quadrature needs both sets made of boxes or both of balls");
  }
  if (d > 3) throw UnsupportedShapeError("norm evaluation is implemented for d <= 3");
  std::vector<Pair> out;
  for (const auto& a : xb)
    for (const auto& b : yb) out.push_back(Pair{true, a, b, {}, {}});
  for (const auto& a : xl)
    for (const auto& b : yl) out.push_back(Pair{false, {}, {}, a, b});
  return out;
}

// Support of xi for the pair, as a box or a ball.
Box support_box(const Pair& p) {
  std::vector<double> lo(p.x.dim()), hi(p.x.dim());
  for (std::size_t j = 0; j < lo.size(); ++j) {
    lo[j] = p.x.lo[j] + p.y.lo[j];
    hi[j] = p.x.hi[j] + p.y.hi[j];
  }
  return Box(std::move(lo), std::move(hi));
}

Ball support_ball(const Pair& p) {
  FreqVector c(p.bx.dim());
  for (std::size_t j = 0; j < c.size(); ++j) c[j] = p.bx.center[j] + p.by.center[j];
  return Ball(std::move(c), p.bx.radius + p.by.radius);
}

bool supports_overlap(const Pair& p, const Pair& q) {
  if (p.is_box) {
    const Box a = support_box(p), b = support_box(q);
    for (std::size_t j = 0; j < a.dim(); ++j) {
      if (a.hi[j] <= b.lo[j] || b.hi[j] <= a.lo[j]) return false;
    }
    return true;
  }
  const Ball a = support_ball(p), b = support_ball(q);
  double d2 = 0.0;
  for (std::size_t j = 0; j < a.dim(); ++j) d2 += (a.center[j] - b.center[j]) * (a.center[j] - b.center[j]);
  return std::sqrt(d2) < a.radius + b.radius;
}

void require_disjoint_supports(const std::vector<Pair>& pairs) {
  for (std::size_t i = 0; i < pairs.size(); ++i)
    for (std::size_t j = i + 1; j < pairs.size(); ++j)
      if (supports_overlap(pairs[i], pairs[j])) {
        throw UnsupportedShapeError("interaction supports overlap; the norms cannot be combined piecewise");
      }
}

void inner_nodes(const Pair& p, const double* xi, int n, NodeSet& out) {
  const std::size_t d = out.d;
  if (p.is_box) {
    std::vector<double> lo(d), hi(d);
    for (std::size_t j = 0; j < d; ++j) {
      lo[j] = std::max(p.x.lo[j], xi[j] - p.y.hi[j]);
      hi[j] = std::min(p.x.hi[j], xi[j] - p.y.lo[j]);
      if (!(hi[j] > lo[j])) return;
    }
    append_box_nodes(Box(std::move(lo), std::move(hi)), n, out);
    return;
  }
  FreqVector c(d);
  for (std::size_t j = 0; j < d; ++j) c[j] = xi[j] - p.by.center[j];
  append_lens_nodes(p.bx, Ball(std::move(c), p.by.radius), n, out);
}

void outer_nodes(const Pair& p, int n, NodeSet& out) {
  if (p.is_box) {
    for (const auto& piece : sum_support_pieces(p.x, p.y)) append_box_nodes(piece, n, out);
    return;
  }
  const Ball s = support_ball(p);
  append_ball_nodes(s.center, s.radius, std::abs(p.bx.radius - p.by.radius), n, out);
}

double magnitude(double v) { return std::abs(v); }
double magnitude(std::complex<double> v) { return std::abs(v); }

// Integrand signature: f(xi, xi1, xi2, d) -> T.
template <class T, class F>
T inner_integral(const Pair& p, const double* xi, std::size_t d, const QuadratureSpec& q, const F& f) {
  thread_local NodeSet nodes;
  thread_local std::vector<double> xi2;
  xi2.resize(d);
  auto eval = [&](int n, double& absint) {
    nodes.clear(d);
    inner_nodes(p, xi, n, nodes);
    T v{};
    absint = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const double* x1 = nodes.point(i);
      for (std::size_t j = 0; j < d; ++j) xi2[j] = xi[j] - x1[j];
      const T fv = f(xi, x1, xi2.data(), d);
      v += nodes.w[i] * fv;
      absint += nodes.w[i] * magnitude(fv);
    }
    return v;
  };
  int n = q.inner;
  double abs_prev = 0.0, abs_cur = 0.0;
  T prev = eval(n, abs_prev);
  if (abs_prev == 0.0 && nodes.size() == 0) return T{};
  if (q.max_refinements == 0) return prev;
  T before = prev;
  for (int it = 0; it < q.max_refinements; ++it) {
    n *= 2;
    const T cur = eval(n, abs_cur);
    if (magnitude(cur - prev) <= q.rel_tol * abs_cur || abs_cur == 0.0) return cur;
    before = prev;
    prev = cur;
  }
  throw QuadratureError("inner quadrature did not reach rel_tol after max_refinements doublings",
                        magnitude(before), magnitude(prev));
}

// Squared L2 norm over xi of F(xi) = sum over pairs of the inner integral.
// Pairs must have disjoint supports, so each xi sees one pair.
template <class T, class F>
double l2_norm_sq(const std::vector<Pair>& pairs, std::size_t d, const QuadratureSpec& q, const F& f) {
  require_disjoint_supports(pairs);
  double total = 0.0;
  for (const Pair& p : pairs) {
    NodeSet outer;
    outer.clear(d);
    outer_nodes(p, q.outer, outer);
    const auto m = static_cast<long>(outer.size());
    std::vector<double> vals(outer.size(), 0.0);
    std::mutex err_mu;
    long err_index = std::numeric_limits<long>::max();
    std::exception_ptr err;
#pragma omp parallel for schedule(dynamic, 8)
    for (long i = 0; i < m; ++i) {
      try {
        const T v = inner_integral<T>(p, outer.point(static_cast<std::size_t>(i)), d, q, f);
        const double a = magnitude(v);
        vals[static_cast<std::size_t>(i)] = a * a;
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (i < err_index) {
          err_index = i;
          err = std::current_exception();
        }
      }
    }
    if (err) std::rethrow_exception(err);
    for (std::size_t i = 0; i < outer.size(); ++i) total += outer.w[i] * vals[i];
  }
  return total;
}

double sigma_raw(const double* xi, const double* xi1, const double* xi2, std::size_t d, Sign s) {
  return sq(xi, d) - sq(xi1, d) + (s == Sign::Plus ? 1.0 : -1.0) * std::sqrt(sq(xi2, d));
}

double zeta_raw(const double* xi, const double* xi1, const double* xi2, std::size_t d, Sign s) {
  return sq(xi1, d) - sq(xi2, d) + (s == Sign::Plus ? 1.0 : -1.0) * std::sqrt(sq(xi, d));
}

struct TimeRule {
  std::vector<double> s, w;
};

TimeRule time_rule(double t, int n) {
  const GaussRule& g = gauss_legendre(n);
  TimeRule r;
  for (int i = 0; i < n; ++i) {
    r.s.push_back(0.5 * t * (1.0 + g.x[i]));
    r.w.push_back(0.5 * t * g.w[i]);
  }
  return r;
}

}  // namespace

double weight(std::span<const double> xi1, std::span<const double> xi2, const RegularityTriple& r,
              WeightVariant v) {
  if (xi1.size() != xi2.size() || xi1.empty()) throw DimensionError("weight: dimension mismatch");
  std::vector<double> xi(xi1.size());
  for (std::size_t j = 0; j < xi.size(); ++j) xi[j] = xi1[j] + xi2[j];
  return weight_raw(xi.data(), xi1.data(), xi2.data(), xi.size(), r, v);
}

double time_integral_cos(double sigma, double t) {
  const double x = sigma * t;
  if (std::abs(x) > 1e-8) return std::sin(x) / sigma;
  const double x2 = x * x;
  return t * (1.0 - x2 / 6.0 + x2 * x2 / 120.0);
}

std::complex<double> time_integral_exp(double zeta, double t) {
  // int_0^t cos = sin(t z)/z, int_0^t sin = (1 - cos(t z))/z = 2 sin(t z/2) * sin(t z/2)/z
  const double re = time_integral_cos(zeta, t);
  const double im = 2.0 * std::sin(0.5 * t * zeta) * time_integral_cos(zeta, 0.5 * t);
  return {re, -im};
}

double I_pm(const FreqSet& a, const FreqSet& b, const RegularityTriple& r, double t, Sign sign,
            std::span<const double> xi, const QuadratureSpec& q) {
  q.validate();
  if (!(t > 0.0)) throw PreconditionError("t must be positive");
  const std::size_t d = a.dim();
  if (xi.size() != d) throw DimensionError("I_pm: xi has the wrong dimension");
  auto f = [&](const double* x, const double* x1, const double* x2, std::size_t dd) {
    return weight_raw(x, x1, x2, dd, r, WeightVariant::Schro) * time_integral_cos(sigma_raw(x, x1, x2, dd, sign), t);
  };
  double v = 0.0;
  for (const Pair& p : make_pairs(a, b)) v += inner_integral<double>(p, xi.data(), d, q, f);
  return v;
}

namespace {

void check_case(const ConstructionCase& c, const RegularityTriple& r, const QuadratureSpec& q) {
  c.validate();
  q.validate();
  if (r.d != c.d) throw DimensionError("regularity triple and construction case disagree on d");
}

}  // namespace

double lhs_norm(const ConstructionCase& c, const RegularityTriple& r, const QuadratureSpec& q) {
  check_case(c, r, q);
  const CaseSets s = build_sets(c);
  const auto d = static_cast<std::size_t>(c.d);
  const double t = s.t_eval;

  switch (c.id) {
    case CaseId::SchroLowL: {
      auto f = [&](const double* x, const double* x1, const double* x2, std::size_t dd) {
        const double w = weight_raw(x, x1, x2, dd, r, WeightVariant::Schro);
        return 0.5 * w *
               (time_integral_cos(sigma_raw(x, x1, x2, dd, Sign::Plus), t) +
                time_integral_cos(sigma_raw(x, x1, x2, dd, Sign::Minus), t));
      };
      return std::sqrt(l2_norm_sq<double>(make_pairs(s.A, s.B), d, q, f));
    }
    case CaseId::SchroHighL: {
      auto f = [&](const double* x, const double* x1, const double* x2, std::size_t dd) {
        const double w = weight_raw(x, x1, x2, dd, r, WeightVariant::WaveN);
        const double nx = std::sqrt(sq(x, dd));
        const std::complex<double> ep = std::polar(1.0, t * nx), em = std::polar(1.0, -t * nx);
        return w * (ep * time_integral_exp(zeta_raw(x, x1, x2, dd, Sign::Plus), t) -
                    em * time_integral_exp(zeta_raw(x, x1, x2, dd, Sign::Minus), t));
      };
      std::vector<Pair> pairs = make_pairs(s.A, s.B.reflected());
      for (auto& p : make_pairs(s.B, s.A.reflected())) pairs.push_back(std::move(p));
      return std::sqrt(l2_norm_sq<std::complex<double>>(pairs, d, q, f));
    }
    case CaseId::SolLowL: {
      const TimeRule tr = time_rule(t, q.time);
      auto f = [&](const double* x, const double* x1, const double* x2, std::size_t dd) {
        const double w = weight_raw(x, x1, x2, dd, r, WeightVariant::Schro);
        const double a = sq(x, dd) - sq(x1, dd), b = std::sqrt(sq(x2, dd));
        double acc = 0.0;
        for (std::size_t i = 0; i < tr.s.size(); ++i) acc += tr.w[i] * std::cos(tr.s[i] * a) * std::cos(tr.s[i] * b);
        return w * acc;
      };
      return std::sqrt(l2_norm_sq<double>(make_pairs(s.A, s.B), d, q, f));
    }
    case CaseId::SolHighL: {
      const TimeRule tr = time_rule(t, q.time);
      auto f = [&](const double* x, const double* x1, const double* x2, std::size_t dd) {
        const double w = weight_raw(x, x1, x2, dd, r, WeightVariant::WaveNT);
        const double nx = std::sqrt(sq(x, dd)), p = sq(x1, dd) - sq(x2, dd);
        double acc = 0.0;
        for (std::size_t i = 0; i < tr.s.size(); ++i) {
          acc += tr.w[i] * std::cos((t - tr.s[i]) * nx) * std::cos(tr.s[i] * p);
        }
        return w * acc;
      };
      return std::sqrt(l2_norm_sq<double>(make_pairs(s.A, s.B), d, q, f));
    }
  }
  throw PreconditionError("unknown case");
}

double rhs_norm(const ConstructionCase& c) {
  const CaseSets s = build_sets(c);
  const double a = measure(s.A), b = measure(s.B);
  if (c.id == CaseId::SchroLowL || c.id == CaseId::SolLowL) return a + b;
  return std::sqrt(a * b);
}

namespace {

double single_term(const ConstructionCase& c, const RegularityTriple& r, const QuadratureSpec& q, Sign sign) {
  check_case(c, r, q);
  const CaseSets s = build_sets(c);
  const auto d = static_cast<std::size_t>(c.d);
  const double t = s.t_eval;
  if (c.id == CaseId::SchroLowL) {
    auto f = [&](const double* x, const double* x1, const double* x2, std::size_t dd) {
      return weight_raw(x, x1, x2, dd, r, WeightVariant::Schro) * time_integral_cos(sigma_raw(x, x1, x2, dd, sign), t);
    };
    return std::sqrt(l2_norm_sq<double>(make_pairs(s.A, s.B), d, q, f));
  }
  if (c.id == CaseId::SchroHighL) {
    auto f = [&](const double* x, const double* x1, const double* x2, std::size_t dd) {
      return weight_raw(x, x1, x2, dd, r, WeightVariant::WaveN) * time_integral_exp(zeta_raw(x, x1, x2, dd, sign), t);
    };
    return std::sqrt(l2_norm_sq<std::complex<double>>(make_pairs(s.A, s.B.reflected()), d, q, f));
  }
  throw PreconditionError("the split into resonant and non-resonant terms exists for the SCHRO cases only");
}

}  // namespace

double upper_bound_minus_term(const ConstructionCase& c, const RegularityTriple& r, const QuadratureSpec& q) {
  return single_term(c, r, q, Sign::Minus);
}

double resonant_term_norm(const ConstructionCase& c, const RegularityTriple& r, const QuadratureSpec& q) {
  return single_term(c, r, q, Sign::Plus);
}

}  // namespace zlab
