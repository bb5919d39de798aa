#include "zlab/relations.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "zlab/errors.hpp"

namespace zlab {

namespace {

void check_dims(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.empty()) throw DimensionError("relation arguments must share a dimension >= 1");
}

double sq_norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

double sign_value(Sign s) { return s == Sign::Plus ? 1.0 : -1.0; }

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Enclosure of |v| - v^1 for v in the box whose first coordinate lies in x
// and whose transverse squared norm lies in rho2. For x > 0 the difference
// is rewritten as rho2 / (|v| + v^1), which avoids cancelling two O(N)
// quantities.
Interval norm_excess(const Interval& x, const Interval& rho2) {
  if (x.lo > 0.0) {
    const Interval nrm = sqrt(sqr(x) + rho2);
    return rho2 / (nrm + x);
  }
  if (rho2.hi == 0.0) {
    // one-dimensional: |x| - x is 0 for x >= 0 and -2x otherwise
    if (x.hi <= 0.0) return Interval(0.0, 0.0) - (x + x);
    return Interval(0.0, -2.0 * x.lo);
  }
  Interval e = sqrt(sqr(x) + rho2) - x;
  e.lo = std::max(e.lo, 0.0);
  return e;
}

Interval coord(const Box& b, std::size_t j) { return Interval(b.lo[j], b.hi[j]); }

// Rigorous range of |xi| for xi in ball(center, radius).
Interval ball_norm_range(const FreqVector& center, double radius) {
  Interval s2(0.0, 0.0);
  for (double c : center) s2 = s2 + sqr(Interval::point(c));
  const Interval cn = sqrt(s2);
  return Interval(std::max(0.0, add_down(cn.lo, -radius)), add_up(cn.hi, radius));
}

FreqVector add_vec(const FreqVector& a, const FreqVector& b) {
  FreqVector r(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) r[j] = a[j] + b[j];
  return r;
}

Interval relation_range_balls(RelationKind k, const Ball& a, const Ball& b) {
  // b is already reflected for zeta
  const Interval n1 = ball_norm_range(a.center, a.radius);
  const Interval n2 = ball_norm_range(b.center, b.radius);
  const Interval ns = ball_norm_range(add_vec(a.center, b.center), add_up(a.radius, b.radius));
  const Interval pm = Interval::point(sign_value(k.sign));
  if (k.family == Family::Sigma) return sqr(ns) - sqr(n1) + pm * n2;
  return sqr(n1) - sqr(n2) + pm * ns;
}

}  // namespace

std::string relation_name(RelationKind k) {
  std::string s = k.family == Family::Sigma ? "sigma" : "zeta";
  s += k.sign == Sign::Plus ? "+" : "-";
  return s;
}

double sigma(std::span<const double> xi1, std::span<const double> xi2, Sign s) {
  check_dims(xi1, xi2);
  double xi_sq = 0.0;
  for (std::size_t j = 0; j < xi1.size(); ++j) xi_sq += (xi1[j] + xi2[j]) * (xi1[j] + xi2[j]);
  return xi_sq - sq_norm(xi1) + sign_value(s) * std::sqrt(sq_norm(xi2));
}

double zeta(std::span<const double> xi1, std::span<const double> xi2, Sign s) {
  check_dims(xi1, xi2);
  double xi_sq = 0.0;
  for (std::size_t j = 0; j < xi1.size(); ++j) xi_sq += (xi1[j] + xi2[j]) * (xi1[j] + xi2[j]);
  return sq_norm(xi1) - sq_norm(xi2) + sign_value(s) * std::sqrt(xi_sq);
}

double relation(RelationKind k, std::span<const double> xi1, std::span<const double> xi2) {
  return k.family == Family::Sigma ? sigma(xi1, xi2, k.sign) : zeta(xi1, xi2, k.sign);
}

Interval relation_range_boxes(RelationKind k, const Box& a, const Box& b) {
  if (a.dim() != b.dim()) throw DimensionError("relation_range: dimension mismatch");
  const std::size_t d = a.dim();
  const Interval pm = Interval::point(sign_value(k.sign));
  const Interval one = Interval::point(1.0);

  if (k.family == Family::Sigma) {
    const Interval x1 = coord(a, 0), x2 = coord(b, 0);
    Interval rho2(0.0, 0.0), trans(0.0, 0.0);
    for (std::size_t j = 1; j < d; ++j) {
      const Interval y1 = coord(a, j), y2 = coord(b, j);
      rho2 = rho2 + sqr(y2);
      trans = trans + y2 * (y1 + y1 + y2);
    }
    return x2 * (x1 + x1 + x2 + pm * one) + pm * norm_excess(x2, rho2) + trans;
  }

  const Interval x1 = coord(a, 0), x2 = coord(b, 0);
  const Interval x = x1 + x2;
  Interval rho2(0.0, 0.0), trans(0.0, 0.0);
  for (std::size_t j = 1; j < d; ++j) {
    const Interval y1 = coord(a, j), y2 = coord(b, j);
    const Interval y = y1 + y2;
    rho2 = rho2 + sqr(y);
    trans = trans + y * (y1 - y2);
  }
  return x * (x1 - x2 + pm * one) + pm * norm_excess(x, rho2) + trans;
}

Interval relation_range(RelationKind k, const FreqSet& a, const FreqSet& b0) {
  if (a.dim() != b0.dim()) throw DimensionError("relation_range: dimension mismatch");
  const FreqSet b = k.family == Family::Zeta ? b0.reflected() : b0;
  bool any = false;
  Interval out;
  auto add = [&](const Interval& iv) {
    out = any ? hull(out, iv) : iv;
    any = true;
  };
  if (!a.boxes().empty() || !b.boxes().empty()) {
    if (!a.balls().empty() || !b.balls().empty()) {
      throw UnsupportedShapeError("relation_range: mixed box and ball sets");
    }
    for (const auto& ab : a.boxes())
      for (const auto& bb : b.boxes()) add(relation_range_boxes(k, ab, bb));
  } else {
    for (const auto& ab : a.balls())
      for (const auto& bb : b.balls()) add(relation_range_balls(k, ab, bb));
  }
  return out;
}

bool Claim::admits(const Interval& e) const {
  const bool lo_ok = lo_open ? e.lo > range.lo : e.lo >= range.lo;
  const bool hi_ok = hi_open ? e.hi < range.hi : e.hi <= range.hi;
  return lo_ok && hi_ok;
}

std::string Claim::str() const {
  return relation_name(kind) + " in " + (lo_open ? "(" : "[") + num(range.lo) + ", " + num(range.hi) +
         (hi_open ? ")" : "]");
}

std::vector<Claim> case_claims(const ConstructionCase& c) {
  c.validate();
  const double n = static_cast<double>(c.N);
  const double dl = c.delta;
  switch (c.id) {
    case CaseId::SchroLowL:
      return {Claim{{Family::Sigma, Sign::Plus}, Interval(0.0, 7.0 * dl), false, true},
              Claim{{Family::Sigma, Sign::Minus}, Interval(-5.0 * n, -0.5 * n), true, true}};
    case CaseId::SchroHighL:
      return {Claim{{Family::Zeta, Sign::Plus}, Interval(-dl, 7.0 * dl), true, true},
              Claim{{Family::Zeta, Sign::Minus}, Interval(-7.0 * n, -n), true, true}};
    default:
      throw PreconditionError("range claims exist only for the SCHRO cases; use phase_product_bound");
  }
}

namespace {

struct Piece {
  Box a;
  Box b;
  std::vector<int> depth;  // 2d entries: axes of a, then axes of b
};

}  // namespace

CertReport certify(const Claim& claim, const FreqSet& a, const FreqSet& b0, const RefineLimits& lim) {
  CertReport rep;
  rep.kind = relation_name(claim.kind);
  rep.claim = claim;
  rep.enclosure = relation_range(claim.kind, a, b0);
  if (claim.admits(rep.enclosure)) {
    rep.verified = true;
    return rep;
  }
  if (!a.is_single_box() || !b0.is_single_box()) return rep;

  const Box bb = claim.kind.family == Family::Zeta ? b0.boxes()[0].reflected() : b0.boxes()[0];
  const std::size_t d = a.dim();
  std::vector<Piece> work{{a.boxes()[0], bb, std::vector<int>(2 * d, 0)}};
  long leaves = 0;
  bool first = true;
  Interval hull_enc;
  bool ok = true;

  while (!work.empty() && ok) {
    Piece p = std::move(work.back());
    work.pop_back();
    const Interval e = relation_range_boxes(claim.kind, p.a, p.b);
    if (claim.admits(e)) {
      hull_enc = first ? e : hull(hull_enc, e);
      first = false;
      ++leaves;
      continue;
    }
    // widest splittable axis
    int axis = -1;
    double widest = 0.0;
    for (std::size_t j = 0; j < 2 * d; ++j) {
      if (p.depth[j] >= lim.max_depth_per_axis) continue;
      const Box& bx = j < d ? p.a : p.b;
      const std::size_t jj = j < d ? j : j - d;
      const double w = bx.hi[jj] - bx.lo[jj];
      if (w > widest) {
        widest = w;
        axis = static_cast<int>(j);
      }
    }
    if (axis < 0 || leaves + static_cast<long>(work.size()) + 2 > lim.max_leaves) {
      hull_enc = first ? e : hull(hull_enc, e);
      first = false;
      ok = false;
      break;
    }
    Piece lo = p, hi = std::move(p);
    const auto ax = static_cast<std::size_t>(axis);
    Box& blo = ax < d ? lo.a : lo.b;
    Box& bhi = ax < d ? hi.a : hi.b;
    const std::size_t jj = ax < d ? ax : ax - d;
    const double m = 0.5 * (blo.lo[jj] + blo.hi[jj]);
    blo.hi[jj] = m;
    bhi.lo[jj] = m;
    ++lo.depth[ax];
    ++hi.depth[ax];
    ++rep.refinements;
    work.push_back(std::move(hi));
    work.push_back(std::move(lo));
  }
  rep.enclosure = hull_enc;
  rep.verified = ok;
  return rep;
}

std::string to_json(const CertReport& r) {
  std::ostringstream os;
  os << "{\"kind\":\"" << r.kind << "\",\"claimed\":[" << num(r.claim.range.lo) << ',' << num(r.claim.range.hi)
     << "],\"enclosure\":[" << num(r.enclosure.lo) << ',' << num(r.enclosure.hi)
     << "],\"verified\":" << (r.verified ? "true" : "false") << ",\"refinements\":" << r.refinements << '}';
  return os.str();
}

PhaseReport phase_product_bound(const ConstructionCase& c) {
  if (is_schro_case(c.id)) throw PreconditionError("phase_product_bound applies to the SOL cases only");
  const CaseSets s = build_sets(c);
  const double tn = s.t_eval;
  const Ball& b = s.B.balls().at(0);
  const Interval n2 = ball_norm_range(b.center, b.radius);

  PhaseReport rep;
  if (c.id == CaseId::SolLowL) {
    const Ball& a = s.A.balls().at(0);
    const Interval n1 = ball_norm_range(a.center, a.radius);
    const Interval ns = ball_norm_range(add_vec(a.center, b.center), add_up(a.radius, b.radius));
    rep.bounds.push_back({"s(|xi|^2-|xi1|^2)", mul_up(tn, (sqr(ns) - sqr(n1)).mag())});
    rep.bounds.push_back({"s|xi2|", mul_up(tn, n2.mag())});
  } else {
    double phase = 0.0, wave = 0.0;
    for (const auto& a : s.A.balls()) {
      const Interval n1 = ball_norm_range(a.center, a.radius);
      const Interval ns = ball_norm_range(add_vec(a.center, b.center), add_up(a.radius, b.radius));
      phase = std::max(phase, (sqr(n1) - sqr(n2)).mag());
      wave = std::max(wave, ns.mag());
    }
    rep.bounds.push_back({"s(|xi1|^2-|xi2|^2)", mul_up(tn, phase)});
    rep.bounds.push_back({"(t-s)|xi|", mul_up(tn, wave)});
  }
  rep.holds = true;
  rep.cos_product_lower = 1.0;
  for (const auto& pb : rep.bounds) {
    if (!(pb.bound < 1.0)) rep.holds = false;
    // cos is decreasing on [0, 1]; shave a few ulps for libm error
    rep.cos_product_lower *= std::cos(std::min(pb.bound, 1.0)) * (1.0 - 4e-16);
  }
  rep.holds = rep.holds && rep.cos_product_lower > 0.25;
  return rep;
}

std::string to_json(const PhaseReport& r) {
  std::ostringstream os;
  os << "{\"holds\":" << (r.holds ? "true" : "false") << ",\"bounds\":[";
  for (std::size_t i = 0; i < r.bounds.size(); ++i) {
    if (i) os << ',';
    os << "{\"argument\":\"" << r.bounds[i].name << "\",\"bound\":" << num(r.bounds[i].bound) << '}';
  }
  os << "],\"cos_product_lower\":" << num(r.cos_product_lower) << '}';
  return os.str();
}

}  // namespace zlab
