#include "zlab/freq_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "zlab/errors.hpp"

namespace zlab {

namespace {

double norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

void check_dim(std::size_t expected, std::size_t got) {
  if (expected != got) {
    throw DimensionError("dimension mismatch: expected " + std::to_string(expected) + ", got " +
                         std::to_string(got));
  }
}

double ball_volume(std::size_t d, double r) {
  const double dd = static_cast<double>(d);
  return std::pow(r, dd) * std::pow(std::numbers::pi, dd / 2.0) / std::tgamma(dd / 2.0 + 1.0);
}

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void append_array(std::ostringstream& os, const std::vector<double>& v) {
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << fmt17(v[i]);
  }
  os << ']';
}

}  // namespace

// ---------------------------------------------------------------------------
// Box / Ball

Box::Box(std::vector<double> lo_, std::vector<double> hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
  if (lo.empty()) throw DimensionError("box must have dimension >= 1");
  check_dim(lo.size(), hi.size());
  for (std::size_t j = 0; j < lo.size(); ++j) {
    if (!(lo[j] <= hi[j])) throw PreconditionError("box requires lo <= hi on every axis");
  }
}

double Box::volume() const {
  double v = 1.0;
  for (std::size_t j = 0; j < dim(); ++j) v *= hi[j] - lo[j];
  return v;
}

bool Box::contains(std::span<const double> xi) const {
  check_dim(dim(), xi.size());
  for (std::size_t j = 0; j < dim(); ++j) {
    if (xi[j] < lo[j] || xi[j] > hi[j]) return false;
  }
  return true;
}

Box Box::reflected() const {
  std::vector<double> l(dim()), h(dim());
  for (std::size_t j = 0; j < dim(); ++j) {
    l[j] = -hi[j];
    h[j] = -lo[j];
  }
  return Box(std::move(l), std::move(h));
}

Ball::Ball(FreqVector center_, double radius_) : center(std::move(center_)), radius(radius_) {
  if (center.empty()) throw DimensionError("ball must have dimension >= 1");
  if (!(radius > 0.0)) throw PreconditionError("ball radius must be positive");
}

double Ball::volume() const { return ball_volume(dim(), radius); }

bool Ball::contains(std::span<const double> xi) const {
  check_dim(dim(), xi.size());
  double s = 0.0;
  for (std::size_t j = 0; j < dim(); ++j) s += (xi[j] - center[j]) * (xi[j] - center[j]);
  return std::sqrt(s) < radius;
}

Ball Ball::reflected() const {
  FreqVector c(center);
  for (double& x : c) x = -x;
  return Ball(std::move(c), radius);
}

// ---------------------------------------------------------------------------
// FreqSet

FreqSet::FreqSet(std::vector<Box> boxes, std::vector<Ball> balls)
    : boxes_(std::move(boxes)), balls_(std::move(balls)) {
  if (boxes_.empty() && balls_.empty()) throw PreconditionError("FreqSet needs at least one constituent");
  dim_ = boxes_.empty() ? balls_.front().dim() : boxes_.front().dim();
  for (const auto& b : boxes_) check_dim(dim_, b.dim());
  for (const auto& b : balls_) check_dim(dim_, b.dim());
}

FreqSet::FreqSet(Box box) : FreqSet(std::vector<Box>{std::move(box)}, {}) {}
FreqSet::FreqSet(Ball ball) : FreqSet({}, std::vector<Ball>{std::move(ball)}) {}

FreqSet FreqSet::reflected() const {
  std::vector<Box> bx;
  std::vector<Ball> bl;
  for (const auto& b : boxes_) bx.push_back(b.reflected());
  for (const auto& b : balls_) bl.push_back(b.reflected());
  return FreqSet(std::move(bx), std::move(bl));
}

double FreqSet::max_abs() const {
  double m = 0.0;
  for (const auto& b : boxes_) {
    double s = 0.0;
    for (std::size_t j = 0; j < dim_; ++j) {
      const double a = std::max(std::abs(b.lo[j]), std::abs(b.hi[j]));
      s += a * a;
    }
    m = std::max(m, std::sqrt(s));
  }
  for (const auto& b : balls_) m = std::max(m, norm(b.center) + b.radius);
  return m;
}

double measure(const FreqSet& s) {
  double m = 0.0;
  for (const auto& b : s.boxes()) m += b.volume();
  for (const auto& b : s.balls()) m += b.volume();
  return m;
}

bool contains(const FreqSet& s, std::span<const double> xi) {
  check_dim(s.dim(), xi.size());
  for (const auto& b : s.boxes()) {
    if (b.contains(xi)) return true;
  }
  for (const auto& b : s.balls()) {
    if (b.contains(xi)) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Minkowski difference containment

namespace {

ContainmentCertificate box_diff_in_box(const Box& r, const Box& b, const Box& a, double tol) {
  ContainmentCertificate cert;
  const std::size_t d = a.dim();
  cert.margin = std::numeric_limits<double>::infinity();
  cert.witness.resize(d);
  bool ok = true;
  std::size_t worst_axis = 0;
  bool worst_low = true;
  for (std::size_t j = 0; j < d; ++j) {
    const double dlo = r.lo[j] - b.hi[j];
    const double dhi = r.hi[j] - b.lo[j];
    const double scale = std::max({1.0, std::abs(dlo), std::abs(dhi), std::abs(a.lo[j]), std::abs(a.hi[j])});
    const double slack_lo = dlo - a.lo[j];
    const double slack_hi = a.hi[j] - dhi;
    if (slack_lo < -tol * scale || slack_hi < -tol * scale) ok = false;
    if (slack_lo < cert.margin) {
      cert.margin = slack_lo;
      worst_axis = j;
      worst_low = true;
    }
    if (slack_hi < cert.margin) {
      cert.margin = slack_hi;
      worst_axis = j;
      worst_low = false;
    }
    cert.witness[j] = (slack_lo <= slack_hi) ? dlo : dhi;
  }
  cert.holds = ok;
  std::ostringstream os;
  os << (ok ? "R-B inside A" : "R-B leaves A") << "; tightest axis " << worst_axis << " ("
     << (worst_low ? "lower" : "upper") << " side)";
  cert.detail = os.str();
  return cert;
}

ContainmentCertificate ball_diff_in_ball(const Ball& r, const Ball& b, const Ball& a, double tol) {
  ContainmentCertificate cert;
  const std::size_t d = a.dim();
  FreqVector offset(d);
  for (std::size_t j = 0; j < d; ++j) offset[j] = r.center[j] - b.center[j] - a.center[j];
  const double dist = norm(offset);
  const double reach = dist + r.radius + b.radius;
  cert.margin = a.radius - reach;
  cert.holds = reach <= a.radius + tol;
  // Farthest point of ball(c_R - c_B, r_R + r_B) from c_A.
  cert.witness.resize(d);
  for (std::size_t j = 0; j < d; ++j) {
    const double dir = dist > 0.0 ? offset[j] / dist : (j == 0 ? 1.0 : 0.0);
    cert.witness[j] = a.center[j] + dir * reach;
  }
  std::ostringstream os;
  os << "|c_R-c_B-c_A| + r_R + r_B = " << fmt17(reach) << " vs r_A = " << fmt17(a.radius);
  cert.detail = os.str();
  return cert;
}

}  // namespace

ContainmentCertificate minkowski_diff_subset(const FreqSet& r, const FreqSet& b, const FreqSet& a, double tol) {
  check_dim(a.dim(), r.dim());
  check_dim(a.dim(), b.dim());
  if (r.size() != 1 || b.size() != 1) {
    throw UnsupportedShapeError("minkowski_diff_subset requires R and B to be a single box or ball");
  }
  const bool boxes = r.is_single_box() && b.is_single_box();
  const bool balls = r.is_single_ball() && b.is_single_ball();
  if (!boxes && !balls) throw UnsupportedShapeError("minkowski_diff_subset: mixed box/ball inputs");

  ContainmentCertificate best;
  best.margin = -std::numeric_limits<double>::infinity();
  bool any = false;
  if (boxes) {
    for (const auto& ab : a.boxes()) {
      auto c = box_diff_in_box(r.boxes()[0], b.boxes()[0], ab, tol);
      if (!any || c.holds > best.holds || (c.holds == best.holds && c.margin > best.margin)) best = c;
      any = true;
    }
  } else {
    for (const auto& ab : a.balls()) {
      auto c = ball_diff_in_ball(r.balls()[0], b.balls()[0], ab, tol);
      if (!any || c.holds > best.holds || (c.holds == best.holds && c.margin > best.margin)) best = c;
      any = true;
    }
  }
  if (!any) throw UnsupportedShapeError("minkowski_diff_subset: A has no constituent of the same shape");
  return best;
}

// ---------------------------------------------------------------------------
// Construction cases

std::string_view case_name(CaseId id) {
  switch (id) {
    case CaseId::SchroLowL: return "schro-low-l";
    case CaseId::SchroHighL: return "schro-high-l";
    case CaseId::SolLowL: return "sol-low-l";
    case CaseId::SolHighL: return "sol-high-l";
  }
  return "?";
}

CaseId parse_case(std::string_view name) {
  for (CaseId id : {CaseId::SchroLowL, CaseId::SchroHighL, CaseId::SolLowL, CaseId::SolHighL}) {
    if (name == case_name(id)) return id;
  }
  if (name == "1") return CaseId::SchroLowL;
  if (name == "2") return CaseId::SchroHighL;
  if (name == "3") return CaseId::SolLowL;
  if (name == "4") return CaseId::SolHighL;
  throw PreconditionError("unknown case '" + std::string(name) + "'");
}

int case_number(CaseId id) { return static_cast<int>(id) + 1; }

bool is_schro_case(CaseId id) { return id == CaseId::SchroLowL || id == CaseId::SchroHighL; }

ConstructionCase ConstructionCase::schro(CaseId id, int N, int d, double delta, double t) {
  ConstructionCase c;
  c.id = id;
  c.N = N;
  c.d = d;
  c.delta = delta;
  c.t = t;
  return c;
}

ConstructionCase ConstructionCase::sol(CaseId id, int N, int d, double T) {
  ConstructionCase c;
  c.id = id;
  c.N = N;
  c.d = d;
  c.T = T;
  return c;
}

void ConstructionCase::validate() const {
  if (N < 1) throw PreconditionError("N must be >= 1");
  if (d < 1) throw PreconditionError("d must be >= 1");
  if (is_schro_case(id)) {
    if (!(t > 0.0)) throw PreconditionError("t must be positive");
    if (!(delta > 0.0)) throw PreconditionError("delta must be positive");
    const double bound = std::min(1.0 / (7.0 * t), 1.0);
    if (!(delta < bound)) {
      throw PreconditionError("delta must satisfy 0 < delta < min{1/(7t), 1} (delta=" + fmt17(delta) +
                              ", bound=" + fmt17(bound) + ")");
    }
  } else {
    if (!(T > 0.0)) throw PreconditionError("T must be positive");
  }
}

double sol_time(int N, double T) {
  const double n = static_cast<double>(N);
  return 1.0 / (4.0 * n * n) * (T / (1.0 + T));
}

namespace {

// first axis [lo1, hi1], transverse axes [tlo, thi]
Box slab(std::size_t d, double lo1, double hi1, double tlo, double thi) {
  std::vector<double> lo(d, tlo), hi(d, thi);
  lo[0] = lo1;
  hi[0] = hi1;
  return Box(std::move(lo), std::move(hi));
}

FreqVector on_axis(std::size_t d, double x) {
  FreqVector v(d, 0.0);
  v[0] = x;
  return v;
}

}  // namespace

CaseSets build_sets(const ConstructionCase& c) {
  c.validate();
  const auto d = static_cast<std::size_t>(c.d);
  const double n = static_cast<double>(c.N);
  // Transverse factors only exist for d >= 2; their width uses d - 1.
  const double dm1 = d > 1 ? static_cast<double>(d - 1) : 1.0;
  const double dl = c.delta;

  switch (c.id) {
    case CaseId::SchroLowL: {
      Box a = slab(d, -n, -n + dl / n, 0.0, dl / dm1);
      Box b = slab(d, 2 * n - 1, 2 * n - 1 + dl / (2 * n), 0.0, dl / (2 * dm1));
      Box r = slab(d, n - 1 + dl / (2 * n), n - 1 + dl / n, dl / (2 * dm1), dl / dm1);
      return {FreqSet(std::move(a)), FreqSet(std::move(b)), FreqSet(std::move(r)), c.t};
    }
    case CaseId::SchroHighL: {
      Box a = slab(d, n, n + dl / n, 0.0, dl / dm1);
      Box b = slab(d, -n - 1, -n - 1 + dl / (2 * n), -dl / (2 * dm1), 0.0);
      Box r = slab(d, 2 * n + 1, 2 * n + 1 + dl / (2 * n), dl / (2 * dm1), dl / dm1);
      return {FreqSet(std::move(a)), FreqSet(std::move(b)), FreqSet(std::move(r)), c.t};
    }
    case CaseId::SolLowL: {
      FreqSet a(Ball(FreqVector(d, 0.0), 0.5));
      FreqSet b(Ball(on_axis(d, n), 0.25));
      FreqSet r(Ball(on_axis(d, n), 0.25));
      return {std::move(a), std::move(b), std::move(r), sol_time(c.N, c.T)};
    }
    case CaseId::SolHighL: {
      FreqSet a({}, {Ball(on_axis(d, n), 0.5), Ball(on_axis(d, -n), 0.5)});
      FreqSet b(Ball(FreqVector(d, 0.0), 0.25));
      FreqSet r(Ball(on_axis(d, n), 0.25));
      return {std::move(a), std::move(b), std::move(r), sol_time(c.N, c.T)};
    }
  }
  throw PreconditionError("unknown case");
}

FreqSet interaction_b(const ConstructionCase& c, const CaseSets& sets) {
  return c.id == CaseId::SchroHighL ? sets.B.reflected() : sets.B;
}

// ---------------------------------------------------------------------------
// JSON

std::string to_json(const FreqSet& s) {
  std::ostringstream os;
  os << "{\"boxes\":[";
  for (std::size_t i = 0; i < s.boxes().size(); ++i) {
    if (i) os << ',';
    os << "{\"lo\":";
    append_array(os, s.boxes()[i].lo);
    os << ",\"hi\":";
    append_array(os, s.boxes()[i].hi);
    os << '}';
  }
  os << "],\"balls\":[";
  for (std::size_t i = 0; i < s.balls().size(); ++i) {
    if (i) os << ',';
    os << "{\"center\":";
    append_array(os, s.balls()[i].center);
    os << ",\"radius\":" << fmt17(s.balls()[i].radius) << '}';
  }
  os << "]}";
  return os.str();
}

FreqSet freqset_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError(std::string("invalid FreqSet JSON: ") + e.what());
  }
  std::vector<Box> boxes;
  std::vector<Ball> balls;
  if (j.contains("boxes")) {
    for (const auto& b : j.at("boxes")) {
      boxes.emplace_back(b.at("lo").get<std::vector<double>>(), b.at("hi").get<std::vector<double>>());
    }
  }
  if (j.contains("balls")) {
    for (const auto& b : j.at("balls")) {
      balls.emplace_back(b.at("center").get<std::vector<double>>(), b.at("radius").get<double>());
    }
  }
  return FreqSet(std::move(boxes), std::move(balls));
}

}  // namespace zlab
