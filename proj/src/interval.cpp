#include "zlab/interval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "zlab/errors.hpp"

namespace zlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Knuth's TwoSum: a + b = s + e exactly.
double two_sum_err(double a, double b, double s) {
  const double bb = s - a;
  return (a - (s - bb)) + (b - bb);
}

double down(double r) { return std::nextafter(r, -kInf); }
double up(double r) { return std::nextafter(r, kInf); }

}  // namespace

Interval::Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
  if (!(lo <= hi)) throw PreconditionError("interval requires lo <= hi");
}

double Interval::mag() const { return std::max(std::abs(lo), std::abs(hi)); }

std::string Interval::str() const {
  char buf[96];
  std::snprintf(buf, sizeof buf, "[%.17g, %.17g]", lo, hi);
  return buf;
}

double add_down(double a, double b) {
  const double s = a + b;
  if (!std::isfinite(s)) return s;
  return two_sum_err(a, b, s) < 0.0 ? down(s) : s;
}

double add_up(double a, double b) {
  const double s = a + b;
  if (!std::isfinite(s)) return s;
  return two_sum_err(a, b, s) > 0.0 ? up(s) : s;
}

double mul_down(double a, double b) {
  const double p = a * b;
  if (!std::isfinite(p)) return p;
  return std::fma(a, b, -p) < 0.0 ? down(p) : p;
}

double mul_up(double a, double b) {
  const double p = a * b;
  if (!std::isfinite(p)) return p;
  return std::fma(a, b, -p) > 0.0 ? up(p) : p;
}

// a - q*b = b*(a/b - q), so the sign of the remainder times sign(b) tells
// which side of q the exact quotient lies on.
double div_down(double a, double b) {
  const double q = a / b;
  if (!std::isfinite(q)) return q;
  const double rem = std::fma(-q, b, a);
  const bool exact_below = (b > 0.0) ? rem < 0.0 : rem > 0.0;
  return exact_below ? down(q) : q;
}

double div_up(double a, double b) {
  const double q = a / b;
  if (!std::isfinite(q)) return q;
  const double rem = std::fma(-q, b, a);
  const bool exact_above = (b > 0.0) ? rem > 0.0 : rem < 0.0;
  return exact_above ? up(q) : q;
}

double sqrt_down(double a) {
  const double r = std::sqrt(a);
  if (!std::isfinite(r)) return r;
  return std::fma(-r, r, a) < 0.0 ? down(r) : r;
}

double sqrt_up(double a) {
  const double r = std::sqrt(a);
  if (!std::isfinite(r)) return r;
  return std::fma(-r, r, a) > 0.0 ? up(r) : r;
}

Interval operator-(const Interval& a) { return {-a.hi, -a.lo}; }

Interval operator+(const Interval& a, const Interval& b) {
  return {add_down(a.lo, b.lo), add_up(a.hi, b.hi)};
}

Interval operator-(const Interval& a, const Interval& b) {
  return {add_down(a.lo, -b.hi), add_up(a.hi, -b.lo)};
}

Interval operator*(const Interval& a, const Interval& b) {
  const double lo = std::min({mul_down(a.lo, b.lo), mul_down(a.lo, b.hi), mul_down(a.hi, b.lo),
                              mul_down(a.hi, b.hi)});
  const double hi =
      std::max({mul_up(a.lo, b.lo), mul_up(a.lo, b.hi), mul_up(a.hi, b.lo), mul_up(a.hi, b.hi)});
  return {lo, hi};
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) throw NumericalError("interval division by an interval containing zero");
  const double lo = std::min({div_down(a.lo, b.lo), div_down(a.lo, b.hi), div_down(a.hi, b.lo),
                              div_down(a.hi, b.hi)});
  const double hi =
      std::max({div_up(a.lo, b.lo), div_up(a.lo, b.hi), div_up(a.hi, b.lo), div_up(a.hi, b.hi)});
  return {lo, hi};
}

Interval sqr(const Interval& a) {
  if (a.lo >= 0.0) return {mul_down(a.lo, a.lo), mul_up(a.hi, a.hi)};
  if (a.hi <= 0.0) return {mul_down(a.hi, a.hi), mul_up(a.lo, a.lo)};
  const double m = std::max(-a.lo, a.hi);
  return {0.0, mul_up(m, m)};
}

Interval sqrt(const Interval& a) {
  const double lo = std::max(0.0, a.lo);
  const double hi = std::max(0.0, a.hi);
  return {sqrt_down(lo), sqrt_up(hi)};
}

Interval hull(const Interval& a, const Interval& b) {
  return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

}  // namespace zlab
