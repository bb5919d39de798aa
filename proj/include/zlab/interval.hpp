#pragma once

#include <string>

namespace zlab {

// Closed interval [lo, hi] with outward-rounded arithmetic. An endpoint is
// moved one ulp outward only when the floating-point operation producing it
// was inexact (detected with error-free transformations), so exactly
// representable results such as 2*(-N) + (2N-1) + 1 = 0 stay exact.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  Interval() = default;
  Interval(double lo_, double hi_);
  static Interval point(double x) { return Interval(x, x); }

  double width() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
  bool contains(double x) const { return lo <= x && x <= hi; }
  bool contains_zero() const { return lo <= 0.0 && 0.0 <= hi; }
  // max |x| over the interval
  double mag() const;

  std::string str() const;
};

Interval operator-(const Interval& a);
Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
// Throws NumericalError when b contains zero.
Interval operator/(const Interval& a, const Interval& b);

Interval sqr(const Interval& a);
// Requires a.lo >= 0 (negative parts are clipped to zero).
Interval sqrt(const Interval& a);
Interval hull(const Interval& a, const Interval& b);

// Directed elementary operations: the result is a lower (down) or upper (up)
// bound of the exact value.
double add_down(double a, double b);
double add_up(double a, double b);
double mul_down(double a, double b);
double mul_up(double a, double b);
double div_down(double a, double b);
double div_up(double a, double b);
double sqrt_down(double a);
double sqrt_up(double a);

}  // namespace zlab
