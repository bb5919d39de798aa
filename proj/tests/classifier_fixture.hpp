#pragma once

namespace zlab_fixture {

struct Spot {
  double k, l;
  int d;
  bool lwp, ill_flow, ill_solution;
};

// Evaluated by hand from the three sets of inequalities.
inline const Spot kSpots[] = {
    {1, 0, 2, true, false, false},     {0, -1, 3, false, true, false},    {0, 2, 1, false, true, true},
    {0, -0.5, 2, false, false, false}, {0, 0, 1, false, true, false},     {0.5, 0, 1, true, false, false},
    {1, 1, 1, true, false, false},     {1, 0, 1, true, false, false},     {2, 0, 1, false, false, false},
    {3, 0, 1, false, false, true},     {0, -1, 1, false, true, false},    {1, 0, 3, true, false, false},
    {1.5, 1, 2, true, false, false},   {0.5, 0, 2, true, false, false},   {0.4, 0, 2, false, false, false},
    {2, 1, 4, true, false, false},     {1, 0, 4, false, false, false},    {0, 1.5, 1, false, true, true},
    {3, 0.5, 3, false, false, true},   {0.25, 0, 1, true, false, false},
};

inline bool lwp_ref(double k, double l, int d) {
  if (d == 1) return -0.5 < k - l && k - l <= 1 && 2 * k >= l + 0.5 && l + 0.5 >= 0;
  if (!(l <= k && k <= l + 1)) return false;
  if (d <= 3) return l >= 0 && 2 * k - (l + 1) >= 0;
  return l > d / 2.0 - 2 && 2 * k - (l + 1) > d / 2.0 - 2;
}

}  // namespace zlab_fixture
