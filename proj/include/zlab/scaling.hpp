#pragma once

#include <string>
#include <vector>

#include "zlab/freq_geometry.hpp"
#include "zlab/oscillatory.hpp"

namespace zlab {

// Growth exponent of lhs_norm / rhs_norm in N:
//   SCHRO_LOW_L  -l - 1/2      SCHRO_HIGH_L  l - 2k + 1/2
//   SOL_LOW_L    k - l - 2     SOL_HIGH_L    l - k - 1
double predicted_exponent(CaseId id, const RegularityTriple& r);

struct SweepRecord {
  int N = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
};

struct SweepParams {
  double delta = 0.1;
  double t = 0.5;
  double T = 1.0;
};

ConstructionCase make_case(CaseId id, int N, int d, const SweepParams& p);

// Ns strictly increasing, each >= 2. Records come back sorted by N.
std::vector<SweepRecord> sweep(CaseId id, const RegularityTriple& r, const std::vector<int>& Ns,
                               const SweepParams& p = {}, const QuadratureSpec& q = {});

// 2^a for nmin <= 2^a <= nmax; both bounds must be powers of two.
std::vector<int> geometric_ns(int nmin, int nmax);
bool is_power_of_two(long n);

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  int n_points = 0;
};

// Ordinary least squares of log(ratio) against log(N).
FitResult fit_slope(const std::vector<SweepRecord>& records);

struct RegionLabel {
  bool lwp = false;
  bool ill_flow = false;
  bool ill_solution = false;
  std::string notes;
};

// lwp:          d = 1: -1/2 < k-l <= 1 and 2k >= l+1/2 >= 0
//               d >= 2: l <= k <= l+1 and
//                 d in {2,3}: l >= 0 and 2k-(l+1) >= 0
//                 d >= 4:     l > d/2-2 and 2k-(l+1) > d/2-2
// ill_flow:     l < -1/2 or l > 2k - 1/2
// ill_solution: l < k - 2 or l > k + 1
RegionLabel classify(const RegularityTriple& r);

// "N,lhs,rhs,ratio" with 17 significant digits.
std::string records_to_csv(const std::vector<SweepRecord>& records);
std::string to_json(const FitResult& f);

}  // namespace zlab
