#pragma once

#include <span>
#include <string>
#include <vector>

#include "zlab/freq_geometry.hpp"
#include "zlab/interval.hpp"

namespace zlab {

enum class Family { Sigma, Zeta };
enum class Sign { Plus, Minus };

struct RelationKind {
  Family family = Family::Sigma;
  Sign sign = Sign::Plus;
};

// "sigma+", "sigma-", "zeta+", "zeta-"
std::string relation_name(RelationKind k);

// sigma_pm = |xi1 + xi2|^2 - |xi1|^2 pm |xi2|
double sigma(std::span<const double> xi1, std::span<const double> xi2, Sign s);
// zeta_pm = |xi1|^2 - |xi2|^2 pm |xi1 + xi2|
double zeta(std::span<const double> xi1, std::span<const double> xi2, Sign s);
double relation(RelationKind k, std::span<const double> xi1, std::span<const double> xi2);

// Rigorous enclosure of the relation over xi1 in A and xi2 in B (sigma) or
// xi2 in -B (zeta). Boxes use the coordinate expansion
//   sigma_pm = x2(2 x1 + x2 pm 1) pm (|xi2| - x2) + sum_j y2j (2 y1j + y2j)
//   zeta_pm  = x(x1 - x2 pm 1)    pm (|xi| - x)   + sum_j yj (y1j - y2j)
// (x = first coordinate, y = transverse ones); balls use bounds on |xi_i|.
// Unions are handled constituent-pairwise and hulled.
Interval relation_range(RelationKind k, const FreqSet& a, const FreqSet& b);

// Same, for one pair of boxes (b already reflected for zeta).
Interval relation_range_boxes(RelationKind k, const Box& a, const Box& b);

// A claimed range with optionally open endpoints.
struct Claim {
  RelationKind kind;
  Interval range;
  bool lo_open = false;
  bool hi_open = false;

  bool admits(const Interval& enclosure) const;
  std::string str() const;
};

struct CertReport {
  std::string kind;
  Claim claim;
  Interval enclosure;
  bool verified = false;
  int refinements = 0;
};

// The range claims that drive the construction for cases SCHRO_*:
// sigma+ in [0, 7 delta), sigma- in (-5N, -N/2) for SCHRO_LOW_L and
// zeta+ in (-delta, 7 delta), zeta- in (-7N, -N) for SCHRO_HIGH_L.
std::vector<Claim> case_claims(const ConstructionCase& c);

struct RefineLimits {
  int max_depth_per_axis = 8;
  long max_leaves = 1L << 16;
};

// Checks enclosure ⊆ claim. If the natural enclosure is too wide, A and B
// are bisected along their widest axis until every piece verifies or the
// limits are hit. Balls are not refined.
CertReport certify(const Claim& claim, const FreqSet& a, const FreqSet& b, const RefineLimits& lim = {});

std::string to_json(const CertReport& r);

struct PhaseBound {
  std::string name;
  // sup of |argument| over the relevant set and s in [0, t_N]
  double bound = 0.0;
};

struct PhaseReport {
  bool holds = false;
  std::vector<PhaseBound> bounds;
  // Certified lower bound of the cosine product.
  double cos_product_lower = 0.0;
};

// Cases SOL_*: every cosine argument has magnitude < 1 for s in [0, t_N].
// SOL_LOW_L: s(|xi|^2 - |xi1|^2) and s|xi2| over A x B.
// SOL_HIGH_L: s(|xi1|^2 - |xi2|^2) over A x B and (t_N - s)|xi| over the
// support A + B (which contains R).
PhaseReport phase_product_bound(const ConstructionCase& c);

std::string to_json(const PhaseReport& r);

}  // namespace zlab
