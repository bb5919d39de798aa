#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace zlab {

// A point xi = (xi^1, ..., xi^d) of frequency space.
using FreqVector = std::vector<double>;

// Closed axis-aligned box prod_j [lo_j, hi_j].
struct Box {
  std::vector<double> lo;
  std::vector<double> hi;

  Box() = default;
  Box(std::vector<double> lo_, std::vector<double> hi_);

  std::size_t dim() const { return lo.size(); }
  double volume() const;
  bool contains(std::span<const double> xi) const;
  Box reflected() const;
};

// Euclidean ball |xi - center| < radius.
struct Ball {
  FreqVector center;
  double radius = 0.0;

  Ball() = default;
  Ball(FreqVector center_, double radius_);

  std::size_t dim() const { return center.size(); }
  double volume() const;
  bool contains(std::span<const double> xi) const;
  Ball reflected() const;
};

// Finite union of boxes and balls. Constituents are assumed pairwise
// disjoint; measure() relies on it.
class FreqSet {
 public:
  FreqSet(std::vector<Box> boxes, std::vector<Ball> balls);
  explicit FreqSet(Box box);
  explicit FreqSet(Ball ball);

  std::size_t dim() const { return dim_; }
  const std::vector<Box>& boxes() const { return boxes_; }
  const std::vector<Ball>& balls() const { return balls_; }
  std::size_t size() const { return boxes_.size() + balls_.size(); }
  bool is_single_box() const { return boxes_.size() == 1 && balls_.empty(); }
  bool is_single_ball() const { return balls_.size() == 1 && boxes_.empty(); }

  // -S = {-x : x in S}
  FreqSet reflected() const;

  // Largest |xi| over the closure of the set.
  double max_abs() const;

 private:
  std::vector<Box> boxes_;
  std::vector<Ball> balls_;
  std::size_t dim_ = 0;
};

double measure(const FreqSet& s);

// Boxes are closed, balls are open.
bool contains(const FreqSet& s, std::span<const double> xi);

struct ContainmentCertificate {
  bool holds = false;
  // Smallest slack of R - B inside A; negative when violated.
  double margin = 0.0;
  // Corner of R - B (boxes) or the farthest point of R - B (balls) that
  // realises the margin.
  FreqVector witness;
  std::string detail;
};

// Decides R - B ⊆ A analytically for single boxes or single balls. A may be
// a union; containment in any one constituent is accepted.
ContainmentCertificate minkowski_diff_subset(const FreqSet& r, const FreqSet& b, const FreqSet& a,
                                             double tol = 1e-12);

enum class CaseId { SchroLowL, SchroHighL, SolLowL, SolHighL };

std::string_view case_name(CaseId id);
CaseId parse_case(std::string_view name);
// 1..4
int case_number(CaseId id);
bool is_schro_case(CaseId id);

struct ConstructionCase {
  CaseId id = CaseId::SchroLowL;
  int N = 1;
  double delta = 0.1;  // cases SCHRO_*
  double T = 1.0;      // cases SOL_*
  double t = 0.5;      // cases SCHRO_*
  int d = 1;

  static ConstructionCase schro(CaseId id, int N, int d, double delta = 0.1, double t = 0.5);
  static ConstructionCase sol(CaseId id, int N, int d, double T = 1.0);

  // Throws PreconditionError.
  void validate() const;
};

// t_N = T / (4 N^2 (1 + T))
double sol_time(int N, double T);

struct CaseSets {
  FreqSet A;
  FreqSet B;
  FreqSet R;
  double t_eval;
};

CaseSets build_sets(const ConstructionCase& c);

// The set xi_2 ranges over in the bilinear integral: B itself, or -B for
// SCHRO_HIGH_L where the interaction is A x (-B). The convolution lemma
// applies to (A, interaction_b(c, sets), R).
FreqSet interaction_b(const ConstructionCase& c, const CaseSets& sets);

// {"boxes":[{"lo":[...],"hi":[...]}],"balls":[{"center":[...],"radius":r}]}
// with 17 significant digits.
std::string to_json(const FreqSet& s);
FreqSet freqset_from_json(std::string_view text);

}  // namespace zlab
