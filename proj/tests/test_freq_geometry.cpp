#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "zlab/errors.hpp"
#include "zlab/freq_geometry.hpp"

using namespace zlab;

TEST_CASE("measure of boxes and balls") {
  // case-1 A_N, d = 3, N = 10: sides 0.1/10 and (0.1/2)^2 transverse
  const CaseSets s = build_sets(ConstructionCase::schro(CaseId::SchroLowL, 10, 3));
  CHECK(measure(s.A) == doctest::Approx(2.5e-5).epsilon(1e-12));

  const FreqSet ball(Ball({0.0, 0.0, 0.0}, 0.5));
  CHECK(measure(ball) == doctest::Approx(std::numbers::pi / 6).epsilon(1e-15));

  CHECK(measure(FreqSet(Box({0.0, 1.0}, {2.0, 1.0}))) == 0.0);
  CHECK(measure(FreqSet(Ball({0.0, 0.0}, 1.0))) == doctest::Approx(std::numbers::pi));
}

TEST_CASE("contains: closed boxes, open balls") {
  const FreqSet unit(Box({0.0}, {1.0}));
  const double half[] = {0.5}, one[] = {1.0}, past[] = {1.0 + 1e-15};
  CHECK(contains(unit, half));
  CHECK(contains(unit, one));
  CHECK_FALSE(contains(unit, past));

  const FreqSet b(Ball({8.0, 0.0, 0.0}, 0.25));
  const double p[] = {8.3, 0.0, 0.0}, q[] = {8.2, 0.0, 0.0}, edge[] = {8.25, 0.0, 0.0};
  CHECK_FALSE(contains(b, p));
  CHECK(contains(b, q));
  CHECK_FALSE(contains(b, edge));
}

TEST_CASE("case-1 sets match the construction at N = 8") {
  const CaseSets s = build_sets(ConstructionCase::schro(CaseId::SchroLowL, 8, 1));
  REQUIRE(s.A.is_single_box());
  CHECK(s.A.boxes()[0].lo[0] == -8.0);
  CHECK(s.A.boxes()[0].hi[0] == doctest::Approx(-7.9875).epsilon(1e-15));
  CHECK(s.B.boxes()[0].lo[0] == 15.0);
  CHECK(measure(s.A) + measure(s.B) == doctest::Approx(0.01875).epsilon(1e-14));
  CHECK(s.t_eval == 0.5);
}

TEST_CASE("sol sets and t_N") {
  const CaseSets s3 = build_sets(ConstructionCase::sol(CaseId::SolLowL, 8, 1, 1.0));
  CHECK(s3.t_eval == doctest::Approx(1.0 / 512).epsilon(1e-15));
  const CaseSets s4 = build_sets(ConstructionCase::sol(CaseId::SolHighL, 8, 1, 1.0));
  CHECK(s4.A.size() == 2);
  CHECK(measure(s4.A) == doctest::Approx(2.0));
  CHECK(measure(s4.B) == doctest::Approx(0.5));
  CHECK(sol_time(4, 10.0) == doctest::Approx(10.0 / 11.0 / 64.0));
}

TEST_CASE("minkowski_diff_subset") {
  SUBCASE("case-1 triple holds") {
    const CaseSets s = build_sets(ConstructionCase::schro(CaseId::SchroLowL, 8, 1));
    const auto cert = minkowski_diff_subset(s.R, s.B, s.A);
    CHECK(cert.holds);
    CHECK(cert.margin >= 0.0);
  }
  SUBCASE("unit intervals do not") {
    const FreqSet u(Box({0.0}, {1.0}));
    const auto cert = minkowski_diff_subset(u, u, u);
    CHECK_FALSE(cert.holds);
    CHECK(cert.margin == doctest::Approx(-1.0));
  }
  SUBCASE("case-3 balls touch with zero margin") {
    for (int d = 1; d <= 3; ++d) {
      const CaseSets s = build_sets(ConstructionCase::sol(CaseId::SolLowL, 16, d, 1.0));
      const auto cert = minkowski_diff_subset(s.R, s.B, s.A);
      CHECK(cert.holds);
      CHECK(std::abs(cert.margin) < 1e-12);
    }
  }
  SUBCASE("case-2 uses the reflected B") {
    const ConstructionCase c = ConstructionCase::schro(CaseId::SchroHighL, 8, 2);
    const CaseSets s = build_sets(c);
    CHECK(minkowski_diff_subset(s.R, interaction_b(c, s), s.A).holds);
    CHECK_FALSE(minkowski_diff_subset(s.R, s.B, s.A).holds);
  }
  SUBCASE("all construction cases") {
    for (int d = 1; d <= 3; ++d) {
      for (int n : {8, 64, 512, 4096}) {
        for (CaseId id : {CaseId::SchroLowL, CaseId::SchroHighL}) {
          const ConstructionCase c = ConstructionCase::schro(id, n, d);
          const CaseSets s = build_sets(c);
          CHECK(minkowski_diff_subset(s.R, interaction_b(c, s), s.A).holds);
        }
        for (CaseId id : {CaseId::SolLowL, CaseId::SolHighL}) {
          const ConstructionCase c = ConstructionCase::sol(id, n, d, 1.0);
          const CaseSets s = build_sets(c);
          CHECK(minkowski_diff_subset(s.R, interaction_b(c, s), s.A).holds);
        }
      }
    }
  }
}

TEST_CASE("preconditions") {
  CHECK_THROWS_AS(build_sets(ConstructionCase::schro(CaseId::SchroLowL, 8, 1, 0.9, 0.5)), PreconditionError);
  CHECK_THROWS_AS(build_sets(ConstructionCase::schro(CaseId::SchroLowL, 0, 1)), PreconditionError);
  CHECK_THROWS_AS(build_sets(ConstructionCase::sol(CaseId::SolLowL, 8, 1, 0.0)), PreconditionError);
  CHECK_THROWS_AS(parse_case("case-5"), PreconditionError);
  CHECK(parse_case("3") == CaseId::SolLowL);
  CHECK(parse_case("schro-high-l") == CaseId::SchroHighL);
  CHECK_THROWS_AS(FreqSet({Box({0.0}, {1.0})}, {Ball({0.0, 0.0}, 1.0)}), DimensionError);
}

TEST_CASE("json round trip keeps every digit") {
  const CaseSets s = build_sets(ConstructionCase::sol(CaseId::SolHighL, 64, 2, 1.0));
  const FreqSet back = freqset_from_json(to_json(s.A));
  REQUIRE(back.balls().size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(back.balls()[i].center == s.A.balls()[i].center);
    CHECK(back.balls()[i].radius == s.A.balls()[i].radius);
  }
  const CaseSets t = build_sets(ConstructionCase::schro(CaseId::SchroLowL, 4096, 3));
  const FreqSet bt = freqset_from_json(to_json(t.R));
  CHECK(bt.boxes()[0].lo == t.R.boxes()[0].lo);
  CHECK(bt.boxes()[0].hi == t.R.boxes()[0].hi);
}
