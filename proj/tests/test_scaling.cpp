#include <doctest.h>

#include <cmath>
#include <vector>

#include "zlab/errors.hpp"
#include "zlab/scaling.hpp"

#include "classifier_fixture.hpp"

using namespace zlab;

TEST_CASE("predicted exponents") {
  CHECK(predicted_exponent(CaseId::SchroLowL, {0, -1, 1}) == 0.5);
  CHECK(predicted_exponent(CaseId::SchroLowL, {1, 0, 1}) == -0.5);
  CHECK(predicted_exponent(CaseId::SchroHighL, {0, 1, 1}) == 1.5);
  CHECK(predicted_exponent(CaseId::SolLowL, {3, 0, 1}) == 1.0);
  CHECK(predicted_exponent(CaseId::SolHighL, {0, 2, 1}) == 1.0);
}

TEST_CASE("N grid") {
  CHECK(geometric_ns(16, 1024) == std::vector<int>{16, 32, 64, 128, 256, 512, 1024});
  CHECK_THROWS_AS(geometric_ns(12, 1024), PreconditionError);
  CHECK_THROWS_AS(geometric_ns(64, 64), PreconditionError);
  CHECK_THROWS_AS(geometric_ns(128, 64), PreconditionError);
  CHECK(is_power_of_two(1));
  CHECK_FALSE(is_power_of_two(0));
  CHECK_FALSE(is_power_of_two(96));
}

TEST_CASE("fit_slope on synthetic records") {
  std::vector<SweepRecord> pow_law, flat;
  for (int n : {16, 32, 64, 128}) {
    pow_law.push_back({n, std::sqrt(double(n)), 1.0, std::sqrt(double(n))});
    flat.push_back({n, 3.0, 1.0, 3.0});
  }
  const FitResult f = fit_slope(pow_law);
  CHECK(f.slope == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(f.r_squared == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(f.n_points == 4);
  const FitResult g = fit_slope(flat);
  CHECK(std::abs(g.slope) < 1e-15);
  CHECK(g.intercept == doctest::Approx(std::log(3.0)));
  CHECK_THROWS_AS(fit_slope({pow_law[0]}), PreconditionError);
}

TEST_CASE("sweeps are monotone in the expected direction") {
  const auto ns = geometric_ns(16, 1024);
  const auto up = sweep(CaseId::SchroLowL, {0, -1, 1}, ns);
  const auto down = sweep(CaseId::SchroLowL, {1, 0, 1}, ns);
  REQUIRE(up.size() == 7);
  REQUIRE(down.size() == 7);
  for (std::size_t i = 1; i < up.size(); ++i) {
    CHECK(up[i].N > up[i - 1].N);
    CHECK(up[i].ratio > up[i - 1].ratio);
    CHECK(down[i].ratio < down[i - 1].ratio);
  }
  CHECK(std::abs(fit_slope(up).slope - 0.5) < 0.15);
  for (const auto& r : up) CHECK(r.ratio == doctest::Approx(r.lhs / r.rhs).epsilon(1e-15));
}

TEST_CASE("csv") {
  const std::string csv = records_to_csv({{16, 1.0, 2.0, 0.5}});
  CHECK(csv.rfind("N,lhs,rhs,ratio\n16,", 0) == 0);
}


TEST_CASE("classifier spot points") {
  for (const auto& s : zlab_fixture::kSpots) {
    const RegionLabel r = classify({s.k, s.l, s.d});
    INFO("k=", s.k, " l=", s.l, " d=", s.d);
    CHECK(r.lwp == s.lwp);
    CHECK(r.ill_flow == s.ill_flow);
    CHECK(r.ill_solution == s.ill_solution);
    CHECK_FALSE(r.notes.empty());
  }
}

TEST_CASE("regions are disjoint on a dyadic grid scan") {
  int lwp_count = 0;
  for (int d = 1; d <= 6; ++d) {
    for (int i = -48; i <= 64; ++i) {
      for (int j = -48; j <= 64; ++j) {
        const double k = i / 16.0, l = j / 16.0;
        const RegionLabel r = classify({k, l, d});
        INFO("k=", k, " l=", l, " d=", d);
        CHECK_FALSE((r.lwp && r.ill_flow));
        CHECK_FALSE((r.lwp && r.ill_solution));
        CHECK(r.lwp == zlab_fixture::lwp_ref(k, l, d));
        CHECK(r.ill_flow == (l < -0.5 || l > 2 * k - 0.5));
        CHECK(r.ill_solution == (l < k - 2 || l > k + 1));
        lwp_count += r.lwp;
      }
    }
  }
  CHECK(lwp_count > 0);
}
