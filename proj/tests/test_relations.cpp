#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include <json.hpp>

#include "zlab/errors.hpp"
#include "zlab/interval.hpp"
#include "zlab/relations.hpp"

using namespace zlab;

namespace {

// Products and sums of two doubles are exact in binary128, so it serves as
// the reference for the directed operations.
using quad = __float128;

std::vector<double> sample(std::mt19937_64& rng, const FreqSet& s) {
  const std::size_t d = s.dim();
  std::vector<double> x(d);
  if (!s.boxes().empty()) {
    const Box& b = s.boxes()[0];
    for (std::size_t j = 0; j < d; ++j) x[j] = std::uniform_real_distribution<double>(b.lo[j], b.hi[j])(rng);
    return x;
  }
  const Ball& b = s.balls()[0];
  std::uniform_real_distribution<double> u(-b.radius, b.radius);
  double r2;
  do {
    r2 = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      x[j] = u(rng);
      r2 += x[j] * x[j];
    }
  } while (r2 >= b.radius * b.radius);
  for (std::size_t j = 0; j < d; ++j) x[j] += b.center[j];
  return x;
}

}  // namespace

TEST_CASE("directed operations bracket the exact result") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-1e3, 1e3), pos(1e-3, 1e3);
  for (int i = 0; i < 20000; ++i) {
    const double a = u(rng), b = u(rng), p = pos(rng);
    const quad s = quad(a) + quad(b), m = quad(a) * quad(b);
    CHECK((quad(add_down(a, b)) <= s && s <= quad(add_up(a, b))));
    CHECK((quad(mul_down(a, b)) <= m && m <= quad(mul_up(a, b))));
    CHECK((quad(div_down(a, p)) * quad(p) <= quad(a) && quad(a) <= quad(div_up(a, p)) * quad(p)));
    const double lo = sqrt_down(p), hi = sqrt_up(p);
    CHECK((quad(lo) * quad(lo) <= quad(p) && quad(p) <= quad(hi) * quad(hi)));
  }
}

TEST_CASE("exact operations are not widened") {
  const Interval a = Interval::point(-8.0) * Interval::point(2.0) + Interval::point(15.0) + Interval::point(1.0);
  CHECK(a.lo == 0.0);
  CHECK(a.hi == 0.0);
  const Interval b = Interval::point(1.0) + Interval::point(1e-20);
  CHECK(b.lo == 1.0);
  CHECK(b.hi > 1.0);
  CHECK(sqrt(Interval(4.0, 9.0)).lo == 2.0);
  CHECK(sqr(Interval(-2.0, 3.0)).lo == 0.0);
  CHECK(sqr(Interval(-2.0, 3.0)).hi == 9.0);
  CHECK_THROWS_AS(Interval(1.0, 2.0) / Interval(-1.0, 1.0), NumericalError);
}

TEST_CASE("sigma and zeta at the construction corners") {
  const double zero[] = {0.0};
  CHECK(sigma(zero, zero, Sign::Plus) == 0.0);
  CHECK(sigma(zero, zero, Sign::Minus) == 0.0);
  for (double n : {8.0, 64.0, 1000.0}) {
    const double x1[] = {-n}, x2[] = {2 * n - 1};
    CHECK(sigma(x1, x2, Sign::Plus) == 0.0);
    CHECK(sigma(x1, x2, Sign::Minus) == -4 * n + 2);
    const double y1[] = {n}, y2[] = {n + 1};
    CHECK(zeta(y1, y2, Sign::Plus) == 0.0);
    CHECK(zeta(y1, y2, Sign::Minus) == -4 * n - 2);
  }
  const double one[] = {1.0};
  CHECK(zeta(one, one, Sign::Minus) == -2.0);
  const double bad[] = {1.0, 2.0};
  CHECK_THROWS_AS(sigma(one, bad, Sign::Plus), DimensionError);
}

TEST_CASE("plus and minus differ by twice the modulus") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-100.0, 100.0);
  for (int i = 0; i < 1000; ++i) {
    const double a[] = {u(rng), u(rng), u(rng)}, b[] = {u(rng), u(rng), u(rng)};
    const double s = std::hypot(b[0], b[1], b[2]);
    const double z = std::hypot(a[0] + b[0], a[1] + b[1], a[2] + b[2]);
    const double ds = sigma(a, b, Sign::Plus) - sigma(a, b, Sign::Minus);
    const double dz = zeta(a, b, Sign::Plus) - zeta(a, b, Sign::Minus);
    CHECK(std::abs(ds - 2 * s) <= 1e-12 * std::max(1.0, std::abs(sigma(a, b, Sign::Plus)) + 2 * s));
    CHECK(std::abs(dz - 2 * z) <= 1e-12 * std::max(1.0, std::abs(zeta(a, b, Sign::Plus)) + 2 * z));
  }
}

TEST_CASE("enclosures contain sampled values") {
  std::mt19937_64 rng(42);
  const RelationKind kinds[] = {
      {Family::Sigma, Sign::Plus}, {Family::Sigma, Sign::Minus}, {Family::Zeta, Sign::Plus}, {Family::Zeta, Sign::Minus}};
  std::vector<std::pair<FreqSet, FreqSet>> pairs;
  for (int d = 1; d <= 3; ++d) {
    for (CaseId id : {CaseId::SchroLowL, CaseId::SchroHighL}) {
      const CaseSets s = build_sets(ConstructionCase::schro(id, 64, d));
      pairs.emplace_back(s.A, s.B);
    }
    const CaseSets s = build_sets(ConstructionCase::sol(CaseId::SolLowL, 8, d, 1.0));
    pairs.emplace_back(s.A, s.B);
  }
  for (const auto& [a, b] : pairs) {
    for (RelationKind k : kinds) {
      const Interval e = relation_range(k, a, b);
      const FreqSet bb = k.family == Family::Zeta ? b.reflected() : b;
      int outside = 0;
      for (int i = 0; i < 10000; ++i) {
        const auto x1 = sample(rng, a), x2 = sample(rng, bb);
        if (!e.contains(relation(k, x1, x2))) ++outside;
      }
      CHECK(outside == 0);
    }
  }
}

TEST_CASE("case claims") {
  SUBCASE("case 1, d = 1, N = 8") {
    const CaseSets s = build_sets(ConstructionCase::schro(CaseId::SchroLowL, 8, 1));
    const Interval e = relation_range({Family::Sigma, Sign::Plus}, s.A, s.B);
    CHECK(e.lo >= 0.0);
    CHECK(e.hi < 0.7);
  }
  SUBCASE("case 1, d = 3, N = 8") {
    const CaseSets s = build_sets(ConstructionCase::schro(CaseId::SchroLowL, 8, 3));
    const Interval e = relation_range({Family::Sigma, Sign::Minus}, s.A, s.B);
    CHECK(e.lo > -40.0);
    CHECK(e.hi < -4.0);
  }
  SUBCASE("case 2, d = 2, N = 16") {
    const CaseSets s = build_sets(ConstructionCase::schro(CaseId::SchroHighL, 16, 2));
    const Interval p = relation_range({Family::Zeta, Sign::Plus}, s.A, s.B);
    const Interval m = relation_range({Family::Zeta, Sign::Minus}, s.A, s.B);
    CHECK(p.lo > -0.1);
    CHECK(p.hi < 0.7);
    CHECK(m.lo > -112.0);
    CHECK(m.hi < -16.0);
  }
  SUBCASE("every configuration certifies") {
    for (CaseId id : {CaseId::SchroLowL, CaseId::SchroHighL}) {
      for (int d = 1; d <= 3; ++d) {
        for (int n : {8, 64, 512, 4096}) {
          const ConstructionCase c = ConstructionCase::schro(id, n, d);
          const CaseSets s = build_sets(c);
          for (const Claim& cl : case_claims(c)) {
            const CertReport r = certify(cl, s.A, s.B);
            INFO(cl.str(), " d=", d, " N=", n, " enclosure ", r.enclosure.str());
            CHECK(r.verified);
          }
        }
      }
    }
  }
  SUBCASE("a false claim is rejected") {
    const ConstructionCase c = ConstructionCase::schro(CaseId::SchroLowL, 8, 1);
    const CaseSets s = build_sets(c);
    const Claim tight{{Family::Sigma, Sign::Minus}, Interval(-5.0 * 8, -31.0), true, true};
    CHECK_FALSE(certify(tight, s.A, s.B).verified);
  }
}

TEST_CASE("refinement rescues a claim the plain enclosure misses") {
  // The transverse term y2 (2 y1 + y2) is not monotone here, so the plain
  // enclosure is loose at the bottom; the claim is the sampled range plus 1%.
  const FreqSet a(Box({-8.0, -1.0}, {-7.0, 1.0})), b(Box({15.0, 0.0}, {16.0, 1.0}));
  const RelationKind k{Family::Sigma, Sign::Plus};
  double lo = 1e300, hi = -1e300;
  const int n = 40;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j)
      for (int p = 0; p <= n; ++p)
        for (int q = 0; q <= n; ++q) {
          const double x1[] = {-8.0 + 1.0 * i / n, -1.0 + 2.0 * j / n}, x2[] = {15.0 + 1.0 * p / n, 1.0 * q / n};
          const double v = relation(k, x1, x2);
          lo = std::min(lo, v);
          hi = std::max(hi, v);
        }
  const double pad = 0.01 * (hi - lo);
  const Claim c{k, Interval(lo - pad, hi + pad), false, false};
  REQUIRE_FALSE(c.admits(relation_range(k, a, b)));
  const CertReport r = certify(c, a, b);
  CHECK(r.refinements > 0);
  CHECK(r.verified);
}

TEST_CASE("report json") {
  const ConstructionCase c = ConstructionCase::schro(CaseId::SchroLowL, 8, 1);
  const CaseSets s = build_sets(c);
  const auto j = nlohmann::ordered_json::parse(to_json(certify(case_claims(c)[0], s.A, s.B)));
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"kind", "claimed", "enclosure", "verified", "refinements"});
  CHECK(j["kind"] == "sigma+");
  CHECK(j["verified"] == true);
}

TEST_CASE("phase product bound") {
  SUBCASE("case 3, d = 1, N = 8, T = 1") {
    const PhaseReport p = phase_product_bound(ConstructionCase::sol(CaseId::SolLowL, 8, 1, 1.0));
    CHECK(p.holds);
    REQUIRE(p.bounds.size() == 2);
    const double hand = sol_time(8, 1.0) * 8.75 * 8.75;
    CHECK(p.bounds[0].bound <= hand * (1 + 1e-12));
    CHECK(p.bounds[0].bound < 1.0);
    CHECK(p.cos_product_lower > 0.25);
  }
  SUBCASE("case 3, d = 3, N = 4, T = 10") {
    CHECK(phase_product_bound(ConstructionCase::sol(CaseId::SolLowL, 4, 3, 10.0)).holds);
  }
  SUBCASE("vanishing T") {
    const PhaseReport p = phase_product_bound(ConstructionCase::sol(CaseId::SolHighL, 8, 2, 1e-12));
    CHECK(p.holds);
    for (const auto& b : p.bounds) CHECK(b.bound < 1e-9);
  }
  SUBCASE("all sol configurations") {
    for (CaseId id : {CaseId::SolLowL, CaseId::SolHighL})
      for (int d = 1; d <= 3; ++d)
        for (int n : {8, 64, 512})
          for (double T : {1.0, 10.0}) CHECK(phase_product_bound(ConstructionCase::sol(id, n, d, T)).holds);
  }
  SUBCASE("schro case is rejected") {
    CHECK_THROWS_AS(phase_product_bound(ConstructionCase::schro(CaseId::SchroLowL, 8, 1)), PreconditionError);
  }
}
