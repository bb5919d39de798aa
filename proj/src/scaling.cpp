#include "zlab/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "zlab/errors.hpp"

namespace zlab {

namespace {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

}  // namespace

double predicted_exponent(CaseId id, const RegularityTriple& r) {
  switch (id) {
    case CaseId::SchroLowL: return -r.l - 0.5;
    case CaseId::SchroHighL: return r.l - 2.0 * r.k + 0.5;
    case CaseId::SolLowL: return r.k - r.l - 2.0;
    case CaseId::SolHighL: return r.l - r.k - 1.0;
  }
  return 0.0;
}

ConstructionCase make_case(CaseId id, int N, int d, const SweepParams& p) {
  return is_schro_case(id) ? ConstructionCase::schro(id, N, d, p.delta, p.t) : ConstructionCase::sol(id, N, d, p.T);
}

std::vector<SweepRecord> sweep(CaseId id, const RegularityTriple& r, const std::vector<int>& Ns,
                               const SweepParams& p, const QuadratureSpec& q) {
  if (Ns.empty()) throw PreconditionError("sweep needs at least one N");
  for (std::size_t i = 0; i < Ns.size(); ++i) {
    if (Ns[i] < 2) throw PreconditionError("sweep N values must be >= 2");
    if (i > 0 && Ns[i] <= Ns[i - 1]) throw PreconditionError("sweep N values must be strictly increasing");
  }
  std::vector<SweepRecord> out;
  for (int n : Ns) {
    const ConstructionCase c = make_case(id, n, r.d, p);
    SweepRecord rec;
    rec.N = n;
    try {
      rec.lhs = lhs_norm(c, r, q);
    } catch (const QuadratureError& e) {
      throw QuadratureError(std::string(e.what()) + " (N = " + std::to_string(n) + ")", e.previous(), e.last());
    }
    rec.rhs = rhs_norm(c);
    rec.ratio = rec.lhs / rec.rhs;
    out.push_back(rec);
  }
  return out;
}

bool is_power_of_two(long n) { return n > 0 && (n & (n - 1)) == 0; }

std::vector<int> geometric_ns(int nmin, int nmax) {
  if (!is_power_of_two(nmin) || !is_power_of_two(nmax)) throw PreconditionError("N bounds must be powers of two");
  if (nmin >= nmax) throw PreconditionError("N-min must be smaller than N-max");
  std::vector<int> ns;
  for (long n = nmin; n <= nmax; n *= 2) ns.push_back(static_cast<int>(n));
  return ns;
}

FitResult fit_slope(const std::vector<SweepRecord>& records) {
  if (records.size() < 2) throw PreconditionError("fit_slope needs at least 2 records");
  std::vector<SweepRecord> recs = records;
  std::sort(recs.begin(), recs.end(), [](const SweepRecord& a, const SweepRecord& b) { return a.N < b.N; });
  const double n = static_cast<double>(recs.size());
  double sx = 0.0, sy = 0.0;
  std::vector<double> x, y;
  for (const auto& r : recs) {
    if (!(r.ratio > 0.0)) throw PreconditionError("fit_slope needs positive ratios");
    if (r.N <= 0) throw PreconditionError("fit_slope needs positive N");
    x.push_back(std::log(static_cast<double>(r.N)));
    y.push_back(std::log(r.ratio));
    sx += x.back();
    sy += y.back();
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw PreconditionError("fit_slope needs at least two distinct N");
  FitResult f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.n_points = static_cast<int>(recs.size());
  double ssr = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - (f.intercept + f.slope * x[i]);
    ssr += e * e;
  }
  f.r_squared = syy > 0.0 ? std::clamp(1.0 - ssr / syy, 0.0, 1.0) : 1.0;
  return f;
}

RegionLabel classify(const RegularityTriple& r) {
  if (r.d < 1) throw PreconditionError("d must be >= 1");
  const double k = r.k, l = r.l;
  const double d = static_cast<double>(r.d);
  // Each boundary is evaluated through one shared expression so that the
  // complementary strict/non-strict inequalities cannot both hold.
  const double kl = k - l;
  const double lh = l + 0.5;
  const double twok = 2.0 * k;
  const double gap = twok - (l + 1.0);

  RegionLabel out;
  if (r.d == 1) {
    out.lwp = kl > -0.5 && kl <= 1.0 && twok >= lh && lh >= 0.0;
  } else {
    const bool band = kl >= 0.0 && kl <= 1.0;
    if (r.d <= 3) {
      out.lwp = band && l >= 0.0 && gap >= 0.0;
    } else {
      const double c = d / 2.0 - 2.0;
      out.lwp = band && l > c && gap > c;
    }
  }
  const bool flow_low = lh < 0.0, flow_high = lh > twok;
  const bool sol_low = kl > 2.0, sol_high = kl < -1.0;
  out.ill_flow = flow_low || flow_high;
  out.ill_solution = sol_low || sol_high;

  std::vector<std::string> notes;
  if (out.lwp) notes.push_back("local well-posedness region");
  if (flow_low) notes.push_back("flow map not C2: l < -1/2");
  if (flow_high) notes.push_back("flow map not C2: l > 2k - 1/2");
  if (sol_low) notes.push_back("solution map not C2: l < k - 2");
  if (sol_high) notes.push_back("solution map not C2: l > k + 1");
  if (notes.empty()) notes.push_back("not covered by either result");
  for (std::size_t i = 0; i < notes.size(); ++i) {
    if (i) out.notes += "; ";
    out.notes += notes[i];
  }
  return out;
}

std::string records_to_csv(const std::vector<SweepRecord>& records) {
  std::ostringstream os;
  os << "N,lhs,rhs,ratio\n";
  for (const auto& r : records) os << r.N << ',' << num(r.lhs) << ',' << num(r.rhs) << ',' << num(r.ratio) << '\n';
  return os.str();
}

std::string to_json(const FitResult& f) {
  std::ostringstream os;
  os << "{\"slope\":" << num(f.slope) << ",\"intercept\":" << num(f.intercept) << ",\"r_squared\":" << num(f.r_squared)
     << ",\"n_points\":" << f.n_points << '}';
  return os.str();
}

}  // namespace zlab
