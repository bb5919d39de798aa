#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "zlab/conv_oracle.hpp"
#include "zlab/errors.hpp"
#include "zlab/freq_geometry.hpp"
#include "zlab/relations.hpp"
#include "zlab/scaling.hpp"
#include "zlab/simulator.hpp"

namespace zlab::cli {

namespace {

using ojson = nlohmann::ordered_json;

void emit(std::ostream& os, const ojson& j) { os << j.dump(2) << "\n"; }

ojson parsed(const std::string& text) { return ojson::parse(text); }

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream os(path);
  if (!os) throw PreconditionError("cannot write " + path);
  os << text;
}

// "@path" reads the set from a file, anything else is inline JSON.
FreqSet set_arg(const std::string& s) {
  try {
    return freqset_from_json(s.starts_with('@') ? read_text(s.substr(1)) : s);
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError(std::string("bad set JSON: ") + e.what());
  }
}

double default_h(int d) { return d == 1 ? 1.0 / 256 : d == 2 ? 1.0 / 128 : 1.0 / 32; }

struct CaseOpts {
  std::string name = "schro-low-l";
  int N = 64;
  int d = 1;
  double delta = 0.1;
  double t = 0.5;
  double T = 1.0;

  void add(CLI::App* app, bool with_t = true) {
    app->add_option("--case", name, "schro-low-l, schro-high-l, sol-low-l, sol-high-l (or 1-4)");
    app->add_option("--N", N, "frequency scale")->capture_default_str();
    app->add_option("--d", d, "spatial dimension")->capture_default_str();
    app->add_option("--delta", delta, "width parameter (schro cases)")->capture_default_str();
    if (with_t) app->add_option("--t", t, "evaluation time (schro cases)")->capture_default_str();
    app->add_option("--T", T, "time horizon (sol cases)")->capture_default_str();
  }
  ConstructionCase build() const {
    ConstructionCase c = make_case(parse_case(name), N, d, SweepParams{delta, t, T});
    c.validate();
    return c;
  }
};

struct QuadOpts {
  QuadratureSpec q;
  void add(CLI::App* app) {
    app->add_option("--inner-nodes", q.inner, "inner Gauss-Legendre nodes per axis")->capture_default_str();
    app->add_option("--outer-nodes", q.outer, "outer Gauss-Legendre nodes per axis")->capture_default_str();
    app->add_option("--time-nodes", q.time, "time Gauss-Legendre nodes")->capture_default_str();
    app->add_option("--rel-tol", q.rel_tol, "inner refinement tolerance")->capture_default_str();
  }
};

// ---- classify

struct ClassifyOpts {
  double k = 0.0, l = 0.0;
  int d = 1;
};

int run_classify(const ClassifyOpts& o, std::ostream& out) {
  if (o.d < 1) throw PreconditionError("d must be >= 1");
  const RegionLabel lab = classify({o.k, o.l, o.d});
  ojson j;
  j["lwp"] = lab.lwp;
  j["ill_flow"] = lab.ill_flow;
  j["ill_solution"] = lab.ill_solution;
  j["notes"] = lab.notes;
  j["k"] = o.k;
  j["l"] = o.l;
  j["d"] = o.d;
  emit(out, j);
  return kOk;
}

// ---- verify

struct VerifyOpts {
  CaseOpts c;
  double h = 0.0;
};

ojson verify_report(const ConstructionCase& c, double h, bool& ok) {
  const CaseSets sets = build_sets(c);
  const FreqSet b = interaction_b(c, sets);
  ojson checks = ojson::array();
  std::optional<std::string> first_failure;
  auto record = [&](const std::string& name, bool holds, ojson detail) {
    ojson e;
    e["check"] = name;
    e["holds"] = holds;
    e["report"] = std::move(detail);
    checks.push_back(std::move(e));
    if (!holds && !first_failure) first_failure = name;
  };

  const ContainmentCertificate cc = minkowski_diff_subset(sets.R, b, sets.A);
  ojson cj;
  cj["margin"] = cc.margin;
  cj["witness"] = cc.witness;
  cj["detail"] = cc.detail;
  record("containment", cc.holds, cj);

  if (is_schro_case(c.id)) {
    for (const Claim& claim : case_claims(c)) {
      const CertReport r = certify(claim, sets.A, sets.B);
      record(relation_name(claim.kind), r.verified, parsed(to_json(r)));
    }
  } else {
    const PhaseReport p = phase_product_bound(c);
    record("cos_product", p.holds, parsed(to_json(p)));
  }

  const LemmaReport lr = lemma_check(sets.A, b, sets.R, h > 0.0 ? h : default_h(c.d));
  record("lemma", lr.applicable && lr.holds, parsed(to_json(lr)));

  ok = !first_failure.has_value();
  ojson rep;
  rep["case"] = std::string(case_name(c.id));
  rep["N"] = c.N;
  rep["d"] = c.d;
  if (is_schro_case(c.id)) {
    rep["delta"] = c.delta;
    rep["t"] = c.t;
  } else {
    rep["T"] = c.T;
    rep["t_N"] = sets.t_eval;
  }
  rep["sets"] = {{"A", parsed(to_json(sets.A))}, {"B", parsed(to_json(sets.B))}, {"R", parsed(to_json(sets.R))}};
  rep["checks"] = std::move(checks);
  rep["verified"] = ok;
  rep["first_failure"] = first_failure ? ojson(*first_failure) : ojson(nullptr);
  return rep;
}

int run_verify(const VerifyOpts& o, std::ostream& out, std::ostream& err) {
  bool ok = false;
  const ojson rep = verify_report(o.c.build(), o.h, ok);
  emit(out, rep);
  if (!ok) err << "verification failed: " << rep["first_failure"].get<std::string>() << "\n";
  return ok ? kOk : kClaimFailure;
}

// ---- sweep

struct SweepOpts {
  std::string name = "schro-low-l";
  double k = 0.0, l = -1.0;
  int d = 1;
  int nmin = 16, nmax = 1024;
  SweepParams p;
  QuadOpts q;
  std::string csv_out;
};

ojson fit_summary(CaseId id, const RegularityTriple& r, const FitResult& f) {
  ojson j;
  j["predicted_exponent"] = predicted_exponent(id, r);
  j["fitted_exponent"] = f.slope;
  j["intercept"] = f.intercept;
  j["r_squared"] = f.r_squared;
  j["n_points"] = f.n_points;
  return j;
}

int run_sweep(const SweepOpts& o, std::ostream& out, std::ostream& err) {
  const CaseId id = parse_case(o.name);
  if (o.d < 1) throw PreconditionError("d must be >= 1");
  o.q.q.validate();
  const std::vector<int> ns = geometric_ns(o.nmin, o.nmax);
  const RegularityTriple r{o.k, o.l, o.d};
  const auto recs = sweep(id, r, ns, o.p, o.q.q);
  const FitResult f = fit_slope(recs);

  ojson j;
  j["case"] = std::string(case_name(id));
  j["k"] = o.k;
  j["l"] = o.l;
  j["d"] = o.d;
  j["N_min"] = o.nmin;
  j["N_max"] = o.nmax;
  const ojson fs = fit_summary(id, r, f);
  for (const auto& [key, v] : fs.items()) j[key] = v;
  const std::string csv = records_to_csv(recs);
  if (o.csv_out.empty()) {
    out << csv;
    emit(err, j);
  } else {
    write_text(o.csv_out, csv);
    j["csv"] = o.csv_out;
    emit(out, j);
  }
  return kOk;
}

// ---- lemma

struct LemmaOpts {
  CaseOpts c;
  std::string a, b, r;
  int random = 0;
  std::uint64_t seed = 42;
  double h = 0.0;
};

int run_lemma(const LemmaOpts& o, std::ostream& out) {
  if (o.random > 0) {
    std::mt19937_64 rng(o.seed);
    int passed = 0;
    double worst = std::numeric_limits<double>::infinity();
    ojson failures = ojson::array();
    for (int i = 0; i < o.random; ++i) {
      const int d = 1 + i % 3;
      const BoxTriple t = random_contained_triple(rng, d);
      const FreqSet a(t.a), b(t.b), r(t.r);
      const bool contained = minkowski_diff_subset(r, b, a).holds;
      const LemmaReport lr = lemma_check(a, b, r, default_h(d));
      const bool ok = contained && lr.applicable && lr.holds;
      worst = std::min(worst, lr.margin);
      if (ok) {
        ++passed;
      } else {
        ojson f;
        f["index"] = i;
        f["d"] = d;
        f["contained"] = contained;
        f["lemma"] = parsed(to_json(lr));
        failures.push_back(std::move(f));
      }
    }
    ojson j;
    j["trials"] = o.random;
    j["seed"] = o.seed;
    j["passed"] = passed;
    j["min_margin"] = worst;
    j["failures"] = std::move(failures);
    j["holds"] = passed == o.random;
    emit(out, j);
    return passed == o.random ? kOk : kClaimFailure;
  }

  FreqSet a = FreqSet(Box({0.0}, {1.0})), b = a, r = a;
  int d = 1;
  if (!o.a.empty() || !o.b.empty() || !o.r.empty()) {
    if (o.a.empty() || o.b.empty() || o.r.empty()) throw PreconditionError("--A, --B and --R go together");
    a = set_arg(o.a);
    b = set_arg(o.b);
    r = set_arg(o.r);
    d = static_cast<int>(a.dim());
  } else {
    const ConstructionCase c = o.c.build();
    const CaseSets sets = build_sets(c);
    a = sets.A;
    b = interaction_b(c, sets);
    r = sets.R;
    d = c.d;
  }
  const ContainmentCertificate cc = minkowski_diff_subset(r, b, a);
  const LemmaReport lr = lemma_check(a, b, r, o.h > 0.0 ? o.h : default_h(d));
  ojson j;
  j["containment"] = {{"holds", cc.holds}, {"margin", cc.margin}, {"detail", cc.detail}};
  j["lemma"] = parsed(to_json(lr));
  const bool ok = cc.holds && lr.applicable && lr.holds;
  j["holds"] = ok;
  emit(out, j);
  return ok ? kOk : kClaimFailure;
}

// ---- simulate

struct SimOpts {
  std::string data = "smooth";
  CaseOpts c;
  double k = 0.0, l = 0.0;
  double amp = 1.0;
  double eps = 0.01;
  double dxi = 0.05;
  int M = 256;
  double t = 0.1;
  int steps = 100;
  int picard_iters = 3;
  bool linear = false;
  std::string csv_out;
  std::string snapshot;
};

DataTriple make_data(const SimOpts& o, const RegularityTriple& r) {
  if (o.data == "smooth") return make_smooth_data(o.c.d, o.dxi, o.M, o.amp, o.amp);
  if (o.data == "zero") return make_smooth_data(o.c.d, o.dxi, o.M, 0.0, 0.0);
  if (o.data == "counterexample") return make_counterexample_data(o.c.build(), r, o.dxi, o.M);
  throw PreconditionError("--data must be zero, smooth or counterexample");
}

double l2_norm(const SpectralField& f) {
  double s = 0.0;
  for (const cplx& v : f.c) s += std::norm(v);
  return std::sqrt(s * std::pow(f.dxi, f.d));
}

int run_simulate(const SimOpts& o, std::ostream& out, std::ostream& err) {
  const RegularityTriple r{o.k, o.l, o.c.d};
  const DataTriple data = make_data(o, r).scaled(o.eps);

  std::ostringstream csv;
  csv << "t,u_Hk,n_Hl,nt_Hlm1\n";
  auto row = [&](double t, const HklNorm& h) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", t, h.u_part, h.n_part, h.nt_part);
    csv << buf;
  };
  row(0.0, hkl_norm(data, r));
  EvolveOptions eo;
  eo.steps = o.steps;
  eo.picard_iters = o.picard_iters;
  eo.nonlinear = !o.linear;
  eo.observer = [&](double t, const Solution& s) { row(t, hkl_norm(s, r)); };
  const Solution sol = evolve(data, o.t, eo);

  const double m0 = l2_norm(data.u0), m1 = l2_norm(sol.u);
  const double drift = m0 > 0.0 ? std::abs(m1 * m1 - m0 * m0) / (m0 * m0) : std::abs(m1 * m1);

  if (!o.snapshot.empty()) {
    const std::pair<const char*, const SpectralField*> fields[] = {{"u", &sol.u}, {"n", &sol.n}, {"nt", &sol.nt}};
    for (const auto& [tag, f] : fields) {
      write_text(o.snapshot + "_" + tag + ".json", snapshot_header(*f, o.t, r) + "\n");
      write_text(o.snapshot + "_" + tag + ".csv", snapshot_csv(*f));
    }
  }

  const HklNorm fin = hkl_norm(sol, r);
  ojson j;
  j["data"] = o.data;
  j["d"] = o.c.d;
  j["dxi"] = o.dxi;
  j["M"] = o.M;
  j["eps"] = o.eps;
  j["t"] = o.t;
  j["steps"] = o.steps;
  j["nonlinear"] = !o.linear;
  j["mass_drift"] = drift;
  j["reality_defect_n"] = reality_defect(sol.n);
  j["reality_defect_nt"] = reality_defect(sol.nt);
  j["final_norms"] = {{"u_Hk", fin.u_part}, {"n_Hl", fin.n_part}, {"nt_Hlm1", fin.nt_part}, {"total", fin.total}};
  if (o.csv_out.empty()) {
    out << csv.str();
    emit(err, j);
  } else {
    write_text(o.csv_out, csv.str());
    j["csv"] = o.csv_out;
    emit(out, j);
  }
  return kOk;
}

// ---- gateaux

struct GateauxOpts {
  std::string data = "counterexample";
  CaseOpts c;
  double k = 0.0, l = -1.0;
  double amp = 10.0;
  double t = 0.1;
  int steps = 100;
  int picard_iters = 3;
  double eps = 1e-2;
  double dxi = 0.0;
  int M = 0;
  int s_nodes = 64;
  double max_gap = 0.05;
  bool richardson = true;
};

int run_gateaux(GateauxOpts o, std::ostream& out, std::ostream& err) {
  if (!(o.eps > 0.0)) throw PreconditionError("eps must be positive");
  const RegularityTriple r{o.k, o.l, o.c.d};
  DataTriple phi;
  if (o.data == "counterexample") {
    const ConstructionCase c = o.c.build();
    const CaseSets sets = build_sets(c);
    if (o.dxi <= 0.0) o.dxi = 1.0 / (80.0 * c.N);
    if (o.M <= 0) {
      const double reach = std::max(sets.A.max_abs(), sets.B.max_abs());
      o.M = 2 * static_cast<int>(std::ceil(reach / o.dxi));
    }
    phi = make_counterexample_data(c, r, o.dxi, o.M);
  } else if (o.data == "smooth") {
    if (o.dxi <= 0.0) o.dxi = 0.05;
    if (o.M <= 0) o.M = 256;
    phi = make_smooth_data(o.c.d, o.dxi, o.M, o.amp, o.amp);
  } else {
    throw PreconditionError("--data must be counterexample or smooth");
  }

  const Solution pic = picard_second(phi, phi, o.t, o.s_nodes);
  const double gap = relative_l2_gap(second_gateaux_fd(phi, o.t, o.eps, o.steps, o.picard_iters), pic);
  ojson j;
  j["data"] = o.data;
  if (o.data == "counterexample") {
    j["case"] = std::string(case_name(parse_case(o.c.name)));
    j["N"] = o.c.N;
  } else {
    j["amp"] = o.amp;
  }
  j["d"] = o.c.d;
  j["dxi"] = o.dxi;
  j["M"] = o.M;
  j["t"] = o.t;
  j["steps"] = o.steps;
  j["eps"] = o.eps;
  j["gap"] = gap;
  if (o.richardson) {
    const double half = relative_l2_gap(second_gateaux_fd(phi, o.t, o.eps / 2, o.steps, o.picard_iters), pic);
    j["gap_half_eps"] = half;
    j["richardson_ratio"] = half > 0.0 ? gap / half : std::numeric_limits<double>::infinity();
  }
  j["max_gap"] = o.max_gap;
  const bool ok = gap <= o.max_gap;
  j["holds"] = ok;
  emit(out, j);
  if (!ok) err << "relative gap " << gap << " exceeds " << o.max_gap << "\n";
  return ok ? kOk : kClaimFailure;
}

// ---- report

struct ReportOpts {
  std::string json_out;
  QuadOpts q;
};

struct SweepCase {
  CaseId id;
  double k, l;
};

int run_report(const ReportOpts& o, std::ostream& out) {
  const std::vector<SweepCase> cases = {
      {CaseId::SchroLowL, 0, -1},  {CaseId::SchroLowL, 1, 0}, {CaseId::SchroLowL, 0, -0.5},
      {CaseId::SchroHighL, 0, 1}, {CaseId::SolLowL, 3, 0},    {CaseId::SolHighL, 0, 2},
  };
  const std::vector<int> ns = geometric_ns(16, 1024);
  bool all_ok = true;

  ojson sweeps = ojson::array();
  for (const SweepCase& sc : cases) {
    const RegularityTriple r{sc.k, sc.l, 1};
    const FitResult f = fit_slope(sweep(sc.id, r, ns, SweepParams{}, o.q.q));
    ojson j;
    j["case"] = std::string(case_name(sc.id));
    j["k"] = sc.k;
    j["l"] = sc.l;
    const ojson fs = fit_summary(sc.id, r, f);
    for (const auto& [key, v] : fs.items()) j[key] = v;
    const bool ok = std::abs(f.slope - predicted_exponent(sc.id, r)) <= 0.15;
    j["within_tolerance"] = ok;
    all_ok = all_ok && ok;
    sweeps.push_back(std::move(j));
  }

  ojson verify = ojson::array();
  for (CaseId id : {CaseId::SchroLowL, CaseId::SchroHighL, CaseId::SolLowL, CaseId::SolHighL}) {
    for (int d = 1; d <= 3; ++d) {
      for (int n : {8, 64, 512}) {
        bool ok = false;
        const ojson rep = verify_report(make_case(id, n, d, SweepParams{}), 0.0, ok);
        verify.push_back({{"case", rep["case"]}, {"N", n}, {"d", d}, {"verified", ok},
                          {"first_failure", rep["first_failure"]}});
        all_ok = all_ok && ok;
      }
    }
  }

  ojson j;
  j["sweeps"] = std::move(sweeps);
  j["verification"] = std::move(verify);
  j["all_passed"] = all_ok;
  if (o.json_out.empty()) {
    emit(out, j);
  } else {
    write_text(o.json_out, j.dump(2) + "\n");
    emit(out, ojson{{"report", o.json_out}, {"all_passed", all_ok}});
  }
  return all_ok ? kOk : kClaimFailure;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Frequency-set certification and scaling experiments for the Zakharov system", "zlab"};
  app.require_subcommand(1);

  ClassifyOpts cl;
  auto* s_classify = app.add_subcommand("classify", "label (k, l, d) by well-posedness region");
  s_classify->add_option("--k", cl.k)->required();
  s_classify->add_option("--l", cl.l)->required();
  s_classify->add_option("--d", cl.d)->capture_default_str();

  VerifyOpts vo;
  auto* s_verify = app.add_subcommand("verify", "certify the containment, relation ranges and lemma for one case");
  vo.c.add(s_verify);
  s_verify->add_option("--grid-h", vo.h, "grid spacing for the lemma (default depends on d)");

  SweepOpts so;
  auto* s_sweep = app.add_subcommand("sweep", "ratio lhs/rhs over N = 2^a and its log-log slope");
  s_sweep->add_option("--case", so.name)->capture_default_str();
  s_sweep->add_option("--k", so.k)->capture_default_str();
  s_sweep->add_option("--l", so.l)->capture_default_str();
  s_sweep->add_option("--d", so.d)->capture_default_str();
  s_sweep->add_option("--N-min", so.nmin)->capture_default_str();
  s_sweep->add_option("--N-max", so.nmax)->capture_default_str();
  s_sweep->add_option("--delta", so.p.delta)->capture_default_str();
  s_sweep->add_option("--t", so.p.t)->capture_default_str();
  s_sweep->add_option("--T", so.p.T)->capture_default_str();
  s_sweep->add_option("--out", so.csv_out, "CSV path (stdout if absent; the summary then goes to stderr)");
  so.q.add(s_sweep);

  LemmaOpts lo;
  auto* s_lemma = app.add_subcommand("lemma", "check the convolution lower bound");
  lo.c.add(s_lemma);
  s_lemma->add_option("--A", lo.a, "set JSON, or @file");
  s_lemma->add_option("--B", lo.b, "set JSON, or @file");
  s_lemma->add_option("--R", lo.r, "set JSON, or @file");
  s_lemma->add_option("--random", lo.random, "number of random box triples (d cycles 1, 2, 3)");
  s_lemma->add_option("--seed", lo.seed)->capture_default_str();
  s_lemma->add_option("--grid-h", lo.h, "grid spacing (default depends on d)");

  SimOpts sim;
  auto* s_sim = app.add_subcommand("simulate", "evolve lattice data and record norms");
  s_sim->add_option("--data", sim.data, "zero, smooth or counterexample")->capture_default_str();
  sim.c.add(s_sim, false);
  s_sim->add_option("--k", sim.k)->capture_default_str();
  s_sim->add_option("--l", sim.l)->capture_default_str();
  s_sim->add_option("--amp", sim.amp)->capture_default_str();
  s_sim->add_option("--eps", sim.eps, "data scale")->capture_default_str();
  s_sim->add_option("--dxi", sim.dxi)->capture_default_str();
  s_sim->add_option("--M", sim.M, "lattice half-width")->capture_default_str();
  s_sim->add_option("--t", sim.t, "final time")->capture_default_str();
  s_sim->add_option("--construct-t", sim.c.t, "evaluation time used to build counterexample sets")
      ->capture_default_str();
  s_sim->add_option("--steps", sim.steps)->capture_default_str();
  s_sim->add_option("--picard-iters", sim.picard_iters)->capture_default_str();
  s_sim->add_flag("--linear", sim.linear, "drop the nonlinear terms");
  s_sim->add_option("--out", sim.csv_out, "norms CSV path (stdout if absent; the summary then goes to stderr)");
  s_sim->add_option("--snapshot", sim.snapshot, "write final coefficients to PREFIX_{u,n,nt}.{json,csv}");

  GateauxOpts go;
  go.c.N = 8;
  auto* s_gat = app.add_subcommand("gateaux", "finite-difference second derivative against the Picard iterate");
  s_gat->add_option("--data", go.data, "counterexample or smooth")->capture_default_str();
  go.c.add(s_gat, false);
  s_gat->add_option("--construct-t", go.c.t, "evaluation time used to build counterexample sets")
      ->capture_default_str();
  s_gat->add_option("--k", go.k)->capture_default_str();
  s_gat->add_option("--l", go.l)->capture_default_str();
  s_gat->add_option("--amp", go.amp, "smooth-data amplitude")->capture_default_str();
  s_gat->add_option("--t", go.t, "final time")->capture_default_str();
  s_gat->add_option("--steps", go.steps)->capture_default_str();
  s_gat->add_option("--picard-iters", go.picard_iters)->capture_default_str();
  s_gat->add_option("--eps", go.eps)->capture_default_str();
  s_gat->add_option("--dxi", go.dxi, "lattice spacing (default 1/(80N), or 0.05 for smooth data)");
  s_gat->add_option("--M", go.M, "lattice half-width (default: just covers the data)");
  s_gat->add_option("--s-nodes", go.s_nodes)->capture_default_str();
  s_gat->add_option("--max-gap", go.max_gap)->capture_default_str();
  s_gat->add_flag("!--no-richardson", go.richardson, "skip the eps/2 run");

  ReportOpts ro;
  auto* s_report = app.add_subcommand("report", "run the standard sweeps and verifications");
  s_report->add_option("--out", ro.json_out, "JSON path (stdout if absent)");
  ro.q.add(s_report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (s_classify->parsed()) return run_classify(cl, out);
    if (s_verify->parsed()) return run_verify(vo, out, err);
    if (s_sweep->parsed()) return run_sweep(so, out, err);
    if (s_lemma->parsed()) return run_lemma(lo, out);
    if (s_sim->parsed()) return run_simulate(sim, out, err);
    if (s_gat->parsed()) return run_gateaux(go, out, err);
    if (s_report->parsed()) return run_report(ro, out);
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  }
  return kUsage;
}

}  // namespace zlab::cli
