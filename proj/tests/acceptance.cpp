// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "orthokit/claims.hpp"
#include "orthokit/cli.hpp"
#include "orthokit/hh_integrals.hpp"
#include "orthokit/mapping.hpp"
#include "orthokit/relations.hpp"
#include "orthokit/sampling.hpp"
#include "orthokit/serialization.hpp"
#include "orthokit/solvers.hpp"

using namespace orthokit;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail.clear();
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

int failures = 0;

void report(int n, const std::string& title, const Verdict& v, const std::string& summary) {
  if (!v.pass) ++failures;
  std::printf("criterion %d %s: %s (%s)\n", n, v.pass ? "PASS" : "FAIL", title.c_str(),
              v.pass ? summary.c_str() : v.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(3);
  ss << v;
  return ss.str();
}

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun cli(std::vector<std::string> args) {
  args.insert(args.begin(), "orthokit");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) lines.push_back(line);
  return lines;
}

NormSpec weighted(Rng& rng, std::size_t dim) {
  std::vector<double> w(dim);
  for (double& c : w) c = log_uniform(rng, 0.2, 5.0);
  return WeightedLpNorm{2.0, w};
}

double oracle_norm(const NormSpec& spec, const std::vector<double>& v) {
  if (const auto* lp = std::get_if<LpNorm>(&spec)) return oracle::lp(v, lp->p);
  if (const auto* w = std::get_if<WeightedLpNorm>(&spec)) return oracle::lp(v, w->p, w->weights);
  return oracle::ip_norm(std::get<InnerProductNorm>(spec).gram.to_rows(), v);
}

// Norm variants: each generator returns a fresh norm at the given dimension.
std::vector<std::pair<std::string, std::function<NormSpec(Rng&, std::size_t)>>> variants() {
  return {{"lp:1", [](Rng&, std::size_t) { return NormSpec{LpNorm{1.0}}; }},
          {"lp:1.5", [](Rng&, std::size_t) { return NormSpec{LpNorm{1.5}}; }},
          {"lp:2", [](Rng&, std::size_t) { return NormSpec{LpNorm{2.0}}; }},
          {"lp:3", [](Rng&, std::size_t) { return NormSpec{LpNorm{3.0}}; }},
          {"lp:inf", [](Rng&, std::size_t) { return NormSpec{LpNorm{kInfinity}}; }},
          {"wlp:2", weighted},
          {"ip", [](Rng& rng, std::size_t d) { return NormSpec{InnerProductNorm{random_spd(rng, d)}}; }}};
}

void criterion_1() {
  Verdict v;
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    auto rng = make_rng(0, "acceptance-1", i);
    const std::size_t dim = 2 + uniform_index(rng, 7);
    const Matrix g = random_spd(rng, dim);
    const Vector x = random_vector(rng, dim);
    const Vector y = log_uniform(rng, 0.1, 10.0) * random_vector(rng, dim);
    const double quad = hh_values_quadrature(InnerProductNorm{g}, x, y).i_plus;
    const double want = oracle::closed_form(g.to_rows(), x.components(), y.components()).plus;
    const double err = std::abs(quad - want) / (1.0 + std::abs(want));
    worst = std::max(worst, err);
    v.require(err <= 1e-9, "pair " + std::to_string(i) + " error " + fmt(err));
    if (!v.pass) break;
  }
  const double secs = seconds_since(t0);
  v.require(secs < 10.0, "runtime " + fmt(secs) + " s");
  report(1, "quadrature agrees with the inner-product closed form", v,
         "1000 pairs, worst scaled error " + fmt(worst) + ", " + fmt(secs) + " s");
}

void criterion_2() {
  Verdict v;
  std::size_t checks = 0;
  for (const auto& [name, make] : variants()) {
    for (int i = 0; i < 1000; ++i) {
      auto rng = make_rng(0, "acceptance-2/" + name, i);
      const std::size_t dim = 2 + uniform_index(rng, 3);
      const NormSpec spec = make(rng, dim);
      const Vector x = random_vector(rng, dim);
      const Vector y = log_uniform(rng, 0.1, 10.0) * random_vector(rng, dim);
      const double lambda = uniform(rng, -10.0, 10.0);
      const double p = hh_plus(spec, x, y);
      const bool ok = oracle::close_rel(p, hh_plus(spec, y, x), 1e-9) &&
                      oracle::close_rel(hh_plus(spec, x, -y), hh_minus(spec, x, y), 1e-9) &&
                      oracle::close_rel(hh_plus(spec, lambda * x, lambda * y), lambda * lambda * p, 1e-9);
      checks += 3;
      v.require(ok, name + " trial " + std::to_string(i));
      if (!ok) break;
    }
  }
  report(2, "symmetry, sign flip and joint scaling of the integrals", v,
         std::to_string(checks) + " identities over 7 norm variants");
}

void criterion_3() {
  Verdict v;
  std::size_t abs_disagree = 0, rel_disagree = 0, near_boundary = 0;
  const double band = 1e-10;
  for (int i = 0; i < 100000; ++i) {
    auto rng = make_rng(0, "acceptance-3", i);
    const std::size_t dim = 2 + uniform_index(rng, 3);
    const Matrix g = random_spd(rng, dim);
    const NormSpec spec = InnerProductNorm{g};
    const auto G = g.to_rows();
    const double eps = uniform(rng, 0.0, 0.999);
    std::vector<double> x = random_vector(rng, dim).components();
    std::vector<double> y = random_vector(rng, dim).components();
    // Two thirds of the triples are steered onto one of the two boundaries.
    const int mode = static_cast<int>(uniform_index(rng, 3));
    if (mode > 0) {
      const double xx = oracle::quad_form(G, x, x);
      const double proj = oracle::quad_form(G, x, y) / xx;
      for (std::size_t k = 0; k < dim; ++k) y[k] -= proj * x[k];
      const double nx = std::sqrt(xx), nu = oracle::ip_norm(G, y);
      const double rho = log_uniform(rng, 0.1, 10.0);
      // cos = target·(1 + small jitter), with target ε (absolute) or the relative threshold.
      const double target = mode == 1 ? eps : std::min(1.0, eps * (1.0 + rho * rho) / rho);
      const double c = std::clamp(target * (1.0 + uniform(rng, -1e-6, 1e-6)), -1.0, 1.0);
      const double s = std::sqrt(1.0 - c * c);
      for (std::size_t k = 0; k < dim; ++k) y[k] = rho * nx * (c * x[k] / nx + s * y[k] / nu);
    }
    const double xy = std::abs(oracle::quad_form(G, x, y));
    const double nx = oracle::ip_norm(G, x), ny = oracle::ip_norm(G, y);
    const double abs_margin = (eps * nx * ny - xy) / (nx * ny);
    const double rel_margin = (eps * (nx * nx + ny * ny) - xy) / (nx * nx + ny * ny);
    const Vector vx(x), vy(y);
    if (std::abs(abs_margin) > band) {
      const bool a = hh_absolute(spec, vx, vy, eps).holds;
      const bool b = eps_inner(spec, vx, vy, eps).holds;
      if (a != b || a != (abs_margin > 0.0)) ++abs_disagree;
    } else {
      ++near_boundary;
    }
    if (std::abs(rel_margin) > band) {
      if (hh_relative(spec, vx, vy, eps).holds != (rel_margin > 0.0)) ++rel_disagree;
    } else {
      ++near_boundary;
    }
  }
  v.require(abs_disagree == 0, std::to_string(abs_disagree) + " absolute-form disagreements");
  v.require(rel_disagree == 0, std::to_string(rel_disagree) + " relative-form disagreements");
  report(3, "inner-product characterizations of the approximate relations", v,
         "100000 triples, 0 disagreements outside the 1e-10 band, " + std::to_string(near_boundary) +
             " checks inside the band");
}

void criterion_4() {
  Verdict v;
  double worst = 0.0;
  for (const auto& [name, make] : variants()) {
    for (int i = 0; i < 1000; ++i) {
      auto rng = make_rng(0, "acceptance-4/" + name, i);
      const std::size_t dim = 2 + uniform_index(rng, 3);
      const NormSpec spec = make(rng, dim);
      const Vector x = random_vector(rng, dim);
      const Vector y = log_uniform(rng, 1e-3, 1e3) * random_vector(rng, dim);
      const double want = 2.0 * oracle_norm(spec, x.components()) * oracle_norm(spec, y.components());
      const double got = beta_functional_min_numeric(spec, x, y).value;
      const double err = std::abs(got - want) / want;
      worst = std::max(worst, err);
      v.require(err <= 1e-8, name + " pair " + std::to_string(i) + " rel error " + fmt(err));
      if (err > 1e-8) break;
    }
  }
  report(4, "numeric minimum over beta equals 2|x||y|", v,
         "7000 pairs over 7 norm variants, worst rel error " + fmt(worst));
}

void criterion_5() {
  Verdict v;
  const LinearMap d{Matrix{{2.0, 0.0}, {0.0, 1.0}}, LpNorm{2.0}, LpNorm{2.0}};
  const auto p = profile(d);
  v.require(std::abs(p.op_norm - 2.0) <= 1e-12, "op_norm " + fmt(p.op_norm));
  v.require(std::abs(p.co_norm - 1.0) <= 1e-12, "co_norm " + fmt(p.co_norm));
  v.require(std::abs(p.eps_star - 0.6) <= 1e-12, "eps_star " + fmt(p.eps_star));
  const double e14 = min_eps_condition_14(d);
  v.require(std::abs(e14 - 0.6) <= 1e-8, "two-sided bound minimum " + fmt(e14));
  const double grid = oracle::theta_grid_condition({{2.0, 0.0}, {0.0, 1.0}}, 10000);
  v.require(std::abs(grid - 0.3) <= 1e-3, "theta-grid oracle gives " + fmt(grid));
  const double e11 = min_eps_condition_11(d).eps_min;
  v.require(std::abs(e11 - grid) <= 1e-3, "orthogonality transfer minimum " + fmt(e11));
  const double lmax = oracle::sym2_lambda_max(1.0, 1.0, 2.0);  // gᵀg = [[1,1],[1,2]]
  const double op_oracle = std::sqrt(lmax);
  const double op = profile({Matrix{{1.0, 1.0}, {0.0, 1.0}}, LpNorm{2.0}, LpNorm{2.0}}).op_norm;
  v.require(std::abs(op - op_oracle) <= 1e-10, "shear op_norm " + fmt(op) + " vs " + fmt(op_oracle));
  std::ostringstream s;
  s.precision(12);
  s << "diag(2,1): op " << p.op_norm << ", co " << p.co_norm << ", eps_star " << p.eps_star << ", bound minimum " << e14
    << ", transfer minimum " << e11 << " (grid " << grid << "); shear op " << op;
  report(5, "mapping constants", v, s.str());
}

std::string without_elapsed(const std::string& line) {
  Json j = parse_json(line);
  j.erase("elapsed_ms");
  return j.dump();
}

bool margins_match(const std::map<std::string, double>& a, const std::map<std::string, double>& b) {
  if (a.size() != b.size()) return false;
  for (const auto& [k, x] : a) {
    const auto it = b.find(k);
    if (it == b.end()) return false;
    if (!(x == it->second || oracle::close_rel(x, it->second, 1e-9))) return false;
  }
  return true;
}

void criteria_6_to_8() {
  const auto t0 = Clock::now();
  const CliRun first = cli({"claims", "run", "--all", "--seed", "0"});
  const double secs = seconds_since(t0);
  const CliRun second = cli({"claims", "run", "--all", "--seed", "0"});

  std::map<std::string, ClaimReport> reports;
  std::map<std::string, std::string> raw;
  for (const auto& line : lines_of(first.out)) {
    auto r = claim_report_from_json(parse_json(line));
    raw[r.id] = line;
    reports[r.id] = std::move(r);
  }

  // 6: expected statuses.
  Verdict v6;
  v6.require(first.code == 0, "claims run exited with " + std::to_string(first.code));
  const std::set<std::string> confirmed{"C1", "C4", "C7", "C8", "C10", "C11-converse", "C12-forward"};
  const std::set<std::string> refuted{"C3", "C5", "C6", "C11-forward"};
  for (const auto& id : confirmed) {
    const auto it = reports.find(id);
    if (it == reports.end()) {
      v6.require(false, id + " missing");
      continue;
    }
    const auto& r = it->second;
    v6.require(r.status == ClaimStatus::confirmed, id + " is " + std::string(to_string(r.status)));
    v6.require(r.violations == 0, id + " has " + std::to_string(r.violations) + " violations");
    v6.require(r.trials_run >= 100000, id + " ran " + std::to_string(r.trials_run) + " trials");
  }
  for (const auto& id : refuted) {
    const auto it = reports.find(id);
    if (it == reports.end()) {
      v6.require(false, id + " missing");
      continue;
    }
    const auto& r = it->second;
    v6.require(r.status == ClaimStatus::counterexample, id + " is " + std::string(to_string(r.status)));
    v6.require(r.worst_witness.has_value() && reverify(r), id + " witness does not re-verify");
  }
  if (const auto it = reports.find("C11-forward"); it != reports.end() && it->second.worst_witness) {
    const auto& m = it->second.worst_witness->margins;
    const double pm = m.count("premise") ? m.at("premise") : -1.0;
    const double cm = m.count("conclusion") ? m.at("conclusion") : 1.0;
    v6.require(pm >= 0.05, "C11-forward premise margin " + fmt(pm));
    v6.require(cm <= -0.05, "C11-forward conclusion margin " + fmt(cm));
  }
  // The fixed pair x=(2,0), y=(0.45,√0.7975), ε=0.2 by the closed-form oracle:
  // relative margin ε(‖x‖²+‖y‖²) − |⟨x,y⟩| = 0.1, inner margin 2ε‖x‖‖y‖ − |⟨x,y⟩| = −0.1.
  {
    const oracle::Vec x{2.0, 0.0}, y{0.45, std::sqrt(0.7975)};
    const double xy = oracle::dot(x, y);
    const double rel = 0.2 * (oracle::dot(x, x) + oracle::dot(y, y)) - xy;
    const double inn = 0.4 * std::sqrt(oracle::dot(x, x) * oracle::dot(y, y)) - xy;
    v6.require(rel >= 0.05 && inn <= -0.05, "fixed pair oracle margins " + fmt(rel) + ", " + fmt(inn));
    Witness w;
    w.vectors = {{"x", x}, {"y", y}};
    w.norms = {{"norm", LpNorm{2.0}}};
    w.eps = 0.2;
    v6.require(evaluate_witness("C11-forward", w).violated, "fixed pair is not a C11-forward violation");
  }
  v6.require(secs < 120.0, "runtime " + fmt(secs) + " s");
  std::size_t confirmed_trials = 0;
  for (const auto& id : confirmed)
    if (reports.count(id)) confirmed_trials += reports[id].trials_run;
  report(6, "claim suite statuses", v6,
         std::to_string(confirmed.size()) + " confirmed over " + std::to_string(confirmed_trials) + " trials, " +
             std::to_string(refuted.size()) + " refuted with re-verified witnesses, full run " + fmt(secs) + " s");

  // 7: determinism.
  Verdict v7;
  const auto a = lines_of(first.out), b = lines_of(second.out);
  v7.require(second.code == 0, "second run exited with " + std::to_string(second.code));
  v7.require(a.size() == b.size() && !a.empty(), "different number of reports");
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i)
    v7.require(without_elapsed(a[i]) == without_elapsed(b[i]), "report " + std::to_string(i) + " differs");
  report(7, "repeated runs are byte-identical apart from elapsed time", v7,
         std::to_string(a.size()) + " reports compared");

  // 8: witness soundness from the serialized reports.
  Verdict v8;
  std::size_t checked = 0;
  for (const auto& id : refuted) {
    if (!raw.count(id)) {
      v8.require(false, id + " missing");
      continue;
    }
    const ClaimReport r = claim_report_from_json(parse_json(raw[id]));
    if (!r.worst_witness) {
      v8.require(false, id + " has no witness");
      continue;
    }
    Witness fresh = *r.worst_witness;
    fresh.margins.clear();
    const Outcome o = evaluate_witness(id, fresh);
    v8.require(o.applicable && o.violated, id + " witness no longer violates");
    v8.require(margins_match(o.margins, r.worst_witness->margins), id + " margins differ");
    ++checked;
  }
  report(8, "counterexample witnesses re-verify from JSON", v8,
         std::to_string(checked) + " witnesses re-evaluated, margins within rel 1e-9");
}

void criterion_9() {
  Verdict v;
  const CliRun a = cli({"eval", "hh_exact", "--norm", "lp:1", "--x", "[1,0]", "--y", "[0,1]"});
  const CliRun b = cli({"eval", "hh_relative", "--eps", "0.15", "--x", "[2,0]", "--y", "[0.45,0.8930285549745876]"});
  const CliRun c = cli({"eval", "birkhoff", "--norm", "lp:inf", "--x", "[1,1]", "--y", "[0,1]"});
  v.require(a.code == 0, "hh_exact example exit " + std::to_string(a.code));
  v.require(b.code == 3, "hh_relative example exit " + std::to_string(b.code));
  v.require(c.code == 0, "birkhoff example exit " + std::to_string(c.code));

  std::size_t documents = 0;
  auto lossless = [&](const std::string& printed, auto&& reparse, const std::string& what) {
    ++documents;
    try {
      v.require(reparse(parse_json(printed)) == printed, what + " does not re-parse losslessly");
    } catch (const std::exception& e) {
      v.require(false, what + ": " + e.what());
    }
  };
  auto pretty = [](const Json& j) { return j.dump(2) + "\n"; };
  for (const auto* r : {&a, &b, &c})
    lossless(r->out, [&](const Json& j) { return pretty(to_json(verdict_from_json(j))); }, "eval verdict");
  lossless(cli({"hh", "--norm", "lp:inf", "--x", "[1,0]", "--y", "[0,1]"}).out,
           [&](const Json& j) { return pretty(to_json(hh_values_from_json(j))); }, "hh values");
  lossless(cli({"solve", "pencil", "--x", "[1,0]", "--y", "[1,1]"}).out,
           [&](const Json& j) { return pretty(to_json(root_result_from_json(j))); }, "pencil root");
  lossless(cli({"solve", "line-min", "--x", "[1,0]", "--y", "[1,1]"}).out,
           [&](const Json& j) { return pretty(to_json(line_minimum_from_json(j))); }, "line minimum");
  lossless(cli({"map", "--matrix", "[[2,0],[0,1]]", "--eps", "0.3", "--with-11"}).out,
           [&](const Json& j) {
             Json k = j;
             k["profile"] = to_json(map_profile_from_json(j.at("profile")));
             k["min_eps_condition_14"] = number_to_json(number_from_json(j.at("min_eps_condition_14")));
             k["bounds"] = to_json(bounds_report_from_json(j.at("bounds")));
             k["condition_17"] = to_json(condition17_from_json(j.at("condition_17")));
             k["condition_11"] = to_json(condition11_from_json(j.at("condition_11")));
             return pretty(k);
           },
           "map report");
  for (const auto& line : lines_of(cli({"claims", "run", "C3", "C10", "--trials", "200"}).out))
    lossless(line + "\n", [](const Json& j) { return to_json(claim_report_from_json(j)).dump() + "\n"; },
             "claim report");
  report(9, "command-line exit codes and JSON round trips", v,
         "exit codes 0/3/0, " + std::to_string(documents) + " printed documents re-parse losslessly");
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criteria_6_to_8();
  criterion_9();
  return failures == 0 ? 0 : 1;
}
