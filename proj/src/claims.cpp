#include "orthokit/claims.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <tuple>

#include "orthokit/errors.hpp"
#include "orthokit/hh_integrals.hpp"
#include "orthokit/serialization.hpp"

namespace orthokit {

std::string_view to_string(ClaimMode m) {
  switch (m) {
    case ClaimMode::sample:
      return "sample";
    case ClaimMode::optimize:
      return "optimize";
    case ClaimMode::both:
      return "both";
  }
  return "sample";
}

std::string_view to_string(ClaimStatus s) {
  switch (s) {
    case ClaimStatus::confirmed:
      return "confirmed";
    case ClaimStatus::counterexample:
      return "counterexample";
    case ClaimStatus::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

std::optional<ClaimMode> claim_mode_from_string(std::string_view s) {
  for (auto m : {ClaimMode::sample, ClaimMode::optimize, ClaimMode::both})
    if (to_string(m) == s) return m;
  return std::nullopt;
}

std::optional<ClaimStatus> claim_status_from_string(std::string_view s) {
  for (auto st : {ClaimStatus::confirmed, ClaimStatus::counterexample, ClaimStatus::inconclusive})
    if (to_string(st) == s) return st;
  return std::nullopt;
}

const ClaimDefinition* find_claim(std::string_view id) {
  for (const auto& def : claim_registry())
    if (def.spec.id == id) return &def;
  return nullptr;
}

namespace {

constexpr std::size_t kRefineSteps = 400;

// Worse trials sort first: violations, then lower score, then earlier index.
auto rank(const Outcome& o, std::size_t index) { return std::make_tuple(!o.violated, o.score, index); }

void validate_spec(const ClaimSpec& spec) {
  if (spec.trials < 1) throw InvalidArgument("trials must be at least 1");
  const auto& u = spec.universe;
  if (u.dim_min < 1 || u.dim_min > u.dim_max) throw InvalidArgument("universe dimensions must satisfy 1 <= min <= max");
  if (u.eps_grid.empty()) throw InvalidArgument("eps grid must be non-empty");
  for (double e : u.eps_grid)
    if (!(e >= 0.0 && e < 1.0)) throw InvalidArgument("eps grid values must lie in [0, 1)");
}

bool margins_match(const std::map<std::string, double>& a, const std::map<std::string, double>& b) {
  if (a.size() != b.size()) return false;
  for (const auto& [k, v] : a) {
    auto it = b.find(k);
    if (it == b.end()) return false;
    const double w = it->second;
    if (std::isnan(v) || std::isnan(w)) return std::isnan(v) && std::isnan(w);
    if (v == w) continue;
    if (std::abs(v - w) > 1e-9 * std::max(std::abs(v), std::abs(w))) return false;
  }
  return true;
}

}  // namespace

ClaimReport run_claim(const ClaimSpec& spec) {
  const ClaimDefinition* def = find_claim(spec.id);
  if (!def) throw InvalidArgument("unknown claim id '" + spec.id + "'");
  return run_claim(*def, spec);
}

ClaimReport run_claim(const ClaimDefinition& def, const ClaimSpec& spec) {
  validate_spec(spec);
  const auto start = std::chrono::steady_clock::now();

  ClaimReport rep;
  rep.id = spec.id;
  rep.statement = spec.statement.empty() ? def.spec.statement : spec.statement;
  rep.seed = spec.seed;

  std::optional<Witness> worst;
  Outcome worst_outcome;
  std::size_t worst_index = 0;
  for (std::size_t i = 0; i < spec.trials; ++i) {
    auto rng = make_rng(spec.seed, spec.id, i);
    Witness w = def.generate(spec.universe, rng);
    Outcome o = def.evaluate(w);
    ++rep.trials_run;
    for (const auto& [k, v] : o.tallies) rep.metrics[k] += v;
    if (!o.applicable) continue;
    ++rep.applicable;
    if (o.violated) ++rep.violations;
    if (o.indeterminate) ++rep.indeterminate;
    if (!worst || rank(o, i) < rank(worst_outcome, worst_index)) {
      w.margins = o.margins;
      worst = std::move(w);
      worst_outcome = std::move(o);
      worst_index = i;
    }
  }

  // Sharpen a found violation; never used to discover one, so larger
  // budgets cannot lose a counterexample found by a smaller one.
  if (spec.mode != ClaimMode::sample && def.perturb && worst && worst_outcome.violated) {
    auto rng = make_rng(spec.seed, spec.id + "/refine", 0);
    double radius = 0.1;
    for (std::size_t step = 0; step < kRefineSteps; ++step) {
      Witness cand = def.perturb(*worst, rng, radius);
      Outcome o = def.evaluate(cand);
      if (o.applicable && o.violated && o.score < worst_outcome.score) {
        cand.margins = o.margins;
        worst = std::move(cand);
        worst_outcome = std::move(o);
        ++rep.refinement_steps;
      } else if (step % 20 == 19) {
        radius *= 0.5;
      }
    }
  }

  rep.worst_witness = worst;
  if (rep.violations > 0) {
    rep.status = ClaimStatus::counterexample;
    if (!reverify(rep)) rep.status = ClaimStatus::inconclusive;
  } else if (rep.applicable > 0) {
    rep.status = ClaimStatus::confirmed;
  } else {
    rep.status = ClaimStatus::inconclusive;
  }
  rep.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

Outcome evaluate_witness(std::string_view id, const Witness& witness) {
  const ClaimDefinition* def = find_claim(id);
  if (!def) throw InvalidArgument("unknown claim id '" + std::string(id) + "'");
  return def->evaluate(witness);
}

bool reverify(const ClaimReport& report) {
  if (!report.worst_witness) return false;
  const ClaimDefinition* def = find_claim(report.id);
  if (!def) return false;
  const Witness reloaded = witness_from_json(parse_json(to_json(*report.worst_witness).dump()));
  const Outcome o = def->evaluate(reloaded);
  return o.applicable && o.violated && margins_match(o.margins, report.worst_witness->margins);
}

NormSpec draw_norm(const std::string& family, std::size_t dim, Rng& rng) {
  if (family == "ip:random") return InnerProductNorm{random_spd(rng, dim)};
  if (family == "ip:identity") return InnerProductNorm{Matrix::identity(dim)};
  if (family.rfind("wlp:", 0) == 0 && family.size() > 7 && family.substr(family.size() - 7) == ":random") {
    const std::string p = family.substr(4, family.size() - 11);
    std::vector<double> w(dim);
    for (double& c : w) c = log_uniform(rng, 0.2, 5.0);
    return WeightedLpNorm{std::get<LpNorm>(parse_norm_arg("lp:" + p)).p, w};
  }
  return parse_norm_arg(family);
}

double draw_eps(const std::vector<double>& grid, Rng& rng) {
  if (uniform(rng, 0.0, 1.0) < 0.5) return grid[uniform_index(rng, grid.size())];
  const auto [lo, hi] = std::minmax_element(grid.begin(), grid.end());
  return *lo == *hi ? *lo : uniform(rng, *lo, *hi);
}

namespace {

double predicate_eps(const Predicate& p, double drawn) { return p.eps ? *p.eps : p.eps_factor * drawn; }

struct Judged {
  bool applicable = false;
  bool violated = false;
  double score = 0.0;
  std::map<std::string, double> margins;
};

Judged judge(const Predicate& premise, const Predicate& conclusion, const NormSpec& spec, const Witness& w) {
  Judged j;
  const Vector x(w.vectors.at("x"));
  const Vector y(w.vectors.at("y"));
  const double e = w.eps.value_or(0.0);
  auto eps_for = [&](const Predicate& p) -> std::optional<double> {
    if (!takes_epsilon(p.relation)) return std::nullopt;
    return predicate_eps(p, e);
  };
  const auto pv = evaluate(premise.relation, spec, x, y, eps_for(premise));
  const auto cv = evaluate(conclusion.relation, spec, x, y, eps_for(conclusion));
  const Norm n(spec, x.dim());
  const double scale = std::max(n.squared(x.span()) + n.squared(y.span()), std::numeric_limits<double>::min());
  const double p = pv.margin / scale;
  const double c = cv.margin / scale;
  j.applicable = pv.holds;
  j.violated = pv.holds && c < -1e-8;
  j.score = p > 0.0 ? std::max(c, -p) : c;
  j.margins = {{"premise", pv.margin}, {"conclusion", cv.margin}};
  return j;
}

}  // namespace

SearchResult search_counterexample(const Predicate& premise, const Predicate& conclusion, const Universe& universe,
                                   std::size_t budget, std::uint64_t seed) {
  if (universe.norm_families.empty()) throw InvalidArgument("universe needs at least one norm family");
  if (universe.dim_min < 1 || universe.dim_min > universe.dim_max)
    throw InvalidArgument("universe dimensions must satisfy 1 <= min <= max");
  if (universe.eps_grid.empty()) throw InvalidArgument("eps grid must be non-empty");

  SearchResult res;
  std::optional<Witness> best;
  double best_score = kInfinity;
  const bool ip_only = needs_inner_product(premise.relation) || needs_inner_product(conclusion.relation);

  auto consider = [&](Witness w) -> bool {
    ++res.evaluations;
    const Judged j = judge(premise, conclusion, w.norms.at("norm"), w);
    if (!j.applicable) return false;
    w.margins = j.margins;
    if (j.violated) {
      const Witness reloaded = witness_from_json(parse_json(to_json(w).dump()));
      if (judge(premise, conclusion, reloaded.norms.at("norm"), reloaded).violated) {
        res.witness = std::move(w);
        return true;
      }
    }
    if (j.score < best_score) {
      best_score = j.score;
      best = std::move(w);
    }
    return false;
  };

  const std::size_t sample_budget = (budget + 1) / 2;
  for (std::size_t i = 0; i < sample_budget; ++i) {
    auto rng = make_rng(seed, "search", i);
    const auto& fam = universe.norm_families[uniform_index(rng, universe.norm_families.size())];
    const std::size_t dim = universe.dim_min + uniform_index(rng, universe.dim_max - universe.dim_min + 1);
    NormSpec spec = draw_norm(fam, dim, rng);
    if (ip_only && !is_inner_product_norm(spec)) continue;
    Witness w;
    auto x = normal_components(rng, dim);
    auto y = normal_components(rng, dim);
    if (uniform(rng, 0.0, 1.0) < 0.5) {
      const double rho = log_uniform(rng, 1e-2, 1e2) * std::sqrt(dot(x, x) / std::max(dot(y, y), 1e-300));
      for (double& c : y) c *= rho;
    }
    if (dot(x, x) == 0.0 || dot(y, y) == 0.0) continue;
    w.vectors = {{"x", x}, {"y", y}};
    w.norms = {{"norm", spec}};
    w.eps = draw_eps(universe.eps_grid, rng);
    if (consider(std::move(w))) return res;
  }

  auto rng = make_rng(seed, "search-refine", 0);
  double radius = 0.2;
  for (std::size_t i = sample_budget; i < budget && best; ++i) {
    Witness w = *best;
    for (const char* key : {"x", "y"}) {
      auto& v = w.vectors.at(key);
      const double len = std::sqrt(dot(v, v));
      for (double& c : v) c += radius * len * std::normal_distribution<double>(0.0, 1.0)(rng);
      const double after = std::sqrt(dot(v, v));
      if (after > 0.0)
        for (double& c : v) c *= len / after;
    }
    const double before = best_score;
    if (consider(std::move(w))) return res;
    if (best_score == before && (i - sample_budget) % 20 == 19) radius *= 0.5;
  }
  return res;
}

}  // namespace orthokit
