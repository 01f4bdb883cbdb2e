#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "orthokit/norm.hpp"
#include "orthokit/relations.hpp"
#include "orthokit/sampling.hpp"
#include "orthokit/vector.hpp"

namespace orthokit {

/// Where a claim draws its trials from.
///
/// norm_families entries: "lp:<p|inf>", "wlp:2:random" (log-uniform weights),
/// "ip:random" (random SPD gram), "ip:identity", and for two-norm claims a
/// pair "<first>|<second>" where the second may be "wlp:2:scaled" or
/// "ip:scaled" (the first norm multiplied by a random constant).
struct Universe {
  std::size_t dim_min = 2;
  std::size_t dim_max = 3;
  std::vector<std::string> norm_families;
  std::vector<double> eps_grid{0.01, 0.05, 0.1, 0.2, 0.3, 0.5, 0.8};

  friend bool operator==(const Universe&, const Universe&) = default;
};

enum class ClaimMode { sample, optimize, both };
enum class ClaimStatus { confirmed, counterexample, inconclusive };

std::string_view to_string(ClaimMode m);
std::string_view to_string(ClaimStatus s);
std::optional<ClaimMode> claim_mode_from_string(std::string_view s);
std::optional<ClaimStatus> claim_status_from_string(std::string_view s);

struct ClaimSpec {
  std::string id;
  std::string statement;  // the audited implication in words
  Universe universe;
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  ClaimMode mode = ClaimMode::sample;

  friend bool operator==(const ClaimSpec&, const ClaimSpec&) = default;
};

/// Everything needed to re-evaluate one trial from scratch.
struct Witness {
  std::map<std::string, std::vector<double>> vectors;
  std::optional<Matrix> matrix;
  std::map<std::string, NormSpec> norms;
  std::optional<double> eps;
  std::map<std::string, double> params;
  std::map<std::string, double> margins;  // filled in by evaluation

  friend bool operator==(const Witness&, const Witness&) = default;
};

/// Result of evaluating one witness.
///
/// score orders trials from worst to best: violations score below zero, and
/// among passing trials a small score means a close call.
struct Outcome {
  bool applicable = false;
  bool violated = false;
  bool indeterminate = false;  // failed only inside the numerical margin band
  double score = 0.0;
  std::map<std::string, double> margins;
  std::map<std::string, double> tallies;  // summed over trials into the report metrics
};

/// A registered claim: how to draw a trial and how to judge it.
/// perturb is optional; when present, found violations are sharpened by
/// random local moves.
struct ClaimDefinition {
  ClaimSpec spec;
  std::function<Witness(const Universe&, Rng&)> generate;
  std::function<Outcome(const Witness&)> evaluate;
  std::function<Witness(const Witness&, Rng&, double radius)> perturb;
};

struct ClaimReport {
  std::string id;
  std::string statement;
  ClaimStatus status = ClaimStatus::inconclusive;
  std::size_t trials_run = 0;
  std::size_t applicable = 0;
  std::size_t violations = 0;
  std::size_t indeterminate = 0;
  std::optional<Witness> worst_witness;
  std::map<std::string, double> metrics;
  std::uint64_t seed = 0;
  std::size_t refinement_steps = 0;
  double elapsed_ms = 0.0;

  friend bool operator==(const ClaimReport&, const ClaimReport&) = default;
};

/// Materializes a norm family at a dimension (see Universe).
NormSpec draw_norm(const std::string& family, std::size_t dim, Rng& rng);

/// Half the time a grid value, otherwise uniform between the grid extremes.
double draw_eps(const std::vector<double>& grid, Rng& rng);

/// All registered claims with their default budgets, in a fixed order.
const std::vector<ClaimDefinition>& claim_registry();
const ClaimDefinition* find_claim(std::string_view id);

/// Runs the registered claim spec.id with the budget, universe and seed of
/// `spec`. Throws InvalidArgument for an unknown id.
ClaimReport run_claim(const ClaimSpec& spec);
ClaimReport run_claim(const ClaimDefinition& def, const ClaimSpec& spec);

/// Fresh evaluation of a witness under a registered claim.
Outcome evaluate_witness(std::string_view id, const Witness& witness);

/// True when the report's worst witness, serialized to JSON and parsed
/// back, still violates the claim with the recorded margins (rel 1e-9).
bool reverify(const ClaimReport& report);

/// One side of an implication: a relation at a fixed ε, or at a multiple
/// of an ε drawn from the universe when eps is absent.
struct Predicate {
  RelationId relation = RelationId::hh_exact;
  std::optional<double> eps;
  double eps_factor = 1.0;
};

struct SearchResult {
  std::optional<Witness> witness;
  std::size_t evaluations = 0;
};

/// Looks for (x, y) with premise true and conclusion false by random sampling
/// followed by local refinement of the closest candidate. A witness is only
/// returned after it re-evaluates as a violation.
SearchResult search_counterexample(const Predicate& premise, const Predicate& conclusion, const Universe& universe,
                                   std::size_t budget, std::uint64_t seed = 0);

}  // namespace orthokit
