#include "orthokit/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "orthokit/claims.hpp"
#include "orthokit/errors.hpp"
#include "orthokit/hh_integrals.hpp"
#include "orthokit/mapping.hpp"
#include "orthokit/relations.hpp"
#include "orthokit/serialization.hpp"
#include "orthokit/solvers.hpp"

namespace orthokit {

namespace {

constexpr const char* kNormHelp =
    "Norm: lp:<p|inf>, wlp:<p>:<w1,w2,...> or ip:<gram file>. "
    "Weighted norms are (sum w_i |v_i|^p)^(1/p); the weighted sup-norm is max w_i |v_i|.";

// Raised for bad command-line input that CLI11 itself cannot detect.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::uint64_t parse_seed(const std::string& text) {
  std::size_t used = 0;
  std::uint64_t v = 0;
  try {
    v = std::stoull(text, &used, 10);
  } catch (const std::exception&) {
    throw UsageError("seed must be a non-negative integer, got '" + text + "'");
  }
  if (used != text.size() || text.empty() || text[0] == '-')
    throw UsageError("seed must be a non-negative integer, got '" + text + "'");
  return v;
}

std::uint64_t default_seed() {
  const char* env = std::getenv("ORTHO_SEED");
  if (!env || !*env) return 0;
  try {
    return parse_seed(env);
  } catch (const UsageError&) {
    throw UsageError(std::string("ORTHO_SEED must be a non-negative integer, got '") + env + "'");
  }
}

void check_eps(double eps) {
  if (!(eps >= 0.0 && eps < 1.0)) {
    std::ostringstream ss;
    ss << "eps must lie in [0, 1), got " << eps;
    throw UsageError(ss.str());
  }
}

// Options shared by the commands that take a norm and a pair of vectors.
struct PairArgs {
  std::string norm = "lp:2";
  std::string x;
  std::string y;
  std::string file;

  void attach(CLI::App* cmd) {
    cmd->add_option("--norm", norm, kNormHelp)->capture_default_str();
    cmd->add_option("--x", x, "First vector as a JSON array");
    cmd->add_option("--y", y, "Second vector as a JSON array");
    cmd->add_option("--file", file, "JSON file with keys \"x\" and \"y\" (and optionally \"norm\")");
  }

  struct Resolved {
    NormSpec spec;
    Vector x;
    Vector y;
  };

  Resolved resolve() const {
    std::string norm_text = norm;
    Json jx, jy;
    if (!file.empty()) {
      const Json doc = parse_json(read_file(file));
      if (!doc.is_object() || !doc.contains("x") || !doc.contains("y"))
        throw UsageError("--file must hold an object with \"x\" and \"y\"");
      jx = doc.at("x");
      jy = doc.at("y");
      if (doc.contains("norm")) {
        Resolved r{norm_spec_from_json(doc.at("norm")), vector_from_json(jx), vector_from_json(jy)};
        return r;
      }
    }
    if (!x.empty()) jx = parse_json(x);
    if (!y.empty()) jy = parse_json(y);
    if (jx.is_null() || jy.is_null()) throw UsageError("both vectors are required (--x and --y, or --file)");
    return {parse_norm_arg(norm_text), vector_from_json(jx), vector_from_json(jy)};
  }
};

struct TolArgs {
  Tolerance tol;

  void attach(CLI::App* cmd) {
    cmd->add_option("--abs-tol", tol.abs_tol, "Absolute comparison slack")->capture_default_str();
    cmd->add_option("--rel-tol", tol.rel_tol, "Relative comparison slack")->capture_default_str();
  }
};

void print(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

Json describe_map(const LinearMap& map) {
  Json j = Json::object();
  j["matrix"] = to_json(map.matrix);
  j["domain"] = to_json(map.domain);
  j["codomain"] = to_json(map.codomain);
  return j;
}

std::string fixed(double v, int digits) {
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(digits) << v;
  return ss.str();
}

void markdown_table(std::ostream& os, const std::vector<ClaimReport>& reports) {
  os << "| claim | status | trials | applicable | violations | indeterminate | elapsed ms |\n";
  os << "|---|---|---:|---:|---:|---:|---:|\n";
  for (const auto& r : reports)
    os << "| " << r.id << " | " << to_string(r.status) << " | " << r.trials_run << " | " << r.applicable << " | "
       << r.violations << " | " << r.indeterminate << " | " << fixed(r.elapsed_ms, 1) << " |\n";
}

void csv_table(std::ostream& os, const std::vector<ClaimReport>& reports) {
  os << "id,status,trials_run,applicable,violations,indeterminate,seed,refinement_steps,elapsed_ms\n";
  for (const auto& r : reports)
    os << r.id << ',' << to_string(r.status) << ',' << r.trials_run << ',' << r.applicable << ',' << r.violations
       << ',' << r.indeterminate << ',' << r.seed << ',' << r.refinement_steps << ',' << fixed(r.elapsed_ms, 1)
       << '\n';
}

std::vector<Json> read_reports(const std::string& path) {
  const std::string text = read_file(path);
  std::vector<Json> docs;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '[') {
    for (const auto& j : parse_json(text)) docs.push_back(j);
    return docs;
  }
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line))
    if (line.find_first_not_of(" \t\r") != std::string::npos) docs.push_back(parse_json(line));
  return docs;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical toolkit for integral (HH-type) orthogonality in normed spaces"};
  app.name("orthokit");
  app.require_subcommand(1);
  app.footer(std::string(kNormHelp) +
             "\nExit codes: 0 success or relation holds, 3 relation fails, 2 invalid input, 1 internal error."
             "\nORTHO_SEED sets the default for --seed.");

  std::string seed_text;

  // eval
  auto* eval = app.add_subcommand("eval", "Decide an orthogonality relation for a pair of vectors");
  std::string relation;
  double eval_eps = 0.0;
  PairArgs eval_pair;
  TolArgs eval_tol;
  eval->add_option("relation", relation, "Relation identifier (see `orthokit eval --help`)")->required();
  auto* eval_eps_opt = eval->add_option("--eps", eval_eps, "Approximation parameter in [0, 1)");
  eval_pair.attach(eval);
  eval_tol.attach(eval);
  {
    std::string names;
    for (auto id : all_relations()) names += (names.empty() ? "" : ", ") + std::string(to_string(id));
    eval->footer("Relations: " + names);
  }

  // hh
  auto* hh = app.add_subcommand("hh", "Compute the integrals I+ and I- for a pair of vectors");
  PairArgs hh_pair;
  TolArgs hh_tol;
  bool hh_quadrature = false;
  hh_pair.attach(hh);
  hh_tol.attach(hh);
  hh->add_flag("--quadrature", hh_quadrature, "Use quadrature even when a closed form exists");

  // map
  auto* map_cmd = app.add_subcommand("map", "Profile a linear map and check the preservation conditions");
  std::string matrix_arg, domain = "lp:2", codomain = "lp:2";
  double map_eps = 0.0, map_eta = 0.0;
  std::size_t samples = 4096, budget = 4000;
  int starts = 64;
  bool with_11 = false;
  TolArgs map_tol;
  map_cmd->add_option("--matrix", matrix_arg, "Matrix file (JSON rows or CSV) or an inline JSON array of rows")
      ->required();
  map_cmd->add_option("--domain", domain, kNormHelp)->capture_default_str();
  map_cmd->add_option("--codomain", codomain, kNormHelp)->capture_default_str();
  auto* map_eps_opt = map_cmd->add_option("--eps", map_eps, "Check the two-sided norm bounds at this eps in [0, 1)");
  auto* map_eta_opt = map_cmd->add_option("--eta", map_eta, "Also check the bounds written with this eta (needs --eps)");
  map_cmd->add_option("--samples", samples, "Random unit vectors per check")->capture_default_str();
  map_cmd->add_option("--starts", starts, "Search starts for non-Euclidean profiles")->capture_default_str();
  map_cmd->add_flag("--with-11", with_11, "Also search the minimal eps for which HH-orthogonal pairs map to "
                                          "relatively eps-HH-orthogonal pairs");
  map_cmd->add_option("--budget", budget, "Evaluation budget of that search")->capture_default_str();
  map_cmd->add_option("--seed", seed_text, "Random seed (default: ORTHO_SEED or 0)");
  map_tol.attach(map_cmd);

  // claims
  auto* claims = app.add_subcommand("claims", "Run, list or re-verify the audited claims");
  claims->require_subcommand(1);
  auto* claims_run = claims->add_subcommand("run", "Run claims and print one JSON report per claim");
  std::vector<std::string> claim_ids;
  bool run_all = false;
  std::size_t trials = 0;
  std::string format = "json";
  std::string mode_text;
  claims_run->add_option("ids", claim_ids, "Claim ids");
  claims_run->add_flag("--all", run_all, "Run every registered claim");
  claims_run->add_option("--seed", seed_text, "Random seed (default: ORTHO_SEED or 0)");
  claims_run->add_option("--trials", trials, "Override the default number of trials");
  claims_run->add_option("--mode", mode_text, "Override the mode: sample, optimize or both");
  claims_run->add_option("--format", format, "json (reports on stdout, summary on stderr), markdown or csv")
      ->check(CLI::IsMember({"json", "markdown", "csv"}))
      ->capture_default_str();
  auto* claims_list = claims->add_subcommand("list", "List registered claims with their default budgets");
  auto* claims_verify = claims->add_subcommand("verify", "Re-verify the counterexamples in saved JSON reports");
  std::string verify_path;
  claims_verify->add_option("file", verify_path, "File with one JSON report per line")->required();

  // solve
  auto* solve = app.add_subcommand("solve", "Run a single solver");
  solve->require_subcommand(1);
  auto* pencil = solve->add_subcommand("pencil", "Find s with x HH-orthogonal to y + s x");
  auto* beta = solve->add_subcommand("beta", "Minimize |x/b|^2 + |b y|^2 over b != 0");
  auto* line_min = solve->add_subcommand("line-min", "Minimize |x + t y| over t");
  PairArgs solve_pair;
  TolArgs solve_tol;
  for (auto* s : {pencil, beta, line_min}) solve_pair.attach(s);
  solve_tol.attach(pencil);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    const std::uint64_t seed = seed_text.empty() ? default_seed() : parse_seed(seed_text);

    if (*eval) {
      const auto id = relation_from_string(relation);
      if (!id) throw UsageError("unknown relation '" + relation + "'");
      std::optional<double> eps;
      if (eval_eps_opt->count()) {
        check_eps(eval_eps);
        eps = eval_eps;
      }
      if (takes_epsilon(*id) && !eps) throw UsageError("relation " + relation + " needs --eps");
      if (!takes_epsilon(*id) && eps) throw UsageError("relation " + relation + " takes no --eps");
      require_valid(eval_tol.tol);
      const auto in = eval_pair.resolve();
      const OrthoVerdict v = evaluate(*id, in.spec, in.x, in.y, eps, eval_tol.tol);
      print(out, to_json(v));
      return v.holds ? kExitOk : kExitFails;
    }

    if (*hh) {
      require_valid(hh_tol.tol);
      const auto in = hh_pair.resolve();
      const HHValues v =
          hh_quadrature ? hh_values_quadrature(in.spec, in.x, in.y, hh_tol.tol) : hh_values(in.spec, in.x, in.y, hh_tol.tol);
      print(out, to_json(v));
      return kExitOk;
    }

    if (*map_cmd) {
      require_valid(map_tol.tol);
      LinearMap map;
      const auto first = matrix_arg.find_first_not_of(" \t");
      map.matrix = first != std::string::npos && matrix_arg[first] == '[' ? parse_matrix_text(matrix_arg)
                                                                           : read_matrix_file(matrix_arg);
      map.domain = parse_norm_arg(domain);
      map.codomain = parse_norm_arg(codomain);
      validate(map);
      if (map_eta_opt->count() && !map_eps_opt->count()) throw UsageError("--eta needs --eps");
      if (map_eps_opt->count()) check_eps(map_eps);

      const MapProfile prof = profile(map, {starts, seed});
      const Sampler sampler{samples, seed};
      Json j = Json::object();
      j["map"] = describe_map(map);
      j["profile"] = to_json(prof);
      j["min_eps_condition_14"] = number_to_json(min_eps_condition_14(map, prof, sampler));
      if (map_eps_opt->count()) {
        const BoundsReport b = check_bounds_12(map, prof, map_eps, sampler, map_tol.tol);
        j["bounds"] = to_json(b);
        if (map_eta_opt->count()) j["bounds_eta"] = to_json(check_bounds_13(map, prof, map_eps, map_eta, sampler, map_tol.tol));
        j["conorm_margin"] = number_to_json(condition_16_margin(prof, map_eps));
        j["condition_17"] = to_json(check_condition_17(map, prof, map_eps, sampler, map_tol.tol));
        err << "norm bounds at eps=" << map_eps << ": " << (b.passes ? "PASS" : "FAIL") << '\n';
      }
      if (with_11) j["condition_11"] = to_json(min_eps_condition_11(map, budget, seed));
      print(out, j);
      return kExitOk;
    }

    if (*claims_list) {
      for (const auto& def : claim_registry()) {
        Json j = Json::object();
        j["id"] = def.spec.id;
        j["statement"] = def.spec.statement;
        j["trials"] = def.spec.trials;
        j["mode"] = std::string(to_string(def.spec.mode));
        j["universe"] = to_json(def.spec.universe);
        out << j.dump() << '\n';
      }
      return kExitOk;
    }

    if (*claims_run) {
      if (run_all && !claim_ids.empty()) throw UsageError("give either --all or claim ids, not both");
      if (!run_all && claim_ids.empty()) throw UsageError("give --all or at least one claim id");
      std::optional<ClaimMode> mode;
      if (!mode_text.empty()) {
        mode = claim_mode_from_string(mode_text);
        if (!mode) throw UsageError("unknown mode '" + mode_text + "'");
      }
      std::vector<const ClaimDefinition*> defs;
      if (run_all) {
        for (const auto& d : claim_registry()) defs.push_back(&d);
      } else {
        for (const auto& id : claim_ids) {
          const ClaimDefinition* d = find_claim(id);
          if (!d) throw UsageError("unknown claim id '" + id + "'");
          defs.push_back(d);
        }
      }
      std::vector<ClaimReport> reports;
      for (const auto* d : defs) {
        ClaimSpec spec = d->spec;
        spec.seed = seed;
        if (trials > 0) spec.trials = trials;
        if (mode) spec.mode = *mode;
        reports.push_back(run_claim(*d, spec));
        if (format == "json") out << to_json(reports.back()).dump() << '\n' << std::flush;
      }
      if (format == "json") markdown_table(err, reports);
      if (format == "markdown") markdown_table(out, reports);
      if (format == "csv") csv_table(out, reports);
      return kExitOk;
    }

    if (*claims_verify) {
      bool all_ok = true;
      for (const auto& doc : read_reports(verify_path)) {
        const ClaimReport rep = claim_report_from_json(doc);
        Json j = Json::object();
        j["id"] = rep.id;
        j["status"] = std::string(to_string(rep.status));
        if (rep.status == ClaimStatus::counterexample) {
          const bool ok = reverify(rep);
          all_ok = all_ok && ok;
          j["reverified"] = ok;
        } else {
          j["reverified"] = nullptr;
        }
        out << j.dump() << '\n';
      }
      return all_ok ? kExitOk : kExitFails;
    }

    if (*pencil) {
      require_valid(solve_tol.tol);
      const auto in = solve_pair.resolve();
      print(out, to_json(hh_orthogonal_in_pencil(in.spec, in.x, in.y, solve_tol.tol)));
      return kExitOk;
    }
    if (*beta) {
      const auto in = solve_pair.resolve();
      Json j = Json::object();
      j["analytic"] = to_json(beta_functional_min(in.spec, in.x, in.y));
      j["numeric"] = to_json(beta_functional_min_numeric(in.spec, in.x, in.y));
      print(out, j);
      return kExitOk;
    }
    if (*line_min) {
      const auto in = solve_pair.resolve();
      print(out, to_json(minimize_norm_on_line(in.spec, in.x, in.y)));
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInternal;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInternal;
}

}  // namespace orthokit
