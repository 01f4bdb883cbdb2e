#include "orthokit/serialization.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "orthokit/errors.hpp"

namespace orthokit {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw InvalidArgument(std::string("expected a JSON object holding '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) throw InvalidArgument(std::string("missing field '") + key + "'");
  return *it;
}

bool bool_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_boolean()) throw InvalidArgument(std::string("field '") + key + "' must be a boolean");
  return v.get<bool>();
}

std::string string_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_string()) throw InvalidArgument(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

double num_field(const Json& j, const char* key) { return number_from_json(field(j, key)); }

std::size_t size_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    throw InvalidArgument(std::string("field '") + key + "' must be a nonnegative integer");
  return v.get<std::size_t>();
}

std::uint64_t u64_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    throw InvalidArgument(std::string("field '") + key + "' must be a nonnegative integer");
  return v.get<std::uint64_t>();
}

Json number_map(const std::map<std::string, double>& m) {
  Json j = Json::object();
  for (const auto& [k, v] : m) j[k] = number_to_json(v);
  return j;
}

std::map<std::string, double> number_map_from(const Json& j) {
  if (!j.is_object()) throw InvalidArgument("expected an object of numbers");
  std::map<std::string, double> out;
  for (auto it = j.begin(); it != j.end(); ++it) out[it.key()] = number_from_json(it.value());
  return out;
}

Json optional_number(const std::optional<double>& v) { return v ? number_to_json(*v) : Json(nullptr); }

std::optional<double> optional_number_from(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return number_from_json(j);
}

Json exponent_to_json(double p) { return std::isinf(p) ? Json("inf") : Json(p); }

double exponent_from_text(std::string_view s) {
  if (s == "inf" || s == "infinity" || s == "Inf") return kInfinity;
  std::string buf(s);
  std::size_t used = 0;
  double p = 0.0;
  try {
    p = std::stod(buf, &used);
  } catch (const std::exception&) {
    throw InvalidArgument("cannot parse exponent '" + buf + "'");
  }
  if (used != buf.size()) throw InvalidArgument("cannot parse exponent '" + buf + "'");
  return p;
}

std::string trim(std::string_view s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::vector<double> parse_number_list(std::string_view text, char sep) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(sep, start);
    if (end == std::string_view::npos) end = text.size();
    const std::string item = trim(text.substr(start, end - start));
    if (item.empty()) throw InvalidArgument("empty entry in number list");
    out.push_back(exponent_from_text(item));
    start = end + 1;
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

Json number_to_json(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double number_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw InvalidArgument("expected a number, got " + j.dump());
}

Json to_json(const std::vector<double>& v) {
  Json j = Json::array();
  for (double c : v) j.push_back(number_to_json(c));
  return j;
}

Json to_json(const Vector& v) { return to_json(v.components()); }

Json to_json(const Matrix& m) {
  Json j = Json::array();
  for (const auto& row : m.to_rows()) j.push_back(to_json(row));
  return j;
}

Json to_json(const NormSpec& spec) {
  return std::visit(
      [](const auto& s) -> Json {
        using T = std::decay_t<decltype(s)>;
        Json j;
        if constexpr (std::is_same_v<T, LpNorm>) {
          j["kind"] = "lp";
          j["p"] = exponent_to_json(s.p);
        } else if constexpr (std::is_same_v<T, WeightedLpNorm>) {
          j["kind"] = "wlp";
          j["p"] = exponent_to_json(s.p);
          j["weights"] = to_json(s.weights);
        } else {
          j["kind"] = "ip";
          j["gram"] = to_json(s.gram);
        }
        return j;
      },
      spec);
}

Json to_json(const HHValues& hv) {
  Json j;
  j["i_plus"] = number_to_json(hv.i_plus);
  j["i_minus"] = number_to_json(hv.i_minus);
  j["gap"] = number_to_json(hv.gap);
  j["total"] = number_to_json(hv.total);
  j["method"] = std::string(to_string(hv.method));
  j["est_abs_error"] = number_to_json(hv.est_abs_error);
  return j;
}

Json to_json(const OrthoVerdict& v) {
  Json j;
  j["relation"] = std::string(to_string(v.relation));
  j["holds"] = v.holds;
  j["margin"] = number_to_json(v.margin);
  j["epsilon"] = optional_number(v.epsilon);
  j["degenerate"] = v.degenerate;
  j["details"] = number_map(v.details);
  return j;
}

Json to_json(const MapProfile& p) {
  Json j;
  j["op_norm"] = number_to_json(p.op_norm);
  j["co_norm"] = number_to_json(p.co_norm);
  j["kappa"] = number_to_json(p.kappa);
  j["eps_star"] = number_to_json(p.eps_star);
  j["cert_max"] = to_json(p.cert_max);
  j["cert_min"] = to_json(p.cert_min);
  j["method"] = std::string(to_string(p.method));
  j["unbounded"] = p.unbounded;
  return j;
}

Json to_json(const BoundsReport& r) {
  Json j;
  j["eps"] = number_to_json(r.eps);
  j["passes"] = r.passes;
  j["lower_bound"] = number_to_json(r.lower_bound);
  j["upper_bound"] = number_to_json(r.upper_bound);
  j["min_ratio"] = number_to_json(r.min_ratio);
  j["max_ratio"] = number_to_json(r.max_ratio);
  j["margin"] = number_to_json(r.margin);
  j["witness_low"] = to_json(r.witness_low);
  j["witness_high"] = to_json(r.witness_high);
  j["samples"] = r.samples;
  return j;
}

Json to_json(const Condition11Result& r) {
  Json j;
  j["eps_min"] = number_to_json(r.eps_min);
  j["u"] = to_json(r.u);
  j["w"] = to_json(r.w);
  j["approximate"] = r.approximate;
  j["stabilized"] = r.stabilized;
  j["evaluations"] = r.evaluations;
  return j;
}

Json to_json(const Condition17Report& r) {
  Json j;
  j["eps"] = number_to_json(r.eps);
  j["passes"] = r.passes;
  j["worst_ratio"] = number_to_json(r.worst_ratio);
  j["bound"] = number_to_json(r.bound);
  j["kappa_sq"] = number_to_json(r.kappa_sq);
  j["consistent_with_16"] = r.consistent_with_16;
  j["witness_x"] = to_json(r.witness_x);
  j["witness_y"] = to_json(r.witness_y);
  j["pairs"] = r.pairs;
  return j;
}

Json to_json(const Embedding& e) {
  Json j;
  j["m"] = number_to_json(e.m);
  j["M"] = number_to_json(e.big_m);
  j["analytic"] = e.analytic;
  return j;
}

Json to_json(const RootResult& r) {
  Json j;
  j["location"] = number_to_json(r.location);
  j["residual"] = number_to_json(r.residual);
  j["iterations"] = r.iterations;
  j["bracket"] = Json::array({number_to_json(r.bracket.first), number_to_json(r.bracket.second)});
  return j;
}

Json to_json(const LineMinimum& r) {
  Json j;
  j["t_star"] = number_to_json(r.t_star);
  j["value"] = number_to_json(r.value);
  return j;
}

Json to_json(const BetaMinimum& r) {
  Json j;
  j["beta_star"] = number_to_json(r.beta_star);
  j["value"] = number_to_json(r.value);
  j["attained"] = r.attained;
  return j;
}

Json to_json(const Universe& u) {
  Json j;
  j["dim_min"] = u.dim_min;
  j["dim_max"] = u.dim_max;
  j["norm_families"] = u.norm_families;
  j["eps_grid"] = to_json(u.eps_grid);
  return j;
}

Json to_json(const Witness& w) {
  Json j;
  Json vecs = Json::object();
  for (const auto& [k, v] : w.vectors) vecs[k] = to_json(v);
  j["vectors"] = vecs;
  j["matrix"] = w.matrix ? to_json(*w.matrix) : Json(nullptr);
  Json norms = Json::object();
  for (const auto& [k, v] : w.norms) norms[k] = to_json(v);
  j["norms"] = norms;
  j["eps"] = optional_number(w.eps);
  j["params"] = number_map(w.params);
  j["margins"] = number_map(w.margins);
  return j;
}

Json to_json(const ClaimReport& r) {
  Json j;
  j["id"] = r.id;
  j["statement"] = r.statement;
  j["status"] = std::string(to_string(r.status));
  j["trials_run"] = r.trials_run;
  j["applicable"] = r.applicable;
  j["violations"] = r.violations;
  j["indeterminate"] = r.indeterminate;
  j["worst_witness"] = r.worst_witness ? to_json(*r.worst_witness) : Json(nullptr);
  j["metrics"] = number_map(r.metrics);
  j["seed"] = r.seed;
  j["refinement_steps"] = r.refinement_steps;
  j["elapsed_ms"] = number_to_json(r.elapsed_ms);
  return j;
}

std::vector<double> doubles_from_json(const Json& j) {
  if (!j.is_array()) throw InvalidArgument("expected a JSON array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(number_from_json(e));
  return out;
}

Vector vector_from_json(const Json& j) { return Vector(doubles_from_json(j)); }

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array()) throw InvalidArgument("expected a JSON array of rows");
  std::vector<std::vector<double>> rows;
  for (const auto& r : j) rows.push_back(doubles_from_json(r));
  return Matrix(rows);
}

NormSpec norm_spec_from_json(const Json& j) {
  const std::string kind = string_field(j, "kind");
  auto exponent = [&] {
    const Json& p = field(j, "p");
    if (p.is_string()) return exponent_from_text(p.get<std::string>());
    return number_from_json(p);
  };
  if (kind == "lp") return LpNorm{exponent()};
  if (kind == "wlp") return WeightedLpNorm{exponent(), doubles_from_json(field(j, "weights"))};
  if (kind == "ip") return InnerProductNorm{matrix_from_json(field(j, "gram"))};
  throw InvalidArgument("unknown norm kind '" + kind + "'");
}

HHValues hh_values_from_json(const Json& j) {
  HHValues hv;
  hv.i_plus = num_field(j, "i_plus");
  hv.i_minus = num_field(j, "i_minus");
  hv.gap = num_field(j, "gap");
  hv.total = num_field(j, "total");
  const std::string m = string_field(j, "method");
  if (m == to_string(HHMethod::closed_form)) {
    hv.method = HHMethod::closed_form;
  } else if (m == to_string(HHMethod::quadrature)) {
    hv.method = HHMethod::quadrature;
  } else {
    throw InvalidArgument("unknown integration method '" + m + "'");
  }
  hv.est_abs_error = num_field(j, "est_abs_error");
  return hv;
}

OrthoVerdict verdict_from_json(const Json& j) {
  OrthoVerdict v;
  const std::string name = string_field(j, "relation");
  auto id = relation_from_string(name);
  if (!id) throw InvalidArgument("unknown relation '" + name + "'");
  v.relation = *id;
  v.holds = bool_field(j, "holds");
  v.margin = num_field(j, "margin");
  v.epsilon = optional_number_from(field(j, "epsilon"));
  v.degenerate = bool_field(j, "degenerate");
  v.details = number_map_from(field(j, "details"));
  return v;
}

MapProfile map_profile_from_json(const Json& j) {
  MapProfile p;
  p.op_norm = num_field(j, "op_norm");
  p.co_norm = num_field(j, "co_norm");
  p.kappa = num_field(j, "kappa");
  p.eps_star = num_field(j, "eps_star");
  p.cert_max = doubles_from_json(field(j, "cert_max"));
  p.cert_min = doubles_from_json(field(j, "cert_min"));
  const std::string m = string_field(j, "method");
  if (m == to_string(ProfileMethod::exact_ip)) {
    p.method = ProfileMethod::exact_ip;
  } else if (m == to_string(ProfileMethod::estimated)) {
    p.method = ProfileMethod::estimated;
  } else {
    throw InvalidArgument("unknown profile method '" + m + "'");
  }
  p.unbounded = bool_field(j, "unbounded");
  return p;
}

BoundsReport bounds_report_from_json(const Json& j) {
  BoundsReport r;
  r.eps = num_field(j, "eps");
  r.passes = bool_field(j, "passes");
  r.lower_bound = num_field(j, "lower_bound");
  r.upper_bound = num_field(j, "upper_bound");
  r.min_ratio = num_field(j, "min_ratio");
  r.max_ratio = num_field(j, "max_ratio");
  r.margin = num_field(j, "margin");
  r.witness_low = doubles_from_json(field(j, "witness_low"));
  r.witness_high = doubles_from_json(field(j, "witness_high"));
  r.samples = size_field(j, "samples");
  return r;
}

Condition11Result condition11_from_json(const Json& j) {
  Condition11Result r;
  r.eps_min = num_field(j, "eps_min");
  r.u = doubles_from_json(field(j, "u"));
  r.w = doubles_from_json(field(j, "w"));
  r.approximate = bool_field(j, "approximate");
  r.stabilized = bool_field(j, "stabilized");
  r.evaluations = size_field(j, "evaluations");
  return r;
}

Condition17Report condition17_from_json(const Json& j) {
  Condition17Report r;
  r.eps = num_field(j, "eps");
  r.passes = bool_field(j, "passes");
  r.worst_ratio = num_field(j, "worst_ratio");
  r.bound = num_field(j, "bound");
  r.kappa_sq = num_field(j, "kappa_sq");
  r.consistent_with_16 = bool_field(j, "consistent_with_16");
  r.witness_x = doubles_from_json(field(j, "witness_x"));
  r.witness_y = doubles_from_json(field(j, "witness_y"));
  r.pairs = size_field(j, "pairs");
  return r;
}

Embedding embedding_from_json(const Json& j) {
  return {num_field(j, "m"), num_field(j, "M"), bool_field(j, "analytic")};
}

RootResult root_result_from_json(const Json& j) {
  RootResult r;
  r.location = num_field(j, "location");
  r.residual = num_field(j, "residual");
  r.iterations = static_cast<int>(size_field(j, "iterations"));
  const auto b = doubles_from_json(field(j, "bracket"));
  if (b.size() != 2) throw InvalidArgument("bracket must have two entries");
  r.bracket = {b[0], b[1]};
  return r;
}

LineMinimum line_minimum_from_json(const Json& j) { return {num_field(j, "t_star"), num_field(j, "value")}; }

BetaMinimum beta_minimum_from_json(const Json& j) {
  return {num_field(j, "beta_star"), num_field(j, "value"), bool_field(j, "attained")};
}

Universe universe_from_json(const Json& j) {
  Universe u;
  u.dim_min = size_field(j, "dim_min");
  u.dim_max = size_field(j, "dim_max");
  u.norm_families.clear();
  for (const auto& f : field(j, "norm_families")) {
    if (!f.is_string()) throw InvalidArgument("norm families must be strings");
    u.norm_families.push_back(f.get<std::string>());
  }
  u.eps_grid = doubles_from_json(field(j, "eps_grid"));
  return u;
}

Witness witness_from_json(const Json& j) {
  Witness w;
  const Json& vecs = field(j, "vectors");
  if (!vecs.is_object()) throw InvalidArgument("witness vectors must be an object");
  for (auto it = vecs.begin(); it != vecs.end(); ++it) w.vectors[it.key()] = doubles_from_json(it.value());
  const Json& m = field(j, "matrix");
  if (!m.is_null()) w.matrix = matrix_from_json(m);
  const Json& norms = field(j, "norms");
  if (!norms.is_object()) throw InvalidArgument("witness norms must be an object");
  for (auto it = norms.begin(); it != norms.end(); ++it) w.norms[it.key()] = norm_spec_from_json(it.value());
  w.eps = optional_number_from(field(j, "eps"));
  w.params = number_map_from(field(j, "params"));
  w.margins = number_map_from(field(j, "margins"));
  return w;
}

ClaimReport claim_report_from_json(const Json& j) {
  ClaimReport r;
  r.id = string_field(j, "id");
  r.statement = string_field(j, "statement");
  const std::string s = string_field(j, "status");
  auto status = claim_status_from_string(s);
  if (!status) throw InvalidArgument("unknown claim status '" + s + "'");
  r.status = *status;
  r.trials_run = size_field(j, "trials_run");
  r.applicable = size_field(j, "applicable");
  r.violations = size_field(j, "violations");
  r.indeterminate = size_field(j, "indeterminate");
  const Json& w = field(j, "worst_witness");
  if (!w.is_null()) r.worst_witness = witness_from_json(w);
  r.metrics = number_map_from(field(j, "metrics"));
  r.seed = u64_field(j, "seed");
  r.refinement_steps = size_field(j, "refinement_steps");
  r.elapsed_ms = num_field(j, "elapsed_ms");
  return r;
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgument(std::string("malformed JSON: ") + e.what());
  }
}

NormSpec parse_norm_arg(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw InvalidArgument("norm must look like lp:<p>, wlp:<p>:<w,...> or ip:<file>");
  const std::string_view kind = text.substr(0, colon);
  const std::string_view rest = text.substr(colon + 1);
  if (kind == "lp") return LpNorm{exponent_from_text(trim(rest))};
  if (kind == "wlp") {
    const auto second = rest.find(':');
    if (second == std::string_view::npos) throw InvalidArgument("weighted norm must look like wlp:<p>:<w1,w2,...>");
    return WeightedLpNorm{exponent_from_text(trim(rest.substr(0, second))), parse_number_list(rest.substr(second + 1), ',')};
  }
  if (kind == "ip") {
    if (rest.empty()) throw InvalidArgument("inner-product norm needs a gram matrix file: ip:<path>");
    return InnerProductNorm{read_matrix_file(std::string(rest))};
  }
  throw InvalidArgument("unknown norm kind '" + std::string(kind) + "'");
}

Matrix parse_matrix_text(std::string_view text) {
  const std::string body = trim(text);
  if (body.empty()) throw InvalidArgument("matrix input is empty");
  if (body.front() == '[') return matrix_from_json(parse_json(body));
  std::vector<std::vector<double>> rows;
  std::istringstream in(body);
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    rows.push_back(parse_number_list(t, ','));
  }
  return Matrix(rows);
}

Matrix read_matrix_file(const std::string& path) { return parse_matrix_text(read_file(path)); }

}  // namespace orthokit
