#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "orthokit/claims.hpp"
#include "orthokit/errors.hpp"
#include "orthokit/hh_integrals.hpp"
#include "orthokit/mapping.hpp"
#include "orthokit/relations.hpp"
#include "orthokit/solvers.hpp"

namespace orthokit {

namespace {

// Normalized margins closer to zero than this are numerical ties.
constexpr double kBand = 1e-9;
constexpr double kClosedFormBand = 1e-10;

using Vec = std::vector<double>;

// One side of a check: whether it holds and its margin in units of a natural scale.
struct Side {
  bool holds = false;
  double margin = 0.0;
};

void add_check(Outcome& o, bool applicable, bool violated, bool indeterminate, double score) {
  if (!applicable) return;
  o.score = o.applicable ? std::min(o.score, score) : score;
  o.applicable = true;
  o.violated = o.violated || violated;
  o.indeterminate = (o.indeterminate || indeterminate) && !o.violated;
}

void implication(Outcome& o, Side p, Side c, double band = kBand) {
  if (!p.holds) return;
  const bool violated = !c.holds && c.margin < -band;
  const bool indeterminate = !c.holds && !violated;
  add_check(o, true, violated, indeterminate, p.margin > 0.0 ? std::max(c.margin, -p.margin) : c.margin);
}

void equivalence(Outcome& o, Side a, Side b, double band = kBand) {
  const double closeness = std::min(std::abs(a.margin), std::abs(b.margin));
  if (a.holds == b.holds) {
    add_check(o, true, false, false, closeness);
    return;
  }
  const bool violated = closeness > band;
  add_check(o, true, violated, !violated, -closeness);
}

double positive(double s) { return s > 0.0 ? s : 1.0; }

Side side(const OrthoVerdict& v, double scale) { return {v.holds, v.margin / positive(scale)}; }

// ---- sampling helpers ----

std::size_t draw_dim(const Universe& u, Rng& rng) { return u.dim_min + uniform_index(rng, u.dim_max - u.dim_min + 1); }

const std::string& draw_family(const Universe& u, Rng& rng) {
  if (u.norm_families.empty()) throw InvalidArgument("universe has no norm families");
  return u.norm_families[uniform_index(rng, u.norm_families.size())];
}

std::pair<std::string, std::string> split_pair(const std::string& family) {
  const auto bar = family.find('|');
  if (bar == std::string::npos) throw InvalidArgument("two-norm family must look like <first>|<second>");
  return {family.substr(0, bar), family.substr(bar + 1)};
}

double sign(Rng& rng) { return uniform(rng, 0.0, 1.0) < 0.5 ? -1.0 : 1.0; }

// x, y standard normal; half the time y is rescaled to ρ‖x‖ with ρ log-uniform in [1e-2, 1e2].
std::pair<Vec, Vec> draw_pair(Rng& rng, std::size_t dim) {
  Vec x = random_vector(rng, dim).components();
  Vec y = random_vector(rng, dim).components();
  if (uniform(rng, 0.0, 1.0) < 0.5) {
    const double rho = log_uniform(rng, 1e-2, 1e2) * std::sqrt(dot(x, x) / dot(y, y));
    for (double& c : y) c *= rho;
  }
  return {x, y};
}

// A pair with ⟨x,y⟩ = cos·‖x‖‖y‖ and ‖y‖ = ρ‖x‖ in an inner-product norm.
std::pair<Vec, Vec> pair_with_cosine(Rng& rng, const Norm& n, std::size_t dim, double cos, double rho) {
  Vec x = random_vector(rng, dim).components();
  Vec u;
  for (;;) {
    u = random_vector(rng, dim).components();
    const double proj = n.inner(u, x) / n.squared(x);
    for (std::size_t i = 0; i < dim; ++i) u[i] -= proj * x[i];
    if (n.squared(u) > 1e-12 * n.squared(x)) break;
  }
  const double nx = n(x);
  const double nu = n(u);
  const double s = std::sqrt(std::max(0.0, 1.0 - cos * cos));
  Vec y(dim);
  for (std::size_t i = 0; i < dim; ++i) y[i] = rho * nx * (cos * x[i] / nx + s * u[i] / nu);
  return {x, y};
}

// Standard sampling for single-norm pair claims; in inner-product norms half
// of the pairs get a prescribed cosine, drawn near `target` when given.
std::pair<Vec, Vec> sample_pair(Rng& rng, const NormSpec& spec, std::size_t dim, std::optional<double> target = {}) {
  if (is_inner_product_norm(spec) && uniform(rng, 0.0, 1.0) < 0.5) {
    const Norm n(spec, dim);
    double cos = uniform(rng, 0.0, 1.0);
    if (target && uniform(rng, 0.0, 1.0) < 0.7) cos = std::clamp(*target * (1.0 + uniform(rng, -0.2, 0.2)), 0.0, 1.0);
    const double rho = log_uniform(rng, 1e-2, 1e2);
    return pair_with_cosine(rng, n, dim, sign(rng) * cos, rho);
  }
  return draw_pair(rng, dim);
}

Vec scaled(Vec v, double s) {
  for (double& c : v) c *= s;
  return v;
}

// Perturbs the directions of the named vectors, keeping their Euclidean lengths.
void jiggle(Witness& w, Rng& rng, double radius, std::initializer_list<const char*> keys) {
  for (const char* key : keys) {
    auto it = w.vectors.find(key);
    if (it == w.vectors.end()) continue;
    Vec& v = it->second;
    const double len = std::sqrt(dot(v, v));
    for (double& c : v) c += radius * len * std::normal_distribution<double>(0.0, 1.0)(rng);
    const double after = std::sqrt(dot(v, v));
    if (after > 0.0)
      for (double& c : v) c *= len / after;
  }
}

const Vec& vec(const Witness& w, const char* key) { return w.vectors.at(key); }
const NormSpec& spec_of(const Witness& w, const char* key) { return w.norms.at(key); }
double param(const Witness& w, const char* key) { return w.params.at(key); }
double eps_of(const Witness& w) {
  if (!w.eps) throw InvalidArgument("witness has no eps");
  return *w.eps;
}

// The HH relations of a pair under one norm.
struct PairEval {
  HHValues hv;
  double nx = 0.0;
  double ny = 0.0;

  PairEval(const Norm& n, const Vec& x, const Vec& y) : hv(hh_values(n, x, y)), nx(n(x)), ny(n(y)) {}
  Side relative(double eps) const { return side(hh_relative_from(hv, nx, ny, eps), hv.total); }
  Side absolute(double eps) const { return side(hh_absolute_from(hv, nx, ny, eps), hv.total); }
  Side exact() const { return side(hh_exact_from(hv, nx, ny), hv.total); }
  double raw_relative(double eps) const { return hh_relative_from(hv, nx, ny, eps).margin; }
  double raw_absolute(double eps) const { return hh_absolute_from(hv, nx, ny, eps).margin; }
};

// |⟨x,y⟩| ≤ δ‖x‖‖y‖ normalized by ‖x‖‖y‖.
Side eps_inner_side(const NormSpec& spec, const Vec& x, const Vec& y, double delta, double* raw = nullptr) {
  const auto v = eps_inner(spec, Vector(x), Vector(y), delta);
  if (raw) *raw = v.margin;
  const Norm n(spec, x.size());
  return side(v, n(x) * n(y));
}

double eta_from_eps(double eps) { return eps == 0.0 ? 0.0 : (1.0 - std::sqrt(1.0 - eps * eps)) / eps; }

// ---- maps ----

Matrix rotation(double th) { return Matrix{{std::cos(th), -std::sin(th)}, {std::sin(th), std::cos(th)}}; }

Matrix draw_square_map(Rng& rng, std::size_t n) {
  if (uniform(rng, 0.0, 1.0) < 0.25) {
    // near-isometry: small eps_star
    std::vector<double> d(n);
    for (double& c : d) c = std::exp(0.1 * std::normal_distribution<double>(0.0, 1.0)(rng));
    return random_orthogonal(rng, n) * Matrix::diagonal(d) * random_orthogonal(rng, n);
  }
  Matrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = std::normal_distribution<double>(0.0, 1.0)(rng);
  return g;
}

LinearMap map_of(const Witness& w) { return {*w.matrix, spec_of(w, "domain"), spec_of(w, "codomain")}; }

// The two-sided bound through ‖g‖ and [g], decided exactly at the profile extremes.
Side bounds12_side(const LinearMap& map, const MapProfile& prof, double eps) {
  const auto rep = check_bounds_12(map, prof, eps, Sampler{0, 0});
  return {rep.passes, rep.margin / positive(prof.op_norm * prof.op_norm)};
}

// ---- claim bodies ----

Witness pair_witness(const NormSpec& spec, Vec x, Vec y, double eps) {
  Witness w;
  w.vectors = {{"x", std::move(x)}, {"y", std::move(y)}};
  w.norms = {{"norm", spec}};
  w.eps = eps;
  return w;
}

Witness generate_pair(const Universe& u, Rng& rng, bool target_eps) {
  const std::size_t dim = draw_dim(u, rng);
  NormSpec spec = draw_norm(draw_family(u, rng), dim, rng);
  const double eps = draw_eps(u.eps_grid, rng);
  auto [x, y] = sample_pair(rng, spec, dim, target_eps ? std::optional<double>(eps) : std::nullopt);
  return pair_witness(spec, std::move(x), std::move(y), eps);
}

Witness perturb_pair(const Witness& w, Rng& rng, double radius) {
  Witness out = w;
  jiggle(out, rng, radius, {"x", "y"});
  return out;
}

Outcome symmetry(const Witness& w) {
  const NormSpec& spec = spec_of(w, "norm");
  const Vec& x = vec(w, "x");
  const Vec& y = vec(w, "y");
  const double eps = eps_of(w);
  const Norm n(spec, x.size());
  const PairEval xy(n, x, y);
  const PairEval yx(n, y, x);
  Outcome o;
  equivalence(o, xy.relative(eps), yx.relative(eps));
  equivalence(o, xy.absolute(eps), yx.absolute(eps));
  o.margins = {{"relative_xy", xy.raw_relative(eps)},
               {"relative_yx", yx.raw_relative(eps)},
               {"absolute_xy", xy.raw_absolute(eps)},
               {"absolute_yx", yx.raw_absolute(eps)}};
  return o;
}

Witness generate_scaling(const Universe& u, Rng& rng) {
  Witness w = generate_pair(u, rng, false);
  w.params["alpha"] = sign(rng) * log_uniform(rng, 1e-2, 1e2);
  w.params["beta"] = sign(rng) * log_uniform(rng, 1e-2, 1e2);
  return w;
}

Witness perturb_scaling(const Witness& w, Rng& rng, double radius) {
  Witness out = perturb_pair(w, rng, radius);
  for (const char* k : {"alpha", "beta"})
    out.params[k] *= std::exp(radius * std::normal_distribution<double>(0.0, 1.0)(rng));
  return out;
}

Outcome homogeneity(const Witness& w, bool relative) {
  const NormSpec& spec = spec_of(w, "norm");
  const Vec& x = vec(w, "x");
  const Vec& y = vec(w, "y");
  const double eps = eps_of(w);
  const Norm n(spec, x.size());
  const PairEval before(n, x, y);
  const PairEval after(n, scaled(x, param(w, "alpha")), scaled(y, param(w, "beta")));
  Outcome o;
  if (relative) {
    implication(o, before.relative(eps), after.relative(eps));
    o.margins = {{"premise", before.raw_relative(eps)}, {"conclusion", after.raw_relative(eps)}};
  } else {
    implication(o, before.absolute(eps), after.absolute(eps));
    o.margins = {{"premise", before.raw_absolute(eps)}, {"conclusion", after.raw_absolute(eps)}};
  }
  return o;
}

Outcome absolute_vs_inner(const Witness& w) {
  const NormSpec& spec = spec_of(w, "norm");
  const Vec& x = vec(w, "x");
  const Vec& y = vec(w, "y");
  const double eps = eps_of(w);
  const Norm n(spec, x.size());
  const PairEval pe(n, x, y);
  // both margins in units of ‖x‖‖y‖
  const auto hv = hh_absolute_from(pe.hv, pe.nx, pe.ny, eps);
  const Side a{hv.holds, hv.margin / positive(2.0 / 3.0 * pe.nx * pe.ny)};
  double raw = 0.0;
  const Side b = eps_inner_side(spec, x, y, eps, &raw);
  Outcome o;
  equivalence(o, a, b, kClosedFormBand);
  o.margins = {{"hh_absolute", hv.margin}, {"eps_inner", raw}};
  return o;
}

Outcome relative_threshold(const Witness& w) {
  const NormSpec& spec = spec_of(w, "norm");
  const Vec& x = vec(w, "x");
  const Vec& y = vec(w, "y");
  const double eps = eps_of(w);
  const Norm n(spec, x.size());
  const PairEval pe(n, x, y);
  const double sum = pe.nx * pe.nx + pe.ny * pe.ny;
  const double ip = std::abs(n.inner(x, y));
  const Tolerance tol;
  const Side rel = pe.relative(eps);
  const double stated = eps / (1.0 + eps * eps) * sum - ip;
  const double closed = eps * sum - ip;
  const Side stated_side{stated >= -tol.slack(sum), stated / positive(sum)};
  const Side closed_side{closed >= -tol.slack(sum), closed / positive(sum)};
  Outcome o;
  equivalence(o, rel, stated_side, kClosedFormBand);
  Outcome check;
  equivalence(check, rel, closed_side, kClosedFormBand);
  o.tallies["closed_form_disagreements"] = check.violated ? 1.0 : 0.0;
  o.margins = {{"hh_relative", pe.raw_relative(eps)}, {"stated_threshold", stated}, {"closed_form_threshold", closed}};
  return o;
}

Witness generate_diag_map(const Universe& u, Rng& rng) {
  const double kappa = uniform(rng, 1.0, 10.0);
  const double s1 = log_uniform(rng, 0.1, 10.0);
  std::vector<double> d{s1, s1 / kappa};
  if (uniform(rng, 0.0, 1.0) < 0.5) std::swap(d[0], d[1]);
  Witness w;
  w.matrix = rotation(uniform(rng, 0.0, std::numbers::pi)) * Matrix::diagonal(d) *
             rotation(uniform(rng, 0.0, std::numbers::pi));
  w.norms = {{"domain", LpNorm{2.0}}, {"codomain", LpNorm{2.0}}};
  w.eps = draw_eps(u.eps_grid, rng);
  return w;
}

Outcome forward_preservation(const Witness& w) {
  const LinearMap map = map_of(w);
  const double eps = eps_of(w);
  const MapProfile prof = profile(map);
  const Condition11Result c11 = min_eps_condition_11(map, 512);
  const Side premise{eps >= c11.eps_min - 1e-12, eps - c11.eps_min};
  const Side conclusion = bounds12_side(map, prof, eps);
  Outcome o;
  implication(o, premise, conclusion);
  o.margins = {{"premise", eps - c11.eps_min},
               {"conclusion", conclusion.margin},
               {"eps_min_preserving", c11.eps_min},
               {"eps_star", prof.eps_star}};
  return o;
}

Witness generate_ip_map(const Universe& u, Rng& rng) {
  const std::size_t n = draw_dim(u, rng);
  Witness w;
  w.matrix = draw_square_map(rng, n);
  w.norms = {{"domain", draw_norm(draw_family(u, rng), n, rng)}, {"codomain", draw_norm(draw_family(u, rng), n, rng)}};
  return w;
}

Witness generate_converse(const Universe& u, Rng& rng) {
  Witness w = generate_ip_map(u, rng);
  const std::size_t n = w.matrix->cols();
  const MapProfile prof = profile(map_of(w));
  double eps = draw_eps(u.eps_grid, rng);
  if (!prof.unbounded && uniform(rng, 0.0, 1.0) < 0.5)
    eps = std::min(prof.eps_star + (1.0 - prof.eps_star) * uniform(rng, 0.0, 0.99), 0.999999);
  w.eps = eps;
  w.vectors = {{"u", random_vector(rng, n).components()},
               {"v", random_vector(rng, n).components()},
               {"x", random_vector(rng, n).components()}};
  w.params["eta_fraction"] = uniform(rng, 0.0, 1.0);
  return w;
}

Outcome converse_preservation(const Witness& w) {
  const LinearMap map = map_of(w);
  const double eps = eps_of(w);
  const MapProfile prof = profile(map);
  const Norm dom(map.domain, map.matrix.cols());
  const Norm cod(map.codomain, map.matrix.rows());
  const double op2 = positive(prof.op_norm * prof.op_norm);
  Outcome o;

  const Side b12 = bounds12_side(map, prof, eps);

  // an HH-orthogonal pair in the inner-product domain and its image
  const Vec& u = vec(w, "u");
  Vec wv = vec(w, "v");
  const double proj = dom.inner(u, wv) / dom.squared(u);
  for (std::size_t i = 0; i < wv.size(); ++i) wv[i] -= proj * u[i];
  const PairEval image(cod, map.matrix.apply(u), map.matrix.apply(wv));
  const Side c11 = image.relative(eps);

  // the bound through one η ∈ [[g], ‖g‖] at a sampled point
  const double eta = prof.co_norm + param(w, "eta_fraction") * (prof.op_norm - prof.co_norm);
  const Vec& x = vec(w, "x");
  const double r = cod.squared(map.matrix.apply(x)) / dom.squared(x);
  const double lo = (1.0 - eps) / (1.0 + eps) * eta * eta;
  const double hi = (1.0 + eps) / (1.0 - eps) * eta * eta;
  const double m13 = std::min(r - lo, hi - r);
  const Side s13{m13 >= -Tolerance{}.slack(op2), m13 / op2};

  // the same bound for every η and x, decided at the extremes
  const auto top = check_bounds_13(map, prof, eps, prof.op_norm, Sampler{0, 0});
  const auto bottom = check_bounds_13(map, prof, eps, prof.co_norm, Sampler{0, 0});
  const Side full{top.passes && bottom.passes, std::min(top.margin, bottom.margin) / op2};

  implication(o, b12, c11);
  implication(o, b12, s13);
  equivalence(o, b12, full);
  o.margins = {{"norm_bounds", b12.margin}, {"image_relative", c11.margin}, {"eta_bound_sample", s13.margin},
               {"eta_bound_all", full.margin}};
  return o;
}

Witness generate_chain(const Universe& u, Rng& rng) {
  Witness w = generate_ip_map(u, rng);
  const MapProfile prof = profile(map_of(w));
  double eps = draw_eps(u.eps_grid, rng);
  if (!prof.unbounded && uniform(rng, 0.0, 1.0) < 0.5)
    eps = std::clamp(prof.eps_star + sign(rng) * log_uniform(rng, 1e-9, 1e-1), 0.0, 0.999999);
  w.eps = eps;
  return w;
}

Outcome condition_chain(const Witness& w) {
  const LinearMap map = map_of(w);
  const double eps = eps_of(w);
  const MapProfile prof = profile(map);
  const double op2 = positive(prof.op_norm * prof.op_norm);
  const Side b12 = bounds12_side(map, prof, eps);
  const double m16 = condition_16_margin(prof, eps);
  const Side c16{m16 >= -Tolerance{}.slack(op2), m16 / op2};
  const auto r17 = check_condition_17(map, prof, eps, Sampler{8, 0});
  const double m17 = std::isinf(r17.worst_ratio) ? -1.0 : (r17.bound - r17.worst_ratio) / r17.bound;
  const Side c17{r17.passes, m17};
  Outcome o;
  equivalence(o, b12, c16);
  equivalence(o, b12, c17);
  o.tallies["pair_ratio_vs_profile_mismatches"] = r17.consistent_with_16 ? 0.0 : 1.0;
  o.margins = {{"norm_bounds", b12.margin}, {"conorm_bound", c16.margin}, {"pair_ratio_bound", c17.margin}};
  return o;
}


Witness generate_two_norms(const Universe& u, Rng& rng, std::size_t& dim) {
  dim = draw_dim(u, rng);
  const auto [f1, f2] = split_pair(draw_family(u, rng));
  Witness w;
  NormSpec first = draw_norm(f1, dim, rng);
  NormSpec second;
  if (f2 == "wlp:2:scaled" || f2 == "ip:scaled") {
    // ‖·‖₂ = η‖·‖₁
    const double eta = log_uniform(rng, 0.1, 10.0);
    const auto g = gram_matrix(first, dim);
    if (!g) throw InvalidArgument("scaled families need an inner-product first norm");
    if (f2 == "ip:scaled") {
      second = InnerProductNorm{eta * eta * *g};
    } else {
      std::vector<double> wts(dim);
      for (std::size_t i = 0; i < dim; ++i) wts[i] = eta * eta * (*g)(i, i);
      second = WeightedLpNorm{2.0, wts};
    }
    w.params["eta"] = eta;
  } else {
    second = draw_norm(f2, dim, rng);
  }
  w.norms = {{"first", first}, {"second", second}};
  return w;
}

// y + s x with x ⊥_HH (y + s x) in the given norm; y unchanged if no root is found.
// Closed-form norms are solved to near rounding level so the pair stays
// orthogonal after rescaling the norm.
Vec hh_orthogonalize(const NormSpec& spec, const Vec& x, const Vec& y) {
  Vec out = y;
  const Tolerance tol = is_inner_product_norm(spec) ? Tolerance{0.0, 1e-14} : Tolerance{};
  try {
    const auto root = hh_orthogonal_in_pencil(spec, Vector(x), Vector(y), tol);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += root.location * x[i];
  } catch (const ConvergenceError&) {
  }
  return out;
}

Witness generate_embedding(const Universe& u, Rng& rng) {
  std::size_t dim = 0;
  Witness w = generate_two_norms(u, rng, dim);
  auto [x, y] = draw_pair(rng, dim);
  y = hh_orthogonalize(w.norms.at("first"), x, y);
  w.vectors = {{"x", x}, {"y", y}};
  return w;
}

Outcome embedding_transfer(const Witness& w) {
  const Vec& x = vec(w, "x");
  const Vec& y = vec(w, "y");
  const NormSpec& first = spec_of(w, "first");
  const NormSpec& second = spec_of(w, "second");
  const Embedding emb = two_norm_embedding(first, second, x.size());
  const double m = emb.m;
  const double big = emb.big_m;
  const double eta = (big - m) / (big + m);
  const double eta_sq = (big * big - m * m) / (big * big + m * m);
  const PairEval in_first(Norm(first, x.size()), x, y);
  const PairEval in_second(Norm(second, x.size()), x, y);
  Outcome o;
  implication(o, in_first.exact(), in_second.relative(eta));
  Outcome squared;
  implication(squared, in_first.exact(), in_second.relative(eta_sq));
  o.tallies["violations_at_squared_eta"] = squared.violated ? 1.0 : 0.0;
  o.margins = {{"premise", in_first.hv.gap},
               {"conclusion", in_second.raw_relative(eta)},
               {"conclusion_squared_eta", in_second.raw_relative(eta_sq)},
               {"eta", eta},
               {"eta_squared_form", eta_sq}};
  return o;
}

Outcome beta_minimum_claim(const Witness& w) {
  const NormSpec& spec = spec_of(w, "norm");
  const Vector x(vec(w, "x"));
  const Vector y(vec(w, "y"));
  const auto analytic = beta_functional_min(spec, x, y);
  const auto numeric = beta_functional_min_numeric(spec, x, y);
  const double err = std::abs(numeric.value - analytic.value);
  const double allowed = 1e-8 * analytic.value;
  Outcome o;
  o.applicable = true;
  o.violated = err > allowed;
  o.score = (allowed - err) / positive(analytic.value);
  o.margins = {{"analytic", analytic.value}, {"numeric", numeric.value}, {"margin", allowed - err}};
  return o;
}

// Rescales so that ‖x‖² + ‖y‖² = 5, which leaves every HH and inner-product
// relation unchanged and keeps raw margins comparable across trials.
void normalize_pair(Witness& w) {
  const Norm n(spec_of(w, "norm"), vec(w, "x").size());
  const double s = n.squared(vec(w, "x")) + n.squared(vec(w, "y"));
  const double k = std::sqrt(5.0 / s);
  for (const char* key : {"x", "y"}) w.vectors[key] = scaled(w.vectors[key], k);
}

Witness generate_normalized(const Universe& u, Rng& rng) {
  Witness w = generate_pair(u, rng, true);
  normalize_pair(w);
  return w;
}

Witness perturb_normalized(const Witness& w, Rng& rng, double radius) {
  Witness out = perturb_pair(w, rng, radius);
  normalize_pair(out);
  return out;
}

Outcome relative_to_inner(const Witness& w) {
  const NormSpec& spec = spec_of(w, "norm");
  const Vec& x = vec(w, "x");
  const Vec& y = vec(w, "y");
  const double eps = eps_of(w);
  const PairEval pe(Norm(spec, x.size()), x, y);
  const double p = pe.raw_relative(eps);
  double c = 0.0;
  const Side cs = eps_inner_side(spec, x, y, 2.0 * eps, &c);
  Outcome o;
  implication(o, {pe.relative(eps).holds, p}, {cs.holds, c}, 1e-8);
  o.margins = {{"premise", p}, {"conclusion", c}};
  return o;
}

Witness generate_doubled_target(const Universe& u, Rng& rng) {
  const std::size_t dim = draw_dim(u, rng);
  NormSpec spec = draw_norm(draw_family(u, rng), dim, rng);
  const double eps = draw_eps(u.eps_grid, rng);
  auto [x, y] = sample_pair(rng, spec, dim, std::min(2.0 * eps, 1.0));
  return pair_witness(spec, std::move(x), std::move(y), eps);
}

Outcome inner_to_relative(const Witness& w) {
  const NormSpec& spec = spec_of(w, "norm");
  const Vec& x = vec(w, "x");
  const Vec& y = vec(w, "y");
  const double eps = eps_of(w);
  const PairEval pe(Norm(spec, x.size()), x, y);
  double p = 0.0;
  const Side ps = eps_inner_side(spec, x, y, 2.0 * eps, &p);
  Outcome o;
  implication(o, ps, pe.relative(eps));
  o.margins = {{"premise", p}, {"conclusion", pe.raw_relative(eps)}};
  return o;
}

Outcome absolute_to_relative(const Witness& w, bool forward) {
  const NormSpec& spec = spec_of(w, "norm");
  const Vec& x = vec(w, "x");
  const Vec& y = vec(w, "y");
  const double eps = eps_of(w);
  const double eta = eta_from_eps(eps);
  const PairEval pe(Norm(spec, x.size()), x, y);
  Outcome o;
  if (forward) {
    implication(o, pe.absolute(eps), pe.relative(eta));
    o.margins = {{"premise", pe.raw_absolute(eps)}, {"conclusion", pe.raw_relative(eta)}};
  } else {
    implication(o, pe.relative(eta), pe.absolute(eps));
    o.margins = {{"premise", pe.raw_relative(eta)}, {"conclusion", pe.raw_absolute(eps)}};
  }
  o.margins["eta"] = eta;
  return o;
}

Witness generate_shared_orthogonality(const Universe& u, Rng& rng) {
  std::size_t dim = 0;
  Witness w = generate_two_norms(u, rng, dim);
  auto [x, y] = draw_pair(rng, dim);
  auto [x2, y2] = draw_pair(rng, dim);
  w.vectors = {{"x", x},
               {"y", hh_orthogonalize(w.norms.at("first"), x, y)},
               {"x2", x2},
               {"y2", hh_orthogonalize(w.norms.at("second"), x2, y2)}};
  return w;
}

Outcome shared_orthogonality(const Witness& w) {
  const NormSpec& first = spec_of(w, "first");
  const NormSpec& second = spec_of(w, "second");
  const std::size_t dim = vec(w, "x").size();
  const Norm n1(first, dim);
  const Norm n2(second, dim);
  const PairEval a1(n1, vec(w, "x"), vec(w, "y"));
  const PairEval a2(n2, vec(w, "x"), vec(w, "y"));
  const PairEval b2(n2, vec(w, "x2"), vec(w, "y2"));
  const PairEval b1(n1, vec(w, "x2"), vec(w, "y2"));
  Outcome o;
  implication(o, a1.exact(), a2.exact());
  implication(o, b2.exact(), b1.exact());
  o.margins = {{"first_pair_in_first", a1.hv.gap},
               {"first_pair_in_second", a2.hv.gap},
               {"second_pair_in_second", b2.hv.gap},
               {"second_pair_in_first", b1.hv.gap}};
  return o;
}

const std::vector<std::string> kAllFamilies{"lp:1", "lp:1.5", "lp:2", "lp:3", "lp:inf", "wlp:2:random", "ip:random"};
const std::vector<std::string> kInnerProductFamilies{"lp:2", "wlp:2:random", "ip:random", "ip:identity"};
const std::vector<std::string> kNonEuclideanFamilies{"lp:1", "lp:1.5", "lp:3", "lp:inf"};

ClaimDefinition make(std::string id, std::string statement, Universe universe, std::size_t trials, ClaimMode mode,
                     std::function<Witness(const Universe&, Rng&)> generate, std::function<Outcome(const Witness&)> evaluate,
                     std::function<Witness(const Witness&, Rng&, double)> perturb = {}) {
  ClaimDefinition d;
  d.spec.id = std::move(id);
  d.spec.statement = std::move(statement);
  d.spec.universe = std::move(universe);
  d.spec.trials = trials;
  d.spec.seed = 0;
  d.spec.mode = mode;
  d.generate = std::move(generate);
  d.evaluate = std::move(evaluate);
  d.perturb = std::move(perturb);
  return d;
}

Universe universe(std::size_t lo, std::size_t hi, std::vector<std::string> families) {
  Universe u;
  u.dim_min = lo;
  u.dim_max = hi;
  u.norm_families = std::move(families);
  return u;
}

std::vector<ClaimDefinition> build_registry() {
  auto pair = [](const Universe& u, Rng& rng) { return generate_pair(u, rng, false); };
  auto targeted = [](const Universe& u, Rng& rng) { return generate_pair(u, rng, true); };
  std::vector<ClaimDefinition> r;
  r.push_back(make("C1",
                   "Both approximate HH relations are symmetric: x ~ y at eps implies y ~ x at eps, in every norm",
                   universe(2, 3, kAllFamilies), 100000, ClaimMode::sample, pair, symmetry));
  r.push_back(make("C2",
                   "The absolute approximate HH relation survives x -> a x, y -> b y for all real a, b "
                   "(inner-product norms)",
                   universe(2, 4, kInnerProductFamilies), 100000, ClaimMode::sample, generate_scaling,
                   [](const Witness& w) { return homogeneity(w, false); }));
  r.push_back(make("C2-lp",
                   "The absolute approximate HH relation survives x -> a x, y -> b y for all real a, b "
                   "(non-Euclidean lp norms)",
                   universe(2, 3, kNonEuclideanFamilies), 10000, ClaimMode::both, generate_scaling,
                   [](const Witness& w) { return homogeneity(w, false); }, perturb_scaling));
  r.push_back(make("C3",
                   "The relative approximate HH relation survives x -> a x, y -> b y for all real a, b "
                   "(inner-product norms)",
                   universe(2, 4, kInnerProductFamilies), 10000, ClaimMode::both, generate_scaling,
                   [](const Witness& w) { return homogeneity(w, true); }, perturb_scaling));
  r.push_back(make("C4",
                   "In inner-product norms |I+ - I-| <= (2/3) eps |x||y| holds exactly when |<x,y>| <= eps |x||y|",
                   universe(2, 4, kInnerProductFamilies), 100000, ClaimMode::sample, targeted, absolute_vs_inner));
  r.push_back(make("C5",
                   "In inner-product norms |I+ - I-| <= eps (I+ + I-) holds exactly when "
                   "|<x,y>| <= eps/(1+eps^2) (|x|^2+|y|^2)",
                   universe(2, 4, kInnerProductFamilies), 10000, ClaimMode::both, targeted, relative_threshold,
                   perturb_pair));
  r.push_back(make("C6",
                   "A linear map sending HH-orthogonal pairs to relatively eps-HH-orthogonal pairs satisfies "
                   "(1-eps)/(1+eps) |g|^2 |x|^2 <= |gx|^2 <= (1+eps)/(1-eps) [g]^2 |x|^2",
                   universe(2, 2, {"lp:2"}), 2000, ClaimMode::sample, generate_diag_map, forward_preservation));
  r.push_back(make("C7",
                   "A map with (1-eps)/(1+eps) |g|^2 |x|^2 <= |gx|^2 <= (1+eps)/(1-eps) [g]^2 |x|^2 sends "
                   "HH-orthogonal pairs to relatively eps-HH-orthogonal pairs, and the bound is equivalent to "
                   "the same bound written with any eta in [[g], |g|]",
                   universe(2, 4, kInnerProductFamilies), 100000, ClaimMode::sample, generate_converse,
                   converse_preservation));
  r.push_back(make("C8",
                   "For a linear map the two-sided norm bound, |g|^2 <= (1+eps)/(1-eps) [g]^2, and "
                   "|gx|^2 |y|^2 <= (1+eps)/(1-eps) |gy|^2 |x|^2 for all x, y are equivalent",
                   universe(2, 4, kInnerProductFamilies), 100000, ClaimMode::sample, generate_chain,
                   condition_chain));
  r.push_back(make("C9",
                   "If m |x|_1 <= |x|_2 <= M |x|_1 then HH-orthogonality in the first norm implies the relative "
                   "approximate HH relation in the second at eta = (M-m)/(M+m)",
                   universe(2, 3, {"lp:2|lp:inf", "lp:1|lp:2", "lp:inf|lp:2", "lp:1.5|lp:3"}), 1000,
                   ClaimMode::sample, generate_embedding, embedding_transfer));
  r.push_back(make("C10", "min over beta != 0 of |x/beta|^2 + |beta y|^2 equals 2 |x||y| in every norm",
                   universe(2, 4, kAllFamilies), 100000, ClaimMode::sample, pair, beta_minimum_claim));
  r.push_back(make("C11-forward",
                   "In inner-product norms the relative approximate HH relation at eps implies "
                   "|<x,y>| <= 2 eps |x||y|",
                   universe(2, 4, kInnerProductFamilies), 10000, ClaimMode::both, generate_normalized,
                   relative_to_inner, perturb_normalized));
  r.push_back(make("C11-converse",
                   "In inner-product norms |<x,y>| <= 2 eps |x||y| implies the relative approximate HH relation "
                   "at eps",
                   universe(2, 4, kInnerProductFamilies), 100000, ClaimMode::sample, generate_doubled_target,
                   inner_to_relative));
  r.push_back(make("C12-forward",
                   "In inner-product norms the absolute approximate HH relation at eps implies the relative one "
                   "at eta = (1 - sqrt(1 - eps^2))/eps",
                   universe(2, 4, kInnerProductFamilies), 100000, ClaimMode::sample, targeted,
                   [](const Witness& w) { return absolute_to_relative(w, true); }));
  r.push_back(make("C12-reverse",
                   "In inner-product norms the relative approximate HH relation at eta = (1 - sqrt(1 - eps^2))/eps "
                   "implies the absolute one at eps",
                   universe(2, 4, kInnerProductFamilies), 10000, ClaimMode::both, targeted,
                   [](const Witness& w) { return absolute_to_relative(w, false); }, perturb_pair));
  r.push_back(make("C13-scaled",
                   "When |x|_2 = eta |x|_1 for all x, HH-orthogonality is the same relation in both norms",
                   universe(2, 4, {"lp:2|wlp:2:scaled", "ip:random|ip:scaled"}), 10000, ClaimMode::sample,
                   generate_shared_orthogonality, shared_orthogonality));
  r.push_back(make("C13-linf",
                   "HH-orthogonality in the Euclidean norm and in the sup-norm are the same relation",
                   universe(2, 3, {"lp:2|lp:inf"}), 1000, ClaimMode::sample, generate_shared_orthogonality,
                   shared_orthogonality));
  return r;
}

}  // namespace

const std::vector<ClaimDefinition>& claim_registry() {
  static const std::vector<ClaimDefinition> registry = build_registry();
  return registry;
}

}  // namespace orthokit
