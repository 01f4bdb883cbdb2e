#include "orthokit/mapping.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "orthokit/errors.hpp"
#include "orthokit/hh_integrals.hpp"
#include "orthokit/linalg.hpp"
#include "orthokit/sampling.hpp"
#include "orthokit/solvers.hpp"

namespace orthokit {

namespace {

constexpr double kMachineEps = std::numeric_limits<double>::epsilon();
// Below this fraction of λmax the smallest eigenvalue is treated as zero.
constexpr double kSingularFactor = 64.0 * kMachineEps;

void require_eps(double eps) {
  if (!(eps >= 0.0 && eps < 1.0)) throw InvalidArgument("eps must lie in [0, 1)");
}

void sign_normalize(std::vector<double>& v) {
  double big = 0.0;
  for (double c : v) big = std::max(big, std::abs(c));
  for (double c : v) {
    if (std::abs(c) > 1e-12 * big) {
      if (c < 0.0)
        for (double& d : v) d = -d;
      return;
    }
  }
}

std::vector<double> scaled(std::span<const double> v, double s) {
  std::vector<double> out(v.begin(), v.end());
  for (double& c : out) c *= s;
  return out;
}

double eps_from_squares(double big, double small) {
  if (!(small > 0.0)) return 1.0;
  return std::clamp((big - small) / (big + small), 0.0, 1.0);
}

// ‖g x‖² / ‖x‖² evaluated through validated norms.
struct RatioEval {
  const Matrix& g;
  Norm dom;
  Norm cod;

  RatioEval(const LinearMap& map) : g(map.matrix), dom(map.domain, map.matrix.cols()), cod(map.codomain, map.matrix.rows()) {}

  double operator()(std::span<const double> x) const {
    const double nx = dom.squared(x);
    if (nx == 0.0) return 0.0;
    return cod.squared(g.apply(x)) / nx;
  }
};

std::vector<double> unit_in(const Norm& n, std::vector<double> v) {
  const double len = n(v);
  for (double& c : v) c /= len;
  return v;
}

// Compass search on the ratio; direction sign +1 maximizes, −1 minimizes.
std::pair<double, std::vector<double>> compass(const RatioEval& f, std::vector<double> x, double sign) {
  const std::size_t n = x.size();
  std::vector<std::vector<double>> dirs;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> d(n, 0.0);
    d[i] = 1.0;
    dirs.push_back(d);
    d[i] = -1.0;
    dirs.push_back(d);
    for (std::size_t j = i + 1; j < n; ++j) {
      for (double si : {1.0, -1.0})
        for (double sj : {1.0, -1.0}) {
          std::vector<double> e(n, 0.0);
          e[i] = si * (1.0 / std::numbers::sqrt2);
          e[j] = sj * (1.0 / std::numbers::sqrt2);
          dirs.push_back(e);
        }
    }
  }
  x = unit_in(f.dom, std::move(x));
  double val = sign * f(x);
  double h = 0.25;
  std::vector<double> trial(n);
  int iterations = 0;
  while (h > 1e-10 && iterations < 4000) {
    ++iterations;
    bool improved = false;
    for (const auto& d : dirs) {
      for (std::size_t i = 0; i < n; ++i) trial[i] = x[i] + h * d[i];
      if (f.dom(trial) == 0.0) continue;
      const double v = sign * f(trial);
      if (v > val) {
        val = v;
        x = unit_in(f.dom, trial);
        improved = true;
      }
    }
    if (!improved) h *= 0.5;
  }
  return {sign * val, x};
}

MapProfile exact_profile(const LinearMap& map) {
  const std::size_t n = map.matrix.cols();
  const std::size_t m = map.matrix.rows();
  const Matrix gd = *gram_matrix(map.domain, n);
  const Matrix gc = *gram_matrix(map.codomain, m);
  const Matrix l = *linalg::cholesky(gd);
  const Matrix linv = linalg::invert_lower(l);
  const Matrix s = linv * map.matrix.transpose() * gc * map.matrix * linv.transpose();
  const auto eig = linalg::jacobi_eigen(s);

  const Matrix back = linv.transpose();
  auto column = [&](std::size_t k) {
    std::vector<double> z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = eig.vectors(i, k);
    auto x = back.apply(z);
    sign_normalize(x);
    return x;
  };

  MapProfile prof;
  prof.method = ProfileMethod::exact_ip;
  const double lmax = std::max(eig.values.back(), 0.0);
  const double lmin = std::max(eig.values.front(), 0.0);
  prof.op_norm = std::sqrt(lmax);
  prof.cert_max = column(n - 1);
  prof.cert_min = column(0);
  if (lmax == 0.0 || lmin <= kSingularFactor * lmax) {
    prof.co_norm = 0.0;
    prof.unbounded = true;
    prof.kappa = kInfinity;
    prof.eps_star = 1.0;
  } else {
    prof.co_norm = std::sqrt(lmin);
    prof.kappa = prof.op_norm / prof.co_norm;
    prof.eps_star = eps_from_squares(lmax, lmin);
  }
  return prof;
}

MapProfile estimated_profile(const LinearMap& map, const ProfileOptions& options) {
  const RatioEval f(map);
  const std::size_t n = map.matrix.cols();
  auto rng = make_rng(options.seed, "profile-starts", 0);

  std::vector<std::vector<double>> starts;
  for (std::size_t i = 0; i < n && static_cast<int>(starts.size()) < options.starts; ++i) {
    std::vector<double> e(n, 0.0);
    e[i] = 1.0;
    starts.push_back(e);
  }
  while (static_cast<int>(starts.size()) < std::max(options.starts, 1)) starts.push_back(random_vector(rng, n).components());

  double best_max = -1.0;
  double best_min = kInfinity;
  std::vector<double> cert_max;
  std::vector<double> cert_min;
  for (const auto& s : starts) {
    auto [hi, xh] = compass(f, s, 1.0);
    if (hi > best_max) {
      best_max = hi;
      cert_max = xh;
    }
    auto [lo, xl] = compass(f, s, -1.0);
    if (lo < best_min) {
      best_min = lo;
      cert_min = xl;
    }
  }

  MapProfile prof;
  prof.method = ProfileMethod::estimated;
  prof.op_norm = std::sqrt(best_max);

  // Rank deficiency does not depend on the norms; decide it on gᵀg.
  const auto eig = linalg::jacobi_eigen(map.matrix.transpose() * map.matrix);
  const double lmax = eig.values.back();
  const bool singular = lmax == 0.0 || eig.values.front() <= kSingularFactor * lmax;
  if (singular) {
    std::vector<double> z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = eig.vectors(i, 0);
    cert_min = unit_in(f.dom, z);
    prof.co_norm = 0.0;
    prof.unbounded = true;
    prof.kappa = kInfinity;
    prof.eps_star = 1.0;
  } else {
    prof.co_norm = std::sqrt(best_min);
    prof.kappa = prof.op_norm / prof.co_norm;
    prof.eps_star = eps_from_squares(best_max, best_min);
  }
  sign_normalize(cert_max);
  sign_normalize(cert_min);
  prof.cert_max = cert_max;
  prof.cert_min = cert_min;
  return prof;
}

// Unit vectors probed by the sampled checks: certificates, basis vectors, then random directions.
std::vector<std::vector<double>> probe_set(const LinearMap& map, const MapProfile& prof, const Sampler& sampler) {
  const std::size_t n = map.matrix.cols();
  const Norm dom(map.domain, n);
  std::vector<std::vector<double>> probes;
  probes.push_back(unit_in(dom, prof.cert_max));
  probes.push_back(unit_in(dom, prof.cert_min));
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> e(n, 0.0);
    e[i] = 1.0;
    probes.push_back(unit_in(dom, e));
  }
  auto rng = make_rng(sampler.seed, "unit-sphere", 0);
  for (std::size_t k = 0; k < sampler.samples; ++k) probes.push_back(unit_in(dom, random_vector(rng, n).components()));
  return probes;
}

struct Extremes {
  double min_ratio = kInfinity;
  double max_ratio = -1.0;
  std::vector<double> arg_min;
  std::vector<double> arg_max;
  std::size_t count = 0;
};

Extremes scan(const LinearMap& map, const MapProfile& prof, const Sampler& sampler) {
  const RatioEval f(map);
  Extremes ex;
  for (const auto& x : probe_set(map, prof, sampler)) {
    const double r = f(x);
    if (r < ex.min_ratio) {
      ex.min_ratio = r;
      ex.arg_min = x;
    }
    if (r > ex.max_ratio) {
      ex.max_ratio = r;
      ex.arg_max = x;
    }
    ++ex.count;
  }
  return ex;
}

BoundsReport bounds_report(const LinearMap& map, const MapProfile& prof, double eps, double lower, double upper,
                           const Sampler& sampler, const Tolerance& tol) {
  const Extremes ex = scan(map, prof, sampler);
  BoundsReport rep;
  rep.eps = eps;
  rep.lower_bound = lower;
  rep.upper_bound = upper;
  rep.min_ratio = ex.min_ratio;
  rep.max_ratio = ex.max_ratio;
  rep.witness_low = ex.arg_min;
  rep.witness_high = ex.arg_max;
  rep.samples = ex.count;
  rep.margin = std::min(ex.min_ratio - lower, upper - ex.max_ratio);
  rep.passes = rep.margin >= -tol.slack(std::max({lower, upper, ex.max_ratio}));
  return rep;
}

double pair_ratio(const Norm& cod, const Matrix& g, std::span<const double> u, std::span<const double> w) {
  const auto gu = g.apply(u);
  const auto gw = g.apply(w);
  const auto hv = hh_values(cod, gu, gw);
  if (hv.total == 0.0) return 0.0;
  return std::abs(hv.gap) / hv.total;
}

Condition11Result exact_condition_11(const LinearMap& map, std::size_t budget) {
  const Matrix gd = *gram_matrix(map.domain, 2);
  const Matrix gc = *gram_matrix(map.codomain, map.matrix.rows());
  const Matrix linv = linalg::invert_lower(*linalg::cholesky(gd));
  const Matrix s = linv * map.matrix.transpose() * gc * map.matrix * linv.transpose();

  // Orthonormal pair e1 = (cos θ, sin θ), e2 = (−sin θ, cos θ) in whitened
  // coordinates; optimizing the two scales leaves |C| / (2√(AB)).
  auto required = [&](double theta) {
    const double c = std::cos(theta);
    const double sn = std::sin(theta);
    const double a = s(0, 0) * c * c + 2.0 * s(0, 1) * c * sn + s(1, 1) * sn * sn;
    const double b = s(0, 0) * sn * sn - 2.0 * s(0, 1) * c * sn + s(1, 1) * c * c;
    const double cross = (s(1, 1) - s(0, 0)) * c * sn + s(0, 1) * (c * c - sn * sn);
    if (!(a > 0.0 && b > 0.0)) return 0.0;
    return std::abs(cross) / (2.0 * std::sqrt(a * b));
  };

  const std::size_t grid = std::max<std::size_t>(budget / 2, 16);
  const double step = (std::numbers::pi / 2.0) / static_cast<double>(grid);
  double best_theta = 0.0;
  double best = required(0.0);
  std::size_t evaluations = 1;
  for (std::size_t k = 1; k < grid; ++k) {
    const double th = step * static_cast<double>(k);
    const double v = required(th);
    ++evaluations;
    if (v > best) {
      best = v;
      best_theta = th;
    }
  }
  const auto refined = golden_section_minimize([&](double th) { return -required(th); }, best_theta - step,
                                               best_theta + step, 200, 1e-14);
  evaluations += static_cast<std::size_t>(refined.iterations) + 4;
  if (-refined.value > best) {
    best = -refined.value;
    best_theta = refined.argmin;
  }

  const double c = std::cos(best_theta);
  const double sn = std::sin(best_theta);
  const std::vector<double> e1{c, sn};
  const std::vector<double> e2{-sn, c};
  const Matrix back = linv.transpose();
  auto u = back.apply(e1);
  auto w = back.apply(e2);
  const Norm cod(map.codomain, map.matrix.rows());
  const double a = cod.squared(map.matrix.apply(u));
  const double b = cod.squared(map.matrix.apply(w));
  if (a > 0.0 && b > 0.0) {
    u = scaled(u, std::pow(b / a, 0.25));
    w = scaled(w, std::pow(a / b, 0.25));
  }

  Condition11Result res;
  res.eps_min = best;
  res.u = u;
  res.w = w;
  res.approximate = false;
  res.stabilized = true;
  res.evaluations = evaluations;
  return res;
}

Condition11Result searched_condition_11(const LinearMap& map, std::size_t budget, std::uint64_t seed) {
  const std::size_t n = map.matrix.cols();
  const Norm cod(map.codomain, map.matrix.rows());
  std::size_t evaluations = 0;

  // (u, v) ↦ HH-orthogonal pair (u, v + s u) ↦ required ε at the image.
  struct Candidate {
    double value = -1.0;
    std::vector<double> u, v, w;
  };
  auto assess = [&](const std::vector<double>& u, const std::vector<double>& v) {
    Candidate c;
    c.u = u;
    c.v = v;
    ++evaluations;
    const Vector uu(u);
    const Vector vv(v);
    if (uu.is_zero()) return c;
    RootResult root;
    try {
      root = hh_orthogonal_in_pencil(map.domain, uu, vv);
    } catch (const ConvergenceError&) {
      return c;
    }
    c.w = v;
    for (std::size_t i = 0; i < n; ++i) c.w[i] += root.location * u[i];
    c.value = pair_ratio(cod, map.matrix, c.u, c.w);
    return c;
  };

  const std::size_t sample_budget = std::max<std::size_t>(budget / 2, 1);
  Candidate best;
  for (std::size_t k = 0; k < sample_budget; ++k) {
    auto rng = make_rng(seed, "condition-11", k);
    auto u = random_vector(rng, n).components();
    auto v = random_vector(rng, n).components();
    // vary the relative scale as well as the directions
    const double rho = log_uniform(rng, 1e-2, 1e2);
    for (double& c : v) c *= rho * std::sqrt(dot(u, u) / dot(v, v));
    auto cand = assess(u, v);
    if (cand.value > best.value) best = std::move(cand);
  }

  double radius = 0.25;
  double last_gain_at = 0.0;
  std::size_t refine_steps = 0;
  const std::size_t refine_budget = budget > sample_budget ? budget - sample_budget : 0;
  auto rng = make_rng(seed, "condition-11-refine", 0);
  while (refine_steps < refine_budget && radius > 1e-9 && !best.w.empty()) {
    ++refine_steps;
    auto u = best.u;
    auto v = best.v;
    const double su = std::sqrt(dot(u, u));
    const double sv = std::sqrt(dot(v, v));
    for (std::size_t i = 0; i < n; ++i) {
      u[i] += radius * su * std::normal_distribution<double>(0.0, 1.0)(rng);
      v[i] += radius * sv * std::normal_distribution<double>(0.0, 1.0)(rng);
    }
    auto cand = assess(u, v);
    if (cand.value > best.value) {
      if (cand.value - best.value > 1e-9 * std::max(best.value, 1.0)) last_gain_at = static_cast<double>(refine_steps);
      best = std::move(cand);
    } else if (refine_steps % 16 == 0) {
      radius *= 0.5;
    }
  }

  Condition11Result res;
  res.eps_min = std::max(best.value, 0.0);
  res.u = best.u;
  res.w = best.w;
  res.approximate = true;
  res.stabilized = refine_steps == 0 || last_gain_at < 0.75 * static_cast<double>(refine_steps);
  res.evaluations = evaluations;
  return res;
}

}  // namespace

void validate(const LinearMap& map) {
  if (map.matrix.rows() == 0 || map.matrix.cols() == 0) throw InvalidArgument("matrix must be non-empty");
  if (!map.matrix.all_finite()) throw InvalidArgument("matrix entries must be finite");
  Norm(map.domain, map.matrix.cols());
  Norm(map.codomain, map.matrix.rows());
}

std::string_view to_string(ProfileMethod m) { return m == ProfileMethod::exact_ip ? "exact-ip" : "estimated"; }

MapProfile profile(const LinearMap& map, const ProfileOptions& options) {
  validate(map);
  if (is_inner_product_norm(map.domain) && is_inner_product_norm(map.codomain)) return exact_profile(map);
  return estimated_profile(map, options);
}

BoundsReport check_bounds_12(const LinearMap& map, double eps, const Sampler& sampler, const Tolerance& tol) {
  return check_bounds_12(map, profile(map, {64, sampler.seed}), eps, sampler, tol);
}

BoundsReport check_bounds_12(const LinearMap& map, const MapProfile& prof, double eps, const Sampler& sampler,
                             const Tolerance& tol) {
  validate(map);
  require_eps(eps);
  require_valid(tol);
  const double op2 = prof.op_norm * prof.op_norm;
  const double co2 = prof.co_norm * prof.co_norm;
  return bounds_report(map, prof, eps, (1.0 - eps) / (1.0 + eps) * op2, (1.0 + eps) / (1.0 - eps) * co2, sampler,
                       tol);
}

BoundsReport check_bounds_13(const LinearMap& map, const MapProfile& prof, double eps, double eta,
                             const Sampler& sampler, const Tolerance& tol) {
  validate(map);
  require_eps(eps);
  require_valid(tol);
  if (!(eta >= 0.0) || !std::isfinite(eta)) throw InvalidArgument("eta must be finite and nonnegative");
  const double e2 = eta * eta;
  return bounds_report(map, prof, eps, (1.0 - eps) / (1.0 + eps) * e2, (1.0 + eps) / (1.0 - eps) * e2, sampler, tol);
}

double min_eps_condition_14(const LinearMap& map, const Sampler& sampler) {
  return min_eps_condition_14(map, profile(map, {64, sampler.seed}), sampler);
}

double min_eps_condition_14(const LinearMap& map, const MapProfile& prof, const Sampler& sampler) {
  validate(map);
  if (prof.method == ProfileMethod::exact_ip) return prof.eps_star;
  if (prof.unbounded) return 1.0;
  const Extremes ex = scan(map, prof, sampler);
  const double big = std::max(ex.max_ratio, prof.op_norm * prof.op_norm);
  const double small = std::min(ex.min_ratio, prof.co_norm * prof.co_norm);
  return eps_from_squares(big, small);
}

Condition11Result min_eps_condition_11(const LinearMap& map, std::size_t budget, std::uint64_t seed) {
  validate(map);
  if (budget == 0) throw InvalidArgument("search budget must be positive");
  if (map.matrix.cols() == 2 && is_inner_product_norm(map.domain) && is_inner_product_norm(map.codomain))
    return exact_condition_11(map, budget);
  return searched_condition_11(map, budget, seed);
}

Condition17Report check_condition_17(const LinearMap& map, double eps, const Sampler& sampler, const Tolerance& tol) {
  return check_condition_17(map, profile(map, {64, sampler.seed}), eps, sampler, tol);
}

Condition17Report check_condition_17(const LinearMap& map, const MapProfile& prof, double eps, const Sampler& sampler,
                                     const Tolerance& tol) {
  validate(map);
  require_eps(eps);
  require_valid(tol);
  // The worst pair over a probe set pairs the largest ratio with the smallest.
  const Extremes ex = scan(map, prof, sampler);
  Condition17Report rep;
  rep.eps = eps;
  rep.bound = (1.0 + eps) / (1.0 - eps);
  rep.worst_ratio = ex.min_ratio > 0.0 ? ex.max_ratio / ex.min_ratio : kInfinity;
  rep.kappa_sq = prof.kappa * prof.kappa;
  rep.witness_x = ex.arg_max;
  rep.witness_y = ex.arg_min;
  rep.pairs = ex.count * (ex.count - 1) / 2;
  rep.passes = rep.worst_ratio <= rep.bound + tol.slack(rep.bound);
  if (std::isinf(rep.worst_ratio) || std::isinf(rep.kappa_sq)) {
    rep.consistent_with_16 = std::isinf(rep.worst_ratio) && std::isinf(rep.kappa_sq);
  } else {
    const double rel = prof.method == ProfileMethod::exact_ip ? 1e-8 : 1e-6;
    rep.consistent_with_16 = std::abs(rep.worst_ratio - rep.kappa_sq) <= rel * std::max(1.0, rep.kappa_sq);
  }
  return rep;
}

double condition_16_margin(const MapProfile& prof, double eps) {
  require_eps(eps);
  return (1.0 + eps) / (1.0 - eps) * prof.co_norm * prof.co_norm - prof.op_norm * prof.op_norm;
}

Embedding two_norm_embedding(const NormSpec& norm1, const NormSpec& norm2, std::size_t dim) {
  if (dim == 0) throw InvalidArgument("dimension must be positive");
  Norm(norm1, dim);
  Norm(norm2, dim);
  if (norm1 == norm2) return {1.0, 1.0, true};
  const auto* a = std::get_if<LpNorm>(&norm1);
  const auto* b = std::get_if<LpNorm>(&norm2);
  if (a && b) {
    const double inv_p = std::isinf(a->p) ? 0.0 : 1.0 / a->p;
    const double inv_q = std::isinf(b->p) ? 0.0 : 1.0 / b->p;
    const double n = static_cast<double>(dim);
    // ‖x‖_q ≤ ‖x‖_p ≤ n^(1/p − 1/q)‖x‖_q for p < q
    if (inv_p > inv_q) return {std::pow(n, inv_q - inv_p), 1.0, true};
    return {1.0, std::pow(n, inv_q - inv_p), true};
  }
  const LinearMap id{Matrix::identity(dim), norm1, norm2};
  const auto prof = profile(id);
  return {prof.co_norm, prof.op_norm, false};
}

double minimal_passing_eps(const std::function<bool(double)>& passes, double abs_tol) {
  if (passes(0.0)) return 0.0;
  double lo = 0.0;
  double hi = 1.0 - 1e-15;
  if (!passes(hi)) return 1.0;
  while (hi - lo > abs_tol) {
    const double mid = 0.5 * (lo + hi);
    if (passes(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace orthokit
