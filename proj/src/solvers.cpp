#include "orthokit/solvers.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "orthokit/errors.hpp"
#include "orthokit/hh_integrals.hpp"

namespace orthokit {

GoldenResult golden_section_minimize(const std::function<double(double)>& f, double lo, double hi, int max_iter,
                                     double rel_width) {
  if (!(lo <= hi)) throw InvalidArgument("golden-section bracket must satisfy lo <= hi");
  GoldenResult best{lo, f(lo), 0};
  if (lo == hi) return best;

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  const double min_width = rel_width * (hi - lo);
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  int it = 0;
  while (it < max_iter && (b - a) > min_width) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
    ++it;
  }
  auto consider = [&](double t, double v) {
    if (v < best.value) {
      best.argmin = t;
      best.value = v;
    }
  };
  consider(c, fc);
  consider(d, fd);
  const double mid = 0.5 * (a + b);
  consider(mid, f(mid));
  consider(hi, f(hi));
  best.iterations = it;
  return best;
}

LineMinimum minimize_norm_on_line(const Norm& norm, std::span<const double> x, std::span<const double> y) {
  const double ny = norm(y);
  if (ny == 0.0) throw InvalidArgument("direction y must be nonzero");
  const double nx = norm(x);
  if (nx == 0.0) return {0.0, 0.0};

  std::vector<double> buf(x.size());
  auto f = [&](double t) {
    for (std::size_t i = 0; i < x.size(); ++i) buf[i] = x[i] + t * y[i];
    return norm(buf);
  };
  const double bound = 2.0 * nx / ny;
  const auto g = golden_section_minimize(f, -bound, bound);
  if (nx <= g.value) return {0.0, nx};
  return {g.argmin, g.value};
}

LineMinimum minimize_norm_on_line(const NormSpec& spec, const Vector& x, const Vector& y) {
  if (x.dim() != y.dim()) throw DimensionMismatch("x and y have different dimensions");
  return minimize_norm_on_line(Norm(spec, x.dim()), x.span(), y.span());
}

RootResult hh_orthogonal_in_pencil(const NormSpec& spec, const Vector& x, const Vector& y, const Tolerance& tol) {
  if (x.dim() != y.dim()) throw DimensionMismatch("x and y have different dimensions");
  require_valid(tol);
  const Norm norm(spec, x.dim());
  const double nx = norm(x);
  if (nx == 0.0) throw InvalidArgument("x must be nonzero");
  const double ny = norm(y);

  std::vector<double> w(x.dim());
  int evaluations = 0;
  struct Sample {
    double s;
    double gap;
    double total;
  };
  auto eval = [&](double s) {
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = y[i] + s * x[i];
    ++evaluations;
    const auto hv = hh_values(norm, x.span(), w, tol);
    return Sample{s, hv.gap, hv.total};
  };
  auto converged = [&](const Sample& p) { return std::abs(p.gap) <= tol.slack(p.total); };
  auto done = [&](const Sample& p, double lo, double hi) {
    return RootResult{p.s, p.gap, evaluations, {lo, hi}};
  };

  const Sample zero = eval(0.0);
  if (converged(zero)) return done(zero, 0.0, 0.0);

  double half = 1.0 + 2.0 * ny / nx;
  Sample lo = eval(-half);
  Sample hi = eval(half);
  int doublings = 0;
  while (!(lo.gap <= 0.0 && hi.gap >= 0.0) && !(lo.gap >= 0.0 && hi.gap <= 0.0)) {
    if (++doublings > 60) throw ConvergenceError("no sign change found while expanding the pencil bracket");
    half *= 2.0;
    lo = eval(-half);
    hi = eval(half);
  }
  if (converged(lo)) return done(lo, lo.s, hi.s);
  if (converged(hi)) return done(hi, lo.s, hi.s);

  // Prefer the half containing zero so that a root near s = 0 is found first.
  if ((lo.gap <= 0.0) == (zero.gap <= 0.0)) {
    lo = zero;
  } else {
    hi = zero;
  }

  Sample best = std::abs(lo.gap) < std::abs(hi.gap) ? lo : hi;
  for (int it = 0; it < 200; ++it) {
    const double mid_s = lo.s + 0.5 * (hi.s - lo.s);
    if (!(mid_s > lo.s && mid_s < hi.s)) break;
    const Sample mid = eval(mid_s);
    if (std::abs(mid.gap) < std::abs(best.gap)) best = mid;
    if (converged(mid)) return done(mid, lo.s, hi.s);
    if ((mid.gap <= 0.0) == (lo.gap <= 0.0)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if (converged(best)) return done(best, lo.s, hi.s);
  throw ConvergenceError("pencil bisection stalled before reaching the tolerance");
}

BetaMinimum beta_functional_min(const NormSpec& spec, const Vector& x, const Vector& y) {
  if (x.dim() != y.dim()) throw DimensionMismatch("x and y have different dimensions");
  const Norm norm(spec, x.dim());
  const double nx = norm(x);
  const double ny = norm(y);
  if (nx == 0.0 && ny == 0.0) return {1.0, 0.0, true};
  if (nx == 0.0) return {0.0, 0.0, false};
  if (ny == 0.0) return {kInfinity, 0.0, false};
  return {std::sqrt(nx / ny), 2.0 * nx * ny, true};
}

BetaMinimum beta_functional_min_numeric(const NormSpec& spec, const Vector& x, const Vector& y) {
  if (x.dim() != y.dim()) throw DimensionMismatch("x and y have different dimensions");
  const Norm norm(spec, x.dim());
  std::vector<double> bx(x.dim());
  std::vector<double> by(x.dim());
  // h as a function of u = log β; convex in u
  auto h = [&](double u) {
    const double beta = std::exp(u);
    for (std::size_t i = 0; i < bx.size(); ++i) {
      bx[i] = x[i] / beta;
      by[i] = beta * y[i];
    }
    const double a = norm(bx);
    const double b = norm(by);
    return a * a + b * b;
  };

  double lo = -1.0;
  double hi = 1.0;
  bool attained = true;
  int expansions = 0;
  while (h(hi) < h(hi - 1.0)) {
    hi += hi - lo;
    if (++expansions > 60 || hi > 700.0) {
      attained = false;
      break;
    }
  }
  expansions = 0;
  while (h(lo) < h(lo + 1.0)) {
    lo -= hi - lo;
    if (++expansions > 60 || lo < -700.0) {
      attained = false;
      break;
    }
  }
  lo = std::max(lo, -700.0);
  hi = std::min(hi, 700.0);
  const auto g = golden_section_minimize(h, lo, hi);
  return {std::exp(g.argmin), g.value, attained};
}

}  // namespace orthokit
