#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "orthokit/errors.hpp"
#include "orthokit/relations.hpp"
#include "orthokit/sampling.hpp"

using namespace orthokit;

namespace {

const LpNorm l1{1.0}, l2{2.0}, linf{kInfinity};
const InnerProductNorm i2{Matrix::identity(2)};
const Vector bx{2.0, 0.0};
const Vector by{0.45, std::sqrt(0.7975)};  // ⟨bx,by⟩ = 0.9, ‖by‖ = 1

std::vector<NormSpec> all_specs(Rng& rng, std::size_t dim) {
  std::vector<double> w(dim);
  for (double& c : w) c = log_uniform(rng, 0.2, 5.0);
  return {LpNorm{1.0}, LpNorm{1.5}, LpNorm{2.0}, LpNorm{3.0}, LpNorm{kInfinity}, WeightedLpNorm{2.0, w},
          InnerProductNorm{random_spd(rng, dim)}};
}

}  // namespace

TEST(Relations, NamesRoundTrip) {
  for (auto id : all_relations()) EXPECT_EQ(relation_from_string(to_string(id)), id);
  EXPECT_FALSE(relation_from_string("nope").has_value());
  EXPECT_EQ(all_relations().size(), 11u);
}

TEST(Relations, Classic) {
  EXPECT_TRUE(classic(i2, Vector{1.0, 0.0}, Vector{0.0, 1.0}).holds);
  EXPECT_TRUE(classic(i2, Vector{1.0, 1.0}, Vector{1.0, -1.0}).holds);
  const auto v = classic(i2, Vector{1.0, 2.0}, Vector{3.0, -1.0});
  EXPECT_FALSE(v.holds);
  EXPECT_DOUBLE_EQ(v.details.at("inner"), 1.0);
  EXPECT_THROW(classic(l1, Vector{1.0, 0.0}, Vector{0.0, 1.0}), InvalidSpec);
}

TEST(Relations, Birkhoff) {
  EXPECT_TRUE(birkhoff(linf, Vector{1.0, 1.0}, Vector{0.0, 1.0}).holds);
  const auto v = birkhoff(l2, Vector{1.0, 0.0}, Vector{1.0, 1.0});
  EXPECT_FALSE(v.holds);
  EXPECT_NEAR(v.details.at("min_value"), 1.0 / std::sqrt(2.0), 1e-9);
  EXPECT_NEAR(v.details.at("alpha_star"), -0.5, 1e-6);
  const auto w = birkhoff(i2, Vector{1.0, 0.0}, Vector{0.0, 1.0});
  EXPECT_TRUE(w.holds);
  EXPECT_NEAR(w.details.at("alpha_star"), 0.0, 1e-6);
}

TEST(Relations, Isosceles) {
  EXPECT_TRUE(isosceles(l1, Vector{1.0, 0.0}, Vector{0.0, 1.0}).holds);
  EXPECT_FALSE(isosceles(l2, Vector{1.0, 0.0}, Vector{1.0, 1.0}).holds);
  EXPECT_TRUE(isosceles(l1, Vector{1.0, 3.0}, Vector{0.0, 0.0}).holds);
}

TEST(Relations, EpsInner) {
  EXPECT_TRUE(eps_inner(i2, Vector{1.0, 0.0}, Vector{0.0, 1.0}, 0.0).holds);
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_FALSE(eps_inner(i2, Vector{1.0, 0.0}, Vector{r, r}, 0.5).holds);
  const auto b = eps_inner(i2, bx, by, 0.45);
  EXPECT_TRUE(b.holds);
  EXPECT_NEAR(b.margin, 0.0, 1e-12);
}

TEST(Relations, DragomirBirkhoff) {
  EXPECT_TRUE(dragomir_birkhoff(l2, Vector{1.0, 0.0}, Vector{1.0, 1.0}, 0.3).holds);
  EXPECT_FALSE(dragomir_birkhoff(l2, Vector{1.0, 0.0}, Vector{1.0, 1.0}, 0.2).holds);
  EXPECT_TRUE(dragomir_birkhoff(l1, Vector{1.0, 0.0}, Vector{1.0, 1.0}, 0.999999).holds);
}

TEST(Relations, ChmielinskiBirkhoff) {
  const double r = 1.0 / std::sqrt(2.0);
  const Vector x{1.0, 0.0}, y{r, r};
  EXPECT_FALSE(chmielinski_birkhoff(i2, x, y, 0.70).holds);
  EXPECT_TRUE(chmielinski_birkhoff(i2, x, y, 0.71).holds);
  EXPECT_TRUE(chmielinski_birkhoff(l1, x, y, 1.0).holds);
  EXPECT_TRUE(chmielinski_birkhoff(l1, x, Vector{0.0, 0.0}, 0.1).holds);
  // Fine grid over t: inf ‖x+ty‖² + 2ε‖x‖‖y‖|t| − ‖x‖² changes sign between 0.70 and 0.71.
  for (double eps : {0.70, 0.71}) {
    double best = oracle::kInf;
    for (int k = -200000; k <= 200000; ++k) {
      const double t = k * 1e-5;
      const double a = 1.0 + t * r, b = t * r;
      best = std::min(best, a * a + b * b + 2.0 * eps * std::abs(t) - 1.0);
    }
    EXPECT_EQ(best >= 0.0, eps > r) << eps;
  }
}

TEST(Relations, IsoscelesApproximate) {
  EXPECT_TRUE(iso_additive(l2, Vector{1.0, 0.0}, Vector{0.0, 1.0}, 0.1).holds);
  EXPECT_TRUE(iso_multiplicative(l2, Vector{1.0, 0.0}, Vector{0.0, 1.0}, 0.1).holds);
  EXPECT_FALSE(iso_additive(i2, bx, by, 0.44).holds);
  EXPECT_TRUE(iso_additive(i2, bx, by, 0.45).holds);
  EXPECT_FALSE(iso_multiplicative(l2, Vector{1.0, 1.0}, Vector{1.0, 1.0}, 0.5).holds);
}

TEST(Relations, IntegralRelationsOnHandPairs) {
  EXPECT_TRUE(hh_exact(l1, Vector{1.0, 0.0}, Vector{0.0, 1.0}).holds);
  EXPECT_TRUE(hh_exact(i2, Vector{1.0, 1.0}, Vector{-1.0, 1.0}).holds);
  const auto e = hh_exact(i2, Vector{1.0, 2.0}, Vector{3.0, -1.0});
  EXPECT_FALSE(e.holds);
  EXPECT_NEAR(e.margin, -2.0 / 3.0, 1e-14);

  EXPECT_TRUE(hh_relative(i2, bx, by, 0.2).holds);
  const auto f = hh_relative(i2, bx, by, 0.15);
  EXPECT_FALSE(f.holds);
  EXPECT_NEAR(f.margin, -0.1, 1e-12);

  EXPECT_FALSE(hh_absolute(i2, bx, by, 0.44).holds);
  EXPECT_TRUE(hh_absolute(i2, bx, by, 0.45).holds);
  EXPECT_TRUE(hh_absolute(i2, Vector{0.0, 3.0}, Vector{2.0, 0.0}, 0.0).holds);
  // ⟨x,y⟩ = ε‖x‖‖y‖ exactly: boundary.
  const double eps = 0.3;
  const auto edge = hh_absolute(i2, Vector{1.0, 0.0}, Vector{eps, std::sqrt(1.0 - eps * eps)}, eps);
  EXPECT_TRUE(edge.holds);
  EXPECT_NEAR(edge.margin, 0.0, 1e-14);
}

TEST(Relations, EpsilonValidation) {
  EXPECT_THROW(hh_relative(l2, bx, by, -0.1), InvalidArgument);
  EXPECT_THROW(hh_relative(l2, bx, by, 1.5), InvalidArgument);
  EXPECT_NO_THROW(eps_inner(i2, bx, by, 2.0));
  EXPECT_THROW(evaluate(RelationId::hh_relative, l2, bx, by, std::nullopt), InvalidArgument);
  EXPECT_THROW(hh_exact(l2, Vector{1.0, 0.0}, Vector{1.0, 0.0, 0.0}), DimensionMismatch);
}

TEST(Relations, SymmetryNegationAndCollapse) {
  for (std::size_t dim = 2; dim <= 3; ++dim) {
    auto rng = make_rng(6, "rel-props", dim);
    for (const auto& spec : all_specs(rng, dim)) {
      for (int k = 0; k < 30; ++k) {
        const Vector x = random_vector(rng, dim);
        const Vector y = random_vector(rng, dim);
        const double eps = uniform(rng, 0.0, 0.9);
        for (auto id : {RelationId::hh_relative, RelationId::hh_absolute}) {
          const bool h = evaluate(id, spec, x, y, eps).holds;
          EXPECT_EQ(h, evaluate(id, spec, y, x, eps).holds);
          EXPECT_EQ(h, evaluate(id, spec, x, -y, eps).holds);
          EXPECT_EQ(h, evaluate(id, spec, -x, -y, eps).holds);
        }
        const bool exact = hh_exact(spec, x, y).holds;
        EXPECT_EQ(exact, hh_relative(spec, x, y, 0.0).holds);
        EXPECT_EQ(exact, hh_absolute(spec, x, y, 0.0).holds);
        // absolute ⇒ relative, from 2‖x‖‖y‖ ≤ ‖x‖² + ‖y‖² and the closed forms.
        if (is_inner_product_norm(spec) && hh_absolute(spec, x, y, eps).holds) {
          EXPECT_TRUE(hh_relative(spec, x, y, eps).holds);
        }
      }
    }
  }
}

TEST(Relations, MarginsAreMonotoneInEpsilon) {
  auto rng = make_rng(7, "rel-mono", 0);
  const NormSpec ip = InnerProductNorm{random_spd(rng, 3)};
  for (int k = 0; k < 100; ++k) {
    const Vector x = random_vector(rng, 3);
    const Vector y = random_vector(rng, 3);
    const double e1 = uniform(rng, 0.0, 0.9);
    const double e2 = uniform(rng, e1, 0.95);
    for (auto id : {RelationId::eps_inner, RelationId::hh_relative, RelationId::hh_absolute,
                    RelationId::dragomir_birkhoff, RelationId::chmielinski_birkhoff}) {
      EXPECT_LE(evaluate(id, ip, x, y, e1).margin, evaluate(id, ip, x, y, e2).margin + 1e-12) << to_string(id);
    }
  }
}

TEST(Relations, InnerProductCharacterizations) {
  for (std::size_t dim = 2; dim <= 4; ++dim) {
    auto rng = make_rng(8, "rel-ip", dim);
    for (int k = 0; k < 500; ++k) {
      const Matrix g = random_spd(rng, dim);
      const NormSpec spec = InnerProductNorm{g};
      const Vector x = random_vector(rng, dim);
      const Vector y = uniform(rng, 0.0, 1.0) * random_vector(rng, dim);
      const double eps = uniform(rng, 0.0, 0.99);
      const auto G = g.to_rows();
      const double xy = std::abs(oracle::quad_form(G, x.components(), y.components()));
      const double nx = oracle::ip_norm(G, x.components()), ny = oracle::ip_norm(G, y.components());
      const double abs_m = (eps * nx * ny - xy) / (nx * ny);
      const double rel_m = (eps * (nx * nx + ny * ny) - xy) / (nx * nx + ny * ny);
      if (std::abs(abs_m) > 1e-10) {
        EXPECT_EQ(hh_absolute(spec, x, y, eps).holds, abs_m > 0.0);
        EXPECT_EQ(eps_inner(spec, x, y, eps).holds, abs_m > 0.0);
      }
      if (std::abs(rel_m) > 1e-10) {
        EXPECT_EQ(hh_relative(spec, x, y, eps).holds, rel_m > 0.0);
      }
      if (eps <= 0.5 && eps_inner(spec, x, y, 2.0 * eps).holds) {
        EXPECT_TRUE(hh_relative(spec, x, y, eps).holds);
      }
      // Homogeneity of the absolute relation in inner-product norms.
      const double a = uniform(rng, 0.1, 10.0) * (k % 2 ? 1.0 : -1.0);
      const double b = uniform(rng, 0.1, 10.0);
      if (std::abs(abs_m) > 1e-10) {
        EXPECT_EQ(hh_absolute(spec, a * x, b * y, eps).holds, hh_absolute(spec, x, y, eps).holds);
      }
    }
  }
}

TEST(Relations, AbsoluteIntegralFormDecidesLikeEpsInnerNearTheBoundary) {
  // |⟨x,y⟩| = ε‖x‖‖y‖(1 + δ) with unequal lengths, δ just outside the default slack.
  const double eps = 0.3;
  for (double rho : {0.12, 1.0, 8.0}) {
    for (double delta : {-1e-9, 1e-9}) {
      const double c = eps * (1.0 + delta);
      const Vector x{1.0, 0.0}, y{rho * c, rho * std::sqrt(1.0 - c * c)};
      const bool truth = delta < 0.0;
      EXPECT_EQ(eps_inner(l2, x, y, eps).holds, truth) << rho << " " << delta;
      EXPECT_EQ(hh_absolute(l2, x, y, eps).holds, truth) << rho << " " << delta;
      EXPECT_EQ(hh_absolute(i2, x, y, eps).holds, truth) << rho << " " << delta;
    }
  }
}
