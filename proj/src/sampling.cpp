#include "orthokit/sampling.hpp"

#include <cmath>

namespace orthokit {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::string_view stream, std::uint64_t index) {
  return splitmix64(splitmix64(splitmix64(seed) ^ fnv1a(stream)) ^ index);
}

Rng make_rng(std::uint64_t seed, std::string_view stream, std::uint64_t index) {
  return Rng(derive_seed(seed, stream, index));
}

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

double log_uniform(Rng& rng, double lo, double hi) { return std::exp(uniform(rng, std::log(lo), std::log(hi))); }

std::size_t uniform_index(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

std::vector<double> normal_components(Rng& rng, std::size_t n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> v(n);
  for (double& c : v) c = normal(rng);
  return v;
}

Vector random_vector(Rng& rng, std::size_t n) {
  for (;;) {
    auto v = normal_components(rng, n);
    if (dot(v, v) > 0.0) return Vector(std::move(v));
  }
}

Matrix random_orthogonal(Rng& rng, std::size_t n) {
  Matrix q(n, n);
  std::vector<std::vector<double>> cols;
  while (cols.size() < n) {
    auto v = normal_components(rng, n);
    for (const auto& c : cols) {
      const double proj = dot(v, c);
      for (std::size_t i = 0; i < n; ++i) v[i] -= proj * c[i];
    }
    const double len = std::sqrt(dot(v, v));
    if (len < 1e-8) continue;
    for (double& c : v) c /= len;
    cols.push_back(std::move(v));
  }
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) q(i, j) = cols[j][i];
  return q;
}

Matrix random_spd(Rng& rng, std::size_t n) {
  const Matrix q = random_orthogonal(rng, n);
  std::vector<double> lambda(n);
  for (double& l : lambda) l = log_uniform(rng, 0.2, 5.0);
  Matrix g = q * Matrix::diagonal(lambda) * q.transpose();
  // exact symmetry
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) g(j, i) = g(i, j);
  return g;
}

}  // namespace orthokit
