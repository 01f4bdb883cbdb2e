#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "orthokit/vector.hpp"

namespace orthokit {

using Rng = std::mt19937_64;

/// Mixes (seed, stream name, index) into an independent 64-bit seed, so any
/// trial can be regenerated without replaying the ones before it.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view stream, std::uint64_t index);

Rng make_rng(std::uint64_t seed, std::string_view stream, std::uint64_t index);

double uniform(Rng& rng, double lo, double hi);
double log_uniform(Rng& rng, double lo, double hi);
std::size_t uniform_index(Rng& rng, std::size_t n);
std::vector<double> normal_components(Rng& rng, std::size_t n);

/// Standard-normal vector, never exactly zero.
Vector random_vector(Rng& rng, std::size_t n);

/// Random symmetric positive definite matrix with eigenvalues in roughly
/// [0.2, 5]: Q diag(λ) Qᵀ with Q from Gram–Schmidt on a Gaussian matrix.
Matrix random_spd(Rng& rng, std::size_t n);

/// Random orthogonal matrix (Gram–Schmidt on a Gaussian matrix).
Matrix random_orthogonal(Rng& rng, std::size_t n);

}  // namespace orthokit
