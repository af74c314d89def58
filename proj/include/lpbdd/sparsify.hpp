#pragma once

// Random sparsification L' = {v in L : <z, B^+ v> = 0 mod q} and the
// matching target shift t' = t + B c.

#include <cstdint>
#include <span>
#include <vector>

#include "lpbdd/lattice.hpp"
#include "lpbdd/rng.hpp"

namespace lpbdd {

enum class PrimePolicy { kSmallest, kRandom };

/// The randomness consumed by one sparsification attempt.
struct SparsifierDraw {
  std::uint64_t q = 0;
  std::vector<std::uint64_t> z;
  std::vector<std::uint64_t> c;
  std::uint64_t seed = 0;

  friend bool operator==(const SparsifierDraw&, const SparsifierDraw&) = default;
};

/// Deterministic Miller-Rabin, exact for n < 3.3e14.
bool is_prime(std::uint64_t n);

/// A prime q with 10 T <= q <= 20 T.
std::uint64_t choose_prime(std::uint64_t t, PrimePolicy policy, Rng& rng);

/// z, c uniform and independent over Z_q^n; records rng.seed().
SparsifierDraw sample_draw(std::uint64_t q, std::size_t n, Rng& rng);

/// Basis of {x in Z^n : <z, x> = 0 mod q}.
IntMatrix coefficient_sublattice(std::span<const std::uint64_t> z, std::uint64_t q);

/// B * coefficient_sublattice(z, q), a basis of the sparsified lattice.
Basis sparsify_basis(const Basis& basis, const SparsifierDraw& draw);

/// t + B c with c read as an integer vector in [0, q).
Vector shift_target(std::span<const Rat> target, const Basis& basis, const SparsifierDraw& draw);

}  // namespace lpbdd
