#include "lpbdd/sparsify.hpp"

#include <stdexcept>

namespace lpbdd {

namespace {

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e != 0) {
    if (e & 1U) r = mul_mod(r, a, m);
    a = mul_mod(a, a, m);
    e >>= 1U;
  }
  return r;
}

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t q) {
  // q is prime and a != 0 mod q
  return pow_mod(a, q - 2, q);
}

constexpr std::uint64_t kMillerRabinLimit = 341'550'071'728'321ULL;

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  if (n >= kMillerRabinLimit) throw std::out_of_range("is_prime: argument beyond the deterministic Miller-Rabin range");
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1U) == 0) d >>= 1U, ++s;
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t choose_prime(std::uint64_t t, PrimePolicy policy, Rng& rng) {
  if (t == 0) throw std::invalid_argument("choose_prime: T must be positive");
  if (t > kMillerRabinLimit / 20) throw std::out_of_range("choose_prime: T too large");
  const std::uint64_t lo = 10 * t, hi = 20 * t;
  if (policy == PrimePolicy::kSmallest) {
    for (std::uint64_t q = lo; q <= hi; ++q)
      if (is_prime(q)) return q;
    throw std::logic_error("choose_prime: no prime in [10T, 20T]");
  }
  std::vector<std::uint64_t> primes;
  for (std::uint64_t q = lo; q <= hi; ++q)
    if (is_prime(q)) primes.push_back(q);
  std::uniform_int_distribution<std::size_t> pick(0, primes.size() - 1);
  return primes[pick(rng)];
}

SparsifierDraw sample_draw(std::uint64_t q, std::size_t n, Rng& rng) {
  if (q < 2) throw std::invalid_argument("sample_draw: q must be prime");
  std::uniform_int_distribution<std::uint64_t> coord(0, q - 1);
  SparsifierDraw draw{q, std::vector<std::uint64_t>(n), std::vector<std::uint64_t>(n), rng.seed()};
  for (auto& zi : draw.z) zi = coord(rng);
  for (auto& ci : draw.c) ci = coord(rng);
  return draw;
}

IntMatrix coefficient_sublattice(std::span<const std::uint64_t> z, std::uint64_t q) {
  const std::size_t n = z.size();
  IntMatrix u = IntMatrix::identity(n);
  std::size_t pivot = n;
  for (std::size_t i = 0; i < n; ++i)
    if (z[i] % q != 0) {
      pivot = i;
      break;
    }
  if (pivot == n) return u;
  const std::uint64_t inv = inverse_mod(z[pivot] % q, q);
  u(pivot, pivot) = Int(q);
  for (std::size_t j = 0; j < n; ++j) {
    if (j == pivot) continue;
    u(pivot, j) = -Int(mul_mod(z[j] % q, inv, q));
  }
  return u;
}

Basis sparsify_basis(const Basis& basis, const SparsifierDraw& draw) {
  if (draw.z.size() != basis.rank()) throw std::invalid_argument("sparsify_basis: draw has the wrong length");
  return Basis(basis.matrix() * to_rational(coefficient_sublattice(draw.z, draw.q)));
}

Vector shift_target(std::span<const Rat> target, const Basis& basis, const SparsifierDraw& draw) {
  if (draw.c.size() != basis.rank()) throw std::invalid_argument("shift_target: draw has the wrong length");
  IntVector c(draw.c.begin(), draw.c.end());
  return add(target, basis.combine(c));
}

}  // namespace lpbdd
