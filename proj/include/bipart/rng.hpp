#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace bipart {

using Rng = std::mt19937_64;

/// splitmix64 finalizer. Used to derive independent seed streams from a
/// master seed: mixing is deterministic and documented so experiment runs
/// are reproducible across machines.
inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t seed_stream(std::uint64_t master, std::uint64_t salt) {
  return mix_seed(master ^ mix_seed(salt));
}

template <class... Salts>
std::uint64_t seed_stream(std::uint64_t master, std::uint64_t salt,
                          Salts... rest) {
  return seed_stream(seed_stream(master, salt), rest...);
}

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

/// Unbiased uniform draw from [0, n). Hand-rolled (rejection on the top of
/// the 64-bit range) because std::uniform_int_distribution is
/// implementation-defined and would break byte-identical outputs across
/// standard libraries.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("uniform_below: n == 0");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform_real(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Fisher–Yates shuffle (same portability rationale as uniform_below).
template <class T>
void shuffle_vec(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(uniform_below(rng, i));
    std::swap(v[i - 1], v[j]);
  }
}

/// Poisson sample via Knuth's product-of-uniforms method; large means are
/// split recursively to avoid exp() underflow.
inline long poisson_sample(Rng& rng, double lambda) {
  if (!(lambda > 0)) throw std::invalid_argument("poisson_sample: lambda <= 0");
  long total = 0;
  while (lambda > 500.0) {
    // Poisson(a + b) = Poisson(a) + Poisson(b) for independent draws.
    double half = lambda / 2;
    total += poisson_sample(rng, half);
    lambda -= half;
  }
  const double limit = std::exp(-lambda);
  long k = -1;
  double prod = 1.0;
  do {
    ++k;
    prod *= uniform_real(rng);
  } while (prod > limit);
  return total + k;
}

}  // namespace bipart
