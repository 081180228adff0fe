#include "sparsepresence/rng.hpp"

#include <cmath>

#include "sparsepresence/errors.hpp"

namespace spres {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, RngStream stream,
                          std::uint64_t salt) {
  std::uint64_t state = seed;
  std::uint64_t mixed = splitmix64(state);
  state = mixed ^ (static_cast<std::uint64_t>(stream) * 0x9E3779B97F4A7C15ull);
  mixed = splitmix64(state);
  state = mixed ^ (salt * 0xBF58476D1CE4E5B9ull);
  return splitmix64(state);
}

Rng::Rng(std::uint64_t seed, RngStream stream, std::uint64_t salt)
    : engine_(derive_seed(seed, stream, salt)) {}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * f;
  has_spare_ = true;
  return u * f;
}

int Rng::uniform_int(int bound) {
  if (bound <= 0) throw ArgumentError("uniform_int: bound must be positive");
  const std::uint64_t n = static_cast<std::uint64_t>(bound);
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return static_cast<int>(x % n);
}

std::vector<int> Rng::sample_distinct(int k, int bound) {
  if (k < 0) throw ArgumentError("sample_distinct: k must be non-negative");
  if (k > bound)
    throw ArgumentError("sample_distinct: k exceeds population size");
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(k));
  std::vector<bool> taken(static_cast<std::size_t>(bound), false);
  while (static_cast<int>(out.size()) < k) {
    const int x = uniform_int(bound);
    if (!taken[static_cast<std::size_t>(x)]) {
      taken[static_cast<std::size_t>(x)] = true;
      out.push_back(x);
    }
  }
  return out;
}

}  // namespace spres
