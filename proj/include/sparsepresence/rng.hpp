#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace spres {

// Every stochastic artifact (dictionary, amplitudes, noise, novel atom,
// active-set choice) draws from its own substream derived from the caller's
// seed, so enabling one artifact never shifts the draws of another.
enum class RngStream : std::uint64_t {
  dictionary = 1,
  amplitudes = 2,
  noise = 3,
  novel_atom = 4,
  active_set = 5,
};

// One step of the splitmix64 sequence; advances state.
std::uint64_t splitmix64(std::uint64_t& state);

// Derives the substream seed for (seed, stream, salt) via splitmix64 mixing.
std::uint64_t derive_seed(std::uint64_t seed, RngStream stream,
                          std::uint64_t salt = 0);

// Seedable generator with a fixed engine (mt19937_64) and an explicit polar
// Gaussian transform, so a given (seed, stream, salt) yields the same draw
// sequence on every platform with IEEE doubles.
class Rng {
 public:
  Rng(std::uint64_t seed, RngStream stream, std::uint64_t salt = 0);

  // Uniform on [0, 1), 53-bit resolution.
  double uniform();

  // Standard normal via the Marsaglia polar method (sqrt/log only, no trig).
  double gaussian();

  // Uniform integer on [0, bound); rejection sampled, no modulo bias.
  // bound must be positive.
  int uniform_int(int bound);

  // k distinct integers from [0, bound) in draw order.
  std::vector<int> sample_distinct(int k, int bound);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace spres
