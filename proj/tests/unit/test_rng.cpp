#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "sparsepresence/errors.hpp"
#include "sparsepresence/rng.hpp"

using namespace spres;

TEST_CASE("splitmix64 is a deterministic sequence") {
  std::uint64_t s1 = 42, s2 = 42;
  for (int i = 0; i < 8; ++i) CHECK(splitmix64(s1) == splitmix64(s2));
  CHECK(s1 == s2);
  // state advances
  std::uint64_t s3 = 42;
  const std::uint64_t first = splitmix64(s3);
  CHECK(splitmix64(s3) != first);
}

TEST_CASE("derive_seed separates streams and salts") {
  const std::uint64_t base = derive_seed(7, RngStream::dictionary);
  CHECK(base == derive_seed(7, RngStream::dictionary));
  CHECK(base != derive_seed(7, RngStream::amplitudes));
  CHECK(base != derive_seed(7, RngStream::noise));
  CHECK(base != derive_seed(8, RngStream::dictionary));
  CHECK(derive_seed(7, RngStream::novel_atom, 0) !=
        derive_seed(7, RngStream::novel_atom, 1));
}

TEST_CASE("identical construction replays the same draws") {
  Rng a(123, RngStream::amplitudes), b(123, RngStream::amplitudes);
  for (int i = 0; i < 100; ++i) CHECK(a.gaussian() == b.gaussian());
  Rng c(123, RngStream::amplitudes), d(123, RngStream::noise);
  bool same = true;
  for (int i = 0; i < 16; ++i) same = same && c.uniform() == d.uniform();
  CHECK_FALSE(same);
}

TEST_CASE("uniform stays in [0,1) with a sane mean") {
  Rng rng(9, RngStream::dictionary);
  double sum = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(std::abs(sum / n - 0.5) < 0.01);
}

TEST_CASE("gaussian moments match the standard normal") {
  Rng rng(5, RngStream::noise);
  const int n = 40000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double g = rng.gaussian();
    REQUIRE(std::isfinite(g));
    sum += g;
    sq += g * g;
  }
  const double mean = sum / n;
  const double var = sq / n - mean * mean;
  CHECK(std::abs(mean) < 0.02);
  CHECK(std::abs(var - 1.0) < 0.03);
}

TEST_CASE("uniform_int covers its range without bias artifacts") {
  Rng rng(11, RngStream::active_set);
  std::vector<int> counts(7, 0);
  for (int i = 0; i < 7000; ++i) {
    const int x = rng.uniform_int(7);
    REQUIRE(x >= 0);
    REQUIRE(x < 7);
    ++counts[static_cast<std::size_t>(x)];
  }
  for (int c : counts) CHECK(c > 700);  // expected 1000 each
  CHECK_THROWS_AS((void)rng.uniform_int(0), ArgumentError);
  CHECK_THROWS_AS((void)rng.uniform_int(-3), ArgumentError);
}

TEST_CASE("sample_distinct returns k distinct in-range values") {
  Rng rng(3, RngStream::active_set);
  const std::vector<int> s = rng.sample_distinct(10, 40);
  CHECK(s.size() == 10);
  std::set<int> uniq(s.begin(), s.end());
  CHECK(uniq.size() == 10);
  CHECK(*uniq.begin() >= 0);
  CHECK(*uniq.rbegin() < 40);

  // exhaustive draw is a permutation of the population
  Rng rng2(3, RngStream::active_set);
  std::vector<int> all = rng2.sample_distinct(6, 6);
  std::sort(all.begin(), all.end());
  CHECK(all == std::vector<int>{0, 1, 2, 3, 4, 5});

  CHECK_THROWS_AS((void)rng.sample_distinct(5, 4), ArgumentError);
  CHECK_THROWS_AS((void)rng.sample_distinct(-1, 4), ArgumentError);
  CHECK(rng.sample_distinct(0, 4).empty());
}
