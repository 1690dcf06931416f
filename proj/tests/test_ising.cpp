#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <vector>

#include "daqgo/ising.hpp"
#include "daqgo/rng.hpp"

using namespace daqgo;

namespace {

// Independent energy evaluation written against the definition, not the
// library internals: E = -sum_{i<j} J_ij s_i s_j - sum_i h_i s_i.
double energy_by_hand(const IsingInstance& inst, const std::vector<int>& spins) {
  double e = 0.0;
  for (const auto& [pair, j] : inst.couplings())
    e -= j * spins[static_cast<std::size_t>(pair.first)] *
         spins[static_cast<std::size_t>(pair.second)];
  for (int i = 0; i < inst.n(); ++i) e -= inst.fields()[static_cast<std::size_t>(i)] * spins[static_cast<std::size_t>(i)];
  return e;
}

std::vector<int> spins_of_index(std::uint64_t u, int n) {
  std::vector<int> s(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) s[static_cast<std::size_t>(i)] = ((u >> i) & 1u) ? -1 : 1;
  return s;
}

}  // namespace

TEST_CASE("index encoding: qubit 0 is the least significant bit, bit 0 is spin +1") {
  CHECK(config_to_index({{1, 1, 1}}) == 0);
  CHECK(config_to_index({{-1, 1, 1}}) == 1);
  CHECK(config_to_index({{1, -1, 1}}) == 2);
  CHECK(config_to_index({{-1, -1, -1}}) == 7);
  for (std::uint64_t u = 0; u < 8; ++u) {
    SpinConfig c = index_to_config(u, 3);
    CHECK(c.spins == spins_of_index(u, 3));
    CHECK(config_to_index(c) == u);
  }
}

TEST_CASE("classical energy worked examples") {
  // Two-spin ferromagnet, no field: aligned -1, anti-aligned +1.
  IsingInstance ferro(2, {{{0, 1}, 1.0}}, {0.0, 0.0});
  CHECK(classical_energy(ferro, {{1, 1}}) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(classical_energy(ferro, {{-1, -1}}) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(classical_energy(ferro, {{1, -1}}) == doctest::Approx(1.0).epsilon(1e-15));

  // Field term only.
  IsingInstance fields(2, {}, {0.5, 1.0});
  CHECK(classical_energy(fields, {{1, 1}}) == doctest::Approx(-1.5).epsilon(1e-15));
  CHECK(classical_energy(fields, {{-1, 1}}) == doctest::Approx(-0.5).epsilon(1e-15));

  // Mixed case.
  IsingInstance mixed(3, {{{0, 1}, 1.0}, {{1, 2}, -0.5}}, {0.0, 0.25, 0.0});
  CHECK(classical_energy(mixed, {{1, 1, -1}}) ==
        doctest::Approx(-1.0 - 0.5 - 0.25).epsilon(1e-15));
}

TEST_CASE("classical energy matches an independent evaluation on random instances") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    IsingInstance inst = random_instance(4, seed);
    std::vector<double> table = energy_table(inst);
    REQUIRE(table.size() == 16);
    for (std::uint64_t u = 0; u < 16; ++u) {
      double direct = energy_by_hand(inst, spins_of_index(u, 4));
      CHECK(table[u] == doctest::Approx(direct).epsilon(1e-14));
      CHECK(classical_energy(inst, index_to_config(u, 4)) ==
            doctest::Approx(direct).epsilon(1e-14));
    }
  }
}

TEST_CASE("global spin flip preserves energy when fields vanish") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    IsingInstance with_fields = random_instance(5, seed);
    IsingInstance inst(5, with_fields.couplings(), std::vector<double>(5, 0.0));
    for (std::uint64_t u = 0; u < 32; ++u) {
      std::vector<int> s = spins_of_index(u, 5);
      std::vector<int> f = s;
      for (int& x : f) x = -x;
      CHECK(classical_energy(inst, {s}) ==
            doctest::Approx(classical_energy(inst, {f})).epsilon(1e-14));
    }
  }
}

TEST_CASE("brute force ground: ferromagnet pair is doubly degenerate") {
  IsingInstance ferro(2, {{{0, 1}, 1.0}}, {0.0, 0.0});
  GroundStateSet g = brute_force_ground(ferro);
  CHECK(g.energy == doctest::Approx(-1.0).epsilon(1e-15));
  REQUIRE(g.configs.size() == 2);
  CHECK(g.configs[0].spins == std::vector<int>{1, 1});
  CHECK(g.configs[1].spins == std::vector<int>{-1, -1});
  CHECK(g.contains({{1, 1}}));
  CHECK(g.contains({{-1, -1}}));
  CHECK(!g.contains({{1, -1}}));
}

TEST_CASE("brute force ground: a field breaks the tie") {
  IsingInstance inst(2, {{{0, 1}, 1.0}}, {0.1, 0.0});
  GroundStateSet g = brute_force_ground(inst);
  CHECK(g.energy == doctest::Approx(-1.1).epsilon(1e-12));
  REQUIRE(g.configs.size() == 1);
  CHECK(g.configs[0].spins == std::vector<int>{1, 1});
}

TEST_CASE("brute force ground agrees with an exhaustive rescan") {
  for (std::uint64_t seed = 10; seed < 16; ++seed) {
    IsingInstance inst = random_instance(3, seed);
    GroundStateSet g = brute_force_ground(inst);
    double best = std::numeric_limits<double>::infinity();
    std::vector<std::uint64_t> arg;
    for (std::uint64_t u = 0; u < 8; ++u) {
      double e = energy_by_hand(inst, spins_of_index(u, 3));
      if (e < best) {
        best = e;
        arg = {u};
      } else if (e == best) {
        arg.push_back(u);
      }
    }
    CHECK(g.energy == doctest::Approx(best).epsilon(1e-14));
    REQUIRE(g.configs.size() == arg.size());
    for (std::size_t k = 0; k < arg.size(); ++k)
      CHECK(config_to_index(g.configs[k]) == arg[k]);
    // Ground energy is a lower bound over arbitrary probes.
    Rng probe(seed * 17 + 1);
    for (int r = 0; r < 200; ++r) {
      std::uint64_t u = probe.below(8);
      CHECK(energy_by_hand(inst, spins_of_index(u, 3)) >= g.energy - 1e-12);
    }
  }
}

TEST_CASE("degeneracy tolerance groups nearby levels") {
  IsingInstance inst(2, {{{0, 1}, 1.0}}, {1e-12, 0.0});
  CHECK(brute_force_ground(inst).configs.size() == 1);
  CHECK(brute_force_ground(inst, 1e-9).configs.size() == 2);
}

TEST_CASE("spectral gap worked examples") {
  IsingInstance ferro(2, {{{0, 1}, 1.0}}, {0.0, 0.0});
  CHECK(spectral_gap(ferro) == doctest::Approx(2.0).epsilon(1e-15));

  // Spectrum of the uniform-field pair is {-3, 1, 1, 1}: aligned-up costs -3,
  // every other configuration costs +1, so the gap is 4.
  IsingInstance pair(2, {{{0, 1}, 1.0}}, {1.0, 1.0});
  CHECK(spectral_gap(pair) == doctest::Approx(4.0).epsilon(1e-15));

  IsingInstance flat(2, {}, {0.0, 0.0});
  CHECK(std::isinf(spectral_gap(flat)));
}

TEST_CASE("spectral gap is positive for a generic random instance") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    IsingInstance inst = random_instance(4, seed);
    double gap = spectral_gap(inst);
    CHECK(gap > 0.0);
    CHECK(std::isfinite(gap));
  }
}

TEST_CASE("random_instance is deterministic in the seed and fully connected") {
  IsingInstance a = random_instance(5, 31);
  IsingInstance b = random_instance(5, 31);
  IsingInstance c = random_instance(5, 32);
  CHECK(a == b);
  CHECK(!(a == c));
  CHECK(a.couplings().size() == 10);
  CHECK(a.fields().size() == 5);
  for (const auto& [pair, j] : a.couplings()) {
    CHECK(pair.first < pair.second);
    CHECK(j != 0.0);
  }
}

TEST_CASE("random_instance draws have the advertised spread") {
  // J and h are N(0, 1/(n-1)); at n = 9 the standard deviation is 1/8 exactly.
  const int n = 9;
  double sum = 0.0, sum2 = 0.0;
  std::size_t count = 0;
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    IsingInstance inst = random_instance(n, seed);
    for (const auto& [pair, j] : inst.couplings()) {
      sum += j;
      sum2 += j * j;
      ++count;
    }
    for (double h : inst.fields()) {
      sum += h;
      sum2 += h * h;
      ++count;
    }
  }
  REQUIRE(count == 300 * (36 + 9));
  double mean = sum / static_cast<double>(count);
  double sd = std::sqrt(sum2 / static_cast<double>(count) - mean * mean);
  CHECK(std::abs(mean) < 0.01);
  CHECK(sd == doctest::Approx(1.0 / 8.0).epsilon(0.05));

  // At n = 2 the variance is 1.
  sum = sum2 = 0.0;
  count = 0;
  for (std::uint64_t seed = 1; seed <= 3000; ++seed) {
    IsingInstance inst = random_instance(2, seed);
    sum += inst.coupling(0, 1);
    sum2 += inst.coupling(0, 1) * inst.coupling(0, 1);
    ++count;
  }
  double sd2 = std::sqrt(sum2 / static_cast<double>(count) - (sum / static_cast<double>(count)) * (sum / static_cast<double>(count)));
  CHECK(sd2 == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("coupling lookup is symmetric and zero off the stored pairs") {
  IsingInstance inst(3, {{{0, 2}, 0.75}}, {0.0, 0.0, 0.0});
  CHECK(inst.coupling(0, 2) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(inst.coupling(2, 0) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(inst.coupling(0, 1) == 0.0);
  CHECK(inst.coupling(1, 2) == 0.0);
}

TEST_CASE("instance validation rejects malformed input") {
  CHECK_THROWS_AS(IsingInstance(0, {}, {}), std::invalid_argument);
  CHECK_THROWS_AS(IsingInstance(2, {}, {0.0}), std::invalid_argument);
  CHECK_THROWS_AS(IsingInstance(2, {{{0, 0}, 1.0}}, {0.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(IsingInstance(2, {{{1, 0}, 1.0}}, {0.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(IsingInstance(2, {{{0, 2}, 1.0}}, {0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("json round trip preserves the instance") {
  IsingInstance inst = random_instance(4, 77);
  nlohmann::json j = inst.to_json();
  IsingInstance back = IsingInstance::from_json(j);
  CHECK(back == inst);

  IsingInstance tiny(2, {{{0, 1}, -0.5}}, {0.25, 0.0});
  CHECK(IsingInstance::from_json(tiny.to_json()) == tiny);
}

TEST_CASE("uniform builder lays out every pair") {
  IsingInstance u = IsingInstance::uniform(4, 1.0, 0.5);
  CHECK(u.couplings().size() == 6);
  for (const auto& [pair, j] : u.couplings()) CHECK(j == 1.0);
  for (double h : u.fields()) CHECK(h == 0.5);
  GroundStateSet g = brute_force_ground(u);
  REQUIRE(g.configs.size() == 1);
  CHECK(g.configs[0].spins == std::vector<int>{1, 1, 1, 1});
}
