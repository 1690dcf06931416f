#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace daqgo {

// Spin values are +1 or -1.  Basis-state convention used everywhere: basis
// index u encodes qubit i in bit i (qubit 0 = least significant bit), and
// bit 0 means spin +1, bit 1 means spin -1, i.e. s_i = 1 - 2*bit_i(u).
struct SpinConfig {
  std::vector<int> spins;

  bool operator==(const SpinConfig&) const = default;
};

std::uint64_t config_to_index(const SpinConfig& config);
SpinConfig index_to_config(std::uint64_t index, int n);

// Pairwise-coupled spin instance with local fields.  Couplings are keyed by
// (i, j) with i < j; absent pairs couple with strength zero.
class IsingInstance {
 public:
  IsingInstance(int n, std::map<std::pair<int, int>, double> couplings,
                std::vector<double> fields);

  int n() const { return n_; }
  const std::map<std::pair<int, int>, double>& couplings() const { return couplings_; }
  const std::vector<double>& fields() const { return fields_; }
  double coupling(int i, int j) const;

  // All couplings J, all fields h.
  static IsingInstance uniform(int n, double j, double h);

  nlohmann::json to_json() const;
  static IsingInstance from_json(const nlohmann::json& j);

  bool operator==(const IsingInstance&) const = default;

 private:
  int n_;
  std::map<std::pair<int, int>, double> couplings_;
  std::vector<double> fields_;
};

struct GroundStateSet {
  double energy;
  std::vector<SpinConfig> configs;  // ascending basis index

  bool contains(const SpinConfig& config) const;
};

double classical_energy(const IsingInstance& inst, const SpinConfig& config);

// Energy of every basis state, indexed by basis index; size 2^n.
std::vector<double> energy_table(const IsingInstance& inst);

// Exhaustive ground-state search, n <= 24.  Two energies are treated as
// equal when |E - E_min| <= degeneracy_rtol * max(1, |E_min|); the default
// 0 keeps only exact floating-point ties, which is right for instances
// built from arithmetic done in this process.
GroundStateSet brute_force_ground(const IsingInstance& inst,
                                  double degeneracy_rtol = 0.0);

// Gap from the ground energy to the lowest strictly larger energy of the
// classical spectrum.  Infinity when all 2^n energies coincide.
double spectral_gap(const IsingInstance& inst);

// Fully connected instance with J_ij and h_i drawn i.i.d. normal with mean 0
// and standard deviation 1/(n-1).  Draw order: J_ij in lexicographic (i, j)
// order, then h_i for i = 0..n-1, all from the stream seeded with `seed`.
IsingInstance random_instance(int n, std::uint64_t seed);

}  // namespace daqgo
