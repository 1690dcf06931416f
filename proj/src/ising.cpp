#include "daqgo/ising.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "daqgo/rng.hpp"

namespace daqgo {

std::uint64_t config_to_index(const SpinConfig& config) {
  std::uint64_t u = 0;
  for (std::size_t i = 0; i < config.spins.size(); ++i) {
    const int s = config.spins[i];
    if (s != 1 && s != -1) throw std::invalid_argument("spin values must be +1 or -1");
    if (s == -1) u |= std::uint64_t{1} << i;
  }
  return u;
}

SpinConfig index_to_config(std::uint64_t index, int n) {
  if (n < 0 || n >= 64) throw std::invalid_argument("index_to_config: bad n");
  if (n < 64 && (index >> n) != 0) throw std::invalid_argument("index_to_config: index out of range");
  SpinConfig config;
  config.spins.resize(n);
  for (int i = 0; i < n; ++i) config.spins[i] = ((index >> i) & 1) ? -1 : 1;
  return config;
}

IsingInstance::IsingInstance(int n, std::map<std::pair<int, int>, double> couplings,
                             std::vector<double> fields)
    : n_(n), couplings_(std::move(couplings)), fields_(std::move(fields)) {
  if (n_ < 1) throw std::invalid_argument("IsingInstance: n must be positive");
  if (fields_.size() != static_cast<std::size_t>(n_))
    throw std::invalid_argument("IsingInstance: fields size must equal n");
  for (const auto& [key, value] : couplings_) {
    (void)value;
    const auto [i, j] = key;
    if (i < 0 || j < 0 || i >= n_ || j >= n_)
      throw std::invalid_argument("IsingInstance: coupling index out of range");
    if (i >= j) throw std::invalid_argument("IsingInstance: couplings must be keyed with i < j");
  }
}

double IsingInstance::coupling(int i, int j) const {
  if (i < 0 || j < 0 || i >= n_ || j >= n_)
    throw std::out_of_range("IsingInstance::coupling: index out of range");
  if (i == j) return 0.0;
  if (i > j) std::swap(i, j);
  const auto it = couplings_.find({i, j});
  return it == couplings_.end() ? 0.0 : it->second;
}

IsingInstance IsingInstance::uniform(int n, double j, double h) {
  std::map<std::pair<int, int>, double> couplings;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) couplings[{a, b}] = j;
  return IsingInstance(n, std::move(couplings), std::vector<double>(n, h));
}

nlohmann::json IsingInstance::to_json() const {
  nlohmann::json j;
  j["n"] = n_;
  j["couplings"] = nlohmann::json::array();
  for (const auto& [key, value] : couplings_)
    j["couplings"].push_back({key.first, key.second, value});
  j["fields"] = fields_;
  return j;
}

IsingInstance IsingInstance::from_json(const nlohmann::json& j) {
  const int n = j.at("n").get<int>();
  std::map<std::pair<int, int>, double> couplings;
  for (const auto& entry : j.at("couplings")) {
    if (!entry.is_array() || entry.size() != 3)
      throw std::invalid_argument("instance JSON: coupling entries must be [i, j, value]");
    const int a = entry[0].get<int>();
    const int b = entry[1].get<int>();
    if (couplings.count({a, b}))
      throw std::invalid_argument("instance JSON: duplicate coupling key");
    couplings[{a, b}] = entry[2].get<double>();
  }
  return IsingInstance(n, std::move(couplings), j.at("fields").get<std::vector<double>>());
}

bool GroundStateSet::contains(const SpinConfig& config) const {
  return std::find(configs.begin(), configs.end(), config) != configs.end();
}

double classical_energy(const IsingInstance& inst, const SpinConfig& config) {
  if (config.spins.size() != static_cast<std::size_t>(inst.n()))
    throw std::invalid_argument("classical_energy: config size must equal n");
  double e = 0.0;
  for (const auto& [key, j] : inst.couplings())
    e -= j * config.spins[key.first] * config.spins[key.second];
  for (int i = 0; i < inst.n(); ++i) e -= inst.fields()[i] * config.spins[i];
  return e;
}

std::vector<double> energy_table(const IsingInstance& inst) {
  const int n = inst.n();
  if (n > 24) throw std::length_error("energy_table: n > 24");
  const std::size_t dim = std::size_t{1} << n;
  // s_i = 1 - 2*bit_i.  Build incrementally: per-site field terms plus
  // pairwise terms, each evaluated with sign flips from the bits.
  std::vector<double> table(dim, 0.0);
  for (std::size_t u = 0; u < dim; ++u) {
    double e = 0.0;
    for (const auto& [key, j] : inst.couplings()) {
      const int si = ((u >> key.first) & 1) ? -1 : 1;
      const int sj = ((u >> key.second) & 1) ? -1 : 1;
      e -= j * si * sj;
    }
    for (int i = 0; i < n; ++i) {
      const int si = ((u >> i) & 1) ? -1 : 1;
      e -= inst.fields()[i] * si;
    }
    table[u] = e;
  }
  return table;
}

GroundStateSet brute_force_ground(const IsingInstance& inst, double degeneracy_rtol) {
  if (inst.n() > 24) throw std::length_error("brute_force_ground: n > 24");
  if (degeneracy_rtol < 0.0)
    throw std::invalid_argument("brute_force_ground: negative tolerance");
  const std::vector<double> table = energy_table(inst);
  const double e_min = *std::min_element(table.begin(), table.end());
  const double slack = degeneracy_rtol * std::max(1.0, std::abs(e_min));
  GroundStateSet ground;
  ground.energy = e_min;
  for (std::size_t u = 0; u < table.size(); ++u)
    if (table[u] - e_min <= slack) ground.configs.push_back(index_to_config(u, inst.n()));
  return ground;
}

double spectral_gap(const IsingInstance& inst) {
  const std::vector<double> table = energy_table(inst);
  const double e_min = *std::min_element(table.begin(), table.end());
  double next = std::numeric_limits<double>::infinity();
  for (const double e : table)
    if (e > e_min) next = std::min(next, e);
  return next - e_min;  // inf - finite stays inf
}

IsingInstance random_instance(int n, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("random_instance: n must be at least 2");
  Rng rng(seed);
  const double stddev = 1.0 / (n - 1);
  std::map<std::pair<int, int>, double> couplings;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) couplings[{i, j}] = rng.normal(0.0, stddev);
  std::vector<double> fields(n);
  for (int i = 0; i < n; ++i) fields[i] = rng.normal(0.0, stddev);
  return IsingInstance(n, std::move(couplings), std::move(fields));
}

}  // namespace daqgo
