#include "tauforge/corpus.hpp"

#include <random>

namespace tauforge {

std::vector<std::string> ring_corpus(std::size_t max_order) {
  std::vector<std::string> out;
  for (std::size_t n = 2; n <= max_order; ++n) out.push_back("Z" + std::to_string(n));
  for (std::size_t m = 2; m * m <= max_order; ++m)
    for (std::size_t k = m; m * k <= max_order; ++k)
      out.push_back("Z" + std::to_string(m) + "xZ" + std::to_string(k));
  return out;
}

TauRelation random_tau(std::shared_ptr<FiniteRing const> ring, std::uint64_t seed) {
  TauRelation tau(ring, "random:" + std::to_string(seed));
  std::mt19937_64 rng(seed);
  auto const& rs = ring->nonzero_nonunits();
  for (std::size_t i = 0; i < rs.size(); ++i)
    for (std::size_t j = i; j < rs.size(); ++j)
      if (rng() % 3 == 0) tau.add_pair(rs[i], rs[j]);
  return tau;
}

std::uint64_t random_tau_seed(std::uint64_t base, std::string const& ring_label, std::size_t i) {
  // FNV-1a over the label, mixed with the base seed and index.
  std::uint64_t h = 1469598103934665603ULL ^ base;
  for (unsigned char ch : ring_label) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  h ^= i + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

}  // namespace tauforge
