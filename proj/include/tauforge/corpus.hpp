#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "tauforge/tau.hpp"

namespace tauforge {

/// Z<n> for 2 <= n <= max_order, then Z<m>xZ<k> for 2 <= m <= k, m*k <= max_order.
std::vector<std::string> ring_corpus(std::size_t max_order);

/// The named families every scan runs.
inline std::vector<std::string> const kStandardTauFamilies = {"full", "empty", "zero", "comax"};

/// Each unordered pair of R# (self-pairs included) kept with probability 1/3.
/// Uses the raw mt19937_64 stream so the relation is identical on every
/// platform.
TauRelation random_tau(std::shared_ptr<FiniteRing const> ring, std::uint64_t seed);

/// Seed of the i-th random relation of a ring in a scan.
std::uint64_t random_tau_seed(std::uint64_t base, std::string const& ring_label, std::size_t i);

}  // namespace tauforge
