#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tauforge/report.hpp"

namespace tauforge {

struct ScanConfig {
  std::size_t max_order = 16;
  std::size_t random_taus = 0;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
  std::optional<std::filesystem::path> cache_dir;
  SearchBudget budget;
};

/// Upper bound on --max-order.
inline constexpr std::size_t kMaxScanOrder = 64;

struct ScanInstance {
  std::string ring;
  std::string tau;
};

/// Corpus rings in order, each with the standard families then the seeded
/// random relations.
std::vector<ScanInstance> scan_instances(ScanConfig const& cfg);

/// The verify document of one instance (also what the cache stores).
Json instance_document(ScanInstance const& inst, SearchBudget const& budget);

/// Cache file name for an instance: ring, tau hash, budget hash.
std::string cache_key(ScanInstance const& inst, SearchBudget const& budget);

struct ScanResult {
  /// Full "scan" document; independent of thread count and cache state.
  Json document;
  std::size_t violated = 0;
  std::size_t skipped = 0;
  std::size_t cache_hits = 0;
};

ScanResult run_scan(ScanConfig const& cfg);

}  // namespace tauforge
