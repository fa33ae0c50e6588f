#include "tauforge/scan.hpp"

#include <atomic>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "tauforge/corpus.hpp"

namespace tauforge {

namespace {

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::optional<Json> read_cache(std::filesystem::path const& file, ScanInstance const& inst) {
  std::ifstream in(file);
  if (!in) return std::nullopt;
  auto doc = Json::parse(in, nullptr, false);
  // Anything unreadable or foreign is recomputed and overwritten.
  if (doc.is_discarded() || !doc.is_object() || !doc.contains("diagram") ||
      doc.value("schema_version", 0) != kReportSchemaVersion ||
      doc["instance"].value("ring", "") != inst.ring || doc["instance"].value("tau", "") != inst.tau)
    return std::nullopt;
  return doc;
}

void write_cache(std::filesystem::path const& file, Json const& doc) {
  std::filesystem::create_directories(file.parent_path());
  std::ostringstream id;
  id << std::this_thread::get_id();
  auto tmp = file;
  tmp += ".tmp." + id.str();
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << dump_canonical(doc);
    if (!out) throw std::runtime_error("cannot write cache file " + tmp.string());
  }
  std::filesystem::rename(tmp, file);
}

}  // namespace

std::vector<ScanInstance> scan_instances(ScanConfig const& cfg) {
  if (cfg.max_order > kMaxScanOrder)
    throw SpecError("max-order " + std::to_string(cfg.max_order) + " exceeds " + std::to_string(kMaxScanOrder));
  std::vector<ScanInstance> out;
  for (auto const& spec : ring_corpus(cfg.max_order)) {
    for (auto const& fam : kStandardTauFamilies) out.push_back({spec, fam});
    for (std::size_t i = 0; i < cfg.random_taus; ++i)
      out.push_back({spec, "random:" + std::to_string(random_tau_seed(cfg.seed, spec, i))});
  }
  return out;
}

Json instance_document(ScanInstance const& inst, SearchBudget const& budget) {
  auto ring = std::make_shared<FiniteRing const>(parse_ring_spec(inst.ring));
  auto tau = build_tau(ring, inst.tau);
  PropertyChecker pc(tau, budget);
  auto doc = document("verify", &tau, inst.ring, budget);
  doc["diagram"] = diagram_report_json(pc.verify());
  return doc;
}

std::string cache_key(ScanInstance const& inst, SearchBudget const& budget) {
  return inst.ring + "__" + hex(fnv1a(inst.tau)) + "__" + hex(fnv1a(budget_json(budget).dump())) + ".json";
}

ScanResult run_scan(ScanConfig const& cfg) {
  auto const instances = scan_instances(cfg);
  std::vector<Json> docs(instances.size());
  std::vector<char> hit(instances.size(), 0);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};

  auto worker = [&] {
    try {
      for (std::size_t i; !failed && (i = next++) < instances.size();) {
        auto const& inst = instances[i];
        if (cfg.cache_dir) {
          auto file = *cfg.cache_dir / cache_key(inst, cfg.budget);
          if (auto cached = read_cache(file, inst)) {
            docs[i] = std::move(*cached);
            hit[i] = 1;
            continue;
          }
          docs[i] = instance_document(inst, cfg.budget);
          write_cache(file, docs[i]);
        } else {
          docs[i] = instance_document(inst, cfg.budget);
        }
      }
    } catch (...) {
      // First failure wins; the others stop at their next instance.
      if (!failed.exchange(true)) failure = std::current_exception();
    }
  };
  std::size_t const n = std::max<std::size_t>(1, std::min(cfg.threads, instances.size()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  // Single-owner merge in canonical instance order.
  ScanResult res;
  Json rows = Json::array(), violated = Json::array(), skipped = Json::array();
  Json stats = Json::object();
  for (std::size_t i = 0; i < docs.size(); ++i) {
    auto const& d = docs[i].at("diagram");
    auto const instance = d.at("instance").get<std::string>();
    rows.push_back(Json{{"instance", instance}, {"summary", d.at("summary")}});
    for (auto const& a : d.at("arrows")) {
      auto const status = a.at("status").get<std::string>();
      auto& s = stats[a.at("name").get<std::string>()];
      s[status] = (s.contains(status) ? s[status].get<std::size_t>() : 0) + 1;
      if (status == "violated") {
        Json v{{"instance", instance}, {"arrow", a.at("name")}};
        if (a.contains("counterexample")) v["counterexample"] = a.at("counterexample");
        violated.push_back(std::move(v));
      } else if (status == "skipped-undecided") {
        skipped.push_back(Json{{"instance", instance}, {"arrow", a.at("name")}});
      }
    }
    res.cache_hits += hit[i];
  }
  res.violated = violated.size();
  res.skipped = skipped.size();
  res.document = document("scan", nullptr, "corpus", cfg.budget);
  res.document["scan"] = Json{{"max_order", cfg.max_order},
                              {"random_taus", cfg.random_taus},
                              {"seed", cfg.seed},
                              {"instances", std::move(rows)},
                              {"arrow_stats", std::move(stats)},
                              {"violated", std::move(violated)},
                              {"skipped", std::move(skipped)},
                              {"totals", Json{{"instances", instances.size()},
                                              {"violated", res.violated},
                                              {"skipped-undecided", res.skipped}}}};
  return res;
}

}  // namespace tauforge
