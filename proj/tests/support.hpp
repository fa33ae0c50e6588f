#pragma once

#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "tauforge/corpus.hpp"
#include "tauforge/ring.hpp"
#include "tauforge/tau.hpp"

namespace tauforge {
inline std::ostream& operator<<(std::ostream& os, ElementId e) { return os << idx(e); }
inline std::ostream& operator<<(std::ostream& os, std::vector<ElementId> const& v) {
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << idx(v[i]);
  return os << ']';
}
}  // namespace tauforge

namespace tftest {

inline std::shared_ptr<tauforge::FiniteRing const> ring(std::string const& spec) {
  return std::make_shared<tauforge::FiniteRing const>(tauforge::parse_ring_spec(spec));
}

inline tauforge::TauRelation tau(std::string const& ring_spec, std::string const& tau_spec) {
  return tauforge::build_tau(ring(ring_spec), tau_spec);
}

inline tauforge::ElementId el(tauforge::FiniteRing const& r, std::string const& text) {
  return tauforge::parse_element(r, text);
}

/// Small instances: every corpus ring up to max_order with the standard
/// families and a few random relations.
inline std::vector<tauforge::TauRelation> small_corpus(std::size_t max_order, std::size_t randoms) {
  std::vector<tauforge::TauRelation> out;
  for (auto const& spec : tauforge::ring_corpus(max_order)) {
    auto r = ring(spec);
    for (auto const& fam : tauforge::kStandardTauFamilies) out.push_back(tauforge::build_tau(r, fam));
    for (std::size_t i = 0; i < randoms; ++i)
      out.push_back(tauforge::random_tau(r, tauforge::random_tau_seed(7, spec, i)));
  }
  return out;
}

}  // namespace tftest
