#pragma once

#include <array>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tauforge/ring.hpp"
#include "tauforge/types.hpp"

namespace tauforge {

/// A symmetric relation on R#. Stored as a dense n x n matrix so membership is
/// a single lookup; pairs touching zero or a unit are rejected on insert.
class TauRelation {
 public:
  TauRelation(std::shared_ptr<FiniteRing const> ring, std::string label);

  void add_pair(ElementId a, ElementId b);

  bool related(ElementId a, ElementId b) const noexcept {
    return matrix_[idx(a) * ring_->size() + idx(b)] != 0;
  }
  bool self_related(ElementId a) const noexcept { return related(a, a); }

  /// Unordered pairs (a <= b), ascending.
  std::vector<std::pair<ElementId, ElementId>> pairs() const;
  std::size_t pair_count() const noexcept { return pair_count_; }

  FiniteRing const& ring() const noexcept { return *ring_; }
  std::shared_ptr<FiniteRing const> const& ring_ptr() const noexcept { return ring_; }
  std::string const& label() const noexcept { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  bool is_empty() const noexcept { return pair_count_ == 0; }
  bool is_full() const noexcept;

  /// `pairs:{(a,b),...}` in canonical indices; stable across runs.
  std::string canonical_spec() const;

 private:
  std::shared_ptr<FiniteRing const> ring_;
  std::string label_;
  std::vector<char> matrix_;
  std::size_t pair_count_ = 0;
};

/// Tau-spec grammar: `full` | `empty` | `zero` | `comax` | `subset:{e,...}` |
/// `modideal:{g,...}` | `pairs:{(a,b),...}`.
TauRelation build_tau(std::shared_ptr<FiniteRing const> ring, std::string_view spec);

TauRelation full_tau(std::shared_ptr<FiniteRing const> ring);

struct TauProfile {
  bool multiplicative = false;
  bool divisive = false;
  /// Indexed by AssocKind.
  std::array<bool, 3> associate_preserving{};
  Verdict combinable;
  Verdict refinable;
};

/// Multiplicative, divisive and associate-preserving by exhaustion over
/// element triples. A consequent whose subject leaves R# is vacuous.
TauProfile analyze_tau_exact(TauRelation const& tau);

/// analyze_tau_exact plus the bounded refinable / combinable checks.
TauProfile analyze_tau(TauRelation const& tau, SearchBudget const& budget);

/// Searches one-step refinements of every factorization up to
/// budget.length_cap. Decided True on structural shortcuts (divisive, empty,
/// full), False with a re-validated witness, otherwise TrueUpToBound.
Verdict check_refinable(TauRelation const& tau, SearchBudget const& budget);

/// Merges every pair of factors in every factorization up to
/// budget.length_cap. Merges whose product leaves R# carry no obligation and
/// are counted in the verdict note.
Verdict check_combinable(TauRelation const& tau, SearchBudget const& budget);

}  // namespace tauforge
