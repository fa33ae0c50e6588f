#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tauforge/engine.hpp"

namespace tauforge {

enum class AtomKind {
  Atomic,
  StronglyAtomic,
  MAtomic,
  UnrefinablyAtomic,
  VeryStronglyAtomic,
  Complete,
};

inline constexpr std::array<AtomKind, 5> kIrreducibleKinds = {
    AtomKind::Atomic, AtomKind::StronglyAtomic, AtomKind::MAtomic, AtomKind::UnrefinablyAtomic,
    AtomKind::VeryStronglyAtomic};
inline constexpr std::array<AtomKind, 6> kAllKinds = {
    AtomKind::Atomic,           AtomKind::StronglyAtomic,     AtomKind::MAtomic,
    AtomKind::UnrefinablyAtomic, AtomKind::VeryStronglyAtomic, AtomKind::Complete};

std::string_view to_string(AtomKind kind);

struct ElementClassification {
  ElementId element{};
  bool irreducible = false;
  bool strongly_irreducible = false;
  bool m_irreducible = false;
  bool unrefinably_irreducible = false;
  bool very_strongly_irreducible = false;
  /// One violating factorization per false flag, keyed by flag name.
  std::map<std::string, Factorization> witnesses;

  bool has(AtomKind kind) const;
};

struct FactorizationClassification {
  Factorization factorization;
  bool atomic = false;
  bool strongly_atomic = false;
  bool m_atomic = false;
  bool unrefinably_atomic = false;
  bool very_strongly_atomic = false;
  Verdict complete;

  bool has(AtomKind kind) const;
};

/// One constrained existence query issued while classifying an element. A
/// found factorization refutes `flag`.
struct ClassificationQuery {
  std::string flag;
  SearchConstraints constraints;
};

std::vector<ClassificationQuery> classification_queries(TauRelation const& tau, ElementId a);

ElementClassification classify_element(TauRelation const& tau, ElementId a,
                                       SearchBudget const& budget = {});

/// Negation of find_longer_refinement; witness.other is the longer refinement.
Verdict is_complete(TauRelation const& tau, Factorization const& f, SearchBudget const& budget = {});

/// Memoizing front end used by the property checks. Not thread-safe; use one
/// per instance.
class Classifier {
 public:
  Classifier(TauRelation const& tau, SearchBudget budget);
  Classifier(TauRelation&&, SearchBudget) = delete;

  TauRelation const& tau() const noexcept { return tau_; }
  SearchBudget const& budget() const noexcept { return budget_; }

  ElementClassification const& element(ElementId a);
  Verdict const& complete(Factorization const& f);
  FactorizationClassification classify(Factorization const& f);

  /// Nonunits carrying an irreducibility grade (zero included when graded).
  std::vector<ElementId> const& grade_set(AtomKind kind);

  /// Completeness and refinability into a grade depend only on factor counts
  /// capped at saturation() (self-related multiplicities beyond the number of
  /// non-self-related elements of R# plus one behave alike); these memoize on
  /// that key and return no witness.
  bool complete_fast(std::vector<ElementId> const& factors);
  bool refines_into_grade(std::vector<ElementId> const& factors, AtomKind kind);
  std::size_t saturation() const noexcept { return saturation_; }
  std::vector<ElementId> capped_key(std::vector<ElementId> const& factors) const;

 private:
  TauRelation const& tau_;
  SearchBudget budget_;
  std::vector<std::optional<ElementClassification>> elements_;
  std::map<std::vector<ElementId>, Verdict> complete_;
  std::map<AtomKind, std::vector<ElementId>> grades_;
  std::size_t saturation_ = 1;
  std::map<std::vector<ElementId>, bool> complete_fast_;
  std::map<std::pair<AtomKind, std::vector<ElementId>>, bool> refines_;
};

FactorizationClassification classify_factorization(TauRelation const& tau, Factorization const& f,
                                                   SearchBudget const& budget = {});

}  // namespace tauforge
