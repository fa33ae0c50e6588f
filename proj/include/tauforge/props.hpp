#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tauforge/classify.hpp"

namespace tauforge {

enum class Variant { Plain, Tau, TauComplete };

/// The three associate relations used as beta in FFR/UFR/WFFR/df.
inline constexpr std::array<AssocKind, 3> kBetas = {AssocKind::Associate, AssocKind::StrongAssociate,
                                                    AssocKind::VeryStrongAssociate};

/// "atomic" / "atomicable", ..., "complete" / "completable".
std::string kind_name(AtomKind kind, bool able = false);

struct PropertyReport {
  std::string instance;
  /// Keyed by property name, e.g. "tau-BFR", "tau-unrefinably-atomic-associate-UFR".
  std::map<std::string, Verdict> properties;
  /// Per-element figures behind some verdicts (bounds N(a), divisor counts),
  /// keyed by property then element display.
  std::map<std::string, std::map<std::string, std::size_t>> counts;
  std::vector<std::string> notes;
  SearchBudget budget;
};

enum class ArrowStatus { Verified, Vacuous, SkippedUndecided, Violated };
std::string_view to_string(ArrowStatus s);

struct ArrowResult {
  std::string name;
  /// Hypotheses that held where the arrow was applied.
  std::vector<std::string> hypotheses;
  ArrowStatus status = ArrowStatus::Vacuous;
  std::optional<std::string> counterexample;
  /// Elements or factorizations the arrow was applied to (1 for ring arrows).
  std::size_t applied = 0;
};

struct DiagramReport {
  std::string instance;
  std::vector<ArrowResult> arrows;

  std::size_t count(ArrowStatus s) const;
  bool ok() const { return count(ArrowStatus::Violated) == 0; }
};

class TheoremViolation : public std::runtime_error {
 public:
  TheoremViolation(std::string arrow, std::string instance, std::string detail);
  std::string const& arrow() const noexcept { return arrow_; }
  std::string const& instance() const noexcept { return instance_; }

 private:
  std::string arrow_;
  std::string instance_;
};

/// Throws TheoremViolation for the first violated arrow.
void require_no_violations(DiagramReport const& report);

/// Ring-level property checks for one (ring, tau) instance. Results are
/// memoized; not thread-safe.
class PropertyChecker {
 public:
  /// Keeps a reference to `tau`, which must outlive the checker.
  explicit PropertyChecker(TauRelation const& tau, SearchBudget budget = {});
  PropertyChecker(TauRelation&&, SearchBudget = {}) = delete;
  ~PropertyChecker();
  PropertyChecker(PropertyChecker const&) = delete;
  PropertyChecker& operator=(PropertyChecker const&) = delete;

  TauRelation const& tau() const noexcept;
  Classifier& classifier();
  TauProfile const& profile();
  std::string instance_label() const;

  Verdict atomic_ring(AtomKind kind);
  Verdict atomicable_ring(AtomKind kind);
  Verdict bfr(Variant v);
  Verdict ffr(Variant v, AssocKind beta);
  Verdict hfr(bool able, AtomKind kind);
  Verdict ufr(bool able, AtomKind kind, AssocKind beta);
  Verdict wffr(bool plain, AssocKind beta);
  /// Irreducibility kinds only; the complete kind is cdf().
  Verdict df(AtomKind kind, AssocKind beta);
  Verdict cdf(AssocKind beta);
  Verdict tau_accp();

  /// N(a) when tau-factorization lengths of a are bounded.
  std::optional<std::size_t> max_length(ElementId a);
  /// Edges in the longest strictly ascending chain of principal ideals.
  std::size_t longest_ideal_chain();

  PropertyReport report();
  DiagramReport verify();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace tauforge
