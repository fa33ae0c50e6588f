#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tauforge/tau.hpp"
#include "tauforge/types.hpp"

namespace tauforge {

struct SearchConstraints {
  std::size_t min_length = 1;
  /// Factors must come from here when set. May contain zero, which is only
  /// ever usable as the single factor of a trivial factorization of zero.
  std::optional<std::vector<ElementId>> allowed;
  std::vector<ElementId> forbidden;
  std::optional<ElementId> required;
};

/// Checks the factorization invariants directly from the definition; returns
/// a reason on failure. Shares no code with the search.
std::optional<std::string> validate_factorization(TauRelation const& tau, Factorization const& f);

/// True when `factors` (any order) pairwise satisfy tau at distinct positions
/// and all lie in R#; single factors are exempt.
bool is_tau_sequence(TauRelation const& tau, std::vector<ElementId> const& factors);

/// Builds the canonical factorization of target from a factor multiset, or
/// nullopt when no unit closes the product.
std::optional<Factorization> make_factorization(FiniteRing const& ring, ElementId target,
                                                std::vector<ElementId> factors);

/// Brute-force oracle: every factorization of target with length <= max_len,
/// one per factor multiset, straight from the definition.
std::vector<Factorization> enumerate_naive(TauRelation const& tau, ElementId target,
                                           std::size_t max_len);

/// Decides whether target has a factorization satisfying c. Candidates are
/// usual divisors of target; supports range over maximal tau-cliques and each
/// self-related factor scans its full power cycle, so the result is a decision.
/// Throws BudgetError when require_decided is set and the exponent cap is
/// below ring size + 1.
Verdict exists_factorization(TauRelation const& tau, ElementId target, SearchConstraints const& c,
                             SearchBudget const& b, bool require_decided = false);

/// Status True: a strictly longer refinement exists (witness.other holds it).
/// Status False: none exists.
Verdict find_longer_refinement(TauRelation const& tau, Factorization const& f,
                               SearchBudget const& b);

/// Status True when f refines to a factorization all of whose factors lie in
/// allowed (witness.other holds it).
Verdict find_refinement_into(TauRelation const& tau, Factorization const& f,
                             std::vector<ElementId> const& allowed, SearchBudget const& b);

/// Longest refinement of f (a refinement of maximal length), when the
/// lengths of refinements of f are bounded; nullopt when they are not.
std::optional<Factorization> find_longest_refinement(TauRelation const& tau,
                                                     Factorization const& f);

/// Status True iff target has factorizations satisfying c of unbounded
/// length; the witness carries a pump coordinate.
Verdict detect_pump(TauRelation const& tau, ElementId target, SearchConstraints const& c,
                    SearchBudget const& b);

/// Longest factorization length of target under c. Only meaningful when
/// detect_pump is False; returns 0 when no factorization exists.
std::size_t max_factorization_length(TauRelation const& tau, ElementId target,
                                     SearchConstraints const& c);

/// Repeats the pump block k extra periods.
Factorization pump_factorization(FiniteRing const& ring, Factorization const& f, Pump const& p,
                                 std::size_t k);

/// Per-element exponent ceilings for an exhaustive enumeration.
struct ExponentPolicy {
  enum class Kind {
    /// Self-related exponents below the power index (complete when no pump).
    BelowIndex,
    /// Exponents up to max(threshold, index) + period - 1: one representative
    /// per (value, saturated count) class.
    Saturated,
    /// Total length capped.
    LengthCap,
  };
  Kind kind = Kind::LengthCap;
  std::size_t threshold = 2;
  std::size_t length_cap = 6;
};

struct FactorizationTable {
  /// Indexed by target element; canonical order within each list.
  std::vector<std::vector<Factorization>> by_target;
  bool truncated = false;
};

/// Enumerates factorizations of every nonunit at once over the given factor
/// set (nullopt: all of R#), including trivial factorizations.
FactorizationTable enumerate_all(TauRelation const& tau,
                                 std::optional<std::vector<ElementId>> const& allowed,
                                 ExponentPolicy const& policy, std::size_t limit);

/// Maximal cliques of tau (ignoring self-loops) among candidates, each sorted,
/// in lexicographic order.
std::vector<std::vector<ElementId>> maximal_cliques(TauRelation const& tau,
                                                    std::vector<ElementId> const& candidates);

std::string format_factorization(FiniteRing const& ring, Factorization const& f);

}  // namespace tauforge
