#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tauforge/ring.hpp"

namespace tauforge {

/// a = unit * factors[0] * ... * factors[n-1]. Factors are kept in canonical
/// (ascending) order by everything that produces them; the unit is recomputed
/// from the factors and never compared.
struct Factorization {
  ElementId target{};
  ElementId unit{};
  std::vector<ElementId> factors;

  std::size_t length() const noexcept { return factors.size(); }
  bool trivial() const noexcept { return factors.size() == 1; }
};

/// Search caps. An exponent cap of 0 means "ring size + 1".
struct SearchBudget {
  std::size_t exponent_cap = 0;
  std::size_t length_cap = 6;
  std::size_t refine_part_cap = 4;
  /// Ceiling on explicitly enumerated factorizations per instance; past it the
  /// exhaustive enumerations fall back to length_cap and report bounded verdicts.
  std::size_t enumeration_limit = 200000;

  std::size_t effective_exponent_cap(std::size_t ring_size) const noexcept {
    return exponent_cap == 0 ? ring_size + 1 : exponent_cap;
  }
};

enum class Status { True, False, TrueUpToBound, Undecided };

std::string_view to_string(Status s);

/// v^(exponent + k*period) == v^exponent, and v is self-related, so the
/// witness stays valid with the v-block repeated any number of extra periods.
struct Pump {
  ElementId element{};
  std::size_t exponent = 0;
  std::size_t period = 0;
};

struct Witness {
  std::optional<Factorization> factorization;
  /// Secondary factorization (refinement result, second factorization of a
  /// non-unique pair, ...).
  std::optional<Factorization> other;
  /// A factor sequence that is *not* a valid factorization (refinement and
  /// merge counterexamples).
  std::vector<ElementId> sequence;
  std::optional<Pump> pump;
  std::string description;
};

/// Three-valued search result, plus Undecided for existential properties where
/// a bounded search neither found nor excluded a witness.
struct Verdict {
  Status status = Status::Undecided;
  std::optional<Witness> witness;
  std::optional<SearchBudget> bound;
  std::string note;

  bool is_true() const noexcept { return status == Status::True; }
  bool is_false() const noexcept { return status == Status::False; }
  bool decided() const noexcept { return status == Status::True || status == Status::False; }

  static Verdict yes(std::string note = {}) { return {Status::True, std::nullopt, std::nullopt, std::move(note)}; }
  static Verdict yes(Witness w, std::string note = {}) {
    return {Status::True, std::move(w), std::nullopt, std::move(note)};
  }
  static Verdict no(Witness w, std::string note = {}) {
    return {Status::False, std::move(w), std::nullopt, std::move(note)};
  }
  static Verdict no_witness(std::string note = {}) {
    return {Status::False, std::nullopt, std::nullopt, std::move(note)};
  }
  static Verdict up_to(SearchBudget b, std::string note = {}) {
    return {Status::TrueUpToBound, std::nullopt, b, std::move(note)};
  }
  static Verdict undecided(SearchBudget b, std::string note = {}) {
    return {Status::Undecided, std::nullopt, b, std::move(note)};
  }
};

/// Conjunction in the order False < Undecided < TrueUpToBound < True; the
/// first weakest verdict wins.
Verdict weakest(Verdict a, Verdict b);

class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tauforge
