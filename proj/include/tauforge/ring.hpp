#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tauforge {

/// Dense index of a carrier element. Product-ring tuples are surface syntax
/// only; every element is addressed by its mixed-radix index.
enum class ElementId : std::uint16_t {};

constexpr std::size_t idx(ElementId e) noexcept { return static_cast<std::size_t>(e); }
constexpr ElementId elem(std::size_t i) noexcept { return static_cast<ElementId>(i); }

enum class AssocKind { Associate, StrongAssociate, VeryStrongAssociate };

std::string_view to_string(AssocKind kind);

class SpecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RingAxiomError : public std::runtime_error {
 public:
  RingAxiomError(std::string law, std::size_t a, std::size_t b, std::size_t c);
  std::string const& law() const noexcept { return law_; }
  std::size_t a, b, c;

 private:
  std::string law_;
};

/// A finite commutative ring with identity, stored as Cayley tables.
///
/// Immutable after construction. Every relational query the search engine
/// makes (units, divisibility, principal ideals, the three associate
/// relations, power periodicity) is precomputed in the constructor, so a
/// ring may be shared freely between threads.
class FiniteRing {
 public:
  /// Table rings larger than this are rejected; formula rings larger than this
  /// skip the cubic axiom scan.
  static constexpr std::size_t kAxiomCheckBound = 64;

  static FiniteRing cyclic(std::size_t n);
  /// Product of cyclic rings, indexed lexicographically with the leftmost
  /// component most significant.
  static FiniteRing product(std::vector<std::size_t> orders);
  static FiniteRing from_tables(std::size_t n, std::size_t zero, std::size_t one,
                                std::vector<std::uint16_t> add,
                                std::vector<std::uint16_t> mul, std::string label);

  std::size_t size() const noexcept { return n_; }
  std::string const& label() const noexcept { return label_; }
  ElementId zero() const noexcept { return zero_; }
  ElementId one() const noexcept { return one_; }

  ElementId add(ElementId a, ElementId b) const noexcept {
    return elem(add_[idx(a) * n_ + idx(b)]);
  }
  ElementId mul(ElementId a, ElementId b) const noexcept {
    return elem(mul_[idx(a) * n_ + idx(b)]);
  }
  ElementId neg(ElementId a) const noexcept { return neg_[idx(a)]; }

  bool is_unit(ElementId a) const noexcept { return inverse_[idx(a)].has_value(); }
  std::optional<ElementId> inverse(ElementId a) const noexcept { return inverse_[idx(a)]; }
  bool in_rsharp(ElementId a) const noexcept { return a != zero_ && !is_unit(a); }

  std::vector<ElementId> const& units() const noexcept { return units_; }
  /// R#: nonzero nonunits, ascending.
  std::vector<ElementId> const& nonzero_nonunits() const noexcept { return rsharp_; }
  /// All nonunits (R# plus zero), ascending.
  std::vector<ElementId> const& nonunits() const noexcept { return nonunits_; }
  std::vector<ElementId> elements() const;

  /// b | a in the usual sense: a = r*b for some r.
  bool divides(ElementId b, ElementId a) const noexcept {
    return divides_[idx(b) * n_ + idx(a)];
  }

  /// (a) as a sorted element list.
  std::vector<ElementId> principal_ideal(ElementId a) const;
  /// Smallest ideal containing gens: additive closure of {r*g}.
  std::vector<ElementId> ideal_generated_by(std::vector<ElementId> const& gens) const;

  bool are_related(ElementId a, ElementId b, AssocKind kind) const noexcept;
  /// Class label of a under ~ or ≈ (both equivalence relations). Labels are
  /// the smallest member of the class.
  ElementId class_of(ElementId a, AssocKind kind) const;

  /// A unit u with u*value == target, if any.
  std::optional<ElementId> unit_quotient(ElementId target, ElementId value) const noexcept;

  bool is_presimplifiable() const noexcept { return !presimplifiable_witness_.has_value(); }
  /// (x, y) with x != 0, y a nonunit and x*y == x.
  std::optional<std::pair<ElementId, ElementId>> presimplifiable_witness() const noexcept {
    return presimplifiable_witness_;
  }
  bool is_strongly_associate() const noexcept { return strongly_associate_; }
  bool is_very_strongly_associate() const noexcept { return very_strongly_associate_; }

  /// Multiplicative periodicity of a^1, a^2, ...: a^(i+p) == a^i for all
  /// i >= index.
  std::size_t power_index(ElementId a) const noexcept { return power_index_[idx(a)]; }
  std::size_t power_period(ElementId a) const noexcept { return power_period_[idx(a)]; }
  ElementId power(ElementId a, std::size_t e) const noexcept;

  /// Product-ring component orders, empty for table rings. A cyclic ring has
  /// exactly one component.
  std::vector<std::size_t> const& components() const noexcept { return radices_; }

  /// "2" for cyclic and table rings, "(1,0)" for products.
  std::string display(ElementId a) const;

 private:
  FiniteRing() = default;
  void finish(bool check_axioms);
  void check_axioms() const;

  std::size_t n_ = 0;
  ElementId zero_{};
  ElementId one_{};
  std::string label_;
  std::vector<std::size_t> radices_;
  std::vector<std::uint16_t> add_;
  std::vector<std::uint16_t> mul_;
  std::vector<ElementId> neg_;
  std::vector<std::optional<ElementId>> inverse_;
  std::vector<ElementId> units_;
  std::vector<ElementId> rsharp_;
  std::vector<ElementId> nonunits_;
  std::vector<char> divides_;
  std::vector<std::vector<std::uint64_t>> ideal_bits_;
  std::vector<char> assoc_;
  std::vector<char> strong_;
  std::vector<char> very_strong_;
  std::vector<ElementId> assoc_class_;
  std::vector<ElementId> strong_class_;
  std::optional<std::pair<ElementId, ElementId>> presimplifiable_witness_;
  bool strongly_associate_ = false;
  bool very_strongly_associate_ = false;
  std::vector<std::size_t> power_index_;
  std::vector<std::size_t> power_period_;
};

/// Ring-spec grammar: `Z<n>`, `Z<n>xZ<m>...`, `tables:<path>`.
FiniteRing parse_ring_spec(std::string_view spec);

/// Reads the text table format: `n zero one`, then n rows of addition and
/// n rows of multiplication.
FiniteRing read_table_file(std::string const& path);

/// Element literal: a canonical index, or a tuple `(i,j,...)` on product rings.
ElementId parse_element(FiniteRing const& ring, std::string_view text);

}  // namespace tauforge
