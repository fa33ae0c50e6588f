#include "tauforge/tau.hpp"

#include <algorithm>
#include <charconv>
#include <set>

#include "tauforge/corpus.hpp"
#include "tauforge/engine.hpp"

namespace tauforge {

std::string_view to_string(Status s) {
  switch (s) {
    case Status::True: return "true";
    case Status::False: return "false";
    case Status::TrueUpToBound: return "true-up-to-bound";
    case Status::Undecided: return "undecided";
  }
  return "?";
}

namespace {

int rank(Status s) {
  switch (s) {
    case Status::False: return 0;
    case Status::Undecided: return 1;
    case Status::TrueUpToBound: return 2;
    case Status::True: return 3;
  }
  return 0;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Splits on commas at parenthesis depth zero.
std::vector<std::string_view> split_top(std::string_view body) {
  std::vector<std::string_view> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < body.size(); ++i) {
    char c = body[i];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (depth < 0) throw SpecError("unbalanced parentheses in tau spec");
    if (c == ',' && depth == 0) {
      out.push_back(trim(body.substr(start, i - start)));
      start = i + 1;
    }
  }
  if (depth != 0) throw SpecError("unbalanced parentheses in tau spec");
  auto last = trim(body.substr(start));
  if (!last.empty() || !out.empty()) out.push_back(last);
  return out;
}

std::string_view braced(std::string_view s) {
  s = trim(s);
  if (s.size() < 2 || s.front() != '{' || s.back() != '}')
    throw SpecError("expected {...} in tau spec, got '" + std::string(s) + "'");
  return s.substr(1, s.size() - 2);
}

std::vector<ElementId> element_list(FiniteRing const& ring, std::string_view s) {
  std::vector<ElementId> out;
  for (auto item : split_top(braced(s))) {
    if (item.empty()) throw SpecError("empty element in list");
    out.push_back(parse_element(ring, item));
  }
  return out;
}

}  // namespace

Verdict weakest(Verdict a, Verdict b) { return rank(b.status) < rank(a.status) ? b : a; }

TauRelation::TauRelation(std::shared_ptr<FiniteRing const> ring, std::string label)
    : ring_(std::move(ring)), label_(std::move(label)), matrix_(ring_->size() * ring_->size(), 0) {}

void TauRelation::add_pair(ElementId a, ElementId b) {
  if (!ring_->in_rsharp(a) || !ring_->in_rsharp(b)) {
    throw SpecError("tau pair (" + ring_->display(a) + "," + ring_->display(b) +
                    ") lies outside R#");
  }
  auto const n = ring_->size();
  if (!matrix_[idx(a) * n + idx(b)]) ++pair_count_;
  matrix_[idx(a) * n + idx(b)] = 1;
  matrix_[idx(b) * n + idx(a)] = 1;
}

std::vector<std::pair<ElementId, ElementId>> TauRelation::pairs() const {
  std::vector<std::pair<ElementId, ElementId>> out;
  auto const& rs = ring_->nonzero_nonunits();
  for (std::size_t i = 0; i < rs.size(); ++i)
    for (std::size_t j = i; j < rs.size(); ++j)
      if (related(rs[i], rs[j])) out.emplace_back(rs[i], rs[j]);
  return out;
}

bool TauRelation::is_full() const noexcept {
  auto const k = ring_->nonzero_nonunits().size();
  return pair_count_ == k * (k + 1) / 2;
}

std::string TauRelation::canonical_spec() const {
  std::string s = "pairs:{";
  bool first = true;
  for (auto [a, b] : pairs()) {
    if (!first) s += ",";
    first = false;
    s += "(" + std::to_string(idx(a)) + "," + std::to_string(idx(b)) + ")";
  }
  return s + "}";
}

TauRelation full_tau(std::shared_ptr<FiniteRing const> ring) {
  TauRelation tau(ring, "full");
  auto const& rs = ring->nonzero_nonunits();
  for (std::size_t i = 0; i < rs.size(); ++i)
    for (std::size_t j = i; j < rs.size(); ++j) tau.add_pair(rs[i], rs[j]);
  return tau;
}

TauRelation build_tau(std::shared_ptr<FiniteRing const> ring, std::string_view spec) {
  spec = trim(spec);
  FiniteRing const& R = *ring;
  auto const& rs = R.nonzero_nonunits();
  std::string const label(spec);

  auto family = [&](auto pred) {
    TauRelation tau(ring, label);
    for (std::size_t i = 0; i < rs.size(); ++i)
      for (std::size_t j = i; j < rs.size(); ++j)
        if (pred(rs[i], rs[j])) tau.add_pair(rs[i], rs[j]);
    return tau;
  };

  if (spec == "full") return full_tau(ring);
  if (spec == "empty") return TauRelation(ring, label);
  if (spec == "zero") {
    return family([&](ElementId a, ElementId b) { return R.mul(a, b) == R.zero(); });
  }
  if (spec == "comax") {
    return family([&](ElementId a, ElementId b) {
      return R.ideal_generated_by({a, b}).size() == R.size();
    });
  }
  auto colon = spec.find(':');
  if (colon == std::string_view::npos) throw SpecError("unknown tau spec '" + label + "'");
  auto kind = spec.substr(0, colon);
  auto body = spec.substr(colon + 1);
  if (kind == "subset") {
    auto members = element_list(R, body);
    for (auto e : members)
      if (!R.in_rsharp(e)) throw SpecError("subset element " + R.display(e) + " lies outside R#");
    std::set<ElementId> s(members.begin(), members.end());
    return family([&](ElementId a, ElementId b) { return s.count(a) && s.count(b); });
  }
  if (kind == "modideal") {
    auto gens = element_list(R, body);
    if (gens.empty()) throw SpecError("modideal needs at least one generator");
    auto ideal = R.ideal_generated_by(gens);
    std::set<ElementId> I(ideal.begin(), ideal.end());
    return family([&](ElementId a, ElementId b) { return I.count(R.add(a, R.neg(b))) > 0; });
  }
  if (kind == "random") {
    std::uint64_t seed = 0;
    auto text = trim(body);
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), seed);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
      throw SpecError("random needs a decimal seed, got '" + std::string(text) + "'");
    return random_tau(ring, seed);
  }
  if (kind == "pairs") {
    TauRelation tau(ring, label);
    for (auto item : split_top(braced(body))) {
      item = trim(item);
      if (item.size() < 2 || item.front() != '(' || item.back() != ')')
        throw SpecError("pair must be written (a,b), got '" + std::string(item) + "'");
      auto parts = split_top(item.substr(1, item.size() - 2));
      if (parts.size() != 2) throw SpecError("pair must have two members");
      tau.add_pair(parse_element(R, parts[0]), parse_element(R, parts[1]));
    }
    return tau;
  }
  throw SpecError("unknown tau family '" + std::string(kind) + "'");
}

TauProfile analyze_tau_exact(TauRelation const& tau) {
  FiniteRing const& R = tau.ring();
  auto const& rs = R.nonzero_nonunits();
  TauProfile p;
  p.multiplicative = true;
  p.divisive = true;
  p.associate_preserving = {true, true, true};
  for (auto a : rs) {
    for (auto b : rs) {
      if (!tau.related(a, b)) continue;
      for (auto c : rs) {
        if (p.multiplicative && tau.related(a, c)) {
          auto bc = R.mul(b, c);
          if (R.in_rsharp(bc) && !tau.related(a, bc)) p.multiplicative = false;
        }
        if (p.divisive && R.divides(c, b) && !tau.related(a, c)) p.divisive = false;
        for (auto kind : {AssocKind::Associate, AssocKind::StrongAssociate,
                          AssocKind::VeryStrongAssociate}) {
          auto& flag = p.associate_preserving[static_cast<std::size_t>(kind)];
          if (flag && R.are_related(b, c, kind) && !tau.related(a, c)) flag = false;
        }
      }
    }
  }
  return p;
}

TauProfile analyze_tau(TauRelation const& tau, SearchBudget const& budget) {
  auto p = analyze_tau_exact(tau);
  p.refinable = check_refinable(tau, budget);
  p.combinable = check_combinable(tau, budget);
  return p;
}

namespace {

ExponentPolicy length_policy(std::size_t cap) {
  ExponentPolicy pol;
  pol.kind = ExponentPolicy::Kind::LengthCap;
  pol.length_cap = cap;
  return pol;
}

}  // namespace

Verdict check_refinable(TauRelation const& tau, SearchBudget const& budget) {
  if (tau.is_empty()) return Verdict::yes("empty tau: only trivial factorizations");
  if (tau.is_full()) return Verdict::yes("full tau: every sequence over R# is a factorization");
  if (analyze_tau_exact(tau).divisive) return Verdict::yes("divisive tau is refinable");

  FiniteRing const& R = tau.ring();
  auto const table =
      enumerate_all(tau, std::nullopt, length_policy(std::max(budget.length_cap, budget.refine_part_cap)),
                    budget.enumeration_limit);

  auto violation = [&](Factorization const& f, std::size_t i,
                       Factorization const& part) -> std::optional<Verdict> {
    std::vector<ElementId> seq;
    for (std::size_t k = 0; k < f.factors.size(); ++k) {
      if (k == i) {
        seq.insert(seq.end(), part.factors.begin(), part.factors.end());
      } else {
        seq.push_back(f.factors[k]);
      }
    }
    if (is_tau_sequence(tau, seq)) return std::nullopt;
    // Re-validate independently before reporting.
    ElementId prod = R.one();
    for (auto x : seq) prod = R.mul(prod, x);
    if (validate_factorization(tau, f) || validate_factorization(tau, part) ||
        !R.unit_quotient(f.target, prod)) {
      return std::nullopt;
    }
    Witness w;
    w.factorization = f;
    w.other = part;
    w.sequence = seq;
    w.description = "refining factor " + R.display(f.factors[i]) + " of " +
                    format_factorization(R, f) + " by " + format_factorization(R, part) +
                    " gives a sequence that is not a tau-factorization";
    return Verdict::no(std::move(w));
  };

  // Nontrivial part refinements first, then associate substitutions, so the
  // reported witness is the most informative one.
  for (bool trivial_parts : {false, true}) {
    for (auto a : R.nonunits()) {
      for (auto const& f : table.by_target[idx(a)]) {
        if (f.length() < 2 || f.length() > budget.length_cap) continue;
        for (std::size_t i = 0; i < f.factors.size(); ++i) {
          for (auto const& part : table.by_target[idx(f.factors[i])]) {
            if (part.trivial() != trivial_parts) continue;
            if (part.length() > budget.refine_part_cap) continue;
            if (trivial_parts && part.factors[0] == f.factors[i]) continue;
            if (auto v = violation(f, i, part)) return *v;
          }
        }
      }
    }
  }
  return Verdict::up_to(budget, table.truncated ? "enumeration truncated" : "");
}

Verdict check_combinable(TauRelation const& tau, SearchBudget const& budget) {
  if (tau.is_empty()) return Verdict::yes("empty tau: no factorization has two factors");
  if (analyze_tau_exact(tau).multiplicative) return Verdict::yes("multiplicative tau is combinable");

  FiniteRing const& R = tau.ring();
  auto const table = enumerate_all(tau, std::nullopt, length_policy(budget.length_cap),
                                   budget.enumeration_limit);
  std::size_t vacuous = 0;
  for (auto a : R.nonunits()) {
    for (auto const& f : table.by_target[idx(a)]) {
      if (f.length() < 2) continue;
      for (std::size_t i = 0; i < f.factors.size(); ++i) {
        for (std::size_t j = i + 1; j < f.factors.size(); ++j) {
          auto merged = R.mul(f.factors[i], f.factors[j]);
          if (!R.in_rsharp(merged)) {
            ++vacuous;
            continue;
          }
          std::vector<ElementId> seq;
          for (std::size_t k = 0; k < f.factors.size(); ++k) {
            if (k == i) seq.push_back(merged);
            else if (k != j) seq.push_back(f.factors[k]);
          }
          if (is_tau_sequence(tau, seq) || validate_factorization(tau, f)) continue;
          Witness w;
          w.factorization = f;
          w.sequence = seq;
          w.description = "merging " + R.display(f.factors[i]) + " and " +
                          R.display(f.factors[j]) + " in " + format_factorization(R, f) +
                          " gives a sequence that is not a tau-factorization";
          return Verdict::no(std::move(w));
        }
      }
    }
  }
  std::string note = std::to_string(vacuous) + " merges left R# (no obligation)";
  if (table.truncated) note += "; enumeration truncated";
  return Verdict::up_to(budget, note);
}

}  // namespace tauforge
