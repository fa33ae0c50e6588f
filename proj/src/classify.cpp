#include "tauforge/classify.hpp"

#include <stdexcept>

namespace tauforge {

std::string_view to_string(AtomKind kind) {
  switch (kind) {
    case AtomKind::Atomic: return "atomic";
    case AtomKind::StronglyAtomic: return "strongly-atomic";
    case AtomKind::MAtomic: return "m-atomic";
    case AtomKind::UnrefinablyAtomic: return "unrefinably-atomic";
    case AtomKind::VeryStronglyAtomic: return "very-strongly-atomic";
    case AtomKind::Complete: return "complete";
  }
  return "?";
}

bool ElementClassification::has(AtomKind kind) const {
  switch (kind) {
    case AtomKind::Atomic: return irreducible;
    case AtomKind::StronglyAtomic: return strongly_irreducible;
    case AtomKind::MAtomic: return m_irreducible;
    case AtomKind::UnrefinablyAtomic: return unrefinably_irreducible;
    case AtomKind::VeryStronglyAtomic: return very_strongly_irreducible;
    case AtomKind::Complete: break;
  }
  throw std::logic_error("completeness is not an element grade");
}

bool FactorizationClassification::has(AtomKind kind) const {
  switch (kind) {
    case AtomKind::Atomic: return atomic;
    case AtomKind::StronglyAtomic: return strongly_atomic;
    case AtomKind::MAtomic: return m_atomic;
    case AtomKind::UnrefinablyAtomic: return unrefinably_atomic;
    case AtomKind::VeryStronglyAtomic: return very_strongly_atomic;
    case AtomKind::Complete: return complete.is_true();
  }
  return false;
}

std::vector<ClassificationQuery> classification_queries(TauRelation const& tau, ElementId a) {
  auto const& R = tau.ring();
  std::vector<ClassificationQuery> out;
  auto outside = [&](AssocKind kind) {
    std::vector<ElementId> v;
    for (auto b : R.nonzero_nonunits())
      if (!R.are_related(a, b, kind)) v.push_back(b);
    return v;
  };
  // Trivial factorizations never refute these flags, so every query asks for
  // length >= 2.
  SearchConstraints unref;
  unref.min_length = 2;
  out.push_back({"unrefinably", unref});

  SearchConstraints irr = unref;
  irr.allowed = outside(AssocKind::Associate);
  out.push_back({"irreducible", irr});

  SearchConstraints strong = unref;
  strong.allowed = outside(AssocKind::StrongAssociate);
  out.push_back({"strongly", strong});

  for (auto b : outside(AssocKind::Associate)) {
    if (!R.divides(b, a)) continue;
    SearchConstraints m = unref;
    m.required = b;
    out.push_back({"m", m});
  }
  return out;
}

ElementClassification classify_element(TauRelation const& tau, ElementId a,
                                       SearchBudget const& budget) {
  auto const& R = tau.ring();
  if (R.is_unit(a)) throw SpecError("cannot classify a unit");
  ElementClassification c;
  c.element = a;
  c.irreducible = c.strongly_irreducible = c.m_irreducible = c.unrefinably_irreducible = true;
  for (auto const& q : classification_queries(tau, a)) {
    bool* flag = q.flag == "unrefinably" ? &c.unrefinably_irreducible
                 : q.flag == "irreducible" ? &c.irreducible
                 : q.flag == "strongly"    ? &c.strongly_irreducible
                                           : &c.m_irreducible;
    if (!*flag) continue;
    auto v = exists_factorization(tau, a, q.constraints, budget, true);
    if (v.is_true()) {
      *flag = false;
      c.witnesses.emplace(q.flag, *v.witness->factorization);
    }
  }
  bool const self_vs = R.are_related(a, a, AssocKind::VeryStrongAssociate);
  c.very_strongly_irreducible = c.unrefinably_irreducible && self_vs;
  if (!c.very_strongly_irreducible) {
    if (!c.unrefinably_irreducible) {
      c.witnesses.emplace("very-strongly", c.witnesses.at("unrefinably"));
    } else {
      // a = r*a with r a nonunit breaks a ≅ a.
      for (auto r : R.nonunits()) {
        if (R.mul(r, a) == a) {
          c.witnesses.emplace("very-strongly", Factorization{a, R.one(), {a, r}});
          break;
        }
      }
    }
  }
  return c;
}

Verdict is_complete(TauRelation const& tau, Factorization const& f, SearchBudget const& budget) {
  auto longer = find_longer_refinement(tau, f, budget);
  if (longer.is_true()) {
    Verdict v = Verdict::no(*longer.witness, "a strictly longer refinement exists");
    return v;
  }
  if (longer.is_false()) return Verdict::yes("no refinement lengthens it");
  return Verdict::undecided(budget, longer.note);
}

Classifier::Classifier(TauRelation const& tau, SearchBudget budget)
    : tau_(tau), budget_(budget), elements_(tau.ring().size()) {
  std::size_t nonself = 0;
  for (auto b : tau.ring().nonzero_nonunits())
    if (!tau.self_related(b)) ++nonself;
  saturation_ = nonself + 1;
}

std::vector<ElementId> Classifier::capped_key(std::vector<ElementId> const& factors) const {
  std::vector<ElementId> key;
  for (std::size_t i = 0; i < factors.size();) {
    std::size_t j = i;
    while (j < factors.size() && factors[j] == factors[i]) ++j;
    key.insert(key.end(), std::min(j - i, saturation_), factors[i]);
    i = j;
  }
  return key;
}

bool Classifier::complete_fast(std::vector<ElementId> const& factors) {
  auto key = capped_key(factors);
  auto it = complete_fast_.find(key);
  if (it != complete_fast_.end()) return it->second;
  auto const& R = tau_.ring();
  ElementId prod = R.one();
  for (auto x : key) prod = R.mul(prod, x);
  Factorization f{prod, R.one(), key};
  bool const result = !find_longer_refinement(tau_, f, budget_).is_true();
  complete_fast_.emplace(std::move(key), result);
  return result;
}

bool Classifier::refines_into_grade(std::vector<ElementId> const& factors, AtomKind kind) {
  auto key = std::pair{kind, capped_key(factors)};
  auto it = refines_.find(key);
  if (it != refines_.end()) return it->second;
  auto const& R = tau_.ring();
  ElementId prod = R.one();
  for (auto x : key.second) prod = R.mul(prod, x);
  Factorization f{prod, R.one(), key.second};
  bool const result = find_refinement_into(tau_, f, grade_set(kind), budget_).is_true();
  refines_.emplace(std::move(key), result);
  return result;
}

ElementClassification const& Classifier::element(ElementId a) {
  auto& slot = elements_[idx(a)];
  if (!slot) slot = classify_element(tau_, a, budget_);
  return *slot;
}

Verdict const& Classifier::complete(Factorization const& f) {
  auto it = complete_.find(f.factors);
  if (it == complete_.end()) it = complete_.emplace(f.factors, is_complete(tau_, f, budget_)).first;
  return it->second;
}

FactorizationClassification Classifier::classify(Factorization const& f) {
  FactorizationClassification out;
  out.factorization = f;
  out.atomic = out.strongly_atomic = out.m_atomic = out.unrefinably_atomic =
      out.very_strongly_atomic = true;
  for (auto x : f.factors) {
    auto const& c = element(x);
    out.atomic = out.atomic && c.irreducible;
    out.strongly_atomic = out.strongly_atomic && c.strongly_irreducible;
    out.m_atomic = out.m_atomic && c.m_irreducible;
    out.unrefinably_atomic = out.unrefinably_atomic && c.unrefinably_irreducible;
    out.very_strongly_atomic = out.very_strongly_atomic && c.very_strongly_irreducible;
  }
  out.complete = complete(f);
  return out;
}

std::vector<ElementId> const& Classifier::grade_set(AtomKind kind) {
  auto it = grades_.find(kind);
  if (it != grades_.end()) return it->second;
  std::vector<ElementId> g;
  for (auto a : tau_.ring().nonunits())
    if (element(a).has(kind)) g.push_back(a);
  return grades_.emplace(kind, std::move(g)).first->second;
}

FactorizationClassification classify_factorization(TauRelation const& tau, Factorization const& f,
                                                   SearchBudget const& budget) {
  Classifier c(tau, budget);
  return c.classify(f);
}

}  // namespace tauforge
