#include "tauforge/props.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <set>

namespace tauforge {

namespace {

std::string beta_name(AssocKind b) { return std::string(to_string(b)); }

// Perfect matching of x onto y under beta (Kuhn's algorithm; lists are tiny).
bool beta_equivalent(FiniteRing const& R, std::vector<ElementId> const& x,
                     std::vector<ElementId> const& y, AssocKind beta) {
  if (x.size() != y.size()) return false;
  std::vector<int> owner(y.size(), -1);
  std::function<bool(std::size_t, std::vector<char>&)> augment = [&](std::size_t i,
                                                                     std::vector<char>& seen) {
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (seen[j] || !R.are_related(x[i], y[j], beta)) continue;
      seen[j] = 1;
      if (owner[j] < 0 || augment(static_cast<std::size_t>(owner[j]), seen)) {
        owner[j] = static_cast<int>(i);
        return true;
      }
    }
    return false;
  };
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::vector<char> seen(y.size(), 0);
    if (!augment(i, seen)) return false;
  }
  return true;
}

// Greedy clustering; exact for the equivalences, a representative count for
// the very strong relation (which need not be reflexive).
std::size_t count_element_classes(FiniteRing const& R, std::vector<ElementId> const& elems,
                                  AssocKind beta) {
  std::vector<ElementId> reps;
  for (auto e : elems)
    if (std::none_of(reps.begin(), reps.end(), [&](ElementId r) { return R.are_related(e, r, beta); }))
      reps.push_back(e);
  return reps.size();
}

std::size_t count_factorization_classes(FiniteRing const& R,
                                        std::vector<std::vector<ElementId>> const& fs,
                                        AssocKind beta) {
  std::vector<std::vector<ElementId> const*> reps;
  for (auto const& f : fs)
    if (std::none_of(reps.begin(), reps.end(),
                     [&](auto const* r) { return beta_equivalent(R, f, *r, beta); }))
      reps.push_back(&f);
  return reps.size();
}

std::size_t count_of(std::vector<ElementId> const& v, ElementId e) {
  return static_cast<std::size_t>(std::count(v.begin(), v.end(), e));
}

std::string describe(FiniteRing const& R, Verdict const& v) {
  if (!v.witness) return v.note;
  auto const& w = *v.witness;
  std::string s = w.description;
  auto add = [&](std::string const& part) { s += (s.empty() ? "" : "; ") + part; };
  if (w.factorization) add(format_factorization(R, *w.factorization));
  if (w.other) add("vs " + format_factorization(R, *w.other));
  if (w.pump)
    add("pump " + R.display(w.pump->element) + " period " + std::to_string(w.pump->period));
  return s;
}

Witness element_witness(FiniteRing const& R, ElementId a, std::string text) {
  Witness w;
  w.sequence = {a};
  w.description = R.display(a) + " " + std::move(text);
  return w;
}

}  // namespace

std::string kind_name(AtomKind kind, bool able) {
  if (kind == AtomKind::Complete) return able ? "completable" : "complete";
  std::string base(to_string(kind));
  return able ? base + "able" : base;
}

std::string_view to_string(ArrowStatus s) {
  switch (s) {
    case ArrowStatus::Verified: return "verified";
    case ArrowStatus::Vacuous: return "vacuous";
    case ArrowStatus::SkippedUndecided: return "skipped-undecided";
    case ArrowStatus::Violated: return "violated";
  }
  return "?";
}

std::size_t DiagramReport::count(ArrowStatus s) const {
  return static_cast<std::size_t>(
      std::count_if(arrows.begin(), arrows.end(), [&](auto const& a) { return a.status == s; }));
}

TheoremViolation::TheoremViolation(std::string arrow, std::string instance, std::string detail)
    : std::runtime_error("theorem violation: " + arrow + " on " + instance + ": " + detail),
      arrow_(std::move(arrow)),
      instance_(std::move(instance)) {}

void require_no_violations(DiagramReport const& report) {
  for (auto const& a : report.arrows)
    if (a.status == ArrowStatus::Violated)
      throw TheoremViolation(a.name, report.instance, a.counterexample.value_or(""));
}

// ---------------------------------------------------------------------------

struct PropertyChecker::Impl {
  enum class Universe { Exact, Saturated, Bounded };

  Impl(TauRelation const& t, SearchBudget b) : tau(t), budget(b), cls(t, b) {}

  TauRelation const& tau;
  SearchBudget budget;
  Classifier cls;
  std::optional<TauProfile> profile;
  std::unique_ptr<TauRelation> full;
  std::unique_ptr<PropertyChecker> plain;
  std::map<std::string, Verdict> memo;
  std::map<std::string, std::map<std::string, std::size_t>> counts;
  std::vector<std::string> notes;

  std::optional<Verdict> tau_bfr;
  std::vector<std::optional<std::size_t>> maxlen;

  bool universe_ready = false;
  Universe universe_kind = Universe::Exact;
  FactorizationTable universe;
  std::vector<std::vector<std::size_t>> complete_idx;
  std::vector<std::optional<std::size_t>> pumpable_complete;

  struct AlphaLists {
    std::optional<Verdict> pump;  // True: unbounded alpha-factorization lengths
    FactorizationTable table;
    bool exact = true;
  };
  std::map<AtomKind, AlphaLists> alpha;

  std::vector<std::optional<std::vector<ElementId>>> divisors_any, divisors_nontrivial;
  std::optional<std::size_t> chain;

  FiniteRing const& ring() const { return tau.ring(); }

  bool pumpable(Factorization const& f) const {
    auto const& R = ring();
    for (auto v : f.factors) {
      if (!tau.self_related(v)) continue;
      if (count_of(f.factors, v) >= std::max(cls.saturation(), R.power_index(v))) return true;
    }
    return false;
  }

  Pump pump_of(Factorization const& f) const {
    auto const& R = ring();
    for (auto v : f.factors) {
      if (!tau.self_related(v)) continue;
      auto const c = count_of(f.factors, v);
      if (c >= std::max(cls.saturation(), R.power_index(v))) return Pump{v, c, R.power_period(v)};
    }
    return {};
  }

  Verdict const& bfr() {
    if (tau_bfr) return *tau_bfr;
    auto const& R = ring();
    maxlen.assign(R.size(), std::nullopt);
    Verdict result = Verdict::yes("no factor can be pumped");
    for (auto a : R.nonunits()) {
      auto v = detect_pump(tau, a, {}, budget);
      if (v.is_true()) {
        if (!result.is_false()) {
          auto w = *v.witness;
          w.description = "factorizations of " + R.display(a) + " have unbounded length";
          result = Verdict::no(std::move(w));
        }
      } else if (v.is_false()) {
        auto n = max_factorization_length(tau, a, {});
        maxlen[idx(a)] = n;
        counts["tau-BFR"][R.display(a)] = n;
      } else {
        result = weakest(result, v);
      }
    }
    tau_bfr = result;
    return *tau_bfr;
  }

  void ensure_universe() {
    if (universe_ready) return;
    universe_ready = true;
    auto const& R = ring();
    ExponentPolicy pol;
    if (bfr().is_true()) {
      pol.kind = ExponentPolicy::Kind::BelowIndex;
      universe_kind = Universe::Exact;
    } else {
      pol.kind = ExponentPolicy::Kind::Saturated;
      pol.threshold = cls.saturation();
      universe_kind = Universe::Saturated;
    }
    universe = enumerate_all(tau, std::nullopt, pol, budget.enumeration_limit);
    if (universe.truncated) {
      pol.kind = ExponentPolicy::Kind::LengthCap;
      pol.length_cap = budget.length_cap;
      universe = enumerate_all(tau, std::nullopt, pol, budget.enumeration_limit);
      universe_kind = Universe::Bounded;
      notes.push_back("factorization universe limited to length " +
                      std::to_string(budget.length_cap));
    }
    complete_idx.assign(R.size(), {});
    pumpable_complete.assign(R.size(), std::nullopt);
    for (auto t : R.nonunits()) {
      auto const& list = universe.by_target[idx(t)];
      for (std::size_t i = 0; i < list.size(); ++i) {
        if (!cls.complete_fast(list[i].factors)) continue;
        complete_idx[idx(t)].push_back(i);
        if (universe_kind == Universe::Saturated && !pumpable_complete[idx(t)] && pumpable(list[i]))
          pumpable_complete[idx(t)] = i;
      }
    }
  }

  // Distinct factor multisets of the universe, in canonical order.
  std::vector<std::vector<ElementId>> universe_multisets() {
    ensure_universe();
    std::set<std::vector<ElementId>> s;
    for (auto t : ring().nonunits())
      for (auto const& f : universe.by_target[idx(t)]) s.insert(f.factors);
    return {s.begin(), s.end()};
  }

  std::vector<ElementId> const& divisors(ElementId a, bool nontrivial) {
    auto& slot = (nontrivial ? divisors_nontrivial : divisors_any);
    if (slot.empty()) slot.resize(ring().size());
    auto& cell = slot[idx(a)];
    if (cell) return *cell;
    std::vector<ElementId> out;
    for (auto b : ring().nonzero_nonunits()) {
      if (!ring().divides(b, a)) continue;
      SearchConstraints c;
      c.min_length = nontrivial ? 2 : 1;
      c.required = b;
      if (exists_factorization(tau, a, c, budget).is_true()) out.push_back(b);
    }
    cell = std::move(out);
    return *cell;
  }

  AlphaLists& alpha_lists(AtomKind kind) {
    auto it = alpha.find(kind);
    if (it != alpha.end()) return it->second;
    auto const& R = ring();
    AlphaLists lists;
    auto const& grade = cls.grade_set(kind);
    SearchConstraints c;
    c.allowed = grade;
    for (auto a : R.nonunits()) {
      auto v = detect_pump(tau, a, c, budget);
      if (v.is_true()) {
        lists.pump = v;
        break;
      }
      if (!v.decided()) lists.exact = false;
    }
    if (!lists.pump) {
      ExponentPolicy pol;
      pol.kind = lists.exact ? ExponentPolicy::Kind::BelowIndex : ExponentPolicy::Kind::LengthCap;
      pol.length_cap = budget.length_cap;
      lists.table = enumerate_all(tau, grade, pol, budget.enumeration_limit);
      if (lists.table.truncated) lists.exact = false;
    }
    return alpha.emplace(kind, std::move(lists)).first->second;
  }
};

PropertyChecker::PropertyChecker(TauRelation const& tau, SearchBudget budget)
    : impl_(std::make_unique<Impl>(tau, budget)) {}

PropertyChecker::~PropertyChecker() = default;

TauRelation const& PropertyChecker::tau() const noexcept { return impl_->tau; }
Classifier& PropertyChecker::classifier() { return impl_->cls; }

std::string PropertyChecker::instance_label() const {
  return impl_->ring().label() + "/" + impl_->tau.label();
}

TauProfile const& PropertyChecker::profile() {
  if (!impl_->profile) impl_->profile = analyze_tau(impl_->tau, impl_->budget);
  return *impl_->profile;
}

namespace {

PropertyChecker& plain_of(PropertyChecker& self, std::unique_ptr<TauRelation>& full,
                          std::unique_ptr<PropertyChecker>& plain, SearchBudget const& b) {
  if (self.tau().is_full()) return self;
  if (!plain) {
    full = std::make_unique<TauRelation>(full_tau(self.tau().ring_ptr()));
    plain = std::make_unique<PropertyChecker>(*full, b);
  }
  return *plain;
}

}  // namespace

Verdict PropertyChecker::atomic_ring(AtomKind kind) {
  auto& I = *impl_;
  auto const key = "tau-" + kind_name(kind);
  if (auto it = I.memo.find(key); it != I.memo.end()) return it->second;
  auto const& R = I.ring();
  Verdict result = Verdict::yes("every nonunit has a " + kind_name(kind) + " factorization");
  if (kind != AtomKind::Complete) {
    SearchConstraints c;
    c.allowed = I.cls.grade_set(kind);
    for (auto a : R.nonunits()) {
      if (!exists_factorization(I.tau, a, c, I.budget).is_true()) {
        result = Verdict::no(element_witness(R, a, "has no " + kind_name(kind) + " factorization"));
        break;
      }
    }
  } else {
    SearchConstraints unref;
    unref.allowed = I.cls.grade_set(AtomKind::UnrefinablyAtomic);
    for (auto a : R.nonunits()) {
      // Unrefinably atomic factorizations are complete.
      if (exists_factorization(I.tau, a, unref, I.budget).is_true()) continue;
      I.ensure_universe();
      if (!I.complete_idx[idx(a)].empty()) continue;
      if (I.universe_kind == Impl::Universe::Bounded) {
        result = weakest(result, Verdict::undecided(I.budget, "no complete factorization of " +
                                                                   R.display(a) + " within bounds"));
        continue;
      }
      result = Verdict::no(element_witness(R, a, "has no complete factorization"));
      break;
    }
  }
  I.memo.emplace(key, result);
  return result;
}

Verdict PropertyChecker::atomicable_ring(AtomKind kind) {
  auto& I = *impl_;
  auto const key = "tau-" + kind_name(kind, true);
  if (auto it = I.memo.find(key); it != I.memo.end()) return it->second;
  auto const& R = I.ring();
  auto const grade_kind = kind == AtomKind::Complete ? AtomKind::UnrefinablyAtomic : kind;
  auto const& grade = I.cls.grade_set(grade_kind);
  bool const all_graded = std::all_of(R.nonzero_nonunits().begin(), R.nonzero_nonunits().end(),
                                      [&](ElementId b) {
                                        return std::find(grade.begin(), grade.end(), b) != grade.end();
                                      });
  Verdict result;
  if (all_graded) {
    result = Verdict::yes("every element of R# is " + kind_name(grade_kind));
  } else if (kind != AtomKind::Complete) {
    result = Verdict::yes("every factorization refines into the grade");
    for (auto const& m : I.universe_multisets()) {
      if (I.cls.refines_into_grade(m, kind)) continue;
      ElementId prod = R.one();
      for (auto x : m) prod = R.mul(prod, x);
      Witness w;
      w.factorization = Factorization{prod, R.one(), m};
      w.description = "no refinement into " + kind_name(kind) + " elements";
      result = Verdict::no(std::move(w));
      break;
    }
    if (result.is_true() && I.universe_kind == Impl::Universe::Bounded)
      result = Verdict::up_to(I.budget, "checked factorizations up to the length cap");
  } else if (I.bfr().is_true()) {
    result = Verdict::yes("lengths are bounded, so a longest refinement exists and is complete");
  } else if (auto complete = atomic_ring(AtomKind::Complete); complete.is_false()) {
    auto a = complete.witness->sequence.at(0);
    Witness w;
    w.factorization = Factorization{a, R.one(), {a}};
    w.description = "the trivial factorization of " + R.display(a) + " has no complete refinement";
    result = Verdict::no(std::move(w));
  } else if (atomicable_ring(AtomKind::UnrefinablyAtomic).is_true()) {
    result = Verdict::yes("unrefinably atomic refinements exist and are complete");
  } else {
    // Multisets refining into unrefinably irreducible factors are settled;
    // for the rest follow strictly longer refinements until a complete one
    // appears. A chain whose capped key repeats is only pumping a saturated
    // factor, so it is abandoned.
    bool unresolved = false;
    for (auto const& m : I.universe_multisets()) {
      if (I.cls.refines_into_grade(m, AtomKind::UnrefinablyAtomic)) continue;
      ElementId prod = R.one();
      for (auto x : m) prod = R.mul(prod, x);
      Factorization g{prod, R.one(), m};
      std::set<std::vector<ElementId>> keys;
      bool done = false;
      while (g.length() <= 2 * I.budget.length_cap && keys.insert(I.cls.capped_key(g.factors)).second) {
        if (I.cls.complete_fast(g.factors)) {
          done = true;
          break;
        }
        auto longer = find_longer_refinement(I.tau, g, I.budget);
        if (!longer.is_true() || !longer.witness->other) break;
        g = *longer.witness->other;
      }
      if (!done) {
        unresolved = true;
        break;
      }
    }
    result = unresolved
                 ? Verdict::undecided(I.budget, "some refinement chains found no complete factorization")
                 : Verdict::up_to(I.budget, "refinement chains reached complete factorizations");
  }
  I.memo.emplace(key, result);
  return result;
}

Verdict PropertyChecker::bfr(Variant v) {
  auto& I = *impl_;
  if (v == Variant::Plain) return plain_of(*this, I.full, I.plain, I.budget).bfr(Variant::Tau);
  if (v == Variant::Tau) return I.bfr();
  auto const key = std::string("tau-complete-BFR");
  if (auto it = I.memo.find(key); it != I.memo.end()) return it->second;
  Verdict result;
  if (I.bfr().is_true()) {
    result = Verdict::yes("every tau-factorization length is bounded");
  } else {
    I.ensure_universe();
    auto const& R = I.ring();
    result = Verdict::yes("no complete factorization can be pumped");
    for (auto t : R.nonunits()) {
      if (!I.pumpable_complete[idx(t)]) continue;
      auto const& f = I.universe.by_target[idx(t)][*I.pumpable_complete[idx(t)]];
      Witness w;
      w.factorization = f;
      w.pump = I.pump_of(f);
      w.other = pump_factorization(R, f, *w.pump, 1);
      w.description = "complete factorizations of " + R.display(t) + " have unbounded length";
      result = Verdict::no(std::move(w));
      break;
    }
    if (result.is_true() && I.universe_kind == Impl::Universe::Bounded)
      result = Verdict::up_to(I.budget, "complete factorizations checked up to the length cap");
    if (result.is_true()) {
      for (auto t : R.nonunits()) {
        std::size_t n = 0;
        for (auto i : I.complete_idx[idx(t)]) n = std::max(n, I.universe.by_target[idx(t)][i].length());
        I.counts[key][R.display(t)] = n;
      }
    }
  }
  I.memo.emplace(key, result);
  return result;
}

Verdict PropertyChecker::ffr(Variant v, AssocKind beta) {
  auto& I = *impl_;
  auto const& R = I.ring();
  std::string const prefix = v == Variant::Plain ? "" : v == Variant::Tau ? "tau-" : "tau-complete-";
  auto const key = prefix + beta_name(beta) + "-FFR";
  if (auto it = I.memo.find(key); it != I.memo.end()) return it->second;
  Verdict result = bfr(v);
  result.note = "finite ring: FFR holds exactly when BFR does" +
                (result.note.empty() ? std::string() : "; " + result.note);
  if (v == Variant::Plain) {
    auto& plain = plain_of(*this, I.full, I.plain, I.budget);
    plain.ffr(Variant::Tau, beta);
    auto& src = plain.impl_->counts;
    if (auto it = src.find("tau-" + beta_name(beta) + "-FFR"); it != src.end())
      I.counts[key] = it->second;
  } else if (result.is_true()) {
    I.ensure_universe();
    if (I.universe_kind != Impl::Universe::Bounded) {
      for (auto t : R.nonunits()) {
        std::vector<std::vector<ElementId>> fs;
        auto const& list = I.universe.by_target[idx(t)];
        if (v == Variant::Tau) {
          for (auto const& f : list)
            if (!f.trivial()) fs.push_back(f.factors);
        } else {
          for (auto i : I.complete_idx[idx(t)])
            if (!list[i].trivial()) fs.push_back(list[i].factors);
        }
        I.counts[key][R.display(t)] = count_factorization_classes(R, fs, beta);
      }
    }
  }
  I.memo.emplace(key, result);
  return result;
}

namespace {

// Condition (2) of HFR/UFR over explicit per-target lists.
Verdict uniqueness(FiniteRing const& R, std::vector<std::vector<Factorization>> const& lists,
                   std::optional<AssocKind> beta, bool exact, SearchBudget const& b) {
  for (auto t : R.nonunits()) {
    auto const& list = lists[idx(t)];
    for (std::size_t i = 0; i < list.size(); ++i) {
      for (std::size_t j = i + 1; j < list.size(); ++j) {
        bool const same = beta ? beta_equivalent(R, list[i].factors, list[j].factors, *beta)
                               : list[i].length() == list[j].length();
        if (same) continue;
        Witness w;
        w.factorization = list[i];
        w.other = list[j];
        w.description = beta ? "two factorizations of " + R.display(t) + " differ up to " +
                                   std::string(to_string(*beta))
                             : "two factorizations of " + R.display(t) + " differ in length";
        return Verdict::no(std::move(w));
      }
    }
  }
  if (exact) return Verdict::yes();
  return Verdict::up_to(b, "compared factorizations up to the length cap");
}

}  // namespace

Verdict PropertyChecker::ufr(bool able, AtomKind kind, AssocKind beta) {
  auto& I = *impl_;
  auto const key = "tau-" + kind_name(kind, able) + "-" + beta_name(beta) + "-UFR";
  if (auto it = I.memo.find(key); it != I.memo.end()) return it->second;
  auto const& R = I.ring();
  Verdict cond1 = able ? atomicable_ring(kind) : atomic_ring(kind);
  Verdict cond2;
  std::optional<AssocKind> const b = beta;
  std::vector<std::vector<Factorization>> lists(R.size());
  bool exact = true;
  std::optional<Verdict> pumped;
  if (kind != AtomKind::Complete) {
    auto& al = I.alpha_lists(kind);
    if (al.pump) {
      pumped = al.pump;
    } else {
      lists = al.table.by_target;
      exact = al.exact;
    }
  } else {
    I.ensure_universe();
    for (auto t : R.nonunits()) {
      if (I.pumpable_complete[idx(t)]) {
        auto const& f = I.universe.by_target[idx(t)][*I.pumpable_complete[idx(t)]];
        Witness w;
        w.factorization = f;
        w.pump = I.pump_of(f);
        pumped = Verdict::yes(std::move(w));
        break;
      }
      for (auto i : I.complete_idx[idx(t)]) lists[idx(t)].push_back(I.universe.by_target[idx(t)][i]);
    }
    exact = I.universe_kind != Impl::Universe::Bounded;
  }
  if (pumped) {
    Witness w = *pumped->witness;
    w.other = pump_factorization(R, *w.factorization, *w.pump, 1);
    w.description = "pumping gives " + kind_name(kind) + " factorizations of two lengths";
    cond2 = Verdict::no(std::move(w));
  } else {
    cond2 = uniqueness(R, lists, b, exact, I.budget);
  }
  Verdict result = cond1.is_false() ? cond1 : weakest(cond1, cond2);
  I.memo.emplace(key, result);
  return result;
}

Verdict PropertyChecker::hfr(bool able, AtomKind kind) {
  auto& I = *impl_;
  auto const key = "tau-" + kind_name(kind, able) + "-HFR";
  if (auto it = I.memo.find(key); it != I.memo.end()) return it->second;
  auto const& R = I.ring();
  Verdict cond1 = able ? atomicable_ring(kind) : atomic_ring(kind);
  std::vector<std::vector<Factorization>> lists(R.size());
  bool exact = true;
  std::optional<Verdict> pumped;
  if (kind != AtomKind::Complete) {
    auto& al = I.alpha_lists(kind);
    if (al.pump) pumped = al.pump;
    else {
      lists = al.table.by_target;
      exact = al.exact;
    }
  } else {
    I.ensure_universe();
    for (auto t : R.nonunits()) {
      if (I.pumpable_complete[idx(t)]) {
        Witness w;
        w.factorization = I.universe.by_target[idx(t)][*I.pumpable_complete[idx(t)]];
        w.pump = I.pump_of(*w.factorization);
        pumped = Verdict::yes(std::move(w));
        break;
      }
      for (auto i : I.complete_idx[idx(t)]) lists[idx(t)].push_back(I.universe.by_target[idx(t)][i]);
    }
    exact = I.universe_kind != Impl::Universe::Bounded;
  }
  Verdict cond2;
  if (pumped) {
    Witness w = *pumped->witness;
    w.other = pump_factorization(R, *w.factorization, *w.pump, 1);
    w.description = "pumping gives " + kind_name(kind) + " factorizations of two lengths";
    cond2 = Verdict::no(std::move(w));
  } else {
    cond2 = uniqueness(R, lists, std::nullopt, exact, I.budget);
  }
  Verdict result = cond1.is_false() ? cond1 : weakest(cond1, cond2);
  I.memo.emplace(key, result);
  return result;
}

Verdict PropertyChecker::wffr(bool plain, AssocKind beta) {
  auto& I = *impl_;
  if (plain) {
    auto& p = plain_of(*this, I.full, I.plain, I.budget);
    auto v = p.wffr(false, beta);
    auto& src = p.impl_->counts;
    if (auto it = src.find("tau-" + beta_name(beta) + "-WFFR"); it != src.end())
      I.counts[beta_name(beta) + "-WFFR"] = it->second;
    return v;
  }
  auto const key = "tau-" + beta_name(beta) + "-WFFR";
  if (auto it = I.memo.find(key); it != I.memo.end()) return it->second;
  auto const& R = I.ring();
  for (auto a : R.nonunits())
    I.counts[key][R.display(a)] = count_element_classes(R, I.divisors(a, true), beta);
  auto result = Verdict::yes("finite carrier");
  I.memo.emplace(key, result);
  return result;
}

Verdict PropertyChecker::df(AtomKind kind, AssocKind beta) {
  if (kind == AtomKind::Complete) return cdf(beta);
  auto& I = *impl_;
  auto const key = "tau-" + kind_name(kind) + "-" + beta_name(beta) + "-df";
  if (auto it = I.memo.find(key); it != I.memo.end()) return it->second;
  auto const& R = I.ring();
  auto const& grade = I.cls.grade_set(kind);
  for (auto a : R.nonunits()) {
    std::vector<ElementId> graded;
    for (auto b : I.divisors(a, false))
      if (std::find(grade.begin(), grade.end(), b) != grade.end()) graded.push_back(b);
    I.counts[key][R.display(a)] = count_element_classes(R, graded, beta);
  }
  auto result = Verdict::yes("finite carrier");
  I.memo.emplace(key, result);
  return result;
}

Verdict PropertyChecker::cdf(AssocKind beta) {
  auto& I = *impl_;
  auto const key = "tau-" + beta_name(beta) + "-cdf";
  if (auto it = I.memo.find(key); it != I.memo.end()) return it->second;
  auto const& R = I.ring();
  I.ensure_universe();
  for (auto a : R.nonunits()) {
    std::set<ElementId> members;
    for (auto i : I.complete_idx[idx(a)])
      for (auto x : I.universe.by_target[idx(a)][i].factors)
        if (R.in_rsharp(x)) members.insert(x);
    I.counts[key][R.display(a)] =
        count_element_classes(R, std::vector<ElementId>(members.begin(), members.end()), beta);
  }
  auto result = Verdict::yes(I.universe_kind == Impl::Universe::Bounded
                                 ? "finite carrier; counts limited to the length cap"
                                 : "finite carrier");
  I.memo.emplace(key, result);
  return result;
}

std::size_t PropertyChecker::longest_ideal_chain() {
  auto& I = *impl_;
  if (I.chain) return *I.chain;
  auto const& R = I.ring();
  std::vector<std::vector<ElementId>> ideals;
  for (auto a : R.elements()) {
    auto p = R.principal_ideal(a);
    if (std::find(ideals.begin(), ideals.end(), p) == ideals.end()) ideals.push_back(std::move(p));
  }
  auto strictly_inside = [](std::vector<ElementId> const& x, std::vector<ElementId> const& y) {
    return x.size() < y.size() && std::includes(y.begin(), y.end(), x.begin(), x.end());
  };
  // Kahn's algorithm on the strict-containment digraph: acyclicity check and
  // longest path together.
  std::size_t const m = ideals.size();
  std::vector<std::vector<std::size_t>> out(m);
  std::vector<std::size_t> indegree(m, 0), depth(m, 0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (strictly_inside(ideals[i], ideals[j])) {
        out[i].push_back(j);
        ++indegree[j];
      }
  std::vector<std::size_t> ready;
  for (std::size_t i = 0; i < m; ++i)
    if (indegree[i] == 0) ready.push_back(i);
  std::size_t processed = 0, best = 0;
  while (!ready.empty()) {
    auto i = ready.back();
    ready.pop_back();
    ++processed;
    best = std::max(best, depth[i]);
    for (auto j : out[i]) {
      depth[j] = std::max(depth[j], depth[i] + 1);
      if (--indegree[j] == 0) ready.push_back(j);
    }
  }
  if (processed != m) throw std::logic_error("principal ideal containment has a cycle");
  I.chain = best;
  return best;
}

Verdict PropertyChecker::tau_accp() {
  auto n = longest_ideal_chain();
  return Verdict::yes("finite carrier; longest strict chain of principal ideals has " +
                      std::to_string(n) + " steps");
}

std::optional<std::size_t> PropertyChecker::max_length(ElementId a) {
  impl_->bfr();
  return impl_->maxlen[idx(a)];
}

PropertyReport PropertyChecker::report() {
  auto& I = *impl_;
  PropertyReport rep;
  rep.instance = instance_label();
  rep.budget = I.budget;
  auto& P = rep.properties;
  for (bool able : {false, true})
    for (auto k : kAllKinds)
      P["tau-" + kind_name(k, able)] = able ? atomicable_ring(k) : atomic_ring(k);
  P["BFR"] = bfr(Variant::Plain);
  P["tau-BFR"] = bfr(Variant::Tau);
  P["tau-complete-BFR"] = bfr(Variant::TauComplete);
  for (auto beta : kBetas) {
    auto const b = beta_name(beta);
    P[b + "-FFR"] = ffr(Variant::Plain, beta);
    P["tau-" + b + "-FFR"] = ffr(Variant::Tau, beta);
    P["tau-complete-" + b + "-FFR"] = ffr(Variant::TauComplete, beta);
    P[b + "-WFFR"] = wffr(true, beta);
    P["tau-" + b + "-WFFR"] = wffr(false, beta);
    for (auto k : kIrreducibleKinds) P["tau-" + kind_name(k) + "-" + b + "-df"] = df(k, beta);
    P["tau-" + b + "-cdf"] = cdf(beta);
    for (bool able : {false, true})
      for (auto k : kAllKinds)
        P["tau-" + kind_name(k, able) + "-" + b + "-UFR"] = ufr(able, k, beta);
  }
  for (bool able : {false, true})
    for (auto k : kAllKinds) P["tau-" + kind_name(k, able) + "-HFR"] = hfr(able, k);
  P["tau-ACCP"] = tau_accp();
  rep.counts = I.counts;
  rep.counts["tau-ACCP"]["longest-chain"] = longest_ideal_chain();
  rep.notes = I.notes;
  return rep;
}

namespace {

struct Term {
  std::string label;
  Verdict v;
};

Term flag(std::string label, bool holds) {
  return {std::move(label), holds ? Verdict::yes() : Verdict::no_witness()};
}

Term both(Term a, Term b) { return {a.label + " and " + b.label, weakest(a.v, b.v)}; }

// Aggregates an arrow applied to many elements or factorizations.
struct Tally {
  std::string name;
  std::vector<std::string> hypotheses;
  std::size_t applied = 0;
  std::optional<std::string> counterexample;

  explicit Tally(std::string n, std::vector<std::string> h = {})
      : name(std::move(n)), hypotheses(std::move(h)) {}

  void apply(bool hyp, bool concl, std::function<std::string()> const& cex) {
    if (!hyp) return;
    ++applied;
    if (!concl && !counterexample) counterexample = cex();
  }

  ArrowResult result() const {
    ArrowResult r;
    r.name = name;
    r.applied = applied;
    if (applied > 0) r.hypotheses = hypotheses;
    r.status = counterexample ? ArrowStatus::Violated
               : applied > 0  ? ArrowStatus::Verified
                              : ArrowStatus::Vacuous;
    r.counterexample = counterexample;
    return r;
  }
};

// Equal verdict across a family of decided verdicts, or undecided.
Verdict all_equal(std::vector<Term> const& terms) {
  std::optional<std::size_t> t, f;
  bool undecided = false;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].v.is_true()) t = t.value_or(i);
    else if (terms[i].v.is_false()) f = f.value_or(i);
    else undecided = true;
  }
  if (t && f) {
    Witness w;
    w.description = terms[*t].label + " holds but " + terms[*f].label + " fails";
    return Verdict::no(std::move(w));
  }
  if (undecided) return Verdict::undecided({}, "some grades are undecided");
  return Verdict::yes();
}

}  // namespace

DiagramReport PropertyChecker::verify() {
  auto& I = *impl_;
  auto const& R = I.ring();
  auto const rep = report();
  DiagramReport out;
  out.instance = rep.instance;

  auto P = [&](std::string const& name) { return Term{name, rep.properties.at(name)}; };
  auto const& prof = profile();
  Term const refinable{"refinable", prof.refinable};
  Term const sa = flag("strongly-associate-ring", R.is_strongly_associate());
  Term const ps = flag("presimplifiable", R.is_presimplifiable());
  Term const ap = flag("associate-preserving", prof.associate_preserving[0]);

  auto arrow = [&](std::string name, std::vector<Term> const& hyps, Term const& concl) {
    ArrowResult r;
    r.name = std::move(name);
    r.applied = 1;
    bool any_false = false, all_true = true;
    for (auto const& h : hyps) {
      if (h.v.is_false()) any_false = true;
      if (!h.v.is_true()) all_true = false;
      if (h.v.is_true()) r.hypotheses.push_back(h.label);
    }
    if (any_false) {
      r.status = ArrowStatus::Vacuous;
      r.applied = 0;
    } else if (concl.v.is_true()) {
      r.status = ArrowStatus::Verified;
    } else if (all_true && concl.v.is_false()) {
      r.status = ArrowStatus::Violated;
      r.counterexample = concl.label + " fails: " + describe(R, concl.v);
    } else {
      r.status = ArrowStatus::SkippedUndecided;
    }
    out.arrows.push_back(std::move(r));
  };

  // Element-level diagram.
  {
    Tally e1{"element: very-strongly => unrefinably"}, e2{"element: unrefinably => strongly"},
        e3{"element: unrefinably => m"}, e4{"element: strongly => irreducible"},
        e5{"element: m => irreducible"},
        e6{"element: m => strongly", {"strongly-associate-ring"}},
        e7{"element: unrefinably is stable under strong associates"};
    for (auto a : R.nonunits()) {
      auto const& c = I.cls.element(a);
      auto cex = [&] { return R.display(a); };
      e1.apply(c.very_strongly_irreducible, c.unrefinably_irreducible, cex);
      e2.apply(c.unrefinably_irreducible, c.strongly_irreducible, cex);
      e3.apply(c.unrefinably_irreducible, c.m_irreducible, cex);
      e4.apply(c.strongly_irreducible, c.irreducible, cex);
      e5.apply(c.m_irreducible, c.irreducible, cex);
      e6.apply(c.m_irreducible && R.is_strongly_associate(), c.strongly_irreducible, cex);
      for (auto b : R.nonunits()) {
        if (b == a || !R.are_related(a, b, AssocKind::StrongAssociate)) continue;
        e7.apply(c.unrefinably_irreducible, I.cls.element(b).unrefinably_irreducible,
                 [&] { return R.display(a) + " and " + R.display(b); });
      }
    }
    for (auto const* t : {&e1, &e2, &e3, &e4, &e5, &e6, &e7}) out.arrows.push_back(t->result());
  }

  // Factorization-level diagram over every factorization of length <= 4.
  {
    ExponentPolicy pol;
    pol.kind = ExponentPolicy::Kind::LengthCap;
    pol.length_cap = 4;
    auto table = enumerate_all(I.tau, std::nullopt, pol, I.budget.enumeration_limit);
    std::set<std::vector<ElementId>> seen;
    bool const ref = prof.refinable.is_true();
    Tally f1{"factorization: very-strongly-atomic => unrefinably-atomic"},
        f2{"factorization: unrefinably-atomic => complete"},
        f3{"factorization: unrefinably-atomic => strongly-atomic"},
        f4{"factorization: unrefinably-atomic => m-atomic"},
        f5{"factorization: strongly-atomic => atomic"}, f6{"factorization: m-atomic => atomic"},
        f7{"factorization: complete => unrefinably-atomic, strongly-atomic, m-atomic",
           {"refinable"}},
        f8{"factorization: m-atomic => strongly-atomic", {"strongly-associate-ring"}},
        f9{"factorization: all six grades coincide", {"presimplifiable", "refinable"}},
        f10{"factorization: refining by complete factorizations gives a complete one",
            {"refinable"}};
    // First complete factorization of length <= 3 per element.
    std::vector<std::optional<Factorization>> complete_of(R.size());
    for (auto t : R.nonunits())
      for (auto const& g : table.by_target[idx(t)])
        if (g.length() <= 3 && I.cls.complete_fast(g.factors)) {
          complete_of[idx(t)] = g;
          break;
        }
    for (auto t : R.nonunits()) {
      for (auto const& f : table.by_target[idx(t)]) {
        if (!seen.insert(f.factors).second) continue;
        auto c = I.cls.classify(f);
        bool const complete = c.complete.is_true();
        auto cex = [&] { return format_factorization(R, f); };
        f1.apply(c.very_strongly_atomic, c.unrefinably_atomic, cex);
        f2.apply(c.unrefinably_atomic, complete, cex);
        f3.apply(c.unrefinably_atomic, c.strongly_atomic, cex);
        f4.apply(c.unrefinably_atomic, c.m_atomic, cex);
        f5.apply(c.strongly_atomic, c.atomic, cex);
        f6.apply(c.m_atomic, c.atomic, cex);
        f7.apply(ref && complete, c.unrefinably_atomic && c.strongly_atomic && c.m_atomic, cex);
        f8.apply(c.m_atomic && R.is_strongly_associate(), c.strongly_atomic, cex);
        bool const collapse = c.atomic == c.strongly_atomic && c.atomic == c.m_atomic &&
                              c.atomic == c.unrefinably_atomic &&
                              c.atomic == c.very_strongly_atomic && c.atomic == complete;
        f9.apply(ref && R.is_presimplifiable(), collapse, cex);
        if (ref && f.length() <= 3 &&
            std::all_of(f.factors.begin(), f.factors.end(),
                        [&](ElementId x) { return complete_of[idx(x)].has_value(); })) {
          std::vector<ElementId> parts;
          for (auto x : f.factors)
            parts.insert(parts.end(), complete_of[idx(x)]->factors.begin(),
                         complete_of[idx(x)]->factors.end());
          auto g = make_factorization(R, f.target, parts);
          bool ok = g && !validate_factorization(I.tau, *g) && is_complete(I.tau, *g, I.budget).is_true();
          f10.apply(true, ok, [&] {
            return format_factorization(R, f) + " refined to " +
                   (g ? format_factorization(R, *g) : std::string("an invalid product"));
          });
        }
      }
    }
    for (auto const* t : {&f1, &f2, &f3, &f4, &f5, &f6, &f7, &f8, &f9, &f10})
      out.arrows.push_back(t->result());
  }

  auto K = [&](AtomKind k, bool able = false) { return P("tau-" + kind_name(k, able)); };
  using AK = AtomKind;

  // Ring-level grades.
  for (bool able : {false, true}) {
    std::string const g = able ? "big-theorem(" : "big-theorem(";
    int const o = able ? 8 : 0;
    auto n = [&](int i) { return g + std::to_string(i + o) + ")"; };
    arrow(n(1), {K(AK::VeryStronglyAtomic, able)}, K(AK::UnrefinablyAtomic, able));
    arrow(n(2), {K(AK::UnrefinablyAtomic, able)}, K(AK::Complete, able));
    arrow(n(3), {refinable, K(AK::Complete, able)}, K(AK::UnrefinablyAtomic, able));
    arrow(n(4), {refinable, K(AK::Complete, able)}, K(AK::StronglyAtomic, able));
    arrow(n(5), {refinable, K(AK::Complete, able)}, K(AK::MAtomic, able));
    arrow(n(6), {K(AK::MAtomic, able), sa}, K(AK::StronglyAtomic, able));
    arrow(n(7), {K(AK::MAtomic, able)}, K(AK::Atomic, able));
    arrow(n(8), {K(AK::StronglyAtomic, able)}, K(AK::Atomic, able));
  }
  for (auto k : kAllKinds) {
    arrow("big-theorem(17)[" + kind_name(k, true) + "]", {K(k, true)}, K(k));
    arrow("big-theorem(18)[" + kind_name(k, true) + "]", {refinable, K(k)}, K(k, true));
  }
  for (bool able : {false, true}) {
    std::vector<Term> grades;
    for (auto k : kAllKinds) grades.push_back(K(k, able));
    arrow(std::string("big-theorem(") + (able ? "9-16" : "1-8") + ") collapse", {ps, refinable},
          Term{"the six ring grades agree", all_equal(grades)});
  }

  for (std::size_t i = 0; i < kAllKinds.size(); ++i) {
    // Listed from very strongly atomic down to atomic.
    static constexpr std::array<AtomKind, 6> order = {AK::VeryStronglyAtomic, AK::UnrefinablyAtomic,
                                                      AK::Complete, AK::MAtomic,
                                                      AK::StronglyAtomic, AK::Atomic};
    auto const k = order[i];
    auto const n = "accp-theorem(" + std::to_string(i + 1) + ")";
    arrow(n + "[" + kind_name(k) + "]", {refinable, ap, P("tau-ACCP")}, K(k));
    arrow(n + "[" + kind_name(k, true) + "]", {refinable, ap, P("tau-ACCP")}, K(k, true));
  }

  for (auto beta : kBetas) {
    auto const b = beta_name(beta);
    auto const B = "[" + b + "]";
    auto ufr = [&](AtomKind k, bool able) { return P("tau-" + kind_name(k, able) + "-" + b + "-UFR"); };
    auto hfr = [&](AtomKind k, bool able) { return P("tau-" + kind_name(k, able) + "-HFR"); };
    auto dfp = [&](AtomKind k) {
      return k == AK::Complete ? P("tau-" + b + "-cdf") : P("tau-" + kind_name(k) + "-" + b + "-df");
    };
    auto const ffr = P("tau-" + b + "-FFR");
    auto const cffr = P("tau-complete-" + b + "-FFR");
    auto const wffr = P("tau-" + b + "-WFFR");
    auto const cdf = P("tau-" + b + "-cdf");

    arrow("usual-diagram(1)" + B, {ufr(AK::UnrefinablyAtomic, false)}, hfr(AK::UnrefinablyAtomic, false));
    arrow("usual-diagram(2)" + B, {refinable, ufr(AK::UnrefinablyAtomic, false)}, ffr);
    arrow("usual-diagram(4)" + B, {wffr}, dfp(AK::UnrefinablyAtomic));
    arrow("usual-diagram(5)" + B, {refinable, wffr},
          both(K(AK::UnrefinablyAtomic), dfp(AK::UnrefinablyAtomic)));
    arrow("usual-diagram: FFR => BFR" + B, {ffr}, P("tau-BFR"));

    for (auto k : kIrreducibleKinds) {
      auto const a = "[" + kind_name(k, true) + "," + b + "]";
      arrow("ufr-to-hfr(1)" + a, {ufr(k, true)}, hfr(k, true));
      arrow("ufr-to-hfr(2)" + a, {refinable, ufr(k, true)}, ffr);
      arrow("ufr-to-hfr(3)" + a, {ufr(k, true)}, both(K(k, true), dfp(k)));
      arrow("ufr-to-hfr(5)" + a, {K(k, true), dfp(k)}, dfp(k));
      arrow("ufr-to-hfr(6)" + a, {refinable, wffr}, both(K(k, true), dfp(k)));
    }

    for (bool able : {false, true})
      for (auto k : kAllKinds)
        arrow("ufr-implies-hfr[" + kind_name(k, able) + "," + b + "]", {ufr(k, able)}, hfr(k, able));

    for (bool able : {false, true}) {
      auto const a = "[" + kind_name(AK::Complete, able) + "," + b + "]";
      arrow("main-diagram(1)" + a, {ufr(AK::Complete, able)}, hfr(AK::Complete, able));
      arrow("main-diagram(2)" + a, {ufr(AK::Complete, able)}, cffr);
      arrow("main-diagram(3)" + a, {ufr(AK::Complete, able)}, both(K(AK::Complete, able), cdf));
      arrow("main-diagram(4)" + a, {hfr(AK::Complete, able)}, P("tau-complete-BFR"));
      std::vector<Term> gate = able ? std::vector<Term>{K(AK::Complete, true)}
                                    : std::vector<Term>{K(AK::Complete), refinable};
      auto with = [&](Term t) {
        auto g = gate;
        g.push_back(std::move(t));
        return g;
      };
      arrow("main-diagram(7)" + a, with(cffr), both(K(AK::Complete, able), cdf));
      arrow("main-diagram(8)" + a, with(P("tau-complete-BFR")), P("tau-ACCP"));
    }
    arrow("main-diagram(5)" + B, {cffr}, P("tau-complete-BFR"));
    arrow("main-diagram(6)" + B, {cffr}, cdf);

    arrow("complete-ffr(1)" + B, {P(b + "-FFR")}, ffr);
    arrow("complete-ffr(2)" + B, {ffr}, cffr);
    arrow("complete-ffr(3)" + B, {K(AK::Complete), refinable, cffr}, ffr);
    arrow("complete-ffr(4)" + B, {K(AK::Complete, true), cffr}, ffr);

    arrow("cdf-theorem(1)" + B, {P(b + "-WFFR")}, wffr);
    arrow("cdf-theorem(2)" + B, {wffr}, cdf);
    arrow("cdf-theorem(3)" + B, {dfp(AK::Atomic)}, cdf);
    arrow("cdf-theorem(4)" + B, {dfp(AK::StronglyAtomic)}, cdf);
    arrow("cdf-theorem(5)" + B, {refinable, dfp(AK::MAtomic)}, cdf);

    std::vector<std::pair<std::string, std::vector<Term>>> cdf_sources = {
        {"(1)", {P(b + "-FFR")}},
        {"(2)", {ffr}},
        {"(3)", {cffr}},
        {"(4)", {ufr(AK::Complete, false)}},
        {"(4')", {ufr(AK::Complete, true)}},
        {"(5)", {P(b + "-WFFR")}},
        {"(6)", {wffr}},
        {"(7)", {dfp(AK::Atomic)}},
        {"(7')", {dfp(AK::StronglyAtomic)}},
        {"(8)", {sa, dfp(AK::MAtomic)}},
    };
    for (auto const& [n, hyps] : cdf_sources) arrow("cdf-corollary" + n + B, hyps, cdf);

    for (auto k : kAllKinds) {
      auto const a = "[" + kind_name(k, true) + "," + b + "]";
      arrow("able-to-not(UFR)" + a, {ufr(k, true)}, ufr(k, false));
      arrow("able-to-not(HFR)" + a, {hfr(k, true)}, hfr(k, false));
      arrow("able-to-not(df)" + a, {K(k, true), dfp(k)}, both(K(k), dfp(k)));
      arrow("able-to-not converse(UFR)" + a, {refinable, ufr(k, false)}, ufr(k, true));
      arrow("able-to-not converse(HFR)" + a, {refinable, hfr(k, false)}, hfr(k, true));
      arrow("able-to-not converse(df)" + a, {refinable, K(k), dfp(k)}, both(K(k, true), dfp(k)));
    }
  }

  arrow("usual-diagram(3)", {refinable, P("tau-unrefinably-atomic-HFR")}, P("tau-BFR"));
  arrow("usual-diagram(6)", {refinable, P("tau-ACCP")}, K(AK::UnrefinablyAtomic));
  arrow("usual-diagram: BFR => ACCP", {refinable, P("tau-BFR")}, P("tau-ACCP"));
  for (auto k : kIrreducibleKinds)
    arrow("usual-diagram: ACCP => " + kind_name(k), {refinable, P("tau-ACCP")}, K(k));
  for (auto k : kIrreducibleKinds)
    arrow("ufr-to-hfr(4)[" + kind_name(k, true) + "]", {refinable, P("tau-" + kind_name(k, true) + "-HFR")},
          P("tau-BFR"));

  arrow("complete-bfr(1)", {P("BFR")}, P("tau-BFR"));
  arrow("complete-bfr(2)", {P("tau-BFR")}, P("tau-complete-BFR"));
  arrow("complete-bfr(3)", {K(AK::Complete), refinable, P("tau-complete-BFR")}, P("tau-BFR"));
  arrow("complete-bfr(4)", {K(AK::Complete, true), P("tau-complete-BFR")}, P("tau-BFR"));

  arrow("tau-relation: divisive => refinable", {flag("divisive", prof.divisive)}, refinable);
  arrow("tau-relation: multiplicative => combinable", {flag("multiplicative", prof.multiplicative)},
        Term{"combinable", prof.combinable});
  return out;
}

}  // namespace tauforge
