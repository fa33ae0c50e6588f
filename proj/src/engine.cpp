#include "tauforge/engine.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <unordered_map>

namespace tauforge {

// ---------------------------------------------------------------------------
// Definition-level helpers (independent of the search)
// ---------------------------------------------------------------------------

bool is_tau_sequence(TauRelation const& tau, std::vector<ElementId> const& factors) {
  if (factors.size() < 2) return true;
  auto const& R = tau.ring();
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (!R.in_rsharp(factors[i])) return false;
    for (std::size_t j = i + 1; j < factors.size(); ++j)
      if (!tau.related(factors[i], factors[j])) return false;
  }
  return true;
}

std::optional<std::string> validate_factorization(TauRelation const& tau, Factorization const& f) {
  auto const& R = tau.ring();
  if (R.is_unit(f.target)) return "target is a unit";
  if (!R.is_unit(f.unit)) return "coefficient is not a unit";
  if (f.factors.empty()) return "no factors";
  ElementId prod = f.unit;
  for (auto x : f.factors) prod = R.mul(prod, x);
  if (prod != f.target) return "unit times product does not equal target";
  if (f.factors.size() == 1) {
    if (R.is_unit(f.factors[0])) return "single factor is a unit";
    return std::nullopt;
  }
  for (std::size_t i = 0; i < f.factors.size(); ++i) {
    if (!R.in_rsharp(f.factors[i])) return "factor " + R.display(f.factors[i]) + " not in R#";
    for (std::size_t j = 0; j < f.factors.size(); ++j) {
      if (i != j && !tau.related(f.factors[i], f.factors[j])) {
        return "factors at positions " + std::to_string(i) + " and " + std::to_string(j) +
               " are not tau-related";
      }
    }
  }
  return std::nullopt;
}

std::optional<Factorization> make_factorization(FiniteRing const& ring, ElementId target,
                                                std::vector<ElementId> factors) {
  std::sort(factors.begin(), factors.end());
  ElementId prod = ring.one();
  for (auto x : factors) prod = ring.mul(prod, x);
  auto u = ring.unit_quotient(target, prod);
  if (!u) return std::nullopt;
  return Factorization{target, *u, std::move(factors)};
}

std::string format_factorization(FiniteRing const& ring, Factorization const& f) {
  std::string s = ring.display(f.target) + " = " + ring.display(f.unit);
  for (auto x : f.factors) s += "*" + ring.display(x);
  return s;
}

Factorization pump_factorization(FiniteRing const& ring, Factorization const& f, Pump const& p,
                                 std::size_t k) {
  auto factors = f.factors;
  factors.insert(factors.end(), k * p.period, p.element);
  auto out = make_factorization(ring, f.target, std::move(factors));
  if (!out) throw std::logic_error("pump does not preserve the product");
  return *out;
}

std::vector<Factorization> enumerate_naive(TauRelation const& tau, ElementId target,
                                           std::size_t max_len) {
  auto const& R = tau.ring();
  std::vector<Factorization> out;
  if (R.is_unit(target) || max_len == 0) return out;
  for (auto b : R.nonunits()) {
    if (R.are_related(target, b, AssocKind::StrongAssociate)) {
      out.push_back(Factorization{target, *R.unit_quotient(target, b), {b}});
    }
  }
  auto const& rs = R.nonzero_nonunits();
  std::vector<ElementId> cur;
  // Multisets as non-decreasing sequences over R#.
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (cur.size() >= 2) {
      bool ok = true;
      for (std::size_t i = 0; i < cur.size() && ok; ++i)
        for (std::size_t j = i + 1; j < cur.size() && ok; ++j) ok = tau.related(cur[i], cur[j]);
      if (ok) {
        ElementId prod = R.one();
        for (auto x : cur) prod = R.mul(prod, x);
        if (auto u = R.unit_quotient(target, prod)) out.push_back(Factorization{target, *u, cur});
      }
    }
    if (cur.size() == max_len) return;
    for (std::size_t k = start; k < rs.size(); ++k) {
      cur.push_back(rs[k]);
      self(self, k);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end(), [](auto const& x, auto const& y) {
    return std::pair(x.factors.size(), x.factors) < std::pair(y.factors.size(), y.factors);
  });
  return out;
}

// ---------------------------------------------------------------------------
// Cliques
// ---------------------------------------------------------------------------

std::vector<std::vector<ElementId>> maximal_cliques(TauRelation const& tau,
                                                    std::vector<ElementId> const& candidates) {
  std::vector<std::vector<ElementId>> out;
  std::size_t const k = candidates.size();
  if (k == 0) return out;
  if (k > 64) throw SpecError("search supports at most 64 candidate factors");
  std::vector<std::uint64_t> adj(k, 0);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (i != j && tau.related(candidates[i], candidates[j])) adj[i] |= std::uint64_t{1} << j;

  auto bk = [&](auto&& self, std::uint64_t r, std::uint64_t p, std::uint64_t x) -> void {
    if (p == 0 && x == 0) {
      std::vector<ElementId> c;
      for (std::size_t i = 0; i < k; ++i)
        if (r >> i & 1) c.push_back(candidates[i]);
      out.push_back(std::move(c));
      return;
    }
    std::uint64_t px = p | x;
    std::size_t pivot = static_cast<std::size_t>(std::countr_zero(px));
    int best = -1;
    for (std::uint64_t t = px; t; t &= t - 1) {
      auto u = static_cast<std::size_t>(std::countr_zero(t));
      int c = std::popcount(p & adj[u]);
      if (c > best) {
        best = c;
        pivot = u;
      }
    }
    for (std::uint64_t t = p & ~adj[pivot]; t; t &= t - 1) {
      auto v = static_cast<std::size_t>(std::countr_zero(t));
      std::uint64_t const bit = std::uint64_t{1} << v;
      self(self, r | bit, p & adj[v], x & adj[v]);
      p &= ~bit;
      x |= bit;
    }
  };
  std::uint64_t all = k == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1;
  bk(bk, 0, all, 0);
  for (auto& c : out) std::sort(c.begin(), c.end());
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Layered product search over one clique
// ---------------------------------------------------------------------------

namespace {

constexpr std::uint64_t kRequiredFlag = 1;
constexpr std::uint64_t kPumpFlag = 2;

// key: value [0,16) | len [16,32) | flags [32,40) | mask [40,64)
struct Key {
  static std::uint64_t make(std::size_t value, std::size_t len, std::uint64_t flags,
                            std::uint64_t mask) {
    return std::uint64_t(value) | std::uint64_t(len) << 16 | flags << 32 | mask << 40;
  }
  static std::size_t value(std::uint64_t k) { return k & 0xffff; }
  static std::size_t len(std::uint64_t k) { return k >> 16 & 0xffff; }
  static std::uint64_t flags(std::uint64_t k) { return k >> 32 & 0xff; }
  static std::uint64_t mask(std::uint64_t k) { return k >> 40; }
};
constexpr std::size_t kMaxMaskBits = 24;

struct Node {
  std::uint64_t key;
  std::int32_t parent;
  std::uint32_t exp;
};

struct ExponentRange {
  std::size_t lo = 1;
  std::size_t hi = 1;
};

struct LayerPlan {
  std::vector<ElementId> clique;
  std::vector<ExponentRange> ranges;  // parallel to clique; hi == 0 means skip
  std::vector<int> mask_bit;          // -1 when untracked
  std::size_t sat = 1;
  std::optional<ElementId> required;
};

using Layers = std::vector<std::vector<Node>>;

Layers run_layers(FiniteRing const& R, TauRelation const& tau, LayerPlan const& plan) {
  Layers layers(plan.clique.size() + 1);
  layers[0].push_back(Node{Key::make(idx(R.one()), 0, 0, 0), -1, 0});
  std::unordered_map<std::uint64_t, std::int32_t> seen;
  for (std::size_t k = 0; k < plan.clique.size(); ++k) {
    auto const v = plan.clique[k];
    auto const& prev = layers[k];
    auto& next = layers[k + 1];
    seen.clear();
    auto push = [&](std::uint64_t key, std::int32_t parent, std::uint32_t e) {
      if (seen.emplace(key, static_cast<std::int32_t>(next.size())).second)
        next.push_back(Node{key, parent, e});
    };
    bool const self = tau.self_related(v);
    std::size_t const index = R.power_index(v);
    for (std::size_t p = 0; p < prev.size(); ++p) push(prev[p].key, static_cast<std::int32_t>(p), 0);
    auto const range = plan.ranges[k];
    if (range.hi == 0) continue;
    std::uint64_t const bit =
        plan.mask_bit[k] >= 0 ? std::uint64_t{1} << plan.mask_bit[k] : 0;
    std::uint64_t const req = plan.required && *plan.required == v ? kRequiredFlag : 0;
    for (std::size_t p = 0; p < prev.size(); ++p) {
      auto const key = prev[p].key;
      if (bit && (Key::mask(key) & bit)) continue;
      ElementId val = elem(Key::value(key));
      ElementId pw = R.power(v, range.lo - 1);
      for (std::size_t e = range.lo; e <= range.hi; ++e) {
        pw = R.mul(pw, v);
        std::uint64_t flags = Key::flags(key) | req;
        if (self && e >= index) flags |= kPumpFlag;
        auto const len = std::min(plan.sat, Key::len(key) + e);
        push(Key::make(idx(R.mul(val, pw)), len, flags, Key::mask(key) | bit),
             static_cast<std::int32_t>(p), static_cast<std::uint32_t>(e));
      }
    }
  }
  return layers;
}

std::vector<ElementId> backtrack(Layers const& layers, std::vector<ElementId> const& clique,
                                 std::size_t node) {
  std::vector<ElementId> factors;
  for (std::size_t k = layers.size() - 1; k > 0; --k) {
    auto const& n = layers[k][node];
    factors.insert(factors.end(), n.exp, clique[k - 1]);
    node = static_cast<std::size_t>(n.parent);
  }
  std::sort(factors.begin(), factors.end());
  return factors;
}

ElementId product_of(FiniteRing const& R, std::vector<ElementId> const& factors) {
  ElementId p = R.one();
  for (auto x : factors) p = R.mul(p, x);
  return p;
}

bool contains(std::vector<ElementId> const& v, ElementId e) {
  return std::find(v.begin(), v.end(), e) != v.end();
}

std::vector<ElementId> candidates_for(TauRelation const& tau, ElementId target,
                                      SearchConstraints const& c) {
  auto const& R = tau.ring();
  std::vector<ElementId> out;
  for (auto b : R.nonzero_nonunits()) {
    if (!R.divides(b, target)) continue;
    if (c.allowed && !contains(*c.allowed, b)) continue;
    if (contains(c.forbidden, b)) continue;
    out.push_back(b);
  }
  return out;
}

bool zero_trivial_allowed(FiniteRing const& R, ElementId target, SearchConstraints const& c) {
  if (target != R.zero() || c.min_length > 1) return false;
  if (c.allowed && !contains(*c.allowed, R.zero())) return false;
  if (contains(c.forbidden, R.zero())) return false;
  return !c.required || *c.required == R.zero();
}

enum class RangeMode { Cycle, BelowIndex };

// Exponent range for a clique member. Cycle covers every (value, saturated
// length, pump flag) class: beyond index + period + sat everything repeats.
ExponentRange range_for(FiniteRing const& R, TauRelation const& tau, ElementId v, std::size_t sat,
                        RangeMode mode, std::size_t cap, bool& truncated) {
  if (!tau.self_related(v)) return {1, 1};
  std::size_t const index = R.power_index(v);
  if (mode == RangeMode::BelowIndex) return {1, index > 1 ? index - 1 : 0};
  std::size_t hi = index + R.power_period(v) + sat;
  if (cap < hi) {
    hi = cap;
    truncated = true;
  }
  return {1, hi};
}

struct GroupQuery {
  ElementId target;
  std::size_t min_length = 1;
  std::optional<ElementId> required;
  bool need_pump = false;
};

struct GroupHit {
  std::vector<ElementId> factors;
};

struct GroupScan {
  std::vector<std::vector<ElementId>> cliques;
  std::vector<std::vector<ExponentRange>> ranges;
};

GroupScan plan_group(TauRelation const& tau, std::vector<ElementId> const& cands,
                     GroupQuery const& q, std::size_t cap, bool& truncated) {
  auto const& R = tau.ring();
  std::size_t const sat = std::max<std::size_t>(q.min_length, 1);
  GroupScan scan;
  for (auto const& clique : maximal_cliques(tau, cands)) {
    if (q.required && !contains(clique, *q.required)) continue;
    if (q.need_pump && std::none_of(clique.begin(), clique.end(),
                                    [&](ElementId v) { return tau.self_related(v); })) {
      continue;
    }
    std::vector<ExponentRange> ranges;
    // sat + 1 leaves room for the exact-length pass below.
    for (auto v : clique)
      ranges.push_back(range_for(R, tau, v, sat + 1, RangeMode::Cycle, cap, truncated));
    scan.cliques.push_back(clique);
    scan.ranges.push_back(std::move(ranges));
  }
  return scan;
}

// Best witness in one clique with saturation `sat`; `exact_len` demands that
// length exactly (it must be below sat).
std::optional<std::vector<ElementId>> scan_clique(TauRelation const& tau,
                                                  std::vector<ElementId> const& clique,
                                                  std::vector<ExponentRange> const& ranges,
                                                  GroupQuery const& q, std::size_t sat,
                                                  std::optional<std::size_t> exact_len) {
  auto const& R = tau.ring();
  LayerPlan plan;
  plan.clique = clique;
  plan.sat = sat;
  plan.required = q.required;
  plan.mask_bit.assign(clique.size(), -1);
  plan.ranges = ranges;
  auto layers = run_layers(R, tau, plan);
  auto const& last = layers.back();
  std::optional<std::pair<bool, std::vector<ElementId>>> best;
  for (std::size_t i = 0; i < last.size(); ++i) {
    auto const key = last[i].key;
    auto const len = Key::len(key);
    if (exact_len ? len != *exact_len : len < sat) continue;
    if (q.required && !(Key::flags(key) & kRequiredFlag)) continue;
    if (q.need_pump && !(Key::flags(key) & kPumpFlag)) continue;
    auto const value = elem(Key::value(key));
    if (!R.unit_quotient(q.target, value)) continue;
    std::pair<bool, std::vector<ElementId>> cand{value != q.target, backtrack(layers, clique, i)};
    if (!best || cand < *best) best = std::move(cand);
  }
  if (!best) return std::nullopt;
  return std::move(best->second);
}

// Single-group search over every maximal clique of the candidates. The witness
// is a shortest one; ties prefer unit 1, then the lexicographically least
// factor list.
std::optional<GroupHit> search_group(TauRelation const& tau, std::vector<ElementId> const& cands,
                                     GroupQuery const& q, std::size_t cap, bool& truncated) {
  std::size_t const sat = std::max<std::size_t>(q.min_length, 1);
  auto scan = plan_group(tau, cands, q, cap, truncated);
  std::optional<std::size_t> upper;
  for (std::size_t k = 0; k < scan.cliques.size(); ++k) {
    auto hit = scan_clique(tau, scan.cliques[k], scan.ranges[k], q, sat, std::nullopt);
    if (hit && (!upper || hit->size() < *upper)) upper = hit->size();
  }
  if (!upper) return std::nullopt;
  for (std::size_t len = sat; len <= *upper; ++len) {
    std::optional<std::pair<bool, std::vector<ElementId>>> best;
    for (std::size_t k = 0; k < scan.cliques.size(); ++k) {
      auto hit = scan_clique(tau, scan.cliques[k], scan.ranges[k], q, len + 1, len);
      if (!hit) continue;
      auto const& R = tau.ring();
      std::pair<bool, std::vector<ElementId>> cand{
          product_of(R, *hit) != q.target, std::move(*hit)};
      if (!best || cand < *best) best = std::move(cand);
    }
    if (best) return GroupHit{std::move(best->second)};
  }
  return std::nullopt;
}

}  // namespace

Verdict exists_factorization(TauRelation const& tau, ElementId target, SearchConstraints const& c,
                             SearchBudget const& b, bool require_decided) {
  auto const& R = tau.ring();
  std::size_t const cap = b.effective_exponent_cap(R.size());
  bool const exact = cap >= R.size() + 1;
  if (require_decided && !exact) {
    throw BudgetError("exponent cap " + std::to_string(cap) + " is below ring size + 1");
  }
  std::size_t const scan_cap = exact ? SIZE_MAX : cap;
  if (zero_trivial_allowed(R, target, c)) {
    Witness w;
    w.factorization = Factorization{target, R.one(), {R.zero()}};
    return Verdict::yes(std::move(w));
  }
  bool truncated = false;
  auto hit = search_group(tau, candidates_for(tau, target, c),
                          GroupQuery{target, c.min_length, c.required, false}, scan_cap, truncated);
  if (hit) {
    Witness w;
    w.factorization = make_factorization(R, target, hit->factors);
    return Verdict::yes(std::move(w));
  }
  if (truncated) return Verdict::undecided(b, "exponent cap below the power cycle");
  return Verdict::no_witness("exhaustive over maximal cliques and power cycles");
}

Verdict detect_pump(TauRelation const& tau, ElementId target, SearchConstraints const& c,
                    SearchBudget const& b) {
  auto const& R = tau.ring();
  bool truncated = false;
  auto hit = search_group(tau, candidates_for(tau, target, c),
                          GroupQuery{target, c.min_length, c.required, true}, SIZE_MAX, truncated);
  if (!hit) return Verdict::no_witness("no self-related factor reaches its power cycle");
  auto f = make_factorization(R, target, hit->factors);
  Witness w;
  w.factorization = f;
  for (auto v : hit->factors) {
    auto count = static_cast<std::size_t>(std::count(hit->factors.begin(), hit->factors.end(), v));
    if (tau.self_related(v) && count >= R.power_index(v)) {
      w.pump = Pump{v, count, R.power_period(v)};
      break;
    }
  }
  w.description = "pump " + R.display(w.pump->element) + " period " + std::to_string(w.pump->period);
  (void)b;
  return Verdict::yes(std::move(w));
}

std::size_t max_factorization_length(TauRelation const& tau, ElementId target,
                                     SearchConstraints const& c) {
  auto const& R = tau.ring();
  std::size_t best = zero_trivial_allowed(R, target, c) ? 1 : 0;
  auto const cands = candidates_for(tau, target, c);
  bool truncated = false;
  for (auto const& clique : maximal_cliques(tau, cands)) {
    if (c.required && !contains(clique, *c.required)) continue;
    LayerPlan plan;
    plan.clique = clique;
    plan.sat = 0xffff;
    plan.required = c.required;
    plan.mask_bit.assign(clique.size(), -1);
    for (auto v : clique)
      plan.ranges.push_back(range_for(R, tau, v, 0, RangeMode::BelowIndex, SIZE_MAX, truncated));
    auto layers = run_layers(R, tau, plan);
    for (auto const& n : layers.back()) {
      auto const len = Key::len(n.key);
      if (len < std::max<std::size_t>(c.min_length, 1)) continue;
      if (c.required && !(Key::flags(n.key) & kRequiredFlag)) continue;
      if (!R.unit_quotient(target, elem(Key::value(n.key)))) continue;
      best = std::max(best, len);
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Simultaneous refinement of every factor
// ---------------------------------------------------------------------------

namespace {

struct GroupOption {
  std::uint64_t mask;
  std::size_t len;
  std::size_t node;
};

enum class RefineGoal { Longer, Any, Longest };

struct RefineHit {
  std::vector<std::vector<ElementId>> groups;
};

std::optional<RefineHit> search_refinement(TauRelation const& tau,
                                           std::vector<ElementId> const& factors,
                                           std::vector<ElementId> const& cands, RefineGoal goal) {
  auto const& R = tau.ring();
  std::size_t const sat = goal == RefineGoal::Longer ? 2 : goal == RefineGoal::Any ? 1 : 0xffff;
  std::optional<RefineHit> best_hit;
  std::size_t best_len = 0;
  for (auto const& clique : maximal_cliques(tau, cands)) {
    LayerPlan plan;
    plan.clique = clique;
    plan.sat = sat;
    int bits = 0;
    bool truncated = false;
    for (auto v : clique) {
      plan.mask_bit.push_back(tau.self_related(v) ? -1 : bits++);
      plan.ranges.push_back(range_for(R, tau, v, goal == RefineGoal::Longest ? 0 : sat,
                                      goal == RefineGoal::Longest ? RangeMode::BelowIndex
                                                                  : RangeMode::Cycle,
                                      SIZE_MAX, truncated));
    }
    if (static_cast<std::size_t>(bits) > kMaxMaskBits)
      throw SpecError("clique has too many non-self-related elements");

    // Per-group options: distinct (mask, len) pairs reaching a unit multiple
    // of the group's factor.
    std::vector<Layers> group_layers;
    std::vector<std::vector<GroupOption>> options;
    bool feasible = true;
    for (auto a : factors) {
      group_layers.push_back(run_layers(R, tau, plan));
      auto const& last = group_layers.back().back();
      std::map<std::pair<std::uint64_t, std::size_t>, std::size_t> by;
      for (std::size_t i = 0; i < last.size(); ++i) {
        auto const key = last[i].key;
        if (Key::len(key) < 1 || !R.unit_quotient(a, elem(Key::value(key)))) continue;
        by.emplace(std::pair(Key::mask(key), Key::len(key)), i);
      }
      std::vector<GroupOption> opts;
      for (auto const& [ml, node] : by) opts.push_back({ml.first, ml.second, node});
      if (opts.empty()) {
        feasible = false;
        break;
      }
      options.push_back(std::move(opts));
    }
    if (!feasible) continue;

    // Combine groups: state (mask, saturated length) -> parent.
    struct State {
      std::uint64_t mask;
      std::size_t len;
      std::int32_t parent;
      std::uint32_t option;
    };
    std::vector<std::vector<State>> levels(factors.size() + 1);
    levels[0].push_back({0, 0, -1, 0});
    for (std::size_t g = 0; g < factors.size(); ++g) {
      std::map<std::pair<std::uint64_t, std::size_t>, std::size_t> seen;
      for (std::size_t s = 0; s < levels[g].size(); ++s) {
        auto const& st = levels[g][s];
        for (std::size_t o = 0; o < options[g].size(); ++o) {
          auto const& opt = options[g][o];
          if (st.mask & opt.mask) continue;
          std::size_t len = st.len + opt.len;
          if (goal == RefineGoal::Longer) len = std::min<std::size_t>(len, factors.size() + 1);
          auto k = std::pair(st.mask | opt.mask, len);
          if (seen.emplace(k, levels[g + 1].size()).second) {
            levels[g + 1].push_back({k.first, k.second, static_cast<std::int32_t>(s),
                                     static_cast<std::uint32_t>(o)});
          }
        }
      }
    }
    std::optional<std::size_t> pick;
    for (std::size_t s = 0; s < levels.back().size(); ++s) {
      auto const len = levels.back()[s].len;
      if (goal == RefineGoal::Longer && len <= factors.size()) continue;
      if (goal == RefineGoal::Longest) {
        if (!pick || len > levels.back()[*pick].len) pick = s;
      } else {
        pick = s;
        break;
      }
    }
    if (!pick) continue;
    RefineHit hit;
    hit.groups.resize(factors.size());
    std::size_t s = *pick;
    std::size_t const total = levels.back()[s].len;
    for (std::size_t g = factors.size(); g > 0; --g) {
      auto const& st = levels[g][s];
      auto const& opt = options[g - 1][st.option];
      hit.groups[g - 1] = backtrack(group_layers[g - 1], clique, opt.node);
      s = static_cast<std::size_t>(st.parent);
    }
    if (goal != RefineGoal::Longest) return hit;
    if (!best_hit || total > best_len) {
      best_hit = std::move(hit);
      best_len = total;
    }
  }
  return best_hit;
}

std::vector<ElementId> union_of_divisors(TauRelation const& tau,
                                         std::vector<ElementId> const& factors,
                                         std::optional<std::vector<ElementId>> const& allowed) {
  auto const& R = tau.ring();
  std::vector<ElementId> out;
  for (auto b : R.nonzero_nonunits()) {
    if (allowed && !contains(*allowed, b)) continue;
    if (std::any_of(factors.begin(), factors.end(), [&](ElementId a) { return R.divides(b, a); }))
      out.push_back(b);
  }
  return out;
}

Witness refinement_witness(FiniteRing const& R, Factorization const& f, RefineHit const& hit) {
  std::vector<ElementId> all;
  std::string desc = "refine";
  for (std::size_t g = 0; g < hit.groups.size(); ++g) {
    desc += " " + R.display(f.factors[g]) + "->[";
    for (std::size_t k = 0; k < hit.groups[g].size(); ++k) {
      if (k) desc += "*";
      desc += R.display(hit.groups[g][k]);
    }
    desc += "]";
    all.insert(all.end(), hit.groups[g].begin(), hit.groups[g].end());
  }
  Witness w;
  w.factorization = f;
  w.other = make_factorization(R, f.target, all);
  w.description = desc;
  return w;
}

}  // namespace

Verdict find_longer_refinement(TauRelation const& tau, Factorization const& f,
                               SearchBudget const& b) {
  auto const& R = tau.ring();
  if (f.trivial()) {
    SearchConstraints c;
    c.min_length = 2;
    auto v = exists_factorization(tau, f.factors[0], c, b);
    if (!v.is_true()) return Verdict::no_witness("single factor has no nontrivial factorization");
    RefineHit hit{{v.witness->factorization->factors}};
    return Verdict::yes(refinement_witness(R, f, hit));
  }
  auto hit = search_refinement(tau, f.factors, union_of_divisors(tau, f.factors, std::nullopt),
                               RefineGoal::Longer);
  if (!hit) return Verdict::no_witness("no refinement lengthens the factorization");
  return Verdict::yes(refinement_witness(R, f, *hit));
}

Verdict find_refinement_into(TauRelation const& tau, Factorization const& f,
                             std::vector<ElementId> const& allowed, SearchBudget const& b) {
  auto const& R = tau.ring();
  if (f.trivial()) {
    SearchConstraints c;
    c.allowed = allowed;
    auto v = exists_factorization(tau, f.factors[0], c, b);
    if (!v.is_true()) return Verdict::no_witness("no factorization of the factor over the allowed set");
    RefineHit hit{{v.witness->factorization->factors}};
    return Verdict::yes(refinement_witness(R, f, hit));
  }
  auto hit = search_refinement(tau, f.factors, union_of_divisors(tau, f.factors, allowed),
                               RefineGoal::Any);
  if (!hit) return Verdict::no_witness("no refinement into the allowed set");
  return Verdict::yes(refinement_witness(R, f, *hit));
}

std::optional<Factorization> find_longest_refinement(TauRelation const& tau,
                                                     Factorization const& f) {
  auto const& R = tau.ring();
  if (f.trivial()) {
    SearchConstraints c;
    auto const a = f.factors[0];
    // Refinements of a trivial factorization are the factorizations of its factor.
    auto const len = max_factorization_length(tau, a, c);
    if (len <= 1) return f;
    c.min_length = len;
    auto v = exists_factorization(tau, a, c, SearchBudget{});
    if (!v.is_true()) return std::nullopt;
    return make_factorization(R, f.target, v.witness->factorization->factors);
  }
  auto hit = search_refinement(tau, f.factors, union_of_divisors(tau, f.factors, std::nullopt),
                               RefineGoal::Longest);
  if (!hit) return std::nullopt;
  return refinement_witness(R, f, *hit).other;
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration of all targets at once
// ---------------------------------------------------------------------------

FactorizationTable enumerate_all(TauRelation const& tau,
                                 std::optional<std::vector<ElementId>> const& allowed,
                                 ExponentPolicy const& policy, std::size_t limit) {
  auto const& R = tau.ring();
  FactorizationTable table;
  table.by_target.resize(R.size());
  std::vector<ElementId> cands;
  for (auto b : R.nonzero_nonunits())
    if (!allowed || contains(*allowed, b)) cands.push_back(b);

  std::set<std::vector<ElementId>> multisets;
  std::vector<ElementId> cur;
  for (auto const& clique : maximal_cliques(tau, cands)) {
    std::vector<std::size_t> hi;
    for (auto v : clique) {
      std::size_t h = 1;
      if (tau.self_related(v)) {
        std::size_t const index = R.power_index(v);
        switch (policy.kind) {
          case ExponentPolicy::Kind::BelowIndex: h = index > 1 ? index - 1 : 0; break;
          case ExponentPolicy::Kind::Saturated:
            h = std::max(policy.threshold, index) + R.power_period(v) - 1;
            break;
          case ExponentPolicy::Kind::LengthCap: h = policy.length_cap; break;
        }
      }
      hi.push_back(h);
    }
    std::size_t const len_cap =
        policy.kind == ExponentPolicy::Kind::LengthCap ? policy.length_cap : SIZE_MAX;
    auto rec = [&](auto&& self, std::size_t k) -> void {
      if (table.truncated) return;
      if (k == clique.size()) {
        if (!cur.empty()) {
          multisets.insert(cur);
          if (multisets.size() > limit) table.truncated = true;
        }
        return;
      }
      self(self, k + 1);
      std::size_t added = 0;
      for (std::size_t e = 1; e <= hi[k] && cur.size() < len_cap; ++e) {
        cur.push_back(clique[k]);
        ++added;
        self(self, k + 1);
      }
      cur.resize(cur.size() - added);
    };
    rec(rec, 0);
    if (table.truncated) break;
  }

  std::map<ElementId, std::vector<std::vector<ElementId> const*>> by_class;
  for (auto const& m : multisets) {
    ElementId prod = R.one();
    for (auto x : m) prod = R.mul(prod, x);
    by_class[R.class_of(prod, AssocKind::StrongAssociate)].push_back(&m);
  }
  bool const zero_ok = !allowed || contains(*allowed, R.zero());
  for (auto t : R.nonunits()) {
    auto& list = table.by_target[idx(t)];
    if (t == R.zero() && zero_ok) list.push_back(Factorization{t, R.one(), {t}});
    auto it = by_class.find(R.class_of(t, AssocKind::StrongAssociate));
    if (it != by_class.end())
      for (auto const* m : it->second) list.push_back(*make_factorization(R, t, *m));
    std::sort(list.begin(), list.end(), [](auto const& x, auto const& y) {
      return std::pair(x.factors.size(), x.factors) < std::pair(y.factors.size(), y.factors);
    });
  }
  return table;
}

}  // namespace tauforge
