// Acceptance run: one PASS/FAIL line per criterion, indented details below.
// Exit status is nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <thread>

#include "tauforge/classify.hpp"
#include "tauforge/corpus.hpp"
#include "tauforge/props.hpp"
#include "tauforge/scan.hpp"

using namespace tauforge;

namespace {

// Skipped-undecided arrows over the criterion-4 corpus at default budgets.
constexpr std::size_t kGoldenSkipped = 108;
constexpr std::uint64_t kCorpusSeed = 0;
constexpr std::size_t kCorpusRandoms = 20;

struct Outcome {
  bool pass = true;
  std::vector<std::string> details;

  void fail(std::string why) {
    pass = false;
    details.push_back(std::move(why));
  }
  void expect(bool cond, std::string what) {
    if (!cond) fail("expected " + what);
  }
  void note(std::string s) { details.push_back(std::move(s)); }
};

std::shared_ptr<FiniteRing const> ring(std::string const& spec) {
  return std::make_shared<FiniteRing const>(parse_ring_spec(spec));
}

ElementId el(FiniteRing const& R, std::string const& s) { return parse_element(R, s); }

std::vector<std::string> corpus_taus(std::string const& spec) {
  std::vector<std::string> out(kStandardTauFamilies.begin(), kStandardTauFamilies.end());
  for (std::size_t i = 0; i < kCorpusRandoms; ++i)
    out.push_back("random:" + std::to_string(random_tau_seed(kCorpusSeed, spec, i)));
  return out;
}

constexpr char kEx1Tau[] = "pairs:{((1,0),(1,0))}";

Outcome example_one() {
  Outcome o;
  auto tau = build_tau(ring("Z2xZ2"), kEx1Tau);
  auto const& R = tau.ring();
  auto x = el(R, "(1,0)");
  auto f = make_factorization(R, x, {x, x});
  if (!f) {
    o.fail("(1,0)(1,0) is not a factorization of (1,0)");
    return o;
  }
  auto c = classify_factorization(tau, *f);
  o.expect(c.m_atomic, "m-atomic");
  o.expect(c.strongly_atomic, "strongly atomic");
  o.expect(c.complete.is_false(), "not complete");
  o.expect(!c.unrefinably_atomic, "not unrefinably atomic");
  o.expect(!c.very_strongly_atomic, "not very strongly atomic");
  if (c.complete.witness && c.complete.witness->other) {
    auto const& g = *c.complete.witness->other;
    o.expect(g.factors == std::vector{x, x, x}, "the refinement (1,0)(1,0)(1,0)");
    o.note("refinement " + format_factorization(R, g));
  } else {
    o.fail("no refinement witness");
  }
  return o;
}

Outcome example_two() {
  Outcome o;
  auto tau = build_tau(ring("Z2xZ2"), "zero");
  auto const& R = tau.ring();
  auto x = el(R, "(1,0)"), y = el(R, "(0,1)");
  auto f = make_factorization(R, R.zero(), {x, y});
  if (!f) {
    o.fail("(1,0)(0,1) is not a factorization of (0,0)");
    return o;
  }
  auto c = classify_factorization(tau, *f);
  o.expect(c.complete.is_true(), "complete");
  o.expect(c.unrefinably_atomic, "unrefinably atomic");
  o.expect(!c.very_strongly_atomic, "not very strongly atomic");
  auto e = classify_element(tau, x);
  auto it = e.witnesses.find("very-strongly");
  o.expect(it != e.witnesses.end() && it->second.target == x && it->second.factors == std::vector{x, x},
           "the witness (1,0) = (1,0)*(1,0)");
  if (it != e.witnesses.end()) o.note("≅ failure " + format_factorization(R, it->second));
  return o;
}

Outcome example_three() {
  Outcome o;
  auto tau = build_tau(ring("Z72"),
                       "pairs:{(2,2),(2,70),(70,70),(3,3),(3,69),(69,69),(4,9),(4,63),(68,9),(68,63)}");
  auto const& R = tau.ring();
  auto f = make_factorization(R, el(R, "36"), {el(R, "4"), el(R, "9")});
  if (!f) {
    o.fail("4*9 is not a factorization of 36");
    return o;
  }
  auto c = classify_factorization(tau, *f);
  o.expect(c.complete.is_true(), "36 = 4*9 complete");
  o.expect(!c.atomic, "36 = 4*9 not atomic");
  auto four = classify_element(tau, el(R, "4"));
  auto it = four.witnesses.find("irreducible");
  o.expect(it != four.witnesses.end() && it->second.factors == std::vector{el(R, "2"), el(R, "2")},
           "atomic witness 4 = 2*2");
  auto r = check_refinable(tau, {});
  o.expect(r.is_false(), "checkRefinable False");
  if (r.witness) {
    o.expect(r.witness->sequence == std::vector{el(R, "2"), el(R, "2"), el(R, "9")}, "the 2*2*9 witness");
    o.note("refinable witness " + (r.witness->factorization ? format_factorization(R, *r.witness->factorization) : "") +
           " -> 2*2*9");
  }
  return o;
}

bool satisfies(Factorization const& f, SearchConstraints const& c) {
  if (f.length() < c.min_length) return false;
  for (auto x : f.factors) {
    if (c.allowed && std::find(c.allowed->begin(), c.allowed->end(), x) == c.allowed->end()) return false;
    if (std::find(c.forbidden.begin(), c.forbidden.end(), x) != c.forbidden.end()) return false;
  }
  return !c.required || std::find(f.factors.begin(), f.factors.end(), *c.required) != f.factors.end();
}

Outcome oracle_equivalence() {
  Outcome o;
  std::size_t queries = 0, instances = 0;
  for (auto const& spec : ring_corpus(16)) {
    auto R = ring(spec);
    for (auto const& fam : corpus_taus(spec)) {
      auto tau = build_tau(R, fam);
      ++instances;
      for (auto a : R->nonunits()) {
        auto naive = enumerate_naive(tau, a, 5);
        for (auto const& q : classification_queries(tau, a)) {
          ++queries;
          auto v = exists_factorization(tau, a, q.constraints, {}, true);
          bool const oracle = std::any_of(naive.begin(), naive.end(),
                                          [&](Factorization const& f) { return satisfies(f, q.constraints); });
          bool const ok = v.decided() && v.is_true() == oracle &&
                          (!v.is_true() || (v.witness && v.witness->factorization &&
                                            !validate_factorization(tau, *v.witness->factorization) &&
                                            satisfies(*v.witness->factorization, q.constraints)));
          if (!ok && o.details.size() < 10)
            o.fail(spec + "/" + fam + " element " + R->display(a) + " query " + q.flag + ": engine " +
                   std::string(to_string(v.status)) + ", oracle " + (oracle ? "found" : "none"));
          else if (!ok)
            o.pass = false;
        }
      }
    }
  }
  o.note(std::to_string(instances) + " instances, " + std::to_string(queries) + " queries");
  return o;
}

// Brute-force confirmation that a ring has no kind-graded factorization of
// some nonunit, using only the naive enumerator and the definitions.
struct NaiveGrades {
  TauRelation const& tau;
  std::size_t max_len;
  std::map<ElementId, std::vector<Factorization>> cache;

  std::vector<Factorization> const& of(ElementId a) {
    auto it = cache.find(a);
    if (it == cache.end()) it = cache.emplace(a, enumerate_naive(tau, a, max_len)).first;
    return it->second;
  }
  bool unrefinable(ElementId a) {
    auto const& fs = of(a);
    return std::none_of(fs.begin(), fs.end(), [](Factorization const& f) { return f.length() >= 2; });
  }
  bool graded(ElementId a, AtomKind kind) {
    auto const& R = tau.ring();
    if (!unrefinable(a)) return false;
    return kind != AtomKind::VeryStronglyAtomic || R.are_related(a, a, AssocKind::VeryStrongAssociate);
  }
  // Some refinement of f (each factor replaced by one of its own
  // factorizations) is a longer factorization of the same target.
  bool has_longer_refinement(Factorization const& f) {
    std::vector<ElementId> seq;
    std::function<bool(std::size_t, bool)> go = [&](std::size_t i, bool longer) {
      if (i == f.length()) {
        if (!longer) return false;
        auto h = make_factorization(tau.ring(), f.target, seq);
        return h && !validate_factorization(tau, *h);
      }
      for (auto const& g : of(f.factors[i])) {
        auto const mark = seq.size();
        seq.insert(seq.end(), g.factors.begin(), g.factors.end());
        bool const ok = is_tau_sequence(tau, seq) && go(i + 1, longer || g.length() >= 2);
        seq.resize(mark);
        if (ok) return true;
      }
      return false;
    };
    return go(0, false);
  }
  // A nonunit none of whose naive factorizations has the grade.
  std::optional<ElementId> failing(AtomKind kind) {
    for (auto a : tau.ring().nonunits()) {
      bool found = false;
      for (auto const& f : of(a)) {
        if (kind == AtomKind::Complete) {
          found = !has_longer_refinement(f);
        } else {
          found = std::all_of(f.factors.begin(), f.factors.end(), [&](ElementId x) { return graded(x, kind); });
        }
        if (found) break;
      }
      if (!found) return a;
    }
    return std::nullopt;
  }
};

AtomKind conclusion_kind(std::string const& arrow) {
  if (arrow.find("very-strongly") != std::string::npos) return AtomKind::VeryStronglyAtomic;
  if (arrow.find("[complete") != std::string::npos) return AtomKind::Complete;
  return AtomKind::UnrefinablyAtomic;
}

Outcome diagram_suite() {
  Outcome o;
  ScanConfig cfg;
  cfg.max_order = 16;
  cfg.random_taus = kCorpusRandoms;
  cfg.seed = kCorpusSeed;
  cfg.threads = std::max(1u, std::thread::hardware_concurrency());
  auto res = run_scan(cfg);
  auto const& scan = res.document.at("scan");
  o.note(std::to_string(scan.at("instances").size()) + " instances, " + std::to_string(res.violated) +
         " violated, " + std::to_string(res.skipped) + " skipped-undecided (golden " +
         std::to_string(kGoldenSkipped) + ")");
  if (res.skipped != kGoldenSkipped) o.fail("skipped-undecided count differs from the golden number");
  if (res.violated > 0) o.fail("violated arrows present");

  std::map<std::string, std::size_t> by_arrow;
  std::map<std::string, std::string> first_instance, first_cex;
  for (auto const& v : scan.at("violated")) {
    auto name = v.at("arrow").get<std::string>();
    if (!by_arrow[name]++) {
      first_instance[name] = v.at("instance").get<std::string>();
      first_cex[name] = v.value("counterexample", "");
    }
  }
  std::map<std::pair<std::string, int>, std::string> confirmed;
  for (auto const& [name, n] : by_arrow) {
    auto const inst = first_instance[name];
    auto const kind = conclusion_kind(name);
    auto key = std::pair{inst, static_cast<int>(kind)};
    if (!confirmed.count(key)) {
      auto slash = inst.find('/');
      auto tau = build_tau(ring(inst.substr(0, slash)), inst.substr(slash + 1));
      NaiveGrades ng{tau, 5, {}};
      auto a = ng.failing(kind);
      confirmed[key] = a ? "brute force confirms: " + tau.ring().display(*a) + " has no " + kind_name(kind) +
                               " factorization of length <= 5"
                         : "brute force did NOT confirm";
    }
    o.note("violated " + name + " on " + std::to_string(n) + " instance(s); first " + inst + ": " +
           first_cex[name] + "; " + confirmed[key]);
  }
  std::map<std::string, std::vector<std::string>> skipped;
  for (auto const& s : scan.at("skipped"))
    skipped[s.at("arrow").get<std::string>()].push_back(s.at("instance").get<std::string>());
  for (auto const& [name, where] : skipped) {
    std::string list;
    for (auto const& w : where) list += (list.empty() ? "" : ", ") + w;
    o.note("skipped-undecided " + name + " on " + list);
  }
  return o;
}

// S closed under nonunit factors (every divisor in R# of a member), so
// S x S is divisive.
std::string closed_subset(FiniteRing const& R, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::set<ElementId> s;
  for (auto x : R.nonzero_nonunits())
    if (rng() % 2) s.insert(x);
  for (bool grew = true; grew;) {
    grew = false;
    for (auto a : std::vector<ElementId>(s.begin(), s.end()))
      for (auto x : R.nonzero_nonunits())
        for (std::size_t r = 0; r < R.size(); ++r)
          if (R.mul(x, elem(r)) == a && s.insert(x).second) grew = true;
  }
  std::string spec = "subset:{";
  for (auto x : s) spec += (spec.back() == '{' ? "" : ",") + std::to_string(idx(x));
  return spec + "}";
}

Outcome presimplifiable_collapse() {
  Outcome o;
  std::size_t checked = 0;
  for (auto spec : {"Z4", "Z8", "Z9", "Z25"}) {
    auto R = ring(spec);
    std::vector<std::string> taus = {"full", "empty"};
    for (std::size_t i = 0; i < 10; ++i) taus.push_back(closed_subset(*R, random_tau_seed(kCorpusSeed, spec, i)));
    for (auto const& t : taus) {
      auto tau = build_tau(R, t);
      auto prof = analyze_tau(tau, {});
      if (!R->is_presimplifiable() || !prof.refinable.is_true()) {
        o.fail(std::string(spec) + "/" + t + " is not a presimplifiable ring with decided-refinable tau");
        continue;
      }
      Classifier cls(tau, {});
      ExponentPolicy pol;
      pol.kind = ExponentPolicy::Kind::LengthCap;
      pol.length_cap = 4;
      auto table = enumerate_all(tau, std::nullopt, pol, 1000000);
      if (table.truncated) o.fail(std::string(spec) + "/" + t + ": enumeration truncated");
      for (auto a : R->nonunits())
        for (auto const& f : table.by_target[idx(a)]) {
          ++checked;
          auto c = cls.classify(f);
          bool const v = c.atomic;
          if (c.strongly_atomic != v || c.m_atomic != v || c.unrefinably_atomic != v ||
              c.very_strongly_atomic != v || c.complete.is_true() != v || !c.complete.decided())
            o.fail(std::string(spec) + "/" + t + ": grades differ on " + format_factorization(*R, f));
        }
    }
  }
  o.note(std::to_string(checked) + " factorizations checked");
  return o;
}

Outcome refinement_composition() {
  Outcome o;
  std::size_t refinable = 0, composed = 0;
  for (auto const& spec : ring_corpus(16)) {
    auto R = ring(spec);
    for (auto const& fam : corpus_taus(spec)) {
      auto tau = build_tau(R, fam);
      if (!check_refinable(tau, {}).is_true()) continue;
      ++refinable;
      ExponentPolicy pol;
      pol.kind = ExponentPolicy::Kind::LengthCap;
      pol.length_cap = 3;
      auto table = enumerate_all(tau, std::nullopt, pol, 1000000);
      Classifier cls(tau, {});
      // Every complete factorization of length <= 3, per element.
      std::vector<std::vector<Factorization>> complete(R->size());
      for (auto a : R->nonunits())
        for (auto const& f : table.by_target[idx(a)])
          if (cls.complete(f).is_true()) complete[idx(a)].push_back(f);
      for (auto a : R->nonunits())
        for (auto const& f : table.by_target[idx(a)]) {
          if (!std::all_of(f.factors.begin(), f.factors.end(),
                           [&](ElementId x) { return !complete[idx(x)].empty(); }))
            continue;
          // Every choice of complete factorization per factor.
          std::vector<std::size_t> pick(f.length(), 0);
          while (true) {
            std::vector<ElementId> seq;
            for (std::size_t i = 0; i < f.length(); ++i) {
              auto const& g = complete[idx(f.factors[i])][pick[i]];
              seq.insert(seq.end(), g.factors.begin(), g.factors.end());
            }
            ++composed;
            auto h = make_factorization(*R, a, seq);
            bool ok = h && !validate_factorization(tau, *h) && is_complete(tau, *h).is_true();
            if (!ok && o.details.size() < 10)
              o.fail(spec + "/" + fam + ": " + format_factorization(*R, f) + " composed to " +
                     (h ? format_factorization(*R, *h) : std::string("a non-factorization")) + " is not complete");
            else if (!ok)
              o.pass = false;
            std::size_t i = 0;
            while (i < f.length() && ++pick[i] == complete[idx(f.factors[i])].size()) pick[i++] = 0;
            if (i == f.length()) break;
          }
        }
    }
  }
  o.note(std::to_string(refinable) + " decided-refinable instances, " + std::to_string(composed) +
         " compositions");
  return o;
}

Outcome bfr_pump() {
  Outcome o;
  {
    auto tau = build_tau(ring("Z2xZ2"), kEx1Tau);
    auto const& R = tau.ring();
    PropertyChecker pc(tau);
    auto v = pc.bfr(Variant::Tau);
    o.expect(v.is_false(), "tau-BFR False on the single-pair relation");
    if (v.witness && v.witness->pump && v.witness->factorization) {
      o.expect(v.witness->pump->element == el(R, "(1,0)") && v.witness->pump->period == 1, "pump ((1,0), 1)");
      for (std::size_t k = 1; k <= 5; ++k) {
        auto g = pump_factorization(R, *v.witness->factorization, *v.witness->pump, k);
        o.expect(!validate_factorization(tau, g), "pumped witness valid for k=" + std::to_string(k));
      }
      o.note("pump " + R.display(v.witness->pump->element) + " period " + std::to_string(v.witness->pump->period) +
             " on " + format_factorization(R, *v.witness->factorization));
    } else {
      o.fail("no pump witness");
    }
  }
  {
    auto tau = build_tau(ring("Z2xZ2"), "zero");
    PropertyChecker pc(tau);
    o.expect(pc.bfr(Variant::Tau).is_true(), "tau-BFR True on the zero-product relation");
    o.expect(pc.max_length(tau.ring().zero()) == 2u, "N((0,0)) = 2");
  }
  return o;
}

Outcome ufr_positive() {
  Outcome o;
  auto tau = build_tau(ring("Z2xZ2"), "zero");
  PropertyChecker pc(tau);
  auto u = pc.ufr(false, AtomKind::UnrefinablyAtomic, AssocKind::Associate);
  auto h = pc.hfr(false, AtomKind::UnrefinablyAtomic);
  o.expect(u.is_true(), "unrefinably-atomic associate UFR decided True (got " + std::string(to_string(u.status)) + ")");
  o.expect(h.is_true(), "unrefinably-atomic HFR decided True (got " + std::string(to_string(h.status)) + ")");
  return o;
}

Outcome determinism() {
  Outcome o;
  ScanConfig cfg;
  cfg.max_order = 10;
  cfg.random_taus = 5;
  cfg.seed = 42;
  cfg.threads = 1;
  auto a = dump_canonical(run_scan(cfg).document);
  auto b = dump_canonical(run_scan(cfg).document);
  cfg.threads = 8;
  auto c = dump_canonical(run_scan(cfg).document);
  o.expect(a == b, "two 1-thread runs identical");
  o.expect(a == c, "1-thread and 8-thread runs identical");
  o.note(std::to_string(a.size()) + " bytes per summary");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string title;
    double limit_s;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> criteria = {
      {1, "single-pair relation on Z2xZ2", 1, example_one},
      {2, "zero-product relation on Z2xZ2", 1, example_two},
      {3, "complete but not atomic in Z72", 10, example_three},
      {4, "oracle equivalence over the order <= 16 corpus", 600, oracle_equivalence},
      {5, "diagram suite over the order <= 16 corpus", 600, diagram_suite},
      {6, "presimplifiable collapse", 600, presimplifiable_collapse},
      {7, "refinement composition", 600, refinement_composition},
      {8, "BFR and pump", 60, bfr_pump},
      {9, "UFR positive case", 60, ufr_positive},
      {10, "scan determinism", 600, determinism},
  };
  int failed = 0;
  for (auto const& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (std::exception const& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (s > c.limit_s) o.fail("runtime " + std::to_string(s) + " s exceeds " + std::to_string(c.limit_s) + " s");
    failed += !o.pass;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f s", s);
    std::cout << "criterion " << c.id << ": " << (o.pass ? "PASS" : "FAIL") << "  " << c.title << " (" << buf
              << ")\n";
    for (auto const& d : o.details) std::cout << "    " << d << "\n";
    std::cout.flush();
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed ? 1 : 0;
}
