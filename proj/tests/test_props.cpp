#include <set>

#include "doctest.h"
#include "support.hpp"
#include "tauforge/props.hpp"

using namespace tauforge;
using tftest::el;

namespace {
constexpr char kEx1Tau[] = "pairs:{((1,0),(1,0))}";

// Arrows that fail on finite rings with a nontrivial idempotent: refinable
// tau plus ACCP does not give unrefinably atomic factorizations there
// (Z6, full: 3 = 3*3 = 3*3*3 = ...).
bool known_accp_failure(std::string const& name) {
  for (char const* p : {"accp-theorem(1)", "accp-theorem(2)", "accp-theorem(3)", "usual-diagram(5)",
                        "usual-diagram(6)", "usual-diagram: ACCP => unrefinably-atomic",
                        "usual-diagram: ACCP => very-strongly-atomic",
                        "ufr-to-hfr(6)[unrefinably-atomicable", "ufr-to-hfr(6)[very-strongly-atomicable"})
    if (name.rfind(p, 0) == 0) return true;
  return false;
}
}  // namespace

TEST_CASE("ring grades on Z2xZ2") {
  SUBCASE("zero-product relation") {
    auto tau = tftest::tau("Z2xZ2", "zero");
    PropertyChecker pc(tau);
    for (auto k : kAllKinds) {
      auto v = pc.atomic_ring(k);
      INFO(kind_name(k));
      if (k == AtomKind::VeryStronglyAtomic) {
        // (0,0) is reached first; its one nontrivial factorization uses (1,0).
        REQUIRE(v.is_false());
        CHECK(v.witness->sequence.at(0) == el(tau.ring(), "(0,0)"));
        CHECK_FALSE(pc.classifier().element(el(tau.ring(), "(1,0)")).very_strongly_irreducible);
      } else {
        CHECK(v.is_true());
      }
    }
    CHECK(pc.atomicable_ring(AtomKind::Complete).is_true());
  }
  SUBCASE("self-related idempotent") {
    auto tau = tftest::tau("Z2xZ2", kEx1Tau);
    PropertyChecker pc(tau);
    CHECK(pc.atomic_ring(AtomKind::Complete).is_false());
    auto v = pc.atomicable_ring(AtomKind::UnrefinablyAtomic);
    REQUIRE(v.is_false());
    auto x = el(tau.ring(), "(1,0)");
    CHECK(v.witness->factorization->factors == std::vector{x});
    CHECK_FALSE(pc.classifier().refines_into_grade({x, x}, AtomKind::UnrefinablyAtomic));
  }
}

TEST_CASE("Z4 full is very strongly atomic but not bounded") {
  auto tau = tftest::tau("Z4", "full");
  PropertyChecker pc(tau);
  CHECK(pc.atomic_ring(AtomKind::VeryStronglyAtomic).is_true());
  // 0 = 2*2 = 2*2*2 = ...
  auto v = pc.bfr(Variant::Plain);
  REQUIRE(v.is_false());
  CHECK(v.witness->pump->element == el(tau.ring(), "2"));
  CHECK(pc.ffr(Variant::Plain, AssocKind::Associate).is_false());
  // 2 has no nontrivial factorization, so every 2^n is complete.
  CHECK(pc.bfr(Variant::TauComplete).is_false());
}

TEST_CASE("empty relation: every grade holds on presimplifiable rings") {
  {
    // 3 = 3*3 in Z6, so 3 is not very strongly associate to itself.
    auto tau = tftest::tau("Z6", "empty");
    PropertyChecker pc(tau);
    CHECK(pc.atomic_ring(AtomKind::VeryStronglyAtomic).is_false());
    CHECK(pc.atomic_ring(AtomKind::UnrefinablyAtomic).is_true());
  }
  for (auto spec : {"Z4", "Z8", "Z9"}) {
    auto tau = tftest::tau(spec, "empty");
    PropertyChecker pc(tau);
    for (auto k : kAllKinds) {
      CHECK(pc.atomic_ring(k).is_true());
      CHECK(pc.atomicable_ring(k).is_true());
      for (auto b : kBetas) CHECK(pc.ufr(false, k, b).is_true());
    }
    CHECK(pc.bfr(Variant::Tau).is_true());
    for (auto a : tau.ring().nonunits()) CHECK(pc.max_length(a) == 1u);
  }
}

TEST_CASE("bounded factorization") {
  SUBCASE("pump on the idempotent") {
    auto tau = tftest::tau("Z2xZ2", kEx1Tau);
    PropertyChecker pc(tau);
    auto v = pc.bfr(Variant::Tau);
    REQUIRE(v.is_false());
    REQUIRE(v.witness->pump);
    CHECK(v.witness->pump->element == el(tau.ring(), "(1,0)"));
    CHECK(v.witness->pump->period == 1u);
    for (std::size_t k = 1; k <= 5; ++k) {
      auto g = pump_factorization(tau.ring(), *v.witness->factorization, *v.witness->pump, k);
      CHECK_FALSE(validate_factorization(tau, g));
    }
    CHECK(pc.ffr(Variant::Tau, AssocKind::Associate).is_false());
    CHECK(pc.hfr(false, AtomKind::MAtomic).is_false());
  }
  SUBCASE("zero-product relation") {
    auto tau = tftest::tau("Z2xZ2", "zero");
    PropertyChecker pc(tau);
    CHECK(pc.bfr(Variant::Tau).is_true());
    CHECK(pc.max_length(el(tau.ring(), "(0,0)")) == 2u);
    auto rep = pc.report();
    CHECK(rep.counts.at("tau-BFR").at("(0,0)") == 2u);
    CHECK(rep.counts.at("tau-associate-FFR").at("(0,0)") == 1u);
  }
}

TEST_CASE("unique factorization on Z2xZ2 zero-product") {
  auto tau = tftest::tau("Z2xZ2", "zero");
  PropertyChecker pc(tau);
  CHECK(pc.ufr(false, AtomKind::UnrefinablyAtomic, AssocKind::Associate).is_true());
  CHECK(pc.hfr(false, AtomKind::UnrefinablyAtomic).is_true());
}

TEST_CASE("divisor counts and finite-carrier properties") {
  {
    auto tau = tftest::tau("Z2xZ2", "zero");
    PropertyChecker pc(tau);
    auto rep = pc.report();
    CHECK(rep.properties.at("tau-associate-WFFR").is_true());
    CHECK(rep.properties.at("tau-associate-WFFR").note == "finite carrier");
    CHECK(rep.counts.at("tau-associate-WFFR").at("(0,0)") == 2u);
  }
  {
    auto tau = tftest::tau("Z2xZ2", kEx1Tau);
    PropertyChecker pc(tau);
    auto rep = pc.report();
    CHECK(rep.counts.at("tau-associate-WFFR").at("(1,0)") == 1u);
  }
}

TEST_CASE("ACCP chains") {
  auto z8 = tftest::tau("Z8", "full");
  PropertyChecker p8(z8);
  CHECK(p8.tau_accp().is_true());
  CHECK(p8.longest_ideal_chain() == 3u);
  auto v4 = tftest::tau("Z2xZ2", "zero");
  PropertyChecker pv(v4);
  CHECK(pv.longest_ideal_chain() == 2u);
}

TEST_CASE("every False verdict in a report carries a valid witness") {
  for (auto const& tau : tftest::small_corpus(8, 2)) {
    PropertyChecker pc(tau);
    auto rep = pc.report();
    auto const full = full_tau(tau.ring_ptr());
    for (auto const& [name, v] : rep.properties) {
      if (!v.is_false()) continue;
      INFO(rep.instance, " ", name);
      REQUIRE(v.witness);
      // Plain properties are decided with the full relation.
      auto const& rel = name.rfind("tau-", 0) == 0 ? tau : full;
      if (v.witness->factorization && v.witness->sequence.empty())
        CHECK_FALSE(validate_factorization(rel, *v.witness->factorization));
    }
  }
}

TEST_CASE("theorem verification") {
  SUBCASE("zero-product relation") {
    auto tau = tftest::tau("Z2xZ2", "zero");
    PropertyChecker pc(tau);
    auto d = pc.verify();
    for (auto const& a : d.arrows) {
      INFO(a.name);
      if (a.name == "factorization: unrefinably-atomic => complete") {
        CHECK(a.status == ArrowStatus::Verified);
        CHECK(a.applied > 0);
      }
      // (1,0) is not very strongly associate to itself, so the very strongly
      // atomic ACCP arrows fail; everything else holds.
      if (a.status == ArrowStatus::Violated) {
        CHECK(known_accp_failure(a.name));
        CHECK(a.name.find("very-strongly") != std::string::npos);
      }
      CHECK(a.status != ArrowStatus::SkippedUndecided);
    }
  }
  SUBCASE("Z4 full collapse") {
    auto tau = tftest::tau("Z4", "full");
    PropertyChecker pc(tau);
    auto d = pc.verify();
    CHECK(d.ok());
    CHECK(d.count(ArrowStatus::SkippedUndecided) == 0u);
    for (auto const& a : d.arrows)
      if (a.name.find("coincide") != std::string::npos || a.name.find("collapse") != std::string::npos)
        CHECK(a.status == ArrowStatus::Verified);
  }
  SUBCASE("strongly associate ring applies the m => strongly arrow") {
    auto tau = tftest::tau("Z2xZ2", kEx1Tau);
    PropertyChecker pc(tau);
    auto d = pc.verify();
    bool seen = false;
    for (auto const& a : d.arrows)
      if (a.name == "factorization: m-atomic => strongly-atomic") {
        seen = true;
        CHECK(a.status == ArrowStatus::Verified);
        CHECK(a.applied > 0);
      }
    CHECK(seen);
  }
  SUBCASE("Z6 full breaks the ACCP arrows") {
    auto tau = tftest::tau("Z6", "full");
    PropertyChecker pc(tau);
    auto d = pc.verify();
    CHECK_FALSE(d.ok());
    CHECK_THROWS_AS(require_no_violations(d), TheoremViolation);
  }
  SUBCASE("only the ACCP family is violated on the small corpus") {
    for (auto const& tau : tftest::small_corpus(12, 3)) {
      PropertyChecker pc(tau);
      for (auto const& a : pc.verify().arrows) {
        INFO(tau.ring().label(), "/", tau.label(), " ", a.name);
        if (a.status == ArrowStatus::Violated) CHECK(known_accp_failure(a.name));
      }
    }
  }
}
