#include "doctest.h"
#include "support.hpp"
#include "tauforge/classify.hpp"

using namespace tauforge;
using tftest::el;

namespace {
constexpr char kEx1Tau[] = "pairs:{((1,0),(1,0))}";
}

TEST_CASE("element grades in Z2xZ2") {
  SUBCASE("self-related idempotent") {
    auto tau = tftest::tau("Z2xZ2", kEx1Tau);
    auto c = classify_element(tau, el(tau.ring(), "(1,0)"));
    CHECK(c.irreducible);
    CHECK(c.strongly_irreducible);
    CHECK(c.m_irreducible);
    CHECK_FALSE(c.unrefinably_irreducible);
    CHECK_FALSE(c.very_strongly_irreducible);
    CHECK(format_factorization(tau.ring(), c.witnesses.at("unrefinably")) == "(1,0) = (1,1)*(1,0)*(1,0)");
  }
  SUBCASE("zero-product relation") {
    auto tau = tftest::tau("Z2xZ2", "zero");
    auto const& R = tau.ring();
    auto c = classify_element(tau, el(R, "(1,0)"));
    CHECK(c.unrefinably_irreducible);
    CHECK_FALSE(c.very_strongly_irreducible);
    auto const& w = c.witnesses.at("very-strongly");
    CHECK(w.target == el(R, "(1,0)"));
    CHECK(w.factors == std::vector{el(R, "(1,0)"), el(R, "(1,0)")});
  }
}

TEST_CASE("Z6 full: 2 is irreducible but refinable") {
  auto tau = tftest::tau("Z6", "full");
  auto c = classify_element(tau, el(tau.ring(), "2"));
  CHECK(c.irreducible);
  CHECK(c.strongly_irreducible);
  CHECK(c.m_irreducible);
  CHECK_FALSE(c.unrefinably_irreducible);
  CHECK(format_factorization(tau.ring(), c.witnesses.at("unrefinably")) == "2 = 1*2*4");
}

TEST_CASE("units are rejected") {
  auto tau = tftest::tau("Z6", "full");
  CHECK_THROWS_AS(classify_element(tau, el(tau.ring(), "5")), SpecError);
}

TEST_CASE("completeness") {
  SUBCASE("unrefinable zero-product factorization") {
    auto tau = tftest::tau("Z2xZ2", "zero");
    auto const& R = tau.ring();
    auto f = make_factorization(R, el(R, "(0,0)"), {el(R, "(1,0)"), el(R, "(0,1)")});
    REQUIRE(f);
    CHECK(is_complete(tau, *f).is_true());
    auto c = classify_factorization(tau, *f);
    CHECK(c.atomic);
    CHECK(c.strongly_atomic);
    CHECK(c.m_atomic);
    CHECK(c.unrefinably_atomic);
    CHECK(c.complete.is_true());
    CHECK_FALSE(c.very_strongly_atomic);
  }
  SUBCASE("idempotent square refines to three factors") {
    auto tau = tftest::tau("Z2xZ2", kEx1Tau);
    auto const& R = tau.ring();
    auto x = el(R, "(1,0)");
    auto f = make_factorization(R, x, {x, x});
    REQUIRE(f);
    auto v = is_complete(tau, *f);
    REQUIRE(v.is_false());
    REQUIRE(v.witness->other);
    CHECK(v.witness->other->factors == std::vector{x, x, x});
    auto c = classify_factorization(tau, *f);
    CHECK(c.m_atomic);
    CHECK(c.strongly_atomic);
    CHECK_FALSE(c.complete.is_true());
    CHECK_FALSE(c.unrefinably_atomic);
  }
  SUBCASE("Z72: complete but not atomic") {
    auto tau = tftest::tau("Z72", "pairs:{(2,2),(2,70),(70,70),(3,3),(3,69),(69,69),(4,9),(4,63),(68,9),(68,63)}");
    auto const& R = tau.ring();
    auto f = make_factorization(R, el(R, "36"), {el(R, "4"), el(R, "9")});
    REQUIRE(f);
    auto c = classify_factorization(tau, *f);
    CHECK(c.complete.is_true());
    CHECK_FALSE(c.atomic);
    auto four = classify_element(tau, el(R, "4"));
    CHECK(four.witnesses.at("irreducible").factors == std::vector{el(R, "2"), el(R, "2")});
  }
  SUBCASE("Z4 full") {
    auto tau = tftest::tau("Z4", "full");
    auto const& R = tau.ring();
    auto f = make_factorization(R, el(R, "0"), {el(R, "2"), el(R, "2")});
    REQUIRE(f);
    CHECK(format_factorization(R, *f) == "0 = 1*2*2");
    auto c = classify_factorization(tau, *f);
    CHECK(c.very_strongly_atomic);
    CHECK(c.complete.is_true());
  }
}

TEST_CASE("trivial factorizations carry the element's grade") {
  auto tau = tftest::tau("Z2xZ2", "zero");
  auto const& R = tau.ring();
  auto x = el(R, "(1,0)");
  auto c = classify_factorization(tau, Factorization{x, R.one(), {x}});
  CHECK(c.unrefinably_atomic);
  CHECK_FALSE(c.very_strongly_atomic);
}

TEST_CASE("element diagram holds across the small corpus") {
  for (auto const& tau : tftest::small_corpus(12, 3)) {
    auto const& R = tau.ring();
    Classifier cls(tau, {});
    for (auto a : R.nonunits()) {
      auto const& c = cls.element(a);
      INFO(tau.label(), " on ", R.label(), " element ", R.display(a));
      CHECK((!c.very_strongly_irreducible || c.unrefinably_irreducible));
      CHECK((!c.unrefinably_irreducible || (c.strongly_irreducible && c.m_irreducible)));
      CHECK((!c.strongly_irreducible || c.irreducible));
      CHECK((!c.m_irreducible || c.irreducible));
      if (R.is_strongly_associate()) CHECK((!c.m_irreducible || c.strongly_irreducible));
      for (auto const& [flag, w] : c.witnesses) {
        if (flag == "very-strongly" && c.unrefinably_irreducible) {
          // a = a*r with r a nonunit: a product, not a tau-factorization.
          CHECK(R.mul(w.factors.at(0), w.factors.at(1)) == a);
          CHECK_FALSE(R.is_unit(w.factors.at(1)));
        } else {
          CHECK_FALSE(validate_factorization(tau, w));
        }
      }
    }
  }
}

TEST_CASE("completeness depends only on capped multiplicities") {
  for (auto const& tau : tftest::small_corpus(8, 2)) {
    auto const& R = tau.ring();
    Classifier cls(tau, {});
    ExponentPolicy pol;
    pol.kind = ExponentPolicy::Kind::LengthCap;
    pol.length_cap = 4;
    auto table = enumerate_all(tau, std::nullopt, pol, 100000);
    for (auto t : R.nonunits())
      for (auto const& f : table.by_target[idx(t)]) {
        INFO(tau.label(), " on ", R.label(), ": ", format_factorization(R, f));
        CHECK(cls.complete_fast(f.factors) == is_complete(tau, f).is_true());
      }
  }
}
