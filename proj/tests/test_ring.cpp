#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <fstream>

using namespace tauforge;

namespace {

std::vector<std::size_t> indices(std::vector<ElementId> const& v) {
  std::vector<std::size_t> out;
  for (auto e : v) out.push_back(idx(e));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("Z4 units and R#") {
  auto r = tftest::ring("Z4");
  CHECK(indices(r->units()) == std::vector<std::size_t>{1, 3});
  CHECK(indices(r->nonzero_nonunits()) == std::vector<std::size_t>{2});
  CHECK(r->is_presimplifiable());
}

TEST_CASE("Z2xZ2 tuples and units") {
  auto r = tftest::ring("Z2xZ2");
  CHECK(r->size() == 4);
  CHECK(r->units().size() == 1);
  CHECK(r->display(r->one()) == "(1,1)");
  auto a = tftest::el(*r, "(1,0)");
  auto b = tftest::el(*r, "(0,1)");
  CHECK(r->mul(a, b) == r->zero());
  CHECK(r->add(a, b) == r->one());
  CHECK_FALSE(r->are_related(a, a, AssocKind::VeryStrongAssociate));
  CHECK(r->is_strongly_associate());
  auto w = r->presimplifiable_witness();
  REQUIRE(w);
  CHECK(w->first == a);
  CHECK(w->second == a);
}

TEST_CASE("associate relations on Z6") {
  auto r = tftest::ring("Z6");
  auto e = [&](char const* s) { return tftest::el(*r, s); };
  CHECK(r->are_related(e("2"), e("4"), AssocKind::Associate));
  CHECK(r->are_related(e("2"), e("4"), AssocKind::StrongAssociate));
  CHECK(r->are_related(e("0"), e("0"), AssocKind::VeryStrongAssociate));
  CHECK(r->is_strongly_associate());
  auto w = r->presimplifiable_witness();
  REQUIRE(w);
  CHECK(w->first == e("3"));
  CHECK(w->second == e("3"));
}

TEST_CASE("ideals") {
  auto r = tftest::ring("Z6");
  auto e = [&](char const* s) { return tftest::el(*r, s); };
  CHECK(r->ideal_generated_by({e("2"), e("3")}).size() == 6);
  CHECK(indices(r->ideal_generated_by({e("2"), e("4")})) == std::vector<std::size_t>{0, 2, 4});
  CHECK(indices(r->ideal_generated_by({e("0")})) == std::vector<std::size_t>{0});
}

TEST_CASE("ring invariants over the corpus") {
  for (auto const& spec : ring_corpus(16)) {
    auto r = tftest::ring(spec);
    CAPTURE(spec);
    for (auto a : r->elements()) {
      CHECK(r->are_related(a, a, AssocKind::Associate));
      CHECK(r->are_related(a, a, AssocKind::StrongAssociate));
      std::vector<ElementId> multiples;
      for (auto x : r->elements()) multiples.push_back(r->mul(x, a));
      std::sort(multiples.begin(), multiples.end());
      multiples.erase(std::unique(multiples.begin(), multiples.end()), multiples.end());
      CHECK(indices(r->ideal_generated_by({a})) == indices(multiples));
      for (auto b : r->elements()) {
        if (r->are_related(a, b, AssocKind::StrongAssociate))
          CHECK(r->are_related(a, b, AssocKind::Associate));
        CHECK(r->are_related(a, b, AssocKind::Associate) == r->are_related(b, a, AssocKind::Associate));
      }
      auto i = r->power_index(a);
      auto p = r->power_period(a);
      CHECK(p >= 1);
      CHECK(r->power(a, i + p) == r->power(a, i));
    }
    if (r->components().size() >= 2) CHECK_FALSE(r->is_presimplifiable());
  }
  for (auto spec : {"Z4", "Z8", "Z9", "Z25", "Z27"}) CHECK(tftest::ring(spec)->is_presimplifiable());
}

TEST_CASE("power index and period") {
  auto r = tftest::ring("Z72");
  auto two = tftest::el(*r, "2");
  CHECK(r->power_index(two) == 3);
  CHECK(r->power_period(two) == 6);
}

TEST_CASE("bad ring specs") {
  CHECK_THROWS_AS(parse_ring_spec("Z1"), SpecError);
  CHECK_THROWS_AS(parse_ring_spec("Q7"), SpecError);
  CHECK_THROWS_AS(parse_ring_spec("Z2xZ"), SpecError);
  auto r = tftest::ring("Z4");
  CHECK_THROWS_AS(parse_element(*r, "4"), SpecError);
  CHECK_THROWS_AS(parse_element(*r, "(1,0)"), SpecError);
}

TEST_CASE("table files") {
  auto path = std::string("tables_test_z3.txt");
  {
    std::ofstream out(path);
    out << "3 0 1\n0 1 2\n1 2 0\n2 0 1\n0 0 0\n0 1 2\n0 2 1\n";
  }
  auto r = parse_ring_spec("tables:" + path);
  CHECK(r.size() == 3);
  CHECK(r.units().size() == 2);
  {
    std::ofstream out(path);
    // multiplication not distributive: 2*2 = 2
    out << "3 0 1\n0 1 2\n1 2 0\n2 0 1\n0 0 0\n0 1 2\n0 2 2\n";
  }
  CHECK_THROWS_AS(parse_ring_spec("tables:" + path), RingAxiomError);
  std::remove(path.c_str());
}
