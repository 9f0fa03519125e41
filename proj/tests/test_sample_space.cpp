#include <cmath>
#include <cstdlib>

#include "ccd/sample_space.hpp"
#include "doctest.h"
#include "support/generators.hpp"

using namespace ccd;

TEST_CASE("two-event space has the product weights") {
  FiniteSpace space({{"a", 0.2}, {"b", 0.3}});
  REQUIRE(space.n_outcomes() == 4);
  // outcome bit 0 = a occurred, bit 1 = b occurred
  CHECK(space.weight(0) == doctest::Approx(0.56).epsilon(1e-12));
  CHECK(space.weight(1) == doctest::Approx(0.14).epsilon(1e-12));
  CHECK(space.weight(2) == doctest::Approx(0.24).epsilon(1e-12));
  CHECK(space.weight(3) == doctest::Approx(0.06).epsilon(1e-12));
  double total = 0.0;
  for (std::size_t i = 0; i < 4; ++i) total += space.weight(i);
  CHECK(std::abs(total - 1.0) < 1e-12);
}

TEST_CASE("empty space is the single sure outcome") {
  FiniteSpace space({});
  REQUIRE(space.n_outcomes() == 1);
  CHECK(space.weight(0) == 1.0);
  CHECK(space.prob(space.full_set()) == 1.0);
}

TEST_CASE("degenerate probability 1 concentrates all weight") {
  FiniteSpace space({{"a", 1.0}});
  CHECK(space.weight(1) == 1.0);
  CHECK(space.weight(0) == 0.0);
}

TEST_CASE("construction rejects bad input") {
  CHECK_THROWS_AS(FiniteSpace({{"a", 1.5}}), Error);
  CHECK_THROWS_AS(FiniteSpace({{"a", -0.1}}), Error);
  CHECK_THROWS_AS(FiniteSpace({{"a", 0.5}, {"a", 0.5}}), Error);
  std::vector<std::pair<std::string, double>> many;
  for (int i = 0; i < 21; ++i) many.emplace_back("e" + std::to_string(i), 0.5);
  CHECK_THROWS_AS(FiniteSpace{many}, Error);
  CHECK_NOTHROW(FiniteSpace(many, 21));
}

TEST_CASE("prob of marginals, full set, empty set") {
  FiniteSpace space({{"a", 0.2}, {"b", 0.3}});
  CHECK(space.prob(space.atomic("a")) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(space.prob(space.full_set()) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(space.prob(space.empty_set()) == 0.0);
}

TEST_CASE("sets from another space are rejected") {
  FiniteSpace space_a({{"a", 0.2}});
  FiniteSpace space_b({{"a", 0.2}});
  CHECK_THROWS_AS(space_a.prob(space_b.full_set()), Error);
}

TEST_CASE("check_disjoint") {
  FiniteSpace space({{"a", 0.5}, {"b", 0.4}});
  const EventSet a = space.atomic("a");
  std::vector<EventSet> complements{a, a.complement()};
  CHECK(check_disjoint(space, complements));
  std::vector<EventSet> overlapping{a, space.atomic("b")};
  CHECK_FALSE(check_disjoint(space, overlapping));  // both contain a&b
  std::vector<EventSet> single{a};
  CHECK(check_disjoint(space, single));
}

TEST_CASE("mutual independence of distinct atomics") {
  FiniteSpace space({{"a", 0.2}, {"b", 0.3}, {"c", 0.7}});
  std::vector<EventSet> atomics{space.atomic("a"), space.atomic("b"),
                                space.atomic("c")};
  CHECK(check_mutual_independence(space, atomics));

  std::vector<EventSet> repeated{space.atomic("a"), space.atomic("a")};
  CHECK_FALSE(check_mutual_independence(space, repeated));  // 0.2 != 0.04

  // A probability-1 member changes nothing.
  std::vector<EventSet> with_full{space.atomic("a"), space.atomic("b"),
                                  space.full_set()};
  CHECK(check_mutual_independence(space, with_full));
}

TEST_CASE("complement and additivity laws hold on random spaces") {
  ccdtest::Gen gen(42);
  for (int iter = 0; iter < 200; ++iter) {
    const int n = gen.int_in(1, 8);
    std::vector<std::pair<std::string, double>> events;
    for (int i = 0; i < n; ++i) {
      events.emplace_back("e" + std::to_string(i), gen.prob());
    }
    FiniteSpace space(events);

    double total = 0.0;
    for (std::size_t k = 0; k < space.n_outcomes(); ++k) {
      total += space.weight(k);
    }
    CHECK(std::abs(total - 1.0) < 1e-12);

    // Random set: complement law and serial/chunked agreement.
    EventSet set = space.empty_set();
    for (std::size_t k = 0; k < space.n_outcomes(); ++k) {
      if (gen.chance(0.5)) set.set(k);
    }
    const double p = space.prob(set);
    CHECK(std::abs(space.prob(set.complement()) - (1.0 - p)) < 1e-12);
    CHECK(std::abs(reference::prob_serial(space, set) - p) < 1e-12);

    // Additivity over a random 3-block partition.
    EventSet blocks[3] = {space.empty_set(), space.empty_set(),
                          space.empty_set()};
    for (std::size_t k = 0; k < space.n_outcomes(); ++k) {
      blocks[gen.int_in(0, 2)].set(k);
    }
    std::vector<EventSet> parts{blocks[0], blocks[1], blocks[2]};
    REQUIRE(check_disjoint(space, parts));
    const double sum = space.prob(parts[0]) + space.prob(parts[1]) +
                       space.prob(parts[2]);
    CHECK(std::abs(space.prob((parts[0] | parts[1]) | parts[2]) - sum) < 1e-12);
  }
}

TEST_CASE("parallel kernel matches the serial reference on a large space") {
  // 2^18 outcomes crosses several chunks.
  std::vector<std::pair<std::string, double>> events;
  ccdtest::Gen gen(7);
  for (int i = 0; i < 18; ++i) {
    events.emplace_back("e" + std::to_string(i), gen.real01());
  }
  FiniteSpace space(events);
  EventSet set = space.empty_set();
  for (std::size_t k = 0; k < space.n_outcomes(); ++k) {
    if (gen.chance(0.3)) set.set(k);
  }
  CHECK(std::abs(space.prob(set) - reference::prob_serial(space, set)) < 1e-12);
}

TEST_CASE("independence check cap") {
  FiniteSpace space({{"a", 0.5}});
  std::vector<EventSet> sets(21, space.atomic("a"));
  CHECK_THROWS_AS(check_mutual_independence(space, sets), Error);
}

TEST_CASE("CCD_ORACLE_CAP overrides the enumeration cap") {
  CHECK(oracle_cap() == FiniteSpace::kDefaultCap);
  setenv("CCD_ORACLE_CAP", "4", 1);
  CHECK(oracle_cap() == 4);
  setenv("CCD_ORACLE_CAP", "99", 1);  // clamped to the memory ceiling
  CHECK(oracle_cap() == 24);
  setenv("CCD_ORACLE_CAP", "garbage", 1);
  CHECK(oracle_cap() == FiniteSpace::kDefaultCap);
  unsetenv("CCD_ORACLE_CAP");
  CHECK(oracle_cap() == FiniteSpace::kDefaultCap);
}
