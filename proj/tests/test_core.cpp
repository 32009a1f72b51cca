// Copyright 2026 The pslearn Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <limits>
#include <set>
#include <vector>

#include "catch2/catch_amalgamated.hpp"
#include "psl/core.hpp"

using namespace psl;

TEST_CASE("ObjectiveVector rejects non-finite entries") {
  CHECK_NOTHROW(ObjectiveVector({1.0, -2.0}));
  CHECK_THROWS_AS(ObjectiveVector({1.0, std::numeric_limits<double>::quiet_NaN()}),
                  numeric_error);
  CHECK_THROWS_AS(ObjectiveVector({std::numeric_limits<double>::infinity(), 0.0}),
                  numeric_error);
}

TEST_CASE("PreferenceVector validates the simplex") {
  CHECK_NOTHROW(PreferenceVector({0.25, 0.75}));
  CHECK_NOTHROW(PreferenceVector({1.0, 0.0}));  // zero weights are legal
  CHECK_THROWS_AS(PreferenceVector({1.0}), dimension_error);
  CHECK_THROWS_AS(PreferenceVector({0.5, 0.4}), degenerate_input_error);
  CHECK_THROWS_AS(PreferenceVector({-0.1, 1.1}), degenerate_input_error);
  CHECK_THROWS_AS(PreferenceVector({0.5, std::numeric_limits<double>::quiet_NaN()}),
                  degenerate_input_error);
}

TEST_CASE("dominates: hand cases") {
  const ObjectiveVector a({1.0, 2.0});
  const ObjectiveVector b({1.0, 3.0});
  const ObjectiveVector c({2.0, 1.0});
  CHECK(dominates(a, b));
  CHECK_FALSE(dominates(b, a));
  CHECK_FALSE(dominates(a, a));  // equal never dominates
  CHECK_FALSE(dominates(a, c));
  CHECK_FALSE(dominates(c, a));
  CHECK_THROWS_AS(dominates(a, ObjectiveVector({1.0, 2.0, 3.0})), dimension_error);
}

TEST_CASE("dominates: partial order properties on random points") {
  RngStream rng(7);
  std::vector<ObjectiveVector> pts;
  for (int i = 0; i < 60; ++i) {
    // coarse grid so duplicates and ties actually occur
    pts.push_back(ObjectiveVector({std::floor(rng.uniform(0, 4)), std::floor(rng.uniform(0, 4)),
                                   std::floor(rng.uniform(0, 4))}));
  }
  for (const auto& a : pts) {
    CHECK_FALSE(dominates(a, a));
    for (const auto& b : pts) {
      if (dominates(a, b)) CHECK_FALSE(dominates(b, a));
      for (const auto& c : pts) {
        if (dominates(a, b) && dominates(b, c)) CHECK(dominates(a, c));
      }
    }
  }
}

TEST_CASE("simplex_project normalizes and clamps") {
  const PreferenceVector p = simplex_project({2.0, 6.0});
  CHECK(p[0] == Catch::Approx(0.25));
  CHECK(p[1] == Catch::Approx(0.75));

  const PreferenceVector q = simplex_project({-1.0, 3.0});  // negative part clamped
  CHECK(q[0] == 0.0);
  CHECK(q[1] == 1.0);

  CHECK_THROWS_AS(simplex_project({0.0, 0.0}), degenerate_input_error);
  CHECK_THROWS_AS(simplex_project({-1.0, -2.0}), degenerate_input_error);
  CHECK_THROWS_AS(simplex_project({3.0}), dimension_error);
}

TEST_CASE("simplex_project is bitwise idempotent") {
  RngStream rng(11);
  for (int i = 0; i < 200; ++i) {
    std::vector<double> raw = {rng.uniform(-0.2, 2.0), rng.uniform(0.0, 2.0),
                               rng.uniform(0.0, 2.0)};
    const PreferenceVector once = simplex_project(raw);
    const PreferenceVector twice = simplex_project(once.weights());
    for (std::size_t j = 0; j < once.size(); ++j) CHECK(once[j] == twice[j]);
  }
}

TEST_CASE("RngStream is deterministic and seed-sensitive") {
  RngStream a(42), b(42), c(43);
  bool all_equal = true, any_diff = false;
  for (int i = 0; i < 1000; ++i) {
    const std::uint64_t va = a.next_u64();
    all_equal = all_equal && va == b.next_u64();
    any_diff = any_diff || va != c.next_u64();
  }
  CHECK(all_equal);
  CHECK(any_diff);
}

TEST_CASE("RngStream doubles live in [0, 1) and look uniform") {
  RngStream rng(3);
  double sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double v = rng.next_double();
    REQUIRE(v >= 0.0);
    REQUIRE(v < 1.0);
    sum += v;
  }
  CHECK(sum / n == Catch::Approx(0.5).margin(0.005));
}

TEST_CASE("uniform_index covers its range without bias") {
  RngStream rng(5);
  std::vector<int> counts(7, 0);
  const int n = 70000;
  for (int i = 0; i < n; ++i) {
    const std::size_t v = rng.uniform_index(7);
    REQUIRE(v < 7);
    ++counts[v];
  }
  for (int c : counts) CHECK(std::abs(c - n / 7) < 600);
  CHECK_THROWS_AS(rng.uniform_index(0), degenerate_input_error);
}

TEST_CASE("uniform respects the requested interval") {
  RngStream rng(9);
  for (int i = 0; i < 1000; ++i) {
    const double v = rng.uniform(-3.0, 2.5);
    REQUIRE(v >= -3.0);
    REQUIRE(v < 2.5);
  }
}

TEST_CASE("substreams are independent of parent draw position") {
  RngStream a(17);
  RngStream sub_before = a.substream(4);
  for (int i = 0; i < 100; ++i) a.next_u64();
  RngStream sub_after = a.substream(4);
  for (int i = 0; i < 50; ++i) CHECK(sub_before.next_u64() == sub_after.next_u64());

  // distinct keys give distinct streams
  RngStream s0 = a.substream(0), s1 = a.substream(1);
  bool differ = false;
  for (int i = 0; i < 50; ++i) differ = differ || s0.next_u64() != s1.next_u64();
  CHECK(differ);
}
