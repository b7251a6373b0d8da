// Copyright 2026 The qmetric Authors
//
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

#include "doctest.h"
#include "oracles.hpp"
#include "qmetric/basedist.hpp"
#include "qmetric/errors.hpp"

using namespace qmetric;

TEST_CASE("euclidean distance") {
  CHECK(euclidean({0.0, 0.0}, {3.0, 4.0}) == 5.0);
  CHECK(euclidean({1.5}, {1.5}) == 0.0);
  CHECK_THROWS_AS(euclidean({1.0}, {1.0, 2.0}), ShapeError);
  const auto d = euclidean_distance();
  CHECK(d.is_symmetric());
  CHECK(d({1.0}, {4.0}) == 3.0);
}

TEST_CASE("asymmetric scale distance") {
  CHECK(asym_scale({1.0}, {3.0}, 2.0) == 2.0);
  CHECK(asym_scale({3.0}, {1.0}, 2.0) == 4.0);
  CHECK(asym_scale({3.0}, {3.0}, 2.0) == 0.0);
  CHECK_THROWS_AS(asym_scale({1.0}, {2.0}, 1.0), ParameterError);
  CHECK_THROWS_AS(asym_scale({1.0, 0.0}, {2.0, 0.0}, 2.0), ShapeError);
  CHECK_FALSE(asym_scale_distance(3.0).is_symmetric());
}

TEST_CASE("asymmetric scale distance is a quasi-metric") {
  oracle::Gen gen(11);
  const auto d = asym_scale_distance(2.5);
  for (int n = 0; n < 2000; ++n) {
    const auto x = gen.state(1, 10.0), y = gen.state(1, 10.0), z = gen.state(1, 10.0);
    CHECK(d(x, z) <= d(x, y) + d(y, z) + 1e-12);
    CHECK((d(x, y) == 0.0) == (x == y));
  }
}

TEST_CASE("cut-off") {
  const auto d = cutoff(euclidean_distance(), 2.0);
  CHECK(d({0.0}, {1.0}) == 1.0);
  CHECK(d({0.0}, {5.0}) == 2.0);
  CHECK(d.is_symmetric());
  CHECK_THROWS_AS(cutoff(euclidean_distance(), 0.0), ParameterError);
}
