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

#include "qmetric/basedist.hpp"

#include <algorithm>
#include <cmath>

#include "qmetric/errors.hpp"

namespace qmetric {

BaseDistance::BaseDistance(std::string name, Fn fn, bool is_symmetric)
    : name_(std::move(name)), fn_(std::make_shared<const Fn>(std::move(fn))), symmetric_(is_symmetric) {}

double euclidean(const ObjectState& x, const ObjectState& y) {
  if (x.dim() != y.dim()) throw ShapeError("euclidean: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < x.dim(); ++i) {
    const double d = x[i] - y[i];
    s += d * d;
  }
  return std::sqrt(s);
}

double asym_scale(const ObjectState& x, const ObjectState& y, double kappa) {
  if (!(kappa > 1.0) || !std::isfinite(kappa)) throw ParameterError("asym_scale: kappa must be > 1");
  if (x.dim() != 1 || y.dim() != 1) throw ShapeError("asym_scale: states must be 1-D");
  return y[0] >= x[0] ? y[0] - x[0] : kappa * (x[0] - y[0]);
}

BaseDistance euclidean_distance() {
  return BaseDistance("euclidean", [](const ObjectState& x, const ObjectState& y) { return euclidean(x, y); },
                      true);
}

BaseDistance asym_scale_distance(double kappa) {
  if (!(kappa > 1.0) || !std::isfinite(kappa)) throw ParameterError("asym_scale: kappa must be > 1");
  return BaseDistance(
      "asym_scale", [kappa](const ObjectState& x, const ObjectState& y) { return asym_scale(x, y, kappa); },
      false);
}

BaseDistance cutoff(BaseDistance d, double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw ParameterError("cutoff: c must be > 0");
  const bool symmetric = d.is_symmetric();
  std::string name = "cutoff(" + d.name() + ")";
  return BaseDistance(
      std::move(name), [d = std::move(d), c](const ObjectState& x, const ObjectState& y) { return std::min(d(x, y), c); },
      symmetric);
}

}  // namespace qmetric
