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

#pragma once

#include <functional>
#include <memory>
#include <string>

#include "qmetric/core.hpp"

namespace qmetric {

/// Base (quasi-)metric on the single-object space.
///
/// Providers promise identity (d(x,y) = 0 iff x = y) and the triangle
/// inequality; symmetry is only assumed when `is_symmetric()` is true. The
/// evaluation function must be reentrant. Copies share the callable.
class BaseDistance {
 public:
  using Fn = std::function<double(const ObjectState&, const ObjectState&)>;

  BaseDistance(std::string name, Fn fn, bool is_symmetric);

  double operator()(const ObjectState& x, const ObjectState& y) const { return (*fn_)(x, y); }
  bool is_symmetric() const noexcept { return symmetric_; }
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
  std::shared_ptr<const Fn> fn_;
  bool symmetric_;
};

/// ||x - y||_2. Throws ShapeError on a dimension mismatch.
double euclidean(const ObjectState& x, const ObjectState& y);

/// Asymmetric distance on the real line: y - x when y >= x, kappa (x - y)
/// otherwise. Requires 1-D states and kappa > 1.
double asym_scale(const ObjectState& x, const ObjectState& y, double kappa);

BaseDistance euclidean_distance();
BaseDistance asym_scale_distance(double kappa);

/// min(d(x, y), c). Throws ParameterError unless c > 0.
BaseDistance cutoff(BaseDistance d, double c);

}  // namespace qmetric
