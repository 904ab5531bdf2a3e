// Copyright 2026 The funbandit Authors
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

#ifndef FUNBANDIT_FUNCTIONAL_HPP
#define FUNBANDIT_FUNCTIONAL_HPP

#include <optional>
#include <string>
#include <variant>

#include "funbandit/errors.hpp"

namespace funbandit {

// The optimization target is a functional G of the reward distribution,
// not just its mean. The best arm is always the one MAXIMIZING G, whatever
// G is; the risk functionals below carry their conventional signs inside
// the definition.

/// Expected reward: G = mu.
struct Mean {};

/// Mean-variance: G = -mu + lambda * sigma^2, lambda >= 0.
struct MeanVariance {
  double lambda = 1.0;
};

/// Value at risk: G = -q(lambda) with the right-continuous quantile
/// q(lambda) = inf{ x : F(x) > lambda }.
struct ValueAtRisk {
  double lambda = 0.5;
};

/// Average value at risk: G = -(1/lambda) * integral_0^lambda q(phi) dphi.
struct AverageValueAtRisk {
  double lambda = 0.5;
};

enum class EntropyEstimator {
  kPlugin,      // empirical distribution plug-in, discrete supports
  kNearestNeighbor,  // Kozachenko-Leonenko spacing estimator, continuous supports
};

/// Shannon entropy in bits. Plug-in mode counts atoms; nearest-neighbor
/// mode uses k-th neighbor spacings with k = floor(sqrt(N)) when unset.
struct ShannonEntropy {
  EntropyEstimator mode = EntropyEstimator::kPlugin;
  std::optional<int> k;
};

using FunctionalSpec =
    std::variant<Mean, MeanVariance, ValueAtRisk, AverageValueAtRisk,
                 ShannonEntropy>;

inline std::string functional_name(const FunctionalSpec& spec) {
  struct Visitor {
    std::string operator()(const Mean&) const { return "mean"; }
    std::string operator()(const MeanVariance&) const { return "mean_variance"; }
    std::string operator()(const ValueAtRisk&) const { return "var"; }
    std::string operator()(const AverageValueAtRisk&) const { return "avar"; }
    std::string operator()(const ShannonEntropy& e) const {
      return e.mode == EntropyEstimator::kPlugin ? "entropy_plugin"
                                                 : "entropy_knn";
    }
  };
  return std::visit(Visitor{}, spec);
}

/// Rejects level parameters outside (0, 1) and negative trade-offs.
inline void validate(const FunctionalSpec& spec) {
  struct Visitor {
    void operator()(const Mean&) const {}
    void operator()(const MeanVariance& f) const {
      if (!(f.lambda >= 0.0)) {
        throw DomainError("mean_variance: lambda must be non-negative, got " +
                          std::to_string(f.lambda));
      }
    }
    void operator()(const ValueAtRisk& f) const {
      if (!(f.lambda > 0.0 && f.lambda < 1.0)) {
        throw DomainError("var: lambda must lie in (0, 1), got " +
                          std::to_string(f.lambda));
      }
    }
    void operator()(const AverageValueAtRisk& f) const {
      if (!(f.lambda > 0.0 && f.lambda < 1.0)) {
        throw DomainError("avar: lambda must lie in (0, 1), got " +
                          std::to_string(f.lambda));
      }
    }
    void operator()(const ShannonEntropy& f) const {
      if (f.k && *f.k < 1) {
        throw DomainError("entropy: neighbor order k must be >= 1, got " +
                          std::to_string(*f.k));
      }
    }
  };
  std::visit(Visitor{}, spec);
}

}  // namespace funbandit

#endif  // FUNBANDIT_FUNCTIONAL_HPP
