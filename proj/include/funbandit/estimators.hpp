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

#ifndef FUNBANDIT_ESTIMATORS_HPP
#define FUNBANDIT_ESTIMATORS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include <boost/math/special_functions/digamma.hpp>

#include "funbandit/errors.hpp"
#include "funbandit/functional.hpp"

namespace funbandit {

/// Rewards observed for one arm, accumulated across elimination rounds.
/// Append-only: estimates in later rounds reuse everything seen so far.
class SampleBuffer {
 public:
  SampleBuffer() = default;

  void append(const std::vector<double>& more) {
    values_.insert(values_.end(), more.begin(), more.end());
  }
  void append(double v) { values_.push_back(v); }

  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

 private:
  std::vector<double> values_;
};

namespace detail {

// Every estimator works on an ascending sorted copy: output then depends
// only on the multiset of samples, bit for bit, and summation order is
// fixed across platforms.
inline std::vector<double> sorted_copy(const SampleBuffer& samples) {
  std::vector<double> v = samples.values();
  std::sort(v.begin(), v.end());
  return v;
}

inline void require_nonempty(const SampleBuffer& samples, const char* op) {
  if (samples.empty()) {
    throw EmptySample(std::string(op) + ": sample buffer is empty");
  }
}

inline void require_level(double lambda, const char* op) {
  if (!(lambda > 0.0 && lambda <= 1.0)) {
    throw DomainError(std::string(op) + ": lambda must lie in (0, 1], got " +
                      std::to_string(lambda));
  }
}

inline double sum_ascending(const std::vector<double>& sorted) {
  double s = 0.0;
  for (double v : sorted) s += v;
  return s;
}

}  // namespace detail

/// Arithmetic mean.
inline double estimate_mean(const SampleBuffer& samples) {
  detail::require_nonempty(samples, "estimate_mean");
  const std::vector<double> v = detail::sorted_copy(samples);
  return detail::sum_ascending(v) / static_cast<double>(v.size());
}

/// -mean + lambda * unbiased sample variance (1/(N-1) normalizer).
inline double estimate_mean_variance(const SampleBuffer& samples,
                                     double lambda) {
  detail::require_nonempty(samples, "estimate_mean_variance");
  if (samples.size() < 2) {
    throw InsufficientSamples(
        "estimate_mean_variance: needs at least 2 samples, got 1");
  }
  const std::vector<double> v = detail::sorted_copy(samples);
  const double n = static_cast<double>(v.size());
  const double mean = detail::sum_ascending(v) / n;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return -mean + lambda * ss / (n - 1.0);
}

/// Negated ceil(lambda*N)-th order statistic (ascending, 1-indexed), the
/// empirical value at risk. lambda = 1 selects the maximum.
inline double estimate_var(const SampleBuffer& samples, double lambda) {
  detail::require_nonempty(samples, "estimate_var");
  detail::require_level(lambda, "estimate_var");
  const std::vector<double> v = detail::sorted_copy(samples);
  const double n = static_cast<double>(v.size());
  auto index = static_cast<std::size_t>(std::ceil(lambda * n));
  index = std::clamp<std::size_t>(index, 1, v.size());
  return -v[index - 1];
}

/// Riemann-sum tail average:
/// -(1/lambda) * (sum_{j<floor(lambda*N)} X_(j+1)/N
///                + (lambda - floor(lambda*N)/N) * X_(ceil(lambda*N))).
inline double estimate_avar(const SampleBuffer& samples, double lambda) {
  detail::require_nonempty(samples, "estimate_avar");
  detail::require_level(lambda, "estimate_avar");
  const std::vector<double> v = detail::sorted_copy(samples);
  const double n = static_cast<double>(v.size());
  const double whole = std::floor(lambda * n);
  const auto full_terms = static_cast<std::size_t>(whole);
  double partial_sum = 0.0;
  for (std::size_t j = 0; j < full_terms && j < v.size(); ++j) {
    partial_sum += v[j];
  }
  auto corr_index = static_cast<std::size_t>(std::ceil(lambda * n));
  corr_index = std::clamp<std::size_t>(corr_index, 1, v.size());
  const double correction = (lambda - whole / n) * v[corr_index - 1];
  return -(partial_sum / n + correction) / lambda;
}

/// Shannon entropy of the empirical atom frequencies, in bits. Values
/// compare by exact equality, so this fits discrete reward laws.
inline double estimate_entropy_plugin(const SampleBuffer& samples) {
  detail::require_nonempty(samples, "estimate_entropy_plugin");
  const std::vector<double> v = detail::sorted_copy(samples);
  const double n = static_cast<double>(v.size());
  double h = 0.0;
  std::size_t run_start = 0;
  for (std::size_t i = 1; i <= v.size(); ++i) {
    if (i == v.size() || v[i] != v[run_start]) {
      const double p = static_cast<double>(i - run_start) / n;
      h -= p * std::log2(p);
      run_start = i;
    }
  }
  return h;
}

/// Default neighbor order for the spacing estimator: floor(sqrt(N)).
inline int default_knn_k(std::size_t n) {
  return static_cast<int>(std::floor(std::sqrt(static_cast<double>(n))));
}

/// Kozachenko-Leonenko spacing estimator of differential entropy in one
/// dimension, in bits:
///   [psi(N) - psi(k) + ln 2 + (1/N) * sum_i ln eps_i] / ln 2,
/// eps_i the distance from sample i to its k-th nearest neighbor. Zero
/// distances (duplicate samples) count as 1e-12 so the log stays finite.
inline double estimate_entropy_knn(const SampleBuffer& samples, int k) {
  if (k < 1) {
    throw DomainError("estimate_entropy_knn: k must be >= 1, got " +
                      std::to_string(k));
  }
  const std::size_t n = samples.size();
  if (n < static_cast<std::size_t>(k) + 1) {
    throw InsufficientSamples(
        "estimate_entropy_knn: needs at least k+1 = " + std::to_string(k + 1) +
        " samples, got " + std::to_string(n));
  }
  const std::vector<double> v = detail::sorted_copy(samples);
  if (v.front() == v.back()) {
    throw DegenerateSample(
        "estimate_entropy_knn: all samples identical, spacing undefined");
  }
  // In sorted order the k nearest neighbors of v[i] are adjacent, so a
  // two-sided greedy walk finds the k-th smallest gap in O(k) per point.
  double log_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    std::ptrdiff_t left = static_cast<std::ptrdiff_t>(i) - 1;
    std::size_t right = i + 1;
    double eps = 0.0;
    for (int taken = 0; taken < k; ++taken) {
      const double dl =
          left >= 0 ? v[i] - v[static_cast<std::size_t>(left)]
                    : std::numeric_limits<double>::infinity();
      const double dr =
          right < n ? v[right] - v[i] : std::numeric_limits<double>::infinity();
      if (dl <= dr) {
        eps = dl;
        --left;
      } else {
        eps = dr;
        ++right;
      }
    }
    log_sum += std::log(std::max(eps, 1e-12));
  }
  using boost::math::digamma;
  const double nats = digamma(static_cast<double>(n)) -
                      digamma(static_cast<double>(k)) + std::log(2.0) +
                      log_sum / static_cast<double>(n);
  return nats / std::log(2.0);
}

/// Dispatch to the estimator matching the functional tag. The unset
/// neighbor order resolves against the current sample count.
inline double estimate(const SampleBuffer& samples, const FunctionalSpec& f) {
  struct Visitor {
    const SampleBuffer& samples;
    double operator()(const Mean&) const { return estimate_mean(samples); }
    double operator()(const MeanVariance& g) const {
      return estimate_mean_variance(samples, g.lambda);
    }
    double operator()(const ValueAtRisk& g) const {
      return estimate_var(samples, g.lambda);
    }
    double operator()(const AverageValueAtRisk& g) const {
      return estimate_avar(samples, g.lambda);
    }
    double operator()(const ShannonEntropy& g) const {
      if (g.mode == EntropyEstimator::kPlugin) {
        return estimate_entropy_plugin(samples);
      }
      const int k = g.k ? *g.k : default_knn_k(samples.size());
      return estimate_entropy_knn(samples, k);
    }
  };
  return std::visit(Visitor{samples}, f);
}

}  // namespace funbandit

#endif  // FUNBANDIT_ESTIMATORS_HPP
