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

#ifndef FUNBANDIT_BOUNDS_HPP
#define FUNBANDIT_BOUNDS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>

#include "funbandit/errors.hpp"

namespace funbandit {
namespace bounds {

// All calculators return RAW bound values, which may exceed 1. Display
// layers clamp to [0, 1]; keeping the raw value preserves invertibility
// and monotonicity.

/// Estimator- and distribution-specific constants feeding the concrete
/// bounds. Everything defaults to the most optimistic admissible value
/// (zero); D, D_prime, and M_knn have no admissible default and must be
/// set by the caller before the bound that consumes them.
struct BoundConstants {
  double C1 = 0.0;       // quantile-estimator bias remainder, O(1/N^2)
  double C2 = 0.0;       // quantile-estimator variance remainder, O(1/N^2)
  double c1 = 0.0;       // neighbor-entropy bias, (k/M)^(1/dim) scale
  double c2 = 0.0;       // neighbor-entropy bias, 1/k scale
  double c4 = 0.0;       // neighbor-entropy variance, 1/N scale
  double c5 = 0.0;       // neighbor-entropy variance, 1/M scale
  double M_knn = 0.0;    // entropy estimator population parameter
  double D = 0.0;        // sup of the reward density
  double D_prime = 0.0;  // sup of the density derivative magnitude
};

inline void validate(const BoundConstants& c) {
  const std::pair<const char*, double> fields[] = {
      {"C1", c.C1},   {"C2", c.C2}, {"c1", c.c1},
      {"c2", c.c2},   {"c4", c.c4}, {"c5", c.c5},
      {"M_knn", c.M_knn}, {"D", c.D},   {"D_prime", c.D_prime}};
  for (const auto& [name, value] : fields) {
    if (!(value >= 0.0)) {
      throw DomainError(std::string("constants.") + name +
                        " must be non-negative, got " + std::to_string(value));
    }
  }
}

/// Deviation-probability envelope: P(|Ghat_n - G| >= x) <= Q(n, x) one
/// side at a time, nonincreasing in both arguments.
struct QFunction {
  std::function<double(double, double)> eval;
  bool strictly_monotone_in_n = true;
};

/// Envelope for the mean estimator: Q(n, x) = exp(-n x^2).
inline double q_mean(double n, double x) { return std::exp(-n * x * x); }

inline QFunction q_mean_function() {
  return QFunction{[](double n, double x) { return q_mean(n, x); }, true};
}

/// Recommendation-error bound for any envelope Q:
/// e_r(T) <= 2 (H - K + 1) * Q((T - H) / H, d / 2).
/// T is real so the sample-complexity inverse round-trips exactly.
inline double generic_error_bound(int H, int K, double T, double d,
                                  const QFunction& q) {
  if (!(T > H)) {
    throw DomainError("generic_error_bound: requires T > H, got T = " +
                      std::to_string(T) + ", H = " + std::to_string(H));
  }
  if (!(d > 0.0)) {
    throw DomainError("generic_error_bound: gap d must be positive");
  }
  const double n = (T - H) / H;
  return 2.0 * (H - K + 1) * q.eval(n, d / 2.0);
}

/// Smallest real budget T with error bound <= delta for the mean envelope:
/// T = H * (4 / d^2) * ln((2H - 2K + 2) / delta) + H.
inline double sample_complexity_mean(double delta, int H, int K, double d) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw DomainError("sample_complexity_mean: delta must lie in (0, 1)");
  }
  if (!(d > 0.0)) {
    throw DomainError("sample_complexity_mean: gap d must be positive");
  }
  const double leaves = 2.0 * H - 2.0 * K + 2.0;
  if (!(leaves > 0.0)) {
    throw DomainError("sample_complexity_mean: requires H >= K");
  }
  const double n = (4.0 / (d * d)) * std::log(leaves / delta);
  return H * n + H;
}

/// Expected-regret bound gamma_max * e_r-bound, and its PAC companion
/// (the same bound divided by delta).
struct RegretBounds {
  double regret = 0.0;
  double pac_regret = 0.0;
};

inline RegretBounds regret_and_pac_bounds(int H, int K, double T, double d,
                                          double gamma_max, double delta,
                                          const QFunction& q) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw DomainError("regret_and_pac_bounds: delta must lie in (0, 1)");
  }
  if (!(gamma_max >= 0.0)) {
    throw DomainError("regret_and_pac_bounds: gamma_max must be non-negative");
  }
  const double regret = gamma_max * generic_error_bound(H, K, T, d, q);
  return {regret, regret / delta};
}

/// Mean-case closed form specialized to halving-style accounting:
/// (K + log2 K) * exp(-(T - 2K) d^2 / (8K)).
inline double mean_case_error_bound(int K, std::int64_t T, double d) {
  if (T <= 2 * static_cast<std::int64_t>(K)) {
    throw DomainError("mean_case_error_bound: requires T > 2K, got T = " +
                      std::to_string(T));
  }
  if (!(d > 0.0)) {
    throw DomainError("mean_case_error_bound: gap d must be positive");
  }
  const double k = static_cast<double>(K);
  const double exponent =
      -(static_cast<double>(T) - 2.0 * k) * d * d / (8.0 * k);
  return (k + std::log2(k)) * std::exp(exponent);
}

/// Mean-variance recommendation-error bound on rewards in [A, B]:
/// 2 (H - K + 1) [exp(-N d^2 / (8 (B-A)^2))
///                + exp(-N ((N-1)/N * d/lambda)^2 / (8 (B-A)^4))]
/// with N = (T - H) / H.
inline double mv_error_bound(int H, int K, std::int64_t T, double d,
                             double lambda, double A, double B) {
  if (T <= 2 * static_cast<std::int64_t>(H)) {
    throw DomainError("mv_error_bound: requires T > 2H, got T = " +
                      std::to_string(T) + ", H = " + std::to_string(H));
  }
  if (!(B > A)) {
    throw DomainError("mv_error_bound: requires B > A");
  }
  if (!(lambda > 0.0)) {
    throw DomainError("mv_error_bound: lambda must be positive");
  }
  if (!(d > 0.0)) {
    throw DomainError("mv_error_bound: gap d must be positive");
  }
  const double N = (static_cast<double>(T) - H) / H;
  const double range = B - A;
  const double range2 = range * range;
  const double mean_term = std::exp(-N * d * d / (8.0 * range2));
  const double scaled = (N - 1.0) / N * d / lambda;
  const double var_term =
      std::exp(-N * scaled * scaled / (8.0 * range2 * range2));
  return 2.0 * (H - K + 1) * (mean_term + var_term);
}

/// Bias and variance envelopes of the order-statistic quantile estimator
/// at sample size N, density value/derivative taken at the true quantile:
///   |V| <= |lambda (1-lambda) pdf' / (2 (N+2) pdf^3)| + C1 / N^2
///    W <= lambda (1-lambda) / ((N+2) pdf^2) + C2 / N^2.
struct BiasVariance {
  double V_abs = 0.0;
  double W = 0.0;
};

inline BiasVariance var_bias_variance(double lambda, std::int64_t N,
                                      double pdf_at_q, double pdf_deriv_at_q,
                                      const BoundConstants& consts) {
  if (!(pdf_at_q > 0.0)) {
    throw DomainError(
        "var_bias_variance: density at the quantile must be positive");
  }
  if (N < 1) {
    throw DomainError("var_bias_variance: N must be >= 1");
  }
  const double n = static_cast<double>(N);
  const double lam = lambda * (1.0 - lambda);
  const double pdf2 = pdf_at_q * pdf_at_q;
  const double v_lead =
      std::abs(lam * pdf_deriv_at_q / (2.0 * (n + 2.0) * pdf2 * pdf_at_q));
  const double w_lead = lam / ((n + 2.0) * pdf2);
  return {v_lead + consts.C1 / (n * n), w_lead + consts.C2 / (n * n)};
}

/// Value-at-risk recommendation-error bound:
/// 4 (H - K + 1) W / ((d/2 - |V|)^2), valid only while the estimator bias
/// stays below half the gap.
inline double var_error_bound(int H, int K, std::int64_t T, double d_gap,
                              double V_abs, double W) {
  if (T <= H) {
    throw DomainError("var_error_bound: requires T > H");
  }
  if (!(d_gap > 0.0)) {
    throw DomainError("var_error_bound: gap d must be positive");
  }
  const double margin = d_gap / 2.0 - V_abs;
  if (!(margin > 0.0)) {
    throw BiasDominates(
        "var_error_bound: estimator bias |V| = " + std::to_string(V_abs) +
        " reaches half the gap " + std::to_string(d_gap / 2.0) +
        "; the bound is vacuous at this sample size");
  }
  return 4.0 * (H - K + 1) * W / (margin * margin);
}

/// Smallest level above lambda whose N-fold multiple is an integer:
/// (floor(N * lambda) + 1) / N. Strictly greater than lambda always.
inline double lambda_prime(std::int64_t N, double lambda) {
  const double n = static_cast<double>(N);
  return (std::floor(n * lambda) + 1.0) / n;
}

/// Average-value-at-risk recommendation-error bound with epsilon = d/2:
/// 4 (H - K + 1) exp(-(T - H) eps^2 lambda^2
///                   / (32 H lambda'(floor(T/H)) M^2)).
inline double avar_error_bound(int H, int K, std::int64_t T, double d_gap,
                               double lambda, double M_reward,
                               const BoundConstants& consts) {
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw DomainError("avar_error_bound: lambda must lie in (0, 1)");
  }
  if (!(M_reward > 0.0)) {
    throw DomainError("avar_error_bound: reward magnitude M must be positive");
  }
  if (!(d_gap > 0.0)) {
    throw DomainError("avar_error_bound: gap d must be positive");
  }
  if (T <= H) {
    throw DomainError("avar_error_bound: requires T > H");
  }
  const std::int64_t N = T / H;
  const double lp = lambda_prime(N, lambda);
  const double eps = d_gap / 2.0;
  double bias_requirement = 0.0;
  if (consts.D_prime > 0.0) {
    if (!(consts.D > 0.0)) {
      throw DomainError(
          "avar_error_bound: density bound D must be positive when D' is "
          "set");
    }
    bias_requirement +=
        consts.D_prime / (6.0 * consts.D * consts.D * consts.D);
  }
  bias_requirement += 2.0 * consts.C1 * lp;
  const double n_required =
      std::max(bias_requirement / (eps * lambda), 2.0);
  if (static_cast<double>(N) < n_required) {
    throw SampleConditionUnmet(
        "avar_error_bound: per-round samples N = " + std::to_string(N) +
        " below the required " + std::to_string(n_required));
  }
  const double exponent = -(static_cast<double>(T) - H) * eps * eps * lambda *
                          lambda /
                          (32.0 * H * lp * M_reward * M_reward);
  return 4.0 * (H - K + 1) * std::exp(exponent);
}

/// Entropy recommendation-error bound from the neighbor-spacing estimator
/// envelopes V = c1 (k/M)^(1/dim) + c2/k and W = c4/N + c5/M:
/// 4 (H - K + 1) W / ((d/2 - V)^2).
inline double entropy_error_bound(int H, int K, std::int64_t T, double d_gap,
                                  std::int64_t N, const BoundConstants& consts,
                                  int k, int dim) {
  if (T <= H) {
    throw DomainError("entropy_error_bound: requires T > H");
  }
  if (N < 1) {
    throw DomainError("entropy_error_bound: N must be >= 1");
  }
  if (k < 1 || dim < 1) {
    throw DomainError("entropy_error_bound: k and dim must be >= 1");
  }
  if (!(d_gap > 0.0)) {
    throw DomainError("entropy_error_bound: gap d must be positive");
  }
  if ((consts.c1 > 0.0 || consts.c5 > 0.0) && !(consts.M_knn > 0.0)) {
    throw DomainError(
        "entropy_error_bound: M_knn must be positive when c1 or c5 is set");
  }
  double V = consts.c2 / k;
  if (consts.c1 > 0.0) {
    V += consts.c1 *
         std::pow(static_cast<double>(k) / consts.M_knn, 1.0 / dim);
  }
  double W = consts.c4 / static_cast<double>(N);
  if (consts.c5 > 0.0) W += consts.c5 / consts.M_knn;
  const double margin = d_gap / 2.0 - V;
  if (!(margin > 0.0)) {
    throw BiasDominates(
        "entropy_error_bound: estimator bias V = " + std::to_string(V) +
        " reaches half the gap " + std::to_string(d_gap / 2.0) +
        "; the bound is vacuous for these constants");
  }
  return 4.0 * (H - K + 1) * W / (margin * margin);
}

}  // namespace bounds
}  // namespace funbandit

#endif  // FUNBANDIT_BOUNDS_HPP
