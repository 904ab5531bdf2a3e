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

#ifndef FUNBANDIT_DISTRIBUTIONS_HPP
#define FUNBANDIT_DISTRIBUTIONS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <boost/math/distributions/beta.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/digamma.hpp>

#include "funbandit/errors.hpp"
#include "funbandit/functional.hpp"
#include "funbandit/rng.hpp"

namespace funbandit {

struct Bernoulli {
  double p = 0.5;
};

/// Finite atom distribution. Atoms are stored sorted by value with exact
/// duplicates merged, so the CDF walk and entropy sums are order-stable.
struct Categorical {
  std::vector<double> values;
  std::vector<double> probs;
};

struct Uniform {
  double a = 0.0;
  double b = 1.0;
};

/// Gaussian(mu, sigma) conditioned on [a, b].
struct TruncatedGaussian {
  double mu = 0.0;
  double sigma = 1.0;
  double a = -1.0;
  double b = 1.0;
};

struct BetaDist {
  double alpha = 1.0;
  double beta = 1.0;
};

using DistributionVariant =
    std::variant<Bernoulli, Categorical, Uniform, TruncatedGaussian, BetaDist>;

namespace detail {

inline bool finite(double x) { return std::isfinite(x); }

inline void sort_and_merge_atoms(std::vector<double>& values,
                                 std::vector<double>& probs) {
  std::vector<std::size_t> order(values.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return values[i] < values[j];
  });
  std::vector<double> v;
  std::vector<double> p;
  v.reserve(values.size());
  p.reserve(values.size());
  for (std::size_t idx : order) {
    if (!v.empty() && v.back() == values[idx]) {
      p.back() += probs[idx];
    } else {
      v.push_back(values[idx]);
      p.push_back(probs[idx]);
    }
  }
  values = std::move(v);
  probs = std::move(p);
}

}  // namespace detail

/// One arm's reward law plus its support bounds. Construction validates
/// parameters and freezes [support_lo, support_hi], which double as the
/// bounded-reward constants the concrete error bounds consume.
class DistributionSpec {
 public:
  explicit DistributionSpec(DistributionVariant dist) : dist_(std::move(dist)) {
    validate_and_finalize();
  }

  const DistributionVariant& dist() const { return dist_; }
  double support_lo() const { return support_lo_; }
  double support_hi() const { return support_hi_; }

  bool is_discrete() const {
    return std::holds_alternative<Bernoulli>(dist_) ||
           std::holds_alternative<Categorical>(dist_);
  }

  /// Sorted atom values and probabilities; discrete variants only.
  const std::vector<double>& atom_values() const { return atom_values_; }
  const std::vector<double>& atom_probs() const { return atom_probs_; }

  std::string name() const {
    struct Visitor {
      std::string operator()(const Bernoulli&) const { return "bernoulli"; }
      std::string operator()(const Categorical&) const { return "categorical"; }
      std::string operator()(const Uniform&) const { return "uniform"; }
      std::string operator()(const TruncatedGaussian&) const {
        return "truncated_gaussian";
      }
      std::string operator()(const BetaDist&) const { return "beta"; }
    };
    return std::visit(Visitor{}, dist_);
  }

 private:
  void validate_and_finalize() {
    struct Visitor {
      DistributionSpec* self;
      void operator()(Bernoulli& d) const {
        if (!(d.p >= 0.0 && d.p <= 1.0)) {
          throw DomainError("bernoulli: p must lie in [0, 1], got " +
                            std::to_string(d.p));
        }
        self->atom_values_ = {0.0, 1.0};
        self->atom_probs_ = {1.0 - d.p, d.p};
        if (d.p == 0.0) {
          self->support_lo_ = self->support_hi_ = 0.0;
        } else if (d.p == 1.0) {
          self->support_lo_ = self->support_hi_ = 1.0;
        } else {
          self->support_lo_ = 0.0;
          self->support_hi_ = 1.0;
        }
      }
      void operator()(Categorical& d) const {
        if (d.values.empty() || d.values.size() != d.probs.size()) {
          throw DomainError(
              "categorical: values and probs must be non-empty lists of equal "
              "length");
        }
        double total = 0.0;
        for (std::size_t i = 0; i < d.values.size(); ++i) {
          if (!detail::finite(d.values[i])) {
            throw DomainError("categorical: values must be finite");
          }
          if (!(d.probs[i] >= 0.0 && d.probs[i] <= 1.0)) {
            throw DomainError(
                "categorical: probabilities must lie in [0, 1], got " +
                std::to_string(d.probs[i]));
          }
          total += d.probs[i];
        }
        if (std::abs(total - 1.0) > 1e-12) {
          throw DomainError("categorical: probabilities sum to " +
                            std::to_string(total) + ", expected 1");
        }
        detail::sort_and_merge_atoms(d.values, d.probs);
        self->atom_values_ = d.values;
        self->atom_probs_ = d.probs;
        self->support_lo_ = d.values.front();
        self->support_hi_ = d.values.back();
      }
      void operator()(Uniform& d) const {
        if (!detail::finite(d.a) || !detail::finite(d.b) || !(d.a < d.b)) {
          throw DomainError("uniform: requires finite a < b");
        }
        self->support_lo_ = d.a;
        self->support_hi_ = d.b;
      }
      void operator()(TruncatedGaussian& d) const {
        if (!detail::finite(d.mu) || !detail::finite(d.sigma) ||
            !(d.sigma > 0.0)) {
          throw DomainError("truncated_gaussian: sigma must be positive");
        }
        if (!detail::finite(d.a) || !detail::finite(d.b) || !(d.a < d.b)) {
          throw DomainError("truncated_gaussian: requires finite a < b");
        }
        self->support_lo_ = d.a;
        self->support_hi_ = d.b;
      }
      void operator()(BetaDist& d) const {
        if (!(d.alpha > 0.0) || !(d.beta > 0.0)) {
          throw DomainError("beta: alpha and beta must be positive");
        }
        self->support_lo_ = 0.0;
        self->support_hi_ = 1.0;
      }
    };
    std::visit(Visitor{this}, dist_);
  }

  DistributionVariant dist_;
  double support_lo_ = 0.0;
  double support_hi_ = 0.0;
  std::vector<double> atom_values_;
  std::vector<double> atom_probs_;
};

namespace detail {

inline const boost::math::normal_distribution<double>& std_normal() {
  static const boost::math::normal_distribution<double> n(0.0, 1.0);
  return n;
}

struct TruncInfo {
  double za;       // (a - mu) / sigma
  double zb;       // (b - mu) / sigma
  double phi_za;   // standard normal pdf at za
  double phi_zb;   // standard normal pdf at zb
  double cdf_za;   // standard normal cdf at za
  double mass;     // cdf(zb) - cdf(za), the retained probability
};

inline TruncInfo trunc_info(const TruncatedGaussian& d) {
  TruncInfo t{};
  t.za = (d.a - d.mu) / d.sigma;
  t.zb = (d.b - d.mu) / d.sigma;
  t.phi_za = boost::math::pdf(std_normal(), t.za);
  t.phi_zb = boost::math::pdf(std_normal(), t.zb);
  t.cdf_za = boost::math::cdf(std_normal(), t.za);
  t.mass = boost::math::cdf(std_normal(), t.zb) - t.cdf_za;
  if (!(t.mass > 0.0)) {
    throw DomainError("truncated_gaussian: interval [a, b] carries no mass");
  }
  return t;
}

/// Inverse-CDF draw: one uniform variate in, one reward out, for every
/// variant. Keeping the consumption rate fixed makes sample streams
/// independent of the distribution parameters.
inline double draw_one(const DistributionSpec& spec, double u) {
  struct Visitor {
    const DistributionSpec& spec;
    double u;
    double operator()(const Bernoulli& d) const {
      return u < 1.0 - d.p ? 0.0 : 1.0;
    }
    double operator()(const Categorical&) const {
      const auto& values = spec.atom_values();
      const auto& probs = spec.atom_probs();
      double cum = 0.0;
      for (std::size_t i = 0; i < values.size(); ++i) {
        cum += probs[i];
        if (u < cum) return values[i];
      }
      return values.back();
    }
    double operator()(const Uniform& d) const { return d.a + u * (d.b - d.a); }
    double operator()(const TruncatedGaussian& d) const {
      const TruncInfo t = trunc_info(d);
      const double target = t.cdf_za + u * t.mass;
      const double z = boost::math::quantile(std_normal(), target);
      return std::clamp(d.mu + d.sigma * z, d.a, d.b);
    }
    double operator()(const BetaDist& d) const {
      return boost::math::ibeta_inv(d.alpha, d.beta, u);
    }
  };
  return std::visit(Visitor{spec, u}, spec.dist());
}

}  // namespace detail

/// Draws n i.i.d. rewards, advancing rng by exactly n variates.
inline std::vector<double> sample_n(const DistributionSpec& spec, Rng& rng,
                                    std::size_t n) {
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(detail::draw_one(spec, rng.next_unit()));
  }
  return out;
}

/// CDF F(x) = P(X <= x).
inline double cdf(const DistributionSpec& spec, double x) {
  struct Visitor {
    const DistributionSpec& spec;
    double x;
    double operator()(const Bernoulli&) const { return (*this)(Categorical{}); }
    double operator()(const Categorical&) const {
      const auto& values = spec.atom_values();
      const auto& probs = spec.atom_probs();
      double total = 0.0;
      for (std::size_t i = 0; i < values.size() && values[i] <= x; ++i) {
        total += probs[i];
      }
      return total;
    }
    double operator()(const Uniform& d) const {
      if (x <= d.a) return 0.0;
      if (x >= d.b) return 1.0;
      return (x - d.a) / (d.b - d.a);
    }
    double operator()(const TruncatedGaussian& d) const {
      if (x <= d.a) return 0.0;
      if (x >= d.b) return 1.0;
      const detail::TruncInfo t = detail::trunc_info(d);
      const double z = (x - d.mu) / d.sigma;
      return (boost::math::cdf(detail::std_normal(), z) - t.cdf_za) / t.mass;
    }
    double operator()(const BetaDist& d) const {
      if (x <= 0.0) return 0.0;
      if (x >= 1.0) return 1.0;
      return boost::math::ibeta(d.alpha, d.beta, x);
    }
  };
  return std::visit(Visitor{spec, x}, spec.dist());
}

/// Right-continuous quantile q(lambda) = inf{ x : F(x) > lambda }. Exact
/// for discrete variants; bisection on [support_lo, support_hi] to
/// |F(q) - lambda| <= 1e-12 for continuous ones, 200 iterations at most.
inline double quantile(const DistributionSpec& spec, double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw DomainError("quantile: lambda must lie in (0, 1), got " +
                      std::to_string(lambda));
  }
  if (spec.is_discrete()) {
    const auto& values = spec.atom_values();
    const auto& probs = spec.atom_probs();
    double cum = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      cum += probs[i];
      if (cum > lambda) return values[i];
    }
    return values.back();
  }
  double lo = spec.support_lo();
  double hi = spec.support_hi();
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double f = cdf(spec, mid);
    if (std::abs(f - lambda) <= 1e-12) return mid;
    if (f > lambda) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  throw InternalError("quantile: bisection failed to reach tolerance 1e-12");
}

/// Density value and its first derivative at x; continuous variants only.
struct DensityInfo {
  double pdf = 0.0;
  double pdf_derivative = 0.0;
};

inline DensityInfo density_info(const DistributionSpec& spec, double x) {
  struct Visitor {
    double x;
    DensityInfo operator()(const Bernoulli&) const {
      throw UnsupportedDistribution(
          "density_info: bernoulli has no density");
    }
    DensityInfo operator()(const Categorical&) const {
      throw UnsupportedDistribution(
          "density_info: categorical has no density");
    }
    DensityInfo operator()(const Uniform& d) const {
      if (x < d.a || x > d.b) return {0.0, 0.0};
      return {1.0 / (d.b - d.a), 0.0};
    }
    DensityInfo operator()(const TruncatedGaussian& d) const {
      if (x < d.a || x > d.b) return {0.0, 0.0};
      const detail::TruncInfo t = detail::trunc_info(d);
      const double z = (x - d.mu) / d.sigma;
      const double pdf =
          boost::math::pdf(detail::std_normal(), z) / (d.sigma * t.mass);
      return {pdf, pdf * (-z / d.sigma)};
    }
    DensityInfo operator()(const BetaDist& d) const {
      if (x < 0.0 || x > 1.0) return {0.0, 0.0};
      const double pdf = boost::math::pdf(
          boost::math::beta_distribution<double>(d.alpha, d.beta), x);
      const double deriv =
          pdf * ((d.alpha - 1.0) / x - (d.beta - 1.0) / (1.0 - x));
      return {pdf, deriv};
    }
  };
  return std::visit(Visitor{x}, spec.dist());
}

namespace detail {

inline double mean_of(const DistributionSpec& spec) {
  struct Visitor {
    const DistributionSpec& spec;
    double operator()(const Bernoulli& d) const { return d.p; }
    double operator()(const Categorical&) const {
      double m = 0.0;
      for (std::size_t i = 0; i < spec.atom_values().size(); ++i) {
        m += spec.atom_values()[i] * spec.atom_probs()[i];
      }
      return m;
    }
    double operator()(const Uniform& d) const { return 0.5 * (d.a + d.b); }
    double operator()(const TruncatedGaussian& d) const {
      const TruncInfo t = trunc_info(d);
      return d.mu + d.sigma * (t.phi_za - t.phi_zb) / t.mass;
    }
    double operator()(const BetaDist& d) const {
      return d.alpha / (d.alpha + d.beta);
    }
  };
  return std::visit(Visitor{spec}, spec.dist());
}

inline double variance_of(const DistributionSpec& spec) {
  struct Visitor {
    const DistributionSpec& spec;
    double operator()(const Bernoulli& d) const { return d.p * (1.0 - d.p); }
    double operator()(const Categorical&) const {
      const double m = mean_of(spec);
      double v = 0.0;
      for (std::size_t i = 0; i < spec.atom_values().size(); ++i) {
        const double delta = spec.atom_values()[i] - m;
        v += delta * delta * spec.atom_probs()[i];
      }
      return v;
    }
    double operator()(const Uniform& d) const {
      return (d.b - d.a) * (d.b - d.a) / 12.0;
    }
    double operator()(const TruncatedGaussian& d) const {
      const TruncInfo t = trunc_info(d);
      const double ratio = (t.phi_za - t.phi_zb) / t.mass;
      const double bracket =
          1.0 + (t.za * t.phi_za - t.zb * t.phi_zb) / t.mass - ratio * ratio;
      return d.sigma * d.sigma * bracket;
    }
    double operator()(const BetaDist& d) const {
      const double s = d.alpha + d.beta;
      return d.alpha * d.beta / (s * s * (s + 1.0));
    }
  };
  return std::visit(Visitor{spec}, spec.dist());
}

/// Closed-form quantile used as the quadrature integrand; agrees with the
/// public bisection-based quantile, which stays authoritative for the API.
inline double quantile_closed_form(const DistributionSpec& spec,
                                   double lambda) {
  struct Visitor {
    const DistributionSpec& spec;
    double lambda;
    double operator()(const Uniform& d) const {
      return d.a + lambda * (d.b - d.a);
    }
    double operator()(const TruncatedGaussian& d) const {
      const TruncInfo t = trunc_info(d);
      const double target = t.cdf_za + lambda * t.mass;
      const double z = boost::math::quantile(std_normal(), target);
      return std::clamp(d.mu + d.sigma * z, d.a, d.b);
    }
    double operator()(const BetaDist& d) const {
      return boost::math::ibeta_inv(d.alpha, d.beta, lambda);
    }
    double operator()(const Bernoulli&) const {
      return quantile(spec, lambda);
    }
    double operator()(const Categorical&) const {
      return quantile(spec, lambda);
    }
  };
  return std::visit(Visitor{spec, lambda}, spec.dist());
}

template <typename F>
double adaptive_simpson(const F& f, double a, double b, double fa, double fm,
                        double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <typename F>
double integrate(const F& f, double a, double b, double tol) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

/// integral_0^lambda q(phi) dphi. Exact for step quantiles; adaptive
/// Simpson to 1e-9 otherwise, with the quantile's flat value covering the
/// vanishing strip at phi = 0 where Beta quantile derivatives blow up.
inline double integral_of_quantile(const DistributionSpec& spec,
                                   double lambda) {
  if (spec.is_discrete()) {
    const auto& values = spec.atom_values();
    const auto& probs = spec.atom_probs();
    double integral = 0.0;
    double lower = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double upper = lower + probs[i];
      const double overlap = std::min(upper, lambda) - lower;
      if (overlap > 0.0) integral += values[i] * overlap;
      lower = upper;
      if (lower >= lambda) break;
    }
    return integral;
  }
  const double eps = 1e-12;
  const auto f = [&spec](double phi) {
    return quantile_closed_form(spec, phi);
  };
  if (lambda <= eps) return lambda * f(lambda);
  return f(eps) * eps + integrate(f, eps, lambda, 1e-9);
}

inline double shannon_entropy_bits_discrete(const DistributionSpec& spec) {
  double h = 0.0;
  for (double p : spec.atom_probs()) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

inline double differential_entropy_bits(const DistributionSpec& spec) {
  struct Visitor {
    double operator()(const Uniform& d) const { return std::log2(d.b - d.a); }
    double operator()(const TruncatedGaussian& d) const {
      const TruncInfo t = trunc_info(d);
      const double nats =
          std::log(std::sqrt(2.0 * M_PI * M_E) * d.sigma * t.mass) +
          (t.za * t.phi_za - t.zb * t.phi_zb) / (2.0 * t.mass);
      return nats / std::log(2.0);
    }
    double operator()(const BetaDist& d) const {
      using boost::math::digamma;
      const double nats = std::log(boost::math::beta(d.alpha, d.beta)) -
                          (d.alpha - 1.0) * digamma(d.alpha) -
                          (d.beta - 1.0) * digamma(d.beta) +
                          (d.alpha + d.beta - 2.0) * digamma(d.alpha + d.beta);
      return nats / std::log(2.0);
    }
    double operator()(const Bernoulli&) const {
      throw InternalError("differential entropy applied to a discrete law");
    }
    double operator()(const Categorical&) const {
      throw InternalError("differential entropy applied to a discrete law");
    }
  };
  return std::visit(Visitor{}, spec.dist());
}

}  // namespace detail

/// Ground-truth value of the functional on the distribution. Closed forms
/// where available; the numeric paths (continuous quantile, tail-average
/// quadrature) carry tolerances 1e-12 and 1e-9 respectively.
inline double true_functional(const DistributionSpec& spec,
                              const FunctionalSpec& f) {
  struct Visitor {
    const DistributionSpec& spec;
    double operator()(const Mean&) const { return detail::mean_of(spec); }
    double operator()(const MeanVariance& g) const {
      return -detail::mean_of(spec) + g.lambda * detail::variance_of(spec);
    }
    double operator()(const ValueAtRisk& g) const {
      return -quantile(spec, g.lambda);
    }
    double operator()(const AverageValueAtRisk& g) const {
      return -detail::integral_of_quantile(spec, g.lambda) / g.lambda;
    }
    double operator()(const ShannonEntropy& g) const {
      if (g.mode == EntropyEstimator::kPlugin) {
        if (!spec.is_discrete()) {
          throw UnsupportedFunctional(
              "entropy_plugin ground truth requires a discrete distribution, "
              "got " +
              spec.name());
        }
        return detail::shannon_entropy_bits_discrete(spec);
      }
      if (spec.is_discrete()) {
        throw UnsupportedFunctional(
            "entropy_knn ground truth requires a continuous distribution, "
            "got " +
            spec.name());
      }
      return detail::differential_entropy_bits(spec);
    }
  };
  return std::visit(Visitor{spec}, f);
}

}  // namespace funbandit

#endif  // FUNBANDIT_DISTRIBUTIONS_HPP
