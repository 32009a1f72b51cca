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

#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "psl/core.hpp"

namespace psl {

/// Running per-objective minimum z* plus the offset epsilon used by the
/// Tchebycheff forms. z* is estimated online from observed evaluations, so it
/// is an upper bound on the true ideal point that tightens as training runs.
class IdealPoint {
 public:
  IdealPoint(std::size_t m, double epsilon = 0.1)
      : z_star_(m, std::numeric_limits<double>::infinity()), epsilon_(epsilon) {
    check_epsilon();
  }

  IdealPoint(std::vector<double> z_star, double epsilon)
      : z_star_(std::move(z_star)), epsilon_(epsilon) {
    check_epsilon();
  }

  std::size_t size() const noexcept { return z_star_.size(); }
  const std::vector<double>& z_star() const noexcept { return z_star_; }
  double epsilon() const noexcept { return epsilon_; }

  /// Shifted component z_i - epsilon, the anchor of the Tchebycheff terms.
  double shifted(std::size_t i) const { return z_star_[i] - epsilon_; }

 private:
  void check_epsilon() const {
    if (!(epsilon_ > 0.0)) {
      throw degenerate_input_error("IdealPoint: epsilon must be > 0");
    }
  }

  std::vector<double> z_star_;
  double epsilon_;
};

/// Componentwise running minimum over the batch; an empty batch leaves the
/// point unchanged. Never increases any component.
inline IdealPoint update_ideal(const IdealPoint& z, const std::vector<ObjectiveVector>& batch) {
  std::vector<double> next = z.z_star();
  for (const ObjectiveVector& f : batch) {
    if (f.size() != next.size()) {
      throw dimension_error("update_ideal: objective length mismatch");
    }
    for (std::size_t i = 0; i < next.size(); ++i) {
      next[i] = std::min(next[i], f[i]);
    }
  }
  return IdealPoint(std::move(next), z.epsilon());
}

enum class ScalarizationKind { LS, TCH, MTCH, COSMOS };

inline std::string to_string(ScalarizationKind k) {
  switch (k) {
    case ScalarizationKind::LS: return "ls";
    case ScalarizationKind::TCH: return "tch";
    case ScalarizationKind::MTCH: return "mtch";
    case ScalarizationKind::COSMOS: return "cosmos";
  }
  return "?";
}

inline ScalarizationKind parse_scalarization(const std::string& name) {
  if (name == "ls") return ScalarizationKind::LS;
  if (name == "tch") return ScalarizationKind::TCH;
  if (name == "mtch") return ScalarizationKind::MTCH;
  if (name == "cosmos") return ScalarizationKind::COSMOS;
  throw config_error("unknown scalarization '" + name + "' (ls|tch|mtch|cosmos)");
}

/// Value of a max-form scalarization together with the argmax term index,
/// which routes the subgradient during training. Ties pick the lowest index.
struct ScalarResult {
  double value = 0.0;
  std::size_t active_index = 0;
};

namespace detail {

inline void check_scalar_dims(std::size_t fs, std::size_t ls) {
  if (fs != ls) throw dimension_error("scalarization: objective/preference length mismatch");
}

/// Weights floored at 1e-6 and re-normalized; the modified Tchebycheff form
/// divides by the weights, which is undefined at the simplex boundary.
inline constexpr double kWeightFloor = 1e-6;

inline std::vector<double> floored_weights(const PreferenceVector& lambda) {
  std::vector<double> w = lambda.weights();
  for (double& wi : w) wi = std::max(wi, kWeightFloor);
  return simplex_project(w).weights();
}

}  // namespace detail

/// Linear aggregation sum_i lambda_i f_i.
inline double s_ls(const ObjectiveVector& f, const PreferenceVector& lambda) {
  detail::check_scalar_dims(f.size(), lambda.size());
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += lambda[i] * f[i];
  return s;
}

/// Tchebycheff aggregation max_i lambda_i (f_i - (z_i - eps)).
inline ScalarResult s_tch(const ObjectiveVector& f, const PreferenceVector& lambda,
                          const IdealPoint& z) {
  detail::check_scalar_dims(f.size(), lambda.size());
  detail::check_scalar_dims(f.size(), z.size());
  ScalarResult r{-std::numeric_limits<double>::infinity(), 0};
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double term = lambda[i] * (f[i] - z.shifted(i));
    if (term > r.value) {
      r.value = term;
      r.active_index = i;
    }
  }
  return r;
}

/// Modified Tchebycheff aggregation max_i (1/lambda_i)(f_i - (z_i - eps));
/// weights are floored and re-normalized before the division.
inline ScalarResult s_mtch(const ObjectiveVector& f, const PreferenceVector& lambda,
                           const IdealPoint& z) {
  detail::check_scalar_dims(f.size(), lambda.size());
  detail::check_scalar_dims(f.size(), z.size());
  const std::vector<double> w = detail::floored_weights(lambda);
  ScalarResult r{-std::numeric_limits<double>::infinity(), 0};
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double term = (f[i] - z.shifted(i)) / w[i];
    if (term > r.value) {
      r.value = term;
      r.active_index = i;
    }
  }
  return r;
}

/// Weighted sum minus mu times the cosine similarity between f and lambda.
/// A zero-norm f makes the angle undefined; the penalty is skipped there.
inline double s_cosmos(const ObjectiveVector& f, const PreferenceVector& lambda, double mu) {
  detail::check_scalar_dims(f.size(), lambda.size());
  const double base = s_ls(f, lambda);
  if (mu == 0.0) return base;
  double ff = 0.0, fl = 0.0, ll = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    ff += f[i] * f[i];
    fl += f[i] * lambda[i];
    ll += lambda[i] * lambda[i];
  }
  if (ff == 0.0) return base;
  return base - mu * fl / std::sqrt(ff * ll);
}

/// Scalarization value plus its gradient with respect to f, the piece the
/// model training chains into the problem Jacobian.
struct ScalarGrad {
  double value = 0.0;
  std::vector<double> dvalue_df;
};

inline ScalarGrad scalarize_with_grad(ScalarizationKind kind, const ObjectiveVector& f,
                                      const PreferenceVector& lambda, const IdealPoint& z,
                                      double mu) {
  const std::size_t m = f.size();
  ScalarGrad g;
  g.dvalue_df.assign(m, 0.0);
  switch (kind) {
    case ScalarizationKind::LS: {
      g.value = s_ls(f, lambda);
      for (std::size_t i = 0; i < m; ++i) g.dvalue_df[i] = lambda[i];
      break;
    }
    case ScalarizationKind::TCH: {
      const ScalarResult r = s_tch(f, lambda, z);
      g.value = r.value;
      g.dvalue_df[r.active_index] = lambda[r.active_index];
      break;
    }
    case ScalarizationKind::MTCH: {
      const ScalarResult r = s_mtch(f, lambda, z);
      g.value = r.value;
      g.dvalue_df[r.active_index] = 1.0 / detail::floored_weights(lambda)[r.active_index];
      break;
    }
    case ScalarizationKind::COSMOS: {
      g.value = s_cosmos(f, lambda, mu);
      double ff = 0.0, fl = 0.0, ll = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        ff += f[i] * f[i];
        fl += f[i] * lambda[i];
        ll += lambda[i] * lambda[i];
      }
      for (std::size_t i = 0; i < m; ++i) g.dvalue_df[i] = lambda[i];
      if (mu != 0.0 && ff > 0.0) {
        const double nf = std::sqrt(ff), nl = std::sqrt(ll);
        for (std::size_t i = 0; i < m; ++i) {
          g.dvalue_df[i] -= mu * (lambda[i] / (nf * nl) - fl * f[i] / (ff * nf * nl));
        }
      }
      break;
    }
  }
  return g;
}

}  // namespace psl
