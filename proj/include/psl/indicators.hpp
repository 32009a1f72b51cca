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

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "psl/core.hpp"
#include "psl/problems.hpp"

namespace psl {

namespace detail {

/// 2D hypervolume of already-filtered (in-box) points against (r1, r2):
/// strip sum over points sorted by f1.
inline double hv2d(std::vector<std::pair<double, double>> pts, double r1, double r2) {
  std::sort(pts.begin(), pts.end());
  double hv = 0.0;
  double cur = r2;
  for (const auto& [f1, f2] : pts) {
    if (f2 < cur) {
      hv += (r1 - f1) * (cur - f2);
      cur = f2;
    }
  }
  return hv;
}

}  // namespace detail

/// Exact dominated hypervolume against `ref` for 2 or 3 objectives. Points
/// with any component at or beyond the reference are discarded first (they
/// dominate zero volume inside the box). Empty input gives 0.
inline double hypervolume_exact(const std::vector<ObjectiveVector>& points,
                                const ObjectiveVector& ref) {
  const std::size_t m = ref.size();
  if (m != 2 && m != 3) {
    throw unsupported_error("hypervolume_exact: only 2 or 3 objectives supported");
  }
  std::vector<const ObjectiveVector*> inside;
  for (const ObjectiveVector& p : points) {
    if (p.size() != m) throw dimension_error("hypervolume_exact: mixed dimensions");
    bool in = true;
    for (std::size_t i = 0; i < m && in; ++i) in = p[i] < ref[i];
    if (in) inside.push_back(&p);
  }
  if (inside.empty()) return 0.0;

  if (m == 2) {
    std::vector<std::pair<double, double>> pts;
    pts.reserve(inside.size());
    for (const auto* p : inside) pts.emplace_back((*p)[0], (*p)[1]);
    return detail::hv2d(std::move(pts), ref[0], ref[1]);
  }

  // Sweep f3 upward; between consecutive levels the dominated area in the
  // (f1, f2) plane is the 2D hypervolume of everything at or below the level.
  std::sort(inside.begin(), inside.end(),
            [](const ObjectiveVector* a, const ObjectiveVector* b) { return (*a)[2] < (*b)[2]; });
  double hv = 0.0;
  std::vector<std::pair<double, double>> acc;
  std::size_t i = 0;
  while (i < inside.size()) {
    const double level = (*inside[i])[2];
    while (i < inside.size() && (*inside[i])[2] == level) {
      acc.emplace_back((*inside[i])[0], (*inside[i])[1]);
      ++i;
    }
    const double next = (i < inside.size()) ? (*inside[i])[2] : ref[2];
    hv += detail::hv2d(acc, ref[0], ref[1]) * (next - level);
  }
  return hv;
}

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

/// Monte Carlo hypervolume: hit rate of uniform samples in the box spanned
/// by the points' componentwise minimum and `ref`, scaled by box volume.
inline McEstimate hypervolume_mc(const std::vector<ObjectiveVector>& points,
                                 const ObjectiveVector& ref, std::size_t n_samples,
                                 RngStream& rng) {
  if (n_samples == 0) throw degenerate_input_error("hypervolume_mc: need at least one sample");
  const std::size_t m = ref.size();
  std::vector<const ObjectiveVector*> inside;
  for (const ObjectiveVector& p : points) {
    if (p.size() != m) throw dimension_error("hypervolume_mc: mixed dimensions");
    bool in = true;
    for (std::size_t i = 0; i < m && in; ++i) in = p[i] < ref[i];
    if (in) inside.push_back(&p);
  }
  if (inside.empty()) return {0.0, 0.0};

  std::vector<double> lo(m, std::numeric_limits<double>::infinity());
  for (const auto* p : inside) {
    for (std::size_t i = 0; i < m; ++i) lo[i] = std::min(lo[i], (*p)[i]);
  }
  double vol = 1.0;
  for (std::size_t i = 0; i < m; ++i) vol *= ref[i] - lo[i];

  std::size_t hits = 0;
  std::vector<double> y(m);
  for (std::size_t s = 0; s < n_samples; ++s) {
    for (std::size_t i = 0; i < m; ++i) y[i] = rng.uniform(lo[i], ref[i]);
    for (const auto* p : inside) {
      bool dom = true;
      for (std::size_t i = 0; i < m && dom; ++i) dom = (*p)[i] <= y[i];
      if (dom) {
        ++hits;
        break;
      }
    }
  }
  const double p_hat = static_cast<double>(hits) / static_cast<double>(n_samples);
  return {vol * p_hat,
          vol * std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(n_samples))};
}

/// Reference point for hypervolume: per objective, ideal + 1.1 * (nadir -
/// ideal) over the given front, with a tiny floor on degenerate ranges.
inline ObjectiveVector reference_point_for(const FrontSample& front) {
  if (front.points.empty()) {
    throw degenerate_input_error("reference_point_for: empty front");
  }
  const std::size_t m = front.points[0].size();
  std::vector<double> ideal(m, std::numeric_limits<double>::infinity());
  std::vector<double> nadir(m, -std::numeric_limits<double>::infinity());
  for (const ObjectiveVector& p : front.points) {
    for (std::size_t i = 0; i < m; ++i) {
      ideal[i] = std::min(ideal[i], p[i]);
      nadir[i] = std::max(nadir[i], p[i]);
    }
  }
  std::vector<double> ref(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double range = std::max(nadir[i] - ideal[i], 1e-9);
    ref[i] = ideal[i] + 1.1 * range;
  }
  return ObjectiveVector(std::move(ref));
}

struct HvReport {
  std::vector<double> reference_point;
  double hv_true = 0.0;
  double hv_estimate = 0.0;
  double epsilon = 1e-6;
  /// log(hv_true + epsilon - hv_estimate); -inf when the approximation
  /// meets or exceeds the smoothed true value.
  double log_hv_diff = 0.0;
  bool exceeded = false;
  FrontSource front_source = FrontSource::analytic;
};

inline constexpr double kLogHvEpsilon = 1e-6;

inline HvReport log_hv_difference(const FrontSample& front,
                                  const std::vector<ObjectiveVector>& approx,
                                  const ObjectiveVector& ref, double epsilon = kLogHvEpsilon,
                                  double hv_true = std::numeric_limits<double>::quiet_NaN()) {
  HvReport report;
  report.reference_point = ref.values();
  report.front_source = front.source;
  report.epsilon = epsilon;
  report.hv_true = std::isnan(hv_true) ? hypervolume_exact(front.points, ref) : hv_true;
  report.hv_estimate = hypervolume_exact(approx, ref);
  const double diff = report.hv_true + epsilon - report.hv_estimate;
  if (diff > 0.0) {
    report.log_hv_diff = std::log(diff);
  } else {
    report.log_hv_diff = -std::numeric_limits<double>::infinity();
    report.exceeded = true;
  }
  return report;
}

/// Fixed preference lattice used for model evaluation: 100 points for two
/// objectives (H = 99), 105 for three (H = 13).
inline std::vector<PreferenceVector> evaluation_lattice(std::size_t m) {
  std::vector<PreferenceVector> out;
  if (m == 2) {
    constexpr std::size_t kH = 99;
    for (std::size_t i = 0; i <= kH; ++i) {
      const double w = static_cast<double>(i) / kH;
      out.push_back(PreferenceVector({w, 1.0 - w}));
    }
  } else if (m == 3) {
    constexpr std::size_t kH = 13;
    for (std::size_t i = 0; i <= kH; ++i) {
      for (std::size_t j = 0; i + j <= kH; ++j) {
        const std::size_t k = kH - i - j;
        out.push_back(PreferenceVector({static_cast<double>(i) / kH,
                                        static_cast<double>(j) / kH,
                                        static_cast<double>(k) / kH}));
      }
    }
  } else {
    throw unsupported_error("evaluation_lattice: only 2 or 3 objectives supported");
  }
  return out;
}

/// Per-problem evaluation context: reference front (1000 points), derived
/// reference point, true hypervolume, and the preference lattice. Built once
/// per problem and cached.
class HvContext {
 public:
  static const HvContext& for_problem(const Problem& problem) {
    static std::mutex mu;
    static std::map<std::string, std::unique_ptr<HvContext>> cache;
    std::scoped_lock lock(mu);
    auto it = cache.find(problem.name());
    if (it == cache.end()) {
      auto ctx = std::unique_ptr<HvContext>(new HvContext(problem));
      it = cache.emplace(problem.name(), std::move(ctx)).first;
    }
    return *it->second;
  }

  const FrontSample& front() const noexcept { return front_; }
  const ObjectiveVector& reference_point() const noexcept { return ref_; }
  double hv_true() const noexcept { return hv_true_; }
  const std::vector<PreferenceVector>& lattice() const noexcept { return lattice_; }

  HvReport report(const std::vector<ObjectiveVector>& approx,
                  double epsilon = kLogHvEpsilon) const {
    return log_hv_difference(front_, approx, ref_, epsilon, hv_true_);
  }

 private:
  explicit HvContext(const Problem& problem)
      : front_(problem.reference_front(1000)),
        ref_(reference_point_for(front_)),
        hv_true_(hypervolume_exact(front_.points, ref_)),
        lattice_(evaluation_lattice(problem.num_objectives())) {}

  FrontSample front_;
  ObjectiveVector ref_;
  double hv_true_;
  std::vector<PreferenceVector> lattice_;
};

}  // namespace psl
