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
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace psl {

// ---------------------------------------------------------------------------
// Error taxonomy
// ---------------------------------------------------------------------------

/// Mismatched vector lengths (objectives, preferences, decision variables).
struct dimension_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Input that cannot be repaired into a valid value (e.g. all-zero weights).
struct degenerate_input_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Decision vector outside a problem's box bounds.
struct bounds_error : std::domain_error {
  using std::domain_error::domain_error;
};

/// Non-finite value reached a place that requires finite state.
struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Requested operation is outside the supported envelope (e.g. HV for m > 3).
struct unsupported_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Invalid run configuration (unknown names, inconsistent settings).
struct config_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Domain value types
// ---------------------------------------------------------------------------

/// Image of a solution under the objective functions, f(x) in R^m.
/// All components are finite by construction.
class ObjectiveVector {
 public:
  ObjectiveVector() = default;

  explicit ObjectiveVector(std::vector<double> values) : values_(std::move(values)) {
    for (double v : values_) {
      if (!std::isfinite(v)) {
        throw numeric_error("ObjectiveVector: non-finite component");
      }
    }
  }

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  const std::vector<double>& values() const noexcept { return values_; }

  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

  friend bool operator==(const ObjectiveVector& a, const ObjectiveVector& b) {
    return a.values_ == b.values_;
  }

 private:
  std::vector<double> values_;
};

/// A point x in decision space. Bound conformance is checked by the problem
/// that consumes it (bounds are a property of the problem, not the vector).
class DecisionVector {
 public:
  DecisionVector() = default;
  explicit DecisionVector(std::vector<double> values) : values_(std::move(values)) {}

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  const std::vector<double>& values() const noexcept { return values_; }

  friend bool operator==(const DecisionVector& a, const DecisionVector& b) {
    return a.values_ == b.values_;
  }

 private:
  std::vector<double> values_;
};

namespace detail {
inline constexpr double kSimplexSumTol = 1e-9;
}

/// A trade-off weighting: m >= 2 nonnegative components summing to one
/// (within 1e-9). Invalid inputs are rejected; use simplex_project to build
/// one from arbitrary raw values.
class PreferenceVector {
 public:
  PreferenceVector() = default;

  explicit PreferenceVector(std::vector<double> weights) : weights_(std::move(weights)) {
    if (weights_.size() < 2) {
      throw dimension_error("PreferenceVector: need at least 2 components");
    }
    double sum = 0.0;
    for (double w : weights_) {
      if (!std::isfinite(w) || w < 0.0) {
        throw degenerate_input_error("PreferenceVector: components must be finite and >= 0");
      }
      sum += w;
    }
    if (std::abs(sum - 1.0) > detail::kSimplexSumTol) {
      throw degenerate_input_error("PreferenceVector: components must sum to 1, got " +
                                   std::to_string(sum));
    }
  }

  std::size_t size() const noexcept { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }
  const std::vector<double>& weights() const noexcept { return weights_; }

  friend bool operator==(const PreferenceVector& a, const PreferenceVector& b) {
    return a.weights_ == b.weights_;
  }

 private:
  std::vector<double> weights_;
};

/// A preference together with the objective values its model output received
/// at evaluation time. The objectives are recorded, never recomputed, so the
/// pair stays a snapshot of the model that produced it.
struct EvaluatedPreference {
  PreferenceVector preference;
  ObjectiveVector objectives;
};

// ---------------------------------------------------------------------------
// Dominance
// ---------------------------------------------------------------------------

/// Pareto dominance under minimization: a dominates b iff a_i <= b_i for all
/// i and a_j < b_j for some j.
inline bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
  if (a.size() != b.size()) {
    throw dimension_error("dominates: length mismatch (" + std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()) + ")");
  }
  bool strictly_better = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
    if (a[i] < b[i]) strictly_better = true;
  }
  return strictly_better;
}

// ---------------------------------------------------------------------------
// Simplex repair
// ---------------------------------------------------------------------------

/// Repairs raw weights onto the probability simplex: negative components are
/// clamped to zero, then the vector is divided by its component sum.
/// Re-normalisation is skipped when the sum is already 1 within 1e-12, which
/// makes the repair bitwise idempotent and an exact identity on vectors that
/// are already valid preferences.
inline PreferenceVector simplex_project(const std::vector<double>& raw) {
  if (raw.size() < 2) {
    throw dimension_error("simplex_project: need at least 2 components");
  }
  std::vector<double> w(raw.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (!std::isfinite(raw[i])) {
      throw degenerate_input_error("simplex_project: non-finite component");
    }
    w[i] = std::max(raw[i], 0.0);
    sum += w[i];
  }
  if (sum <= 0.0) {
    throw degenerate_input_error("simplex_project: all components zero after clamping");
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    for (double& wi : w) wi /= sum;
  }
  return PreferenceVector(std::move(w));
}

// ---------------------------------------------------------------------------
// Seeded randomness
// ---------------------------------------------------------------------------

/// Deterministic counter-based generator. The i-th draw is the splitmix64
/// finalizer applied to seed + i * 0x9e3779b97f4a7c15, so equal seeds give
/// equal sequences on every platform and the stream carries no hidden state
/// beyond (seed, counter). Single-owner: clone substreams for parallel work
/// instead of sharing one stream.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) noexcept : seed_(seed) {}

  std::uint64_t next_u64() noexcept {
    ++counter_;
    return mix(seed_ + 0x9e3779b97f4a7c15ULL * counter_);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * next_double(); }

  /// Uniform index in [0, n). Uses the multiply-high reduction, which is
  /// exact and platform-independent for the bias level we care about.
  std::size_t uniform_index(std::size_t n) {
    if (n == 0) throw degenerate_input_error("uniform_index: n must be >= 1");
    return static_cast<std::size_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  /// Derives an independent stream keyed by `key`; deterministic in
  /// (seed, key) and independent of this stream's position.
  RngStream substream(std::uint64_t key) const noexcept {
    return RngStream(mix(seed_ ^ mix(key + 0x632be59bd9b4e019ULL)));
  }

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t draws() const noexcept { return counter_; }

 private:
  static std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace psl
