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
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "psl/core.hpp"

namespace psl {

struct ProblemSpec {
  std::string name;
  std::size_t m = 0;  // objective count
  std::size_t d = 0;  // decision dimension
  std::vector<double> lower_bounds;
  std::vector<double> upper_bounds;
};

enum class FrontSource { analytic, dense_search };

inline const char* to_string(FrontSource s) {
  return s == FrontSource::analytic ? "analytic" : "dense-search";
}

/// A mutually non-dominated sample of a problem's Pareto front, tagged with
/// how it was obtained.
struct FrontSample {
  std::vector<ObjectiveVector> points;
  FrontSource source = FrontSource::analytic;
};

/// Row i holds the gradient of objective i: entry (i, j) = df_i/dx_j.
using JacobianMatrix = std::vector<std::vector<double>>;

// ---------------------------------------------------------------------------
// Non-dominated filtering
// ---------------------------------------------------------------------------

namespace detail {

struct IndexedPoint {
  double f1, f2, f3;
  std::size_t index;
};

// Sweep filter for m == 2/3: lexicographic sort, then a staircase of kept
// (f2, f3) minima answers "is the new point dominated by anything kept".
// Exact duplicates are dropped along with dominated points.
inline std::vector<std::size_t> nondominated_sweep(const std::vector<ObjectiveVector>& pts,
                                                   std::size_t m) {
  std::vector<IndexedPoint> ip(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    ip[i] = {pts[i][0], pts[i][1], m == 3 ? pts[i][2] : 0.0, i};
  }
  std::sort(ip.begin(), ip.end(), [](const IndexedPoint& a, const IndexedPoint& b) {
    if (a.f1 != b.f1) return a.f1 < b.f1;
    if (a.f2 != b.f2) return a.f2 < b.f2;
    if (a.f3 != b.f3) return a.f3 < b.f3;
    return a.index < b.index;
  });

  std::vector<std::size_t> kept;
  if (m == 2) {
    double best_f2 = std::numeric_limits<double>::infinity();
    for (const IndexedPoint& p : ip) {
      if (p.f2 < best_f2) {
        kept.push_back(p.index);
        best_f2 = p.f2;
      }
    }
  } else {
    // f2 -> smallest kept f3 among points with that or smaller f2; values
    // strictly decrease as f2 grows.
    std::map<double, double> staircase;
    for (const IndexedPoint& p : ip) {
      auto it = staircase.upper_bound(p.f2);
      if (it != staircase.begin() && std::prev(it)->second <= p.f3) {
        continue;  // dominated by (or duplicate of) a kept point
      }
      kept.push_back(p.index);
      auto at = staircase.insert_or_assign(p.f2, p.f3).first;
      for (auto nx = std::next(at); nx != staircase.end() && nx->second >= p.f3;) {
        nx = staircase.erase(nx);
      }
    }
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

}  // namespace detail

/// Indices of the non-dominated subset (duplicates reduced to one copy),
/// ascending. O(n log n) for m in {2, 3}, quadratic fallback otherwise.
inline std::vector<std::size_t> nondominated_indices(const std::vector<ObjectiveVector>& pts) {
  if (pts.empty()) return {};
  const std::size_t m = pts[0].size();
  if (m == 2 || m == 3) return detail::nondominated_sweep(pts, m);
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    bool drop = false;
    for (std::size_t j = 0; j < pts.size() && !drop; ++j) {
      if (j == i) continue;
      if (dominates(pts[j], pts[i]) || (pts[j] == pts[i] && j < i)) drop = true;
    }
    if (!drop) kept.push_back(i);
  }
  return kept;
}

/// Builds a FrontSample by filtering the input down to its non-dominated
/// subset, so the mutual-non-domination invariant holds by construction.
inline FrontSample make_front_sample(std::vector<ObjectiveVector> pts, FrontSource source) {
  const std::vector<std::size_t> keep = nondominated_indices(pts);
  std::vector<ObjectiveVector> filtered;
  filtered.reserve(keep.size());
  for (std::size_t i : keep) filtered.push_back(std::move(pts[i]));
  return FrontSample{std::move(filtered), source};
}

/// Writes one objective vector per row with header f1,...,fm.
inline void front_to_csv(const FrontSample& front, std::ostream& os) {
  if (front.points.empty()) return;
  const std::size_t m = front.points[0].size();
  for (std::size_t i = 0; i < m; ++i) os << (i ? "," : "") << "f" << (i + 1);
  os << "\n";
  char buf[32];
  for (const ObjectiveVector& p : front.points) {
    for (std::size_t i = 0; i < m; ++i) {
      std::snprintf(buf, sizeof(buf), "%.17g", p[i]);
      os << (i ? "," : "") << buf;
    }
    os << "\n";
  }
}

// ---------------------------------------------------------------------------
// Problem interface
// ---------------------------------------------------------------------------

class Problem {
 public:
  explicit Problem(ProblemSpec spec) : spec_(std::move(spec)) {}
  virtual ~Problem() = default;

  const ProblemSpec& spec() const noexcept { return spec_; }
  const std::string& name() const noexcept { return spec_.name; }
  std::size_t num_objectives() const noexcept { return spec_.m; }
  std::size_t dimension() const noexcept { return spec_.d; }

  /// Objective values at x. Rejects out-of-bounds input instead of clamping.
  ObjectiveVector evaluate(const DecisionVector& x) const {
    check_length(x);
    for (std::size_t i = 0; i < spec_.d; ++i) {
      if (!(x[i] >= spec_.lower_bounds[i] && x[i] <= spec_.upper_bounds[i])) {
        throw bounds_error(spec_.name + ": x[" + std::to_string(i) + "]=" +
                           std::to_string(x[i]) + " outside bounds");
      }
    }
    std::vector<double> f(spec_.m, 0.0);
    eval_impl(x.values(), f);
    return ObjectiveVector(std::move(f));
  }

  /// Analytic Jacobian df_i/dx_j. Requires a strictly interior point;
  /// one-sided derivatives at the box faces are not supported.
  JacobianMatrix jacobian(const DecisionVector& x) const {
    check_length(x);
    for (std::size_t i = 0; i < spec_.d; ++i) {
      if (!(x[i] > spec_.lower_bounds[i] && x[i] < spec_.upper_bounds[i])) {
        throw bounds_error(spec_.name + ": jacobian requires a strictly interior point");
      }
    }
    JacobianMatrix jac(spec_.m, std::vector<double>(spec_.d, 0.0));
    jac_impl(x.values(), jac);
    return jac;
  }

  /// A front approximation with >= 100 points: the analytic parameterization
  /// where one is known, a seeded dense search otherwise.
  FrontSample reference_front(std::size_t n) const {
    if (n < 100) throw config_error("reference_front: n must be >= 100");
    return front_impl(n);
  }

 protected:
  virtual void eval_impl(const std::vector<double>& x, std::vector<double>& f) const = 0;
  virtual void jac_impl(const std::vector<double>& x, JacobianMatrix& jac) const = 0;
  virtual FrontSample front_impl(std::size_t n) const = 0;

  ProblemSpec spec_;

 private:
  void check_length(const DecisionVector& x) const {
    if (x.size() != spec_.d) {
      throw dimension_error(spec_.name + ": expected " + std::to_string(spec_.d) +
                            " decision variables, got " + std::to_string(x.size()));
    }
  }
};

namespace detail {

/// Evenly thins `pts` (kept in order) down to exactly n entries.
inline std::vector<ObjectiveVector> thin_to(const std::vector<ObjectiveVector>& pts,
                                            std::size_t n) {
  if (pts.size() <= n) return pts;
  std::vector<ObjectiveVector> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t idx = (n == 1) ? 0 : i * (pts.size() - 1) / (n - 1);
    out.push_back(pts[idx]);
  }
  return out;
}

/// Dense-search front oracle for problems without an analytic front:
/// 1e6 uniform decision samples (fixed seed 0), evaluated and filtered.
/// Samples that evaluate to non-finite values (possible on singular
/// manifolds inside the box) are skipped. The filtered set is cached per
/// problem.
inline FrontSample dense_search_front(const Problem& p, std::size_t n) {
  static std::mutex mu;
  static std::map<std::string, std::vector<ObjectiveVector>> cache;

  std::vector<ObjectiveVector>* full = nullptr;
  {
    std::scoped_lock lock(mu);
    auto it = cache.find(p.name());
    if (it == cache.end()) {
      constexpr std::size_t kSamples = 1'000'000;
      RngStream rng(0);
      std::vector<ObjectiveVector> evals;
      evals.reserve(kSamples);
      const auto& lb = p.spec().lower_bounds;
      const auto& ub = p.spec().upper_bounds;
      std::vector<double> x(p.dimension());
      for (std::size_t s = 0; s < kSamples; ++s) {
        for (std::size_t j = 0; j < x.size(); ++j) x[j] = rng.uniform(lb[j], ub[j]);
        try {
          evals.push_back(p.evaluate(DecisionVector(x)));
        } catch (const numeric_error&) {
          // singular sample; skip
        }
      }
      FrontSample filtered = make_front_sample(std::move(evals), FrontSource::dense_search);
      it = cache.emplace(p.name(), std::move(filtered.points)).first;
    }
    full = &it->second;
  }
  return FrontSample{thin_to(*full, n), FrontSource::dense_search};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// ZDT3 (Zitzler, Deb & Thiele 2000, problem T3), m=2, d=10, x in [0,1]^d.
// Disconnected biconvex front in five segments.
// ---------------------------------------------------------------------------

class Zdt3 : public Problem {
 public:
  Zdt3() : Problem({"zdt3", 2, 10, std::vector<double>(10, 0.0), std::vector<double>(10, 1.0)}) {}

 protected:
  void eval_impl(const std::vector<double>& x, std::vector<double>& f) const override {
    const double g = g_of(x);
    const double f1 = x[0];
    f[0] = f1;
    // g*h written without the f1/g quotient: g - sqrt(f1*g) - f1*sin(10*pi*f1)
    f[1] = g - std::sqrt(f1 * g) - f1 * std::sin(10.0 * std::numbers::pi * f1);
  }

  void jac_impl(const std::vector<double>& x, JacobianMatrix& jac) const override {
    const double pi = std::numbers::pi;
    const double g = g_of(x);
    const double f1 = x[0];
    jac[0][0] = 1.0;
    jac[1][0] = -std::sqrt(g) / (2.0 * std::sqrt(f1)) - std::sin(10.0 * pi * f1) -
                10.0 * pi * f1 * std::cos(10.0 * pi * f1);
    const double dg = 9.0 / static_cast<double>(spec_.d - 1);
    const double df2_dg = 1.0 - std::sqrt(f1) / (2.0 * std::sqrt(g));
    for (std::size_t j = 1; j < spec_.d; ++j) jac[1][j] = dg * df2_dg;
  }

  FrontSample front_impl(std::size_t n) const override {
    // Pareto-optimal x1 segments of the published front parameterization.
    static constexpr double kSeg[5][2] = {{0.0, 0.0830015349},
                                          {0.1822287280, 0.2577623634},
                                          {0.4093136748, 0.4538821041},
                                          {0.6183967944, 0.6525117038},
                                          {0.8233317983, 0.8518328654}};
    double total = 0.0;
    for (const auto& s : kSeg) total += s[1] - s[0];
    // The published segment endpoints are rounded, so a segment's left end
    // can be dominated by the previous segment's right end at the 1e-10
    // level. Oversample, filter, then thin back to n.
    const std::size_t k = n + 8;
    std::vector<ObjectiveVector> pts;
    pts.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
      // arclength-in-x1 position mapped into the segment union
      double pos = total * static_cast<double>(i) / static_cast<double>(k - 1);
      double x1 = kSeg[4][1];
      for (const auto& s : kSeg) {
        const double len = s[1] - s[0];
        if (pos <= len) {
          x1 = s[0] + pos;
          break;
        }
        pos -= len;
      }
      const double f2 = 1.0 - std::sqrt(x1) - x1 * std::sin(10.0 * std::numbers::pi * x1);
      pts.push_back(ObjectiveVector({x1, f2}));
    }
    FrontSample filtered = make_front_sample(std::move(pts), FrontSource::analytic);
    return FrontSample{detail::thin_to(filtered.points, n), FrontSource::analytic};
  }

 private:
  double g_of(const std::vector<double>& x) const {
    double s = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) s += x[i];
    return 1.0 + 9.0 * s / static_cast<double>(spec_.d - 1);
  }
};

// ---------------------------------------------------------------------------
// DTLZ5 (Deb, Thiele, Laumanns & Zitzler 2005), m=3, d=10, x in [0,1]^d.
// Degenerate front: a curve on the unit sphere with f1 = f2.
// ---------------------------------------------------------------------------

class Dtlz5 : public Problem {
 public:
  Dtlz5() : Problem({"dtlz5", 3, 10, std::vector<double>(10, 0.0), std::vector<double>(10, 1.0)}) {}

 protected:
  void eval_impl(const std::vector<double>& x, std::vector<double>& f) const override {
    const double pi = std::numbers::pi;
    const double g = g_of(x);
    const double t1 = 0.5 * pi * x[0];
    const double t2 = pi * (1.0 + 2.0 * g * x[1]) / (4.0 * (1.0 + g));
    f[0] = (1.0 + g) * std::cos(t1) * std::cos(t2);
    f[1] = (1.0 + g) * std::cos(t1) * std::sin(t2);
    f[2] = (1.0 + g) * std::sin(t1);
  }

  void jac_impl(const std::vector<double>& x, JacobianMatrix& jac) const override {
    const double pi = std::numbers::pi;
    const double g = g_of(x);
    const double one_g = 1.0 + g;
    const double t1 = 0.5 * pi * x[0];
    const double t2 = pi * (1.0 + 2.0 * g * x[1]) / (4.0 * one_g);
    const double c1 = std::cos(t1), s1 = std::sin(t1);
    const double c2 = std::cos(t2), s2 = std::sin(t2);
    const double dt2_dx2 = 0.5 * pi * g / one_g;
    const double dt2_dg = 0.25 * pi * (2.0 * x[1] - 1.0) / (one_g * one_g);

    jac[0][0] = -0.5 * pi * one_g * s1 * c2;
    jac[1][0] = -0.5 * pi * one_g * s1 * s2;
    jac[2][0] = 0.5 * pi * one_g * c1;

    jac[0][1] = -one_g * c1 * s2 * dt2_dx2;
    jac[1][1] = one_g * c1 * c2 * dt2_dx2;
    jac[2][1] = 0.0;

    for (std::size_t j = 2; j < spec_.d; ++j) {
      const double dg = 2.0 * (x[j] - 0.5);
      jac[0][j] = dg * (c1 * c2 - one_g * c1 * s2 * dt2_dg);
      jac[1][j] = dg * (c1 * s2 + one_g * c1 * c2 * dt2_dg);
      jac[2][j] = dg * s1;
    }
  }

  FrontSample front_impl(std::size_t n) const override {
    // g = 0 front: (cos t / sqrt(2), cos t / sqrt(2), sin t), t in [0, pi/2].
    std::vector<ObjectiveVector> pts;
    pts.reserve(n);
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    for (std::size_t i = 0; i < n; ++i) {
      const double t = 0.5 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n - 1);
      pts.push_back(ObjectiveVector({std::cos(t) * inv_sqrt2, std::cos(t) * inv_sqrt2, std::sin(t)}));
    }
    return make_front_sample(std::move(pts), FrontSource::analytic);
  }

 private:
  double g_of(const std::vector<double>& x) const {
    double s = 0.0;
    for (std::size_t i = 2; i < x.size(); ++i) s += (x[i] - 0.5) * (x[i] - 0.5);
    return s;
  }
};

// ---------------------------------------------------------------------------
// DTLZ7 (Deb, Thiele, Laumanns & Zitzler 2005), m=3, d=10, x in [0,1]^d.
// Front disconnected into 2^(m-1) = 4 regions.
// ---------------------------------------------------------------------------

class Dtlz7 : public Problem {
 public:
  Dtlz7() : Problem({"dtlz7", 3, 10, std::vector<double>(10, 0.0), std::vector<double>(10, 1.0)}) {}

  /// The per-coordinate Pareto-optimal intervals [0,a1] and (b2,a2] of the
  /// g=1 slice, where u(x) = x(1+sin(3 pi x)) sets the efficiency records.
  static const std::array<double, 3>& front_interval_breaks() {
    static const std::array<double, 3> breaks = [] {
      const auto du = [](double x) {
        const double t = 3.0 * std::numbers::pi * x;
        return 1.0 + std::sin(t) + 3.0 * std::numbers::pi * x * std::cos(t);
      };
      const double a1 = bisect(du, 0.2, 0.3);
      const double a2 = bisect(du, 0.8, 0.9);
      const double ua1 = u_of(a1);
      const double b2 = bisect([&](double x) { return u_of(x) - ua1; }, 0.55, 0.75);
      return std::array<double, 3>{a1, b2, a2};
    }();
    return breaks;
  }

  static double u_of(double x) {
    return x * (1.0 + std::sin(3.0 * std::numbers::pi * x));
  }

 protected:
  void eval_impl(const std::vector<double>& x, std::vector<double>& f) const override {
    const double g = g_of(x);
    f[0] = x[0];
    f[1] = x[1];
    // (1+g)*h expanded: (1+g)*m - sum_i x_i (1 + sin(3 pi x_i))
    double s = 0.0;
    for (std::size_t i = 0; i < 2; ++i) s += u_of(x[i]);
    f[2] = (1.0 + g) * 3.0 - s;
  }

  void jac_impl(const std::vector<double>& x, JacobianMatrix& jac) const override {
    const double pi = std::numbers::pi;
    jac[0][0] = 1.0;
    jac[1][1] = 1.0;
    for (std::size_t i = 0; i < 2; ++i) {
      const double t = 3.0 * pi * x[i];
      jac[2][i] = -(1.0 + std::sin(t)) - 3.0 * pi * x[i] * std::cos(t);
    }
    const double dg = 9.0 / static_cast<double>(spec_.d - spec_.m + 1);
    for (std::size_t j = 2; j < spec_.d; ++j) jac[2][j] = 3.0 * dg;
  }

  FrontSample front_impl(std::size_t n) const override {
    const auto& br = front_interval_breaks();
    const double a1 = br[0], b2 = br[1], a2 = br[2];
    const double len1 = a1, len2 = a2 - b2;
    const double total = len1 + len2;

    // Lattice over the two optimal intervals per axis (g = 1 slice), with a
    // small inset after b2 to stay clear of the u(b2) == u(a1) tie.
    std::size_t k = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n)))) + 2;
    std::vector<ObjectiveVector> pts;
    for (int attempt = 0; attempt < 4 && pts.size() < n; ++attempt, k *= 2) {
      std::vector<double> axis(k);
      for (std::size_t i = 0; i < k; ++i) {
        double pos = total * static_cast<double>(i) / static_cast<double>(k - 1);
        axis[i] = (pos <= len1) ? pos : b2 + 1e-9 + (pos - len1);
        axis[i] = std::min(axis[i], a2);
      }
      std::vector<ObjectiveVector> grid;
      grid.reserve(k * k);
      for (double x1 : axis) {
        for (double x2 : axis) {
          grid.push_back(ObjectiveVector({x1, x2, 6.0 - u_of(x1) - u_of(x2)}));
        }
      }
      pts = make_front_sample(std::move(grid), FrontSource::analytic).points;
    }
    return FrontSample{detail::thin_to(pts, n), FrontSource::analytic};
  }

 private:
  double g_of(const std::vector<double>& x) const {
    double s = 0.0;
    for (std::size_t i = 2; i < x.size(); ++i) s += x[i];
    return 1.0 + 9.0 * s / static_cast<double>(spec_.d - spec_.m + 1);
  }

  static double bisect(const std::function<double(double)>& fn, double lo, double hi) {
    double flo = fn(lo);
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double fm = fn(mid);
      if ((flo < 0.0) == (fm < 0.0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
    }
    return 0.5 * (lo + hi);
  }
};

// ---------------------------------------------------------------------------
// RE21: four-bar truss design (Tanabe & Ishibuchi 2020 real-world suite),
// m=2, d=4. Convex continuous front.
// ---------------------------------------------------------------------------

class Re21 : public Problem {
 public:
  Re21()
      : Problem({"re21",
                 2,
                 4,
                 {1.0, std::numbers::sqrt2, std::numbers::sqrt2, 1.0},
                 {3.0, 3.0, 3.0, 3.0}}) {}

 protected:
  void eval_impl(const std::vector<double>& x, std::vector<double>& f) const override {
    f[0] = kL * (2.0 * x[0] + std::numbers::sqrt2 * x[1] + std::sqrt(x[2]) + x[3]);
    f[1] = (kF * kL / kE) * (2.0 / x[0] + 2.0 * std::numbers::sqrt2 / x[1] -
                             2.0 * std::numbers::sqrt2 / x[2] + 2.0 / x[3]);
  }

  void jac_impl(const std::vector<double>& x, JacobianMatrix& jac) const override {
    jac[0][0] = 2.0 * kL;
    jac[0][1] = std::numbers::sqrt2 * kL;
    jac[0][2] = kL / (2.0 * std::sqrt(x[2]));
    jac[0][3] = kL;
    const double c = kF * kL / kE;
    jac[1][0] = -2.0 * c / (x[0] * x[0]);
    jac[1][1] = -2.0 * std::numbers::sqrt2 * c / (x[1] * x[1]);
    jac[1][2] = 2.0 * std::numbers::sqrt2 * c / (x[2] * x[2]);
    jac[1][3] = -2.0 * c / (x[3] * x[3]);
  }

  FrontSample front_impl(std::size_t n) const override { return detail::dense_search_front(*this, n); }

 private:
  static constexpr double kF = 10.0, kE = 2e5, kL = 200.0;
};

// ---------------------------------------------------------------------------
// RE33: disc brake design (Tanabe & Ishibuchi 2020), m=3, d=4. The third
// objective is the summed violation of the four design constraints.
// ---------------------------------------------------------------------------

class Re33 : public Problem {
 public:
  Re33() : Problem({"re33", 3, 4, {55.0, 75.0, 1000.0, 11.0}, {80.0, 110.0, 3000.0, 20.0}}) {}

 protected:
  void eval_impl(const std::vector<double>& x, std::vector<double>& f) const override {
    const double x1 = x[0], x2 = x[1], x3 = x[2], x4 = x[3];
    const double a = x2 * x2 - x1 * x1;
    const double b = x2 * x2 * x2 - x1 * x1 * x1;
    f[0] = 4.9e-5 * a * (x4 - 1.0);
    f[1] = 9.82e6 * a / (x3 * x4 * b);
    const double g1 = (x2 - x1) - 20.0;
    const double g2 = 0.4 - x3 / (3.14 * a);
    const double g3 = 1.0 - 2.22e-3 * x3 * b / (a * a);
    const double g4 = 2.66e-2 * x3 * x4 * b / a - 900.0;
    f[2] = viol(g1) + viol(g2) + viol(g3) + viol(g4);
  }

  void jac_impl(const std::vector<double>& x, JacobianMatrix& jac) const override {
    const double x1 = x[0], x2 = x[1], x3 = x[2], x4 = x[3];
    const double a = x2 * x2 - x1 * x1;
    const double b = x2 * x2 * x2 - x1 * x1 * x1;

    jac[0][0] = 4.9e-5 * (-2.0 * x1) * (x4 - 1.0);
    jac[0][1] = 4.9e-5 * (2.0 * x2) * (x4 - 1.0);
    jac[0][3] = 4.9e-5 * a;

    const double denom = x3 * x4 * b;
    jac[1][0] = 9.82e6 * (-2.0 * x1 * b + 3.0 * x1 * x1 * a) / (denom * b);
    jac[1][1] = 9.82e6 * (2.0 * x2 * b - 3.0 * x2 * x2 * a) / (denom * b);
    jac[1][2] = -9.82e6 * a / (x3 * denom);
    jac[1][3] = -9.82e6 * a / (x4 * denom);

    // Constraint gradients, accumulated only where the constraint is active
    // (violated). At an exactly-zero violation the zero branch wins.
    const double g1 = (x2 - x1) - 20.0;
    const double g2 = 0.4 - x3 / (3.14 * a);
    const double g3 = 1.0 - 2.22e-3 * x3 * b / (a * a);
    const double g4 = 2.66e-2 * x3 * x4 * b / a - 900.0;

    if (g1 < 0.0) {
      jac[2][0] += 1.0;
      jac[2][1] += -1.0;
    }
    if (g2 < 0.0) {
      jac[2][0] += -(-2.0 * x1) * x3 / (3.14 * a * a);
      jac[2][1] += -(2.0 * x2) * x3 / (3.14 * a * a);
      jac[2][2] += 1.0 / (3.14 * a);
    }
    if (g3 < 0.0) {
      const double c = 2.22e-3;
      jac[2][0] += c * x3 * (-3.0 * x1 * x1 * a + 4.0 * x1 * b) / (a * a * a);
      jac[2][1] += c * x3 * (3.0 * x2 * x2 * a - 4.0 * x2 * b) / (a * a * a);
      jac[2][2] += c * b / (a * a);
    }
    if (g4 < 0.0) {
      const double c = 2.66e-2;
      jac[2][0] += -c * x3 * x4 * (-3.0 * x1 * x1 * a + 2.0 * x1 * b) / (a * a);
      jac[2][1] += -c * x3 * x4 * (3.0 * x2 * x2 * a - 2.0 * x2 * b) / (a * a);
      jac[2][2] += -c * x4 * b / a;
      jac[2][3] += -c * x3 * b / a;
    }
  }

  FrontSample front_impl(std::size_t n) const override { return detail::dense_search_front(*this, n); }

 private:
  static double viol(double g) { return g < 0.0 ? -g : 0.0; }
};

// ---------------------------------------------------------------------------
// RE36: gear train design (Tanabe & Ishibuchi 2020), m=3, d=4. The suite's
// integer teeth counts are treated as continuous over the published bounds
// so the Jacobian is defined.
// ---------------------------------------------------------------------------

class Re36 : public Problem {
 public:
  Re36()
      : Problem({"re36", 3, 4, std::vector<double>(4, 12.0), std::vector<double>(4, 60.0)}) {}

 protected:
  void eval_impl(const std::vector<double>& x, std::vector<double>& f) const override {
    const double r = (x[2] * x[3]) / (x[0] * x[1]);
    f[0] = std::abs(6.931 - r);
    f[1] = std::max(std::max(x[0], x[1]), std::max(x[2], x[3]));
    const double g = 0.5 - f[0] / 6.931;
    f[2] = g < 0.0 ? -g : 0.0;
  }

  void jac_impl(const std::vector<double>& x, JacobianMatrix& jac) const override {
    const double r = (x[2] * x[3]) / (x[0] * x[1]);
    const double t = 6.931 - r;
    // d|t|: sign of the active branch; at t == 0 the +t branch wins.
    const double s = (t >= 0.0) ? 1.0 : -1.0;
    const double dr[4] = {-r / x[0], -r / x[1], r / x[2], r / x[3]};
    for (std::size_t j = 0; j < 4; ++j) jac[0][j] = -s * dr[j];

    std::size_t arg = 0;
    for (std::size_t j = 1; j < 4; ++j) {
      if (x[j] > x[arg]) arg = j;  // ties keep the lowest index
    }
    jac[1][arg] = 1.0;

    const double g = 0.5 - std::abs(t) / 6.931;
    if (g < 0.0) {
      for (std::size_t j = 0; j < 4; ++j) jac[2][j] = jac[0][j] / 6.931;
    }
  }

  FrontSample front_impl(std::size_t n) const override { return detail::dense_search_front(*this, n); }
};

// ---------------------------------------------------------------------------
// RE37: rocket injector design (Tanabe & Ishibuchi 2020), m=3, d=4,
// x in [0,1]^4. Smooth polynomial response surfaces.
// ---------------------------------------------------------------------------

class Re37 : public Problem {
 public:
  Re37() : Problem({"re37", 3, 4, std::vector<double>(4, 0.0), std::vector<double>(4, 1.0)}) {}

 protected:
  void eval_impl(const std::vector<double>& x, std::vector<double>& f) const override {
    const double a = x[0], h = x[1], o = x[2], t = x[3];
    f[0] = 0.692 + 0.477 * a - 0.687 * h - 0.080 * o - 0.0650 * t - 0.167 * a * a -
           0.0129 * h * a + 0.0796 * h * h - 0.0634 * o * a - 0.0257 * o * h +
           0.0877 * o * o - 0.0521 * t * a + 0.00156 * t * h + 0.00198 * t * o +
           0.0184 * t * t;
    f[1] = 0.153 - 0.322 * a + 0.396 * h + 0.424 * o + 0.0226 * t + 0.175 * a * a +
           0.0185 * h * a - 0.0701 * h * h - 0.251 * o * a + 0.179 * o * h +
           0.0150 * o * o + 0.0134 * t * a + 0.0296 * t * h + 0.0752 * t * o +
           0.0192 * t * t;
    f[2] = 0.370 - 0.205 * a + 0.0307 * h + 0.108 * o + 1.019 * t - 0.135 * a * a +
           0.0141 * h * a + 0.0998 * h * h + 0.208 * o * a - 0.0301 * o * h -
           0.226 * o * o + 0.353 * t * a - 0.0497 * t * o - 0.423 * t * t +
           0.202 * h * a * a - 0.281 * o * a * a - 0.342 * h * h * a - 0.245 * h * h * o +
           0.281 * o * o * h - 0.184 * t * t * a - 0.281 * h * a * o;
  }

  void jac_impl(const std::vector<double>& x, JacobianMatrix& jac) const override {
    const double a = x[0], h = x[1], o = x[2], t = x[3];
    jac[0][0] = 0.477 - 0.334 * a - 0.0129 * h - 0.0634 * o - 0.0521 * t;
    jac[0][1] = -0.687 - 0.0129 * a + 0.1592 * h - 0.0257 * o + 0.00156 * t;
    jac[0][2] = -0.080 - 0.0634 * a - 0.0257 * h + 0.1754 * o + 0.00198 * t;
    jac[0][3] = -0.0650 - 0.0521 * a + 0.00156 * h + 0.00198 * o + 0.0368 * t;

    jac[1][0] = -0.322 + 0.350 * a + 0.0185 * h - 0.251 * o + 0.0134 * t;
    jac[1][1] = 0.396 + 0.0185 * a - 0.1402 * h + 0.179 * o + 0.0296 * t;
    jac[1][2] = 0.424 - 0.251 * a + 0.179 * h + 0.0300 * o + 0.0752 * t;
    jac[1][3] = 0.0226 + 0.0134 * a + 0.0296 * h + 0.0752 * o + 0.0384 * t;

    jac[2][0] = -0.205 - 0.270 * a + 0.0141 * h + 0.208 * o + 0.353 * t + 0.404 * h * a -
                0.562 * o * a - 0.342 * h * h - 0.184 * t * t - 0.281 * h * o;
    jac[2][1] = 0.0307 + 0.0141 * a + 0.1996 * h - 0.0301 * o + 0.202 * a * a -
                0.684 * h * a - 0.490 * h * o + 0.281 * o * o - 0.281 * a * o;
    jac[2][2] = 0.108 + 0.208 * a - 0.0301 * h - 0.452 * o - 0.0497 * t - 0.281 * a * a -
                0.245 * h * h + 0.562 * o * h - 0.281 * h * a;
    jac[2][3] = 1.019 + 0.353 * a - 0.0497 * o - 0.846 * t - 0.368 * t * a;
  }

  FrontSample front_impl(std::size_t n) const override { return detail::dense_search_front(*this, n); }
};

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

namespace detail {

struct ExpectedDims {
  const char* name;
  std::size_t m, d;
};

inline const std::vector<std::unique_ptr<Problem>>& problem_registry() {
  static const std::vector<std::unique_ptr<Problem>> reg = [] {
    std::vector<std::unique_ptr<Problem>> v;
    v.push_back(std::make_unique<Zdt3>());
    v.push_back(std::make_unique<Dtlz5>());
    v.push_back(std::make_unique<Dtlz7>());
    v.push_back(std::make_unique<Re21>());
    v.push_back(std::make_unique<Re33>());
    v.push_back(std::make_unique<Re36>());
    v.push_back(std::make_unique<Re37>());
    // Suite dimensions are part of the contract; refuse to start otherwise.
    static constexpr ExpectedDims expected[] = {{"zdt3", 2, 10}, {"dtlz5", 3, 10},
                                                {"dtlz7", 3, 10}, {"re21", 2, 4},
                                                {"re33", 3, 4},   {"re36", 3, 4},
                                                {"re37", 3, 4}};
    for (std::size_t i = 0; i < v.size(); ++i) {
      const auto& s = v[i]->spec();
      if (s.name != expected[i].name || s.m != expected[i].m || s.d != expected[i].d ||
          s.lower_bounds.size() != s.d || s.upper_bounds.size() != s.d) {
        throw config_error("problem registry: dimension mismatch for " + s.name);
      }
      for (std::size_t j = 0; j < s.d; ++j) {
        if (!(s.lower_bounds[j] < s.upper_bounds[j])) {
          throw config_error("problem registry: bad bounds for " + s.name);
        }
      }
    }
    return v;
  }();
  return reg;
}

}  // namespace detail

inline std::vector<std::string> problem_names() {
  std::vector<std::string> names;
  for (const auto& p : detail::problem_registry()) names.push_back(p->name());
  return names;
}

inline const Problem& problem_by_name(const std::string& name) {
  for (const auto& p : detail::problem_registry()) {
    if (p->name() == name) return *p;
  }
  throw config_error("unknown problem '" + name + "'");
}

}  // namespace psl
