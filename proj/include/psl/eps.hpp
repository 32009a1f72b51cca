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
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "psl/core.hpp"
#include "psl/model.hpp"
#include "psl/problems.hpp"
#include "psl/scalarize.hpp"

namespace psl {

struct EpsConfig {
  std::size_t period_length = 100;  // iterations per sampling period
  double select_fraction = 0.1;     // share of the archive kept as parents
  double crossover_prob = 0.9;      // per-pair SBX probability
  double mutation_prob = 0.9;       // per-gene polynomial mutation probability
  double sbx_index = 15.0;
  double pm_index = 20.0;
};

struct Archive {
  std::vector<EvaluatedPreference> entries;
};

struct Population {
  std::vector<EvaluatedPreference> members;
};

/// Uniform sample of the (m-1)-simplex via normalized exponential spacings.
inline std::vector<PreferenceVector> sample_uniform(RngStream& rng, std::size_t count,
                                                    std::size_t m) {
  if (m < 2) throw dimension_error("sample_uniform: need at least two objectives");
  std::vector<PreferenceVector> out;
  out.reserve(count);
  std::vector<double> e(m);
  for (std::size_t s = 0; s < count; ++s) {
    double sum = 0.0;
    do {
      sum = 0.0;
      for (double& v : e) {
        v = -std::log1p(-rng.next_double());
        sum += v;
      }
    } while (!(sum > 0.0));
    out.push_back(simplex_project(e));
  }
  return out;
}

/// Deb's fast non-dominated sort over archived objective values. Returns
/// fronts in ascending rank; indices within a front keep input order.
inline std::vector<std::vector<std::size_t>> fast_nondominated_sort(
    const std::vector<EvaluatedPreference>& entries) {
  const std::size_t n = entries.size();
  std::vector<std::vector<std::size_t>> fronts;
  if (n == 0) return fronts;

  std::vector<std::vector<std::size_t>> dominated(n);
  std::vector<std::size_t> count(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (dominates(entries[i].objectives, entries[j].objectives)) {
        dominated[i].push_back(j);
        ++count[j];
      } else if (dominates(entries[j].objectives, entries[i].objectives)) {
        dominated[j].push_back(i);
        ++count[i];
      }
    }
  }

  std::vector<std::size_t> current;
  for (std::size_t i = 0; i < n; ++i) {
    if (count[i] == 0) current.push_back(i);
  }
  while (!current.empty()) {
    fronts.push_back(current);
    std::vector<std::size_t> next;
    for (std::size_t i : current) {
      for (std::size_t j : dominated[i]) {
        if (--count[j] == 0) next.push_back(j);
      }
    }
    std::sort(next.begin(), next.end());
    current = std::move(next);
  }
  return fronts;
}

/// Per-member crowding distance within one front, aligned with input order.
/// Boundary members get +inf; an objective with zero range contributes
/// nothing. Ties in objective value are ordered by input index, which fixes
/// which duplicate is treated as the boundary.
inline std::vector<double> crowding_distance(const std::vector<EvaluatedPreference>& front) {
  const std::size_t n = front.size();
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (n == 0) return {};
  if (n <= 2) return std::vector<double>(n, inf);

  std::vector<double> dist(n, 0.0);
  const std::size_t m = front[0].objectives.size();
  std::vector<std::size_t> order(n);
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const double va = front[a].objectives[k], vb = front[b].objectives[k];
      if (va != vb) return va < vb;
      return a < b;
    });
    const double range = front[order[n - 1]].objectives[k] - front[order[0]].objectives[k];
    dist[order[0]] = inf;
    dist[order[n - 1]] = inf;
    if (range <= 0.0) continue;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      if (dist[order[i]] == inf) continue;
      dist[order[i]] +=
          (front[order[i + 1]].objectives[k] - front[order[i - 1]].objectives[k]) / range;
    }
  }
  return dist;
}

/// Picks ceil(fraction * archive size) parents: whole fronts in rank order,
/// then the tail front by descending crowding distance (ties toward the
/// lower archive index).
inline Population select_subset(const Archive& archive, double fraction) {
  if (!(fraction > 0.0) || fraction > 1.0) {
    throw config_error("select_subset: fraction must lie in (0, 1]");
  }
  Population pop;
  if (archive.entries.empty()) return pop;
  std::size_t want = static_cast<std::size_t>(
      std::ceil(fraction * static_cast<double>(archive.entries.size())));
  want = std::min(std::max<std::size_t>(want, 1), archive.entries.size());

  const auto fronts = fast_nondominated_sort(archive.entries);
  for (const auto& front : fronts) {
    if (pop.members.size() + front.size() <= want) {
      for (std::size_t i : front) pop.members.push_back(archive.entries[i]);
      if (pop.members.size() == want) break;
      continue;
    }
    std::vector<EvaluatedPreference> tail;
    tail.reserve(front.size());
    for (std::size_t i : front) tail.push_back(archive.entries[i]);
    const std::vector<double> crowd = crowding_distance(tail);
    std::vector<std::size_t> order(front.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (crowd[a] != crowd[b]) return crowd[a] > crowd[b];
      return a < b;
    });
    for (std::size_t i = 0; i < order.size() && pop.members.size() < want; ++i) {
      pop.members.push_back(tail[order[i]]);
    }
    break;
  }
  return pop;
}

namespace detail {

/// SBX child pair for one gene from the two spread factors; no clipping.
inline std::pair<double, double> sbx_pair_from_spread(double y1, double y2, double betaq1,
                                                      double betaq2) {
  const double c1 = 0.5 * ((y1 + y2) - betaq1 * (y2 - y1));
  const double c2 = 0.5 * ((y1 + y2) + betaq2 * (y2 - y1));
  return {c1, c2};
}

inline double sbx_spread(double beta, double eta, double u) {
  const double alpha = 2.0 - std::pow(beta, -(eta + 1.0));
  if (u <= 1.0 / alpha) return std::pow(u * alpha, 1.0 / (eta + 1.0));
  return std::pow(1.0 / (2.0 - u * alpha), 1.0 / (eta + 1.0));
}

/// Bounded simulated binary crossover over [0,1] genes (Deb & Agrawal).
/// Per gene: a 0.5 participation draw, one spread draw shared by both
/// children, and a 0.5 child-swap draw.
inline void sbx(std::vector<double>& g1, std::vector<double>& g2, double eta, RngStream& rng) {
  constexpr double lo = 0.0, hi = 1.0, eps = 1e-14;
  for (std::size_t i = 0; i < g1.size(); ++i) {
    if (rng.next_double() > 0.5) continue;
    if (std::abs(g1[i] - g2[i]) <= eps) continue;
    const double y1 = std::min(g1[i], g2[i]);
    const double y2 = std::max(g1[i], g2[i]);
    const double u = rng.next_double();
    const double beta1 = 1.0 + 2.0 * (y1 - lo) / (y2 - y1);
    const double beta2 = 1.0 + 2.0 * (hi - y2) / (y2 - y1);
    auto [c1, c2] = sbx_pair_from_spread(y1, y2, sbx_spread(beta1, eta, u),
                                         sbx_spread(beta2, eta, u));
    c1 = std::clamp(c1, lo, hi);
    c2 = std::clamp(c2, lo, hi);
    if (rng.next_double() <= 0.5) std::swap(c1, c2);
    g1[i] = c1;
    g2[i] = c2;
  }
}

/// Polynomial mutation over [0,1] genes (Deb & Goyal), per-gene probability.
inline void polynomial_mutation(std::vector<double>& g, double prob, double eta,
                                RngStream& rng) {
  constexpr double lo = 0.0, hi = 1.0;
  for (double& y : g) {
    if (rng.next_double() > prob) continue;
    const double u = rng.next_double();
    const double delta1 = (y - lo) / (hi - lo);
    const double delta2 = (hi - y) / (hi - lo);
    const double mpow = 1.0 / (eta + 1.0);
    double deltaq = 0.0;
    if (u <= 0.5) {
      const double xy = 1.0 - delta1;
      const double val = 2.0 * u + (1.0 - 2.0 * u) * std::pow(xy, eta + 1.0);
      deltaq = std::pow(val, mpow) - 1.0;
    } else {
      const double xy = 1.0 - delta2;
      const double val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(xy, eta + 1.0);
      deltaq = 1.0 - std::pow(val, mpow);
    }
    y = std::clamp(y + deltaq * (hi - lo), lo, hi);
  }
}

}  // namespace detail

/// Breeds `count` preferences from the parent population: per pair, SBX with
/// probability crossover_prob, then polynomial mutation, then projection
/// back onto the simplex. A single-member population falls back to
/// mutation-only breeding.
inline std::vector<PreferenceVector> generate_offspring(const Population& pop, RngStream& rng,
                                                        std::size_t count,
                                                        const EpsConfig& config) {
  if (pop.members.empty()) throw degenerate_input_error("generate_offspring: empty population");
  std::vector<PreferenceVector> out;
  out.reserve(count);

  if (pop.members.size() == 1) {
    const std::vector<double>& base = pop.members[0].preference.weights();
    while (out.size() < count) {
      std::vector<double> g = base;
      detail::polynomial_mutation(g, config.mutation_prob, config.pm_index, rng);
      out.push_back(simplex_project(g));
    }
    return out;
  }

  const std::size_t n = pop.members.size();
  while (out.size() < count) {
    const std::size_t i = rng.uniform_index(n);
    const std::size_t j = (i + 1 + rng.uniform_index(n - 1)) % n;
    std::vector<double> g1 = pop.members[i].preference.weights();
    std::vector<double> g2 = pop.members[j].preference.weights();
    if (rng.next_double() <= config.crossover_prob) {
      detail::sbx(g1, g2, config.sbx_index, rng);
    }
    detail::polynomial_mutation(g1, config.mutation_prob, config.pm_index, rng);
    detail::polynomial_mutation(g2, config.mutation_prob, config.pm_index, rng);
    out.push_back(simplex_project(g1));
    if (out.size() < count) out.push_back(simplex_project(g2));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Training loop
// ---------------------------------------------------------------------------

enum class SamplerKind { uniform, eps };

inline const char* to_string(SamplerKind s) {
  return s == SamplerKind::uniform ? "uniform" : "eps";
}

inline SamplerKind parse_sampler(const std::string& name) {
  if (name == "uniform") return SamplerKind::uniform;
  if (name == "eps") return SamplerKind::eps;
  throw config_error("unknown sampler '" + name + "' (expected uniform|eps)");
}

struct TraceRow {
  std::size_t iteration = 0;  // 1-based
  double loss = 0.0;
  bool has_hv = false;
  double hv_estimate = 0.0;
  double log_hv_diff = 0.0;
};

struct HvProbeResult {
  double hv_estimate = 0.0;
  double log_hv_diff = 0.0;
};

struct TrainingOptions {
  SamplerKind sampler = SamplerKind::uniform;
  double ideal_epsilon = 0.1;
  /// Iterations between hypervolume probes; 0 disables probing.
  std::size_t hv_stride = 0;
  std::function<HvProbeResult(const ParetoSetModel&)> hv_probe;
  /// Keep per-iteration batches in the trace (for preference logging).
  bool record_preferences = false;
};

struct RunTrace {
  std::vector<TraceRow> rows;
  /// Per iteration: whether the batch came from the evolved population
  /// rather than the uniform sampler.
  std::vector<std::uint8_t> from_population;
  std::vector<std::vector<PreferenceVector>> sampled;  // only if recorded
  std::size_t evaluate_calls = 0;
  IdealPoint final_ideal{2, 0.1};
};

/// Trains `model` in place for config.max_iterations steps, writing progress
/// into `trace` row by row (so a partially filled trace survives a thrown
/// numeric-state error). With the eps sampler the first period draws
/// uniformly while an archive of (preference, objectives) pairs accumulates;
/// at every period boundary the archive is distilled into a parent
/// population (non-dominated rank, then crowding) and cleared, and later
/// batches are bred from those parents.
inline void run_eps_training(const Problem& problem, ParetoSetModel& model,
                             ScalarizationKind kind, double mu, const OptimizerConfig& opt,
                             const EpsConfig& eps, RngStream& rng,
                             const TrainingOptions& options, RunTrace& trace) {
  if (eps.period_length == 0 || opt.max_iterations % eps.period_length != 0) {
    throw config_error("run_eps_training: period length must divide max iterations");
  }
  if (opt.batch_size == 0) throw config_error("run_eps_training: batch size must be positive");

  const std::size_t m = problem.num_objectives();
  IdealPoint ideal(m, options.ideal_epsilon);
  Archive archive;
  Population population;

  trace.rows.reserve(opt.max_iterations);
  for (std::size_t t = 1; t <= opt.max_iterations; ++t) {
    const bool from_pop = options.sampler == SamplerKind::eps &&
                          t > eps.period_length && !population.members.empty();
    std::vector<PreferenceVector> batch =
        from_pop ? generate_offspring(population, rng, opt.batch_size, eps)
                 : sample_uniform(rng, opt.batch_size, m);

    TrainStepResult step = model.training_step(batch, problem, kind, mu, ideal, opt);
    trace.evaluate_calls += batch.size();

    if (options.sampler == SamplerKind::eps) {
      for (std::size_t b = 0; b < batch.size(); ++b) {
        archive.entries.push_back(EvaluatedPreference{batch[b], step.objectives[b]});
      }
    }

    TraceRow row;
    row.iteration = t;
    row.loss = step.loss;
    if (options.hv_stride != 0 && t % options.hv_stride == 0 && options.hv_probe) {
      const HvProbeResult probe = options.hv_probe(model);
      row.has_hv = true;
      row.hv_estimate = probe.hv_estimate;
      row.log_hv_diff = probe.log_hv_diff;
    }
    trace.rows.push_back(row);
    trace.from_population.push_back(from_pop ? 1 : 0);
    if (options.record_preferences) trace.sampled.push_back(batch);

    if (options.sampler == SamplerKind::eps && t % eps.period_length == 0) {
      population = select_subset(archive, eps.select_fraction);
      archive.entries.clear();
    }
  }
  trace.final_ideal = ideal;
}

}  // namespace psl
