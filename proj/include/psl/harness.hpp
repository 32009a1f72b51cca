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
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "psl/core.hpp"
#include "psl/eps.hpp"
#include "psl/indicators.hpp"
#include "psl/model.hpp"
#include "psl/problems.hpp"
#include "psl/scalarize.hpp"

namespace psl {

// Process exit codes shared by the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNumericError = 3;

struct RunConfig {
  std::string problem = "zdt3";
  ScalarizationKind scalarization = ScalarizationKind::MTCH;
  SamplerKind sampler = SamplerKind::uniform;
  std::uint64_t seed = 0;
  std::size_t iterations = 1000;
  std::size_t batch_size = 8;
  double learning_rate = 0.001;
  std::size_t period_length = 100;
  double select_fraction = 0.1;
  double crossover_prob = 0.9;
  double mutation_prob = 0.9;
  double sbx_index = 15.0;
  double pm_index = 20.0;
  double mu = 1.0;            // cosine balance weight
  double ideal_epsilon = 0.1; // ideal-point shift
  std::size_t hidden_width = 256;
  std::size_t hv_stride = 20;
  bool log_preferences = false;
  std::string out_dir = "runs";

  OptimizerConfig optimizer() const {
    OptimizerConfig opt;
    opt.learning_rate = learning_rate;
    opt.batch_size = batch_size;
    opt.max_iterations = iterations;
    return opt;
  }

  EpsConfig eps() const {
    EpsConfig e;
    e.period_length = period_length;
    e.select_fraction = select_fraction;
    e.crossover_prob = crossover_prob;
    e.mutation_prob = mutation_prob;
    e.sbx_index = sbx_index;
    e.pm_index = pm_index;
    return e;
  }
};

namespace detail {

inline std::string fmt_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string fmt_g9(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace detail

/// Canonical key=value echo of a run configuration; also the input to the
/// run-directory hash, so any change in settings lands in a fresh directory.
inline std::string config_to_string(const RunConfig& cfg) {
  std::ostringstream os;
  os << "problem=" << cfg.problem << "\n";
  os << "scalarization=" << to_string(cfg.scalarization) << "\n";
  os << "sampler=" << to_string(cfg.sampler) << "\n";
  os << "seed=" << cfg.seed << "\n";
  os << "iters=" << cfg.iterations << "\n";
  os << "batch=" << cfg.batch_size << "\n";
  os << "lr=" << detail::fmt_g17(cfg.learning_rate) << "\n";
  os << "period=" << cfg.period_length << "\n";
  os << "sp=" << detail::fmt_g17(cfg.select_fraction) << "\n";
  os << "cp=" << detail::fmt_g17(cfg.crossover_prob) << "\n";
  os << "mp=" << detail::fmt_g17(cfg.mutation_prob) << "\n";
  os << "eta_c=" << detail::fmt_g17(cfg.sbx_index) << "\n";
  os << "eta_m=" << detail::fmt_g17(cfg.pm_index) << "\n";
  os << "mu=" << detail::fmt_g17(cfg.mu) << "\n";
  os << "epsilon=" << detail::fmt_g17(cfg.ideal_epsilon) << "\n";
  os << "width=" << cfg.hidden_width << "\n";
  os << "hv_stride=" << cfg.hv_stride << "\n";
  os << "log_preferences=" << (cfg.log_preferences ? 1 : 0) << "\n";
  return os.str();
}

inline std::string config_hash(const RunConfig& cfg) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(detail::fnv1a(config_to_string(cfg))));
  return buf;
}

struct RunResult {
  RunConfig config;
  RunTrace trace;
  HvReport final_report;
  std::vector<PreferenceVector> lattice;        // evaluation preferences
  std::vector<ObjectiveVector> final_front;     // model image of the lattice
  std::vector<DecisionVector> final_solutions;  // matching decision vectors
  double wallclock_s = 0.0;
  bool failed = false;
  std::string failure;
  std::shared_ptr<ParetoSetModel> model;
};

/// Runs one training configuration in memory. Numeric-state failures are
/// captured in the result (partial trace preserved); they do not throw.
inline RunResult execute_run(const RunConfig& cfg) {
  const Problem& problem = problem_by_name(cfg.problem);
  const HvContext& ctx = HvContext::for_problem(problem);

  RunResult result;
  result.config = cfg;
  result.lattice = ctx.lattice();

  RngStream root(cfg.seed);
  RngStream init_rng = root.substream(0);
  RngStream sample_rng = root.substream(1);
  result.model = std::make_shared<ParetoSetModel>(problem.spec(), init_rng, cfg.hidden_width);

  TrainingOptions options;
  options.sampler = cfg.sampler;
  options.ideal_epsilon = cfg.ideal_epsilon;
  options.hv_stride = cfg.hv_stride;
  options.record_preferences = cfg.log_preferences;
  options.hv_probe = [&](const ParetoSetModel& model) {
    std::vector<ObjectiveVector> image;
    image.reserve(ctx.lattice().size());
    for (const PreferenceVector& lambda : ctx.lattice()) {
      image.push_back(problem.evaluate(model.forward_one(lambda)));
    }
    const HvReport rep = ctx.report(image);
    return HvProbeResult{rep.hv_estimate, rep.log_hv_diff};
  };

  const auto t0 = std::chrono::steady_clock::now();
  try {
    run_eps_training(problem, *result.model, cfg.scalarization, cfg.mu, cfg.optimizer(),
                     cfg.eps(), sample_rng, options, result.trace);
  } catch (const numeric_error& e) {
    result.failed = true;
    result.failure = e.what();
  }
  result.wallclock_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  if (!result.failed) {
    result.final_front.reserve(result.lattice.size());
    result.final_solutions.reserve(result.lattice.size());
    for (const PreferenceVector& lambda : result.lattice) {
      DecisionVector x = result.model->forward_one(lambda);
      result.final_front.push_back(problem.evaluate(x));
      result.final_solutions.push_back(std::move(x));
    }
    result.final_report = ctx.report(result.final_front);
  }
  return result;
}

inline void write_trace_csv(const RunTrace& trace, std::ostream& os) {
  os << "iteration,loss,hv_estimate,log_hv_diff\n";
  for (const TraceRow& row : trace.rows) {
    os << row.iteration << "," << detail::fmt_g17(row.loss) << ",";
    if (row.has_hv) {
      os << detail::fmt_g17(row.hv_estimate) << "," << detail::fmt_g17(row.log_hv_diff);
    } else {
      os << ",";
    }
    os << "\n";
  }
}

/// Writes the per-run artifact directory <out>/<confighash>/ and returns its
/// path: config.txt, trace.csv, and on success report.csv, model.txt,
/// approx_front.csv (plus preferences.csv when logging was on). A failed run
/// leaves its partial trace and a failed.txt marker instead.
inline std::filesystem::path write_run_outputs(const RunResult& result) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::path(result.config.out_dir) / config_hash(result.config);
  fs::create_directories(dir);

  {
    std::ofstream os(dir / "config.txt");
    os << config_to_string(result.config);
  }
  {
    std::ofstream os(dir / "trace.csv");
    write_trace_csv(result.trace, os);
  }

  if (result.failed) {
    std::ofstream os(dir / "failed.txt");
    os << result.failure << "\n";
    return dir;
  }

  {
    std::ofstream os(dir / "report.csv");
    os << "hv_true,hv_estimate,epsilon,log_hv_diff,front_source";
    for (std::size_t i = 0; i < result.final_report.reference_point.size(); ++i) {
      os << ",ref" << (i + 1);
    }
    os << "\n";
    os << detail::fmt_g17(result.final_report.hv_true) << ","
       << detail::fmt_g17(result.final_report.hv_estimate) << ","
       << detail::fmt_g17(result.final_report.epsilon) << ","
       << detail::fmt_g17(result.final_report.log_hv_diff) << ","
       << to_string(result.final_report.front_source);
    for (double r : result.final_report.reference_point) os << "," << detail::fmt_g17(r);
    os << "\n";
  }
  {
    std::ofstream os(dir / "model.txt");
    result.model->save(os);
  }
  {
    std::ofstream os(dir / "approx_front.csv");
    const std::size_t m = result.lattice.empty() ? 0 : result.lattice[0].size();
    for (std::size_t i = 0; i < m; ++i) os << (i ? "," : "") << "lambda" << (i + 1);
    for (std::size_t i = 0; i < m; ++i) os << ",f" << (i + 1);
    os << "\n";
    for (std::size_t r = 0; r < result.final_front.size(); ++r) {
      for (std::size_t i = 0; i < m; ++i) {
        os << (i ? "," : "") << detail::fmt_g17(result.lattice[r][i]);
      }
      for (std::size_t i = 0; i < m; ++i) os << "," << detail::fmt_g17(result.final_front[r][i]);
      os << "\n";
    }
  }
  if (result.config.log_preferences) {
    std::ofstream os(dir / "preferences.csv");
    const std::size_t m = result.lattice.empty() ? 0 : result.lattice[0].size();
    os << "iteration,from_population";
    for (std::size_t i = 0; i < m; ++i) os << ",lambda" << (i + 1);
    os << "\n";
    for (std::size_t t = 0; t < result.trace.sampled.size(); ++t) {
      for (const PreferenceVector& lambda : result.trace.sampled[t]) {
        os << (t + 1) << "," << int(result.trace.from_population[t]);
        for (std::size_t i = 0; i < m; ++i) os << "," << detail::fmt_g17(lambda[i]);
        os << "\n";
      }
    }
  }
  return dir;
}

/// execute_run plus artifact writing; returns the process exit code.
inline int run_single(const RunConfig& cfg, std::string* dir_out = nullptr) {
  RunResult result = execute_run(cfg);
  const std::filesystem::path dir = write_run_outputs(result);
  if (dir_out) *dir_out = dir.string();
  return result.failed ? kExitNumericError : kExitOk;
}

// ---------------------------------------------------------------------------
// Experiment matrix
// ---------------------------------------------------------------------------

struct MatrixConfig {
  RunConfig base;
  std::vector<std::string> problems = {"zdt3", "dtlz5", "dtlz7", "re21", "re33", "re36", "re37"};
  std::vector<ScalarizationKind> scalarizations = {ScalarizationKind::LS, ScalarizationKind::TCH,
                                                   ScalarizationKind::MTCH,
                                                   ScalarizationKind::COSMOS};
  std::vector<SamplerKind> samplers = {SamplerKind::uniform, SamplerKind::eps};
  std::vector<std::uint64_t> seeds = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  std::size_t jobs = 1;
  bool write_runs = true;
};

struct MatrixRow {
  std::string problem;
  ScalarizationKind scalarization = ScalarizationKind::MTCH;
  SamplerKind sampler = SamplerKind::uniform;
  std::uint64_t seed = 0;
  double final_log_hv_diff = 0.0;
  double wallclock_s = 0.0;
  bool failed = false;
};

struct AggregateRow {
  std::string problem;
  ScalarizationKind scalarization = ScalarizationKind::MTCH;
  double mean_uniform = 0.0, std_uniform = 0.0;
  double mean_eps = 0.0, std_eps = 0.0;
  bool improved = false;
};

struct ConvergencePoint {
  std::string problem;
  ScalarizationKind scalarization = ScalarizationKind::MTCH;
  SamplerKind sampler = SamplerKind::uniform;
  std::size_t iteration = 0;
  double median_log_hv_diff = 0.0;
};

struct MatrixResult {
  std::vector<MatrixRow> rows;
  std::vector<AggregateRow> aggregates;
  std::vector<ConvergencePoint> convergence;
  int exit_code = kExitOk;
};

namespace detail {

inline double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? std::numeric_limits<double>::quiet_NaN()
                   : s / static_cast<double>(v.size());
}

inline double sample_std(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double mu = mean_of(v);
  double s = 0.0;
  for (double x : v) s += (x - mu) * (x - mu);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

inline double median_of(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return (n % 2 == 1) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace detail

/// Runs the full cell grid (problems x scalarizations x samplers x seeds),
/// optionally across a worker pool. Results are assembled in grid order, so
/// row output does not depend on scheduling. Numeric failures mark their
/// cell and flip the exit code to the numeric-error value; remaining cells
/// still run.
inline MatrixResult run_matrix(const MatrixConfig& mc) {
  struct Cell {
    RunConfig cfg;
  };
  std::vector<Cell> cells;
  for (const std::string& prob : mc.problems) {
    for (ScalarizationKind scal : mc.scalarizations) {
      for (SamplerKind sampler : mc.samplers) {
        for (std::uint64_t seed : mc.seeds) {
          RunConfig cfg = mc.base;
          cfg.problem = prob;
          cfg.scalarization = scal;
          cfg.sampler = sampler;
          cfg.seed = seed;
          cells.push_back(Cell{std::move(cfg)});
        }
      }
    }
  }
  // Problem lookups and per-problem caches are validated and warmed before
  // workers start, so worker threads only hit read paths.
  for (const std::string& prob : mc.problems) {
    HvContext::for_problem(problem_by_name(prob));
  }

  std::vector<RunResult> results(cells.size());
  std::atomic<std::size_t> next{0};
  const std::size_t workers = std::max<std::size_t>(1, std::min(mc.jobs, cells.size()));
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      results[i] = execute_run(cells[i].cfg);
      if (mc.write_runs) write_run_outputs(results[i]);
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }

  MatrixResult out;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const RunResult& r = results[i];
    MatrixRow row;
    row.problem = r.config.problem;
    row.scalarization = r.config.scalarization;
    row.sampler = r.config.sampler;
    row.seed = r.config.seed;
    row.failed = r.failed;
    row.final_log_hv_diff =
        r.failed ? std::numeric_limits<double>::quiet_NaN() : r.final_report.log_hv_diff;
    row.wallclock_s = r.wallclock_s;
    out.rows.push_back(row);
    if (r.failed) out.exit_code = kExitNumericError;
  }

  for (const std::string& prob : mc.problems) {
    for (ScalarizationKind scal : mc.scalarizations) {
      AggregateRow agg;
      agg.problem = prob;
      agg.scalarization = scal;
      std::vector<double> uni, eps;
      for (const MatrixRow& row : out.rows) {
        if (row.problem != prob || row.scalarization != scal) continue;
        (row.sampler == SamplerKind::uniform ? uni : eps).push_back(row.final_log_hv_diff);
      }
      agg.mean_uniform = detail::mean_of(uni);
      agg.std_uniform = detail::sample_std(uni);
      agg.mean_eps = detail::mean_of(eps);
      agg.std_eps = detail::sample_std(eps);
      agg.improved = agg.mean_eps < agg.mean_uniform;
      out.aggregates.push_back(agg);
    }
  }

  // Median convergence curves over seeds at each probed iteration.
  for (const std::string& prob : mc.problems) {
    for (ScalarizationKind scal : mc.scalarizations) {
      for (SamplerKind sampler : mc.samplers) {
        std::map<std::size_t, std::vector<double>> by_iter;
        for (std::size_t i = 0; i < results.size(); ++i) {
          const RunResult& r = results[i];
          if (r.config.problem != prob || r.config.scalarization != scal ||
              r.config.sampler != sampler || r.failed) {
            continue;
          }
          for (const TraceRow& trow : r.trace.rows) {
            if (trow.has_hv) by_iter[trow.iteration].push_back(trow.log_hv_diff);
          }
        }
        for (const auto& [iter, vals] : by_iter) {
          out.convergence.push_back(
              ConvergencePoint{prob, scal, sampler, iter, detail::median_of(vals)});
        }
      }
    }
  }
  return out;
}

inline void write_matrix_csv(const MatrixResult& mr, std::ostream& os) {
  os << "problem,scalarization,sampler,seed,final_log_hv_diff,wallclock_s\n";
  for (const MatrixRow& row : mr.rows) {
    os << row.problem << "," << to_string(row.scalarization) << "," << to_string(row.sampler)
       << "," << row.seed << "," << detail::fmt_g17(row.final_log_hv_diff) << ","
       << detail::fmt_g17(row.wallclock_s) << "\n";
  }
}

inline void write_aggregates_csv(const MatrixResult& mr, std::ostream& os) {
  os << "problem,scalarization,mean_uniform,std_uniform,mean_eps,std_eps,improved\n";
  for (const AggregateRow& a : mr.aggregates) {
    os << a.problem << "," << to_string(a.scalarization) << "," << detail::fmt_g9(a.mean_uniform)
       << "," << detail::fmt_g9(a.std_uniform) << "," << detail::fmt_g9(a.mean_eps) << ","
       << detail::fmt_g9(a.std_eps) << "," << (a.improved ? 1 : 0) << "\n";
  }
}

inline void write_convergence_csv(const MatrixResult& mr, std::ostream& os) {
  os << "problem,scalarization,sampler,iteration,median_log_hv_diff\n";
  for (const ConvergencePoint& c : mr.convergence) {
    os << c.problem << "," << to_string(c.scalarization) << "," << to_string(c.sampler) << ","
       << c.iteration << "," << detail::fmt_g9(c.median_log_hv_diff) << "\n";
  }
}

// ---------------------------------------------------------------------------
// Hyperparameter sweeps
// ---------------------------------------------------------------------------

struct SweepRow {
  double select_fraction = 0.0;
  double crossover_prob = 0.0;
  double mutation_prob = 0.0;
  double mean_log_hv_diff = 0.0;
  double std_log_hv_diff = 0.0;
};

/// Sensitivity sweep on the eps sampler: `values` taken as the grid for
/// select_fraction when `kind == "sp"`, or as a shared grid for the
/// crossover x mutation product grid when `kind == "cpmp"`.
inline std::vector<SweepRow> run_sweep(const RunConfig& base, const std::string& kind,
                                       const std::vector<double>& values,
                                       const std::vector<std::uint64_t>& seeds) {
  std::vector<RunConfig> grid;
  if (kind == "sp") {
    for (double sp : values) {
      RunConfig cfg = base;
      cfg.sampler = SamplerKind::eps;
      cfg.select_fraction = sp;
      grid.push_back(cfg);
    }
  } else if (kind == "cpmp") {
    for (double cp : values) {
      for (double mp : values) {
        RunConfig cfg = base;
        cfg.sampler = SamplerKind::eps;
        cfg.crossover_prob = cp;
        cfg.mutation_prob = mp;
        grid.push_back(cfg);
      }
    }
  } else {
    throw config_error("run_sweep: kind must be sp or cpmp");
  }

  std::vector<SweepRow> rows;
  for (const RunConfig& cfg : grid) {
    std::vector<double> finals;
    for (std::uint64_t seed : seeds) {
      RunConfig c = cfg;
      c.seed = seed;
      RunResult r = execute_run(c);
      finals.push_back(r.failed ? std::numeric_limits<double>::quiet_NaN()
                                : r.final_report.log_hv_diff);
    }
    SweepRow row;
    row.select_fraction = cfg.select_fraction;
    row.crossover_prob = cfg.crossover_prob;
    row.mutation_prob = cfg.mutation_prob;
    row.mean_log_hv_diff = detail::mean_of(finals);
    row.std_log_hv_diff = detail::sample_std(finals);
    rows.push_back(row);
  }
  return rows;
}

inline void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& os) {
  os << "sp,cp,mp,mean_log_hv_diff,std_log_hv_diff\n";
  for (const SweepRow& r : rows) {
    os << detail::fmt_g9(r.select_fraction) << "," << detail::fmt_g9(r.crossover_prob) << ","
       << detail::fmt_g9(r.mutation_prob) << "," << detail::fmt_g9(r.mean_log_hv_diff) << ","
       << detail::fmt_g9(r.std_log_hv_diff) << "\n";
  }
}

}  // namespace psl
