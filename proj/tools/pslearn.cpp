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

// Command line front end: single runs, experiment matrices, sensitivity
// sweeps, reference front export, and SVG plots of run artifacts.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "psl/psl.hpp"

namespace {

namespace fs = std::filesystem;

struct CommonFlags {
  psl::RunConfig cfg;
  std::string scalarization = "mtch";
  std::string sampler = "uniform";
};

void add_common_options(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--problem", flags.cfg.problem, "Benchmark problem name")
      ->default_val(flags.cfg.problem);
  cmd->add_option("--scalarization", flags.scalarization, "ls|tch|mtch|cosmos")
      ->default_val(flags.scalarization);
  cmd->add_option("--seed", flags.cfg.seed, "Run seed")->default_val(flags.cfg.seed);
  cmd->add_option("--iters", flags.cfg.iterations, "Training iterations")
      ->default_val(flags.cfg.iterations);
  cmd->add_option("--batch", flags.cfg.batch_size, "Preferences per step")
      ->default_val(flags.cfg.batch_size);
  cmd->add_option("--lr", flags.cfg.learning_rate, "Adam learning rate")
      ->default_val(flags.cfg.learning_rate);
  cmd->add_option("--period", flags.cfg.period_length, "Iterations per sampling period")
      ->default_val(flags.cfg.period_length);
  cmd->add_option("--sp", flags.cfg.select_fraction, "Archive fraction kept as parents")
      ->default_val(flags.cfg.select_fraction);
  cmd->add_option("--cp", flags.cfg.crossover_prob, "Crossover probability")
      ->default_val(flags.cfg.crossover_prob);
  cmd->add_option("--mp", flags.cfg.mutation_prob, "Mutation probability")
      ->default_val(flags.cfg.mutation_prob);
  cmd->add_option("--eta-c", flags.cfg.sbx_index, "SBX distribution index")
      ->default_val(flags.cfg.sbx_index);
  cmd->add_option("--eta-m", flags.cfg.pm_index, "Mutation distribution index")
      ->default_val(flags.cfg.pm_index);
  cmd->add_option("--mu", flags.cfg.mu, "Cosine term weight (cosmos)")
      ->default_val(flags.cfg.mu);
  cmd->add_option("--epsilon", flags.cfg.ideal_epsilon, "Ideal point shift")
      ->default_val(flags.cfg.ideal_epsilon);
  cmd->add_option("--width", flags.cfg.hidden_width, "Hidden layer width of the solution network")
      ->default_val(flags.cfg.hidden_width);
  cmd->add_option("--hv-stride", flags.cfg.hv_stride,
                  "Iterations between hypervolume probes (0 = off)")
      ->default_val(flags.cfg.hv_stride);
  cmd->add_option("--out", flags.cfg.out_dir, "Output directory")
      ->default_val(flags.cfg.out_dir);
  cmd->set_config("--config", "", "Flat key=value config file; flags override it");
}

psl::RunConfig resolve(const CommonFlags& flags) {
  psl::RunConfig cfg = flags.cfg;
  cfg.scalarization = psl::parse_scalarization(flags.scalarization);
  cfg.sampler = psl::parse_sampler(flags.sampler);
  return cfg;
}

// --------------------------------------------------------------------------
// Plot helpers
// --------------------------------------------------------------------------

struct Series {
  std::string name;
  std::string color;
  std::vector<std::pair<double, double>> pts;
};

void scatter_svg(std::ostream& os, const std::string& title, const std::string& xlabel,
                 const std::string& ylabel, const std::vector<Series>& series) {
  const double w = 640, h = 480, ml = 60, mr = 20, mt = 40, mb = 50;
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const Series& s : series) {
    for (const auto& [x, y] : s.pts) {
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  if (xmin > xmax) {
    xmin = 0.0;
    xmax = 1.0;
    ymin = 0.0;
    ymax = 1.0;
  }
  const double xpad = (xmax - xmin) * 0.05 + 1e-12, ypad = (ymax - ymin) * 0.05 + 1e-12;
  xmin -= xpad;
  xmax += xpad;
  ymin -= ypad;
  ymax += ypad;
  const auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (w - ml - mr); };
  const auto py = [&](double y) { return h - mb - (y - ymin) / (ymax - ymin) * (h - mt - mb); };
  char buf[64];

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
     << "\" viewBox=\"0 0 " << w << " " << h << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << w / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << title
     << "</text>\n";
  os << "<line x1=\"" << ml << "\" y1=\"" << h - mb << "\" x2=\"" << w - mr << "\" y2=\""
     << h - mb << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << h - mb
     << "\" stroke=\"black\"/>\n";
  std::snprintf(buf, sizeof(buf), "%.4g", xmin);
  os << "<text x=\"" << ml << "\" y=\"" << h - mb + 18 << "\" font-size=\"11\">" << buf
     << "</text>\n";
  std::snprintf(buf, sizeof(buf), "%.4g", xmax);
  os << "<text x=\"" << w - mr << "\" y=\"" << h - mb + 18
     << "\" text-anchor=\"end\" font-size=\"11\">" << buf << "</text>\n";
  std::snprintf(buf, sizeof(buf), "%.4g", ymin);
  os << "<text x=\"" << ml - 6 << "\" y=\"" << h - mb << "\" text-anchor=\"end\" font-size=\"11\">"
     << buf << "</text>\n";
  std::snprintf(buf, sizeof(buf), "%.4g", ymax);
  os << "<text x=\"" << ml - 6 << "\" y=\"" << mt + 4 << "\" text-anchor=\"end\" font-size=\"11\">"
     << buf << "</text>\n";
  os << "<text x=\"" << (ml + w - mr) / 2 << "\" y=\"" << h - 12
     << "\" text-anchor=\"middle\" font-size=\"13\">" << xlabel << "</text>\n";
  os << "<text x=\"16\" y=\"" << (mt + h - mb) / 2
     << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 "
     << (mt + h - mb) / 2 << ")\">" << ylabel << "</text>\n";

  double ly = mt + 8;
  for (const Series& s : series) {
    for (const auto& [x, y] : s.pts) {
      os << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"2\" fill=\"" << s.color
         << "\" fill-opacity=\"0.6\"/>\n";
    }
    os << "<rect x=\"" << w - mr - 130 << "\" y=\"" << ly - 8 << "\" width=\"9\" height=\"9\" fill=\""
       << s.color << "\"/>\n";
    os << "<text x=\"" << w - mr - 117 << "\" y=\"" << ly << "\" font-size=\"11\">" << s.name
       << "</text>\n";
    ly += 16;
  }
  os << "</svg>\n";
}

struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::size_t col(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    throw psl::config_error("column '" + name + "' not found");
  }
};

Csv read_csv(const fs::path& path) {
  std::ifstream is(path);
  if (!is) throw psl::config_error("cannot open " + path.string());
  Csv csv;
  std::string line;
  if (std::getline(is, line)) {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) csv.header.push_back(cell);
  }
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      row.push_back(cell.empty() ? std::numeric_limits<double>::quiet_NaN()
                                 : std::strtod(cell.c_str(), nullptr));
    }
    while (row.size() < csv.header.size()) row.push_back(std::numeric_limits<double>::quiet_NaN());
    csv.rows.push_back(std::move(row));
  }
  return csv;
}

std::map<std::string, std::string> read_config_echo(const fs::path& path) {
  std::ifstream is(path);
  if (!is) throw psl::config_error("cannot open " + path.string());
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(is, line)) {
    const auto eq = line.find('=');
    if (eq != std::string::npos) kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return kv;
}

int emit_plots(const fs::path& run_dir, fs::path out_dir) {
  const auto kv = read_config_echo(run_dir / "config.txt");
  const psl::Problem& problem = psl::problem_by_name(kv.at("problem"));
  const std::size_t m = problem.num_objectives();
  if (out_dir.empty()) out_dir = run_dir / "plots";
  fs::create_directories(out_dir);

  const Csv front = read_csv(run_dir / "approx_front.csv");
  const psl::FrontSample ref = problem.reference_front(1000);
  const std::vector<std::pair<std::size_t, std::size_t>> panels =
      m == 2 ? std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}}
             : std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {0, 2}, {1, 2}};
  for (const auto& [i, j] : panels) {
    Series truth{"reference", "#9e9e9e", {}};
    for (const psl::ObjectiveVector& p : ref.points) truth.pts.emplace_back(p[i], p[j]);
    Series learned{"model", "#1565c0", {}};
    const std::size_t ci = front.col("f" + std::to_string(i + 1));
    const std::size_t cj = front.col("f" + std::to_string(j + 1));
    for (const auto& row : front.rows) learned.pts.emplace_back(row[ci], row[cj]);
    const std::string stem =
        "front_f" + std::to_string(i + 1) + "f" + std::to_string(j + 1) + ".svg";
    std::ofstream os(out_dir / stem);
    scatter_svg(os, kv.at("problem") + " front", "f" + std::to_string(i + 1),
                "f" + std::to_string(j + 1), {truth, learned});
  }

  const fs::path pref_path = run_dir / "preferences.csv";
  if (fs::exists(pref_path)) {
    const Csv prefs = read_csv(pref_path);
    Series uniform{"uniform draw", "#9e9e9e", {}};
    Series evolved{"evolved draw", "#e65100", {}};
    const std::size_t cfrom = prefs.col("from_population");
    if (m == 2) {
      const std::size_t citer = prefs.col("iteration");
      const std::size_t cl1 = prefs.col("lambda1");
      for (const auto& row : prefs.rows) {
        (row[cfrom] > 0.5 ? evolved : uniform).pts.emplace_back(row[citer], row[cl1]);
      }
      std::ofstream os(out_dir / "preferences.svg");
      scatter_svg(os, "sampled preferences", "iteration", "lambda1", {uniform, evolved});
    } else {
      const std::size_t cl2 = prefs.col("lambda2");
      const std::size_t cl3 = prefs.col("lambda3");
      for (const auto& row : prefs.rows) {
        // simplex -> plane: x = l2 + l3/2, y = sqrt(3)/2 * l3
        const double x = row[cl2] + 0.5 * row[cl3];
        const double y = 0.8660254037844386 * row[cl3];
        (row[cfrom] > 0.5 ? evolved : uniform).pts.emplace_back(x, y);
      }
      std::ofstream os(out_dir / "preferences.svg");
      scatter_svg(os, "sampled preferences (simplex)", "", "", {uniform, evolved});
    }
  }
  std::cout << "plots written to " << out_dir.string() << "\n";
  return psl::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pareto set learning with evolutionary preference sampling"};
  app.require_subcommand(1);

  CommonFlags run_flags;
  CLI::App* run_cmd = app.add_subcommand("run", "Train one model and write its artifacts");
  add_common_options(run_cmd, run_flags);
  run_cmd->add_option("--sampler", run_flags.sampler, "uniform|eps")
      ->default_val(run_flags.sampler);
  bool log_prefs = false;
  run_cmd->add_flag("--log-preferences", log_prefs, "Record every sampled preference");

  CommonFlags matrix_flags;
  matrix_flags.cfg.out_dir = "matrix";
  std::vector<std::string> mat_problems = {"zdt3", "dtlz5", "dtlz7", "re21",
                                           "re33", "re36", "re37"};
  std::vector<std::string> mat_scals = {"ls", "tch", "mtch", "cosmos"};
  std::vector<std::string> mat_samplers = {"uniform", "eps"};
  std::vector<std::uint64_t> mat_seeds = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  std::size_t jobs = 1;
  CLI::App* matrix_cmd =
      app.add_subcommand("matrix", "Run the problem x scalarization x sampler x seed grid");
  add_common_options(matrix_cmd, matrix_flags);
  matrix_cmd->add_option("--problems", mat_problems, "Problems to include")
      ->delimiter(',')
      ->default_val(mat_problems);
  matrix_cmd->add_option("--scalarizations", mat_scals, "Scalarizations to include")
      ->delimiter(',')
      ->default_val(mat_scals);
  matrix_cmd->add_option("--samplers", mat_samplers, "Samplers to include")
      ->delimiter(',')
      ->default_val(mat_samplers);
  matrix_cmd->add_option("--seeds", mat_seeds, "Seeds to include")
      ->delimiter(',')
      ->default_val(mat_seeds);
  matrix_cmd->add_option("--jobs", jobs, "Worker threads")->default_val(jobs);

  CommonFlags sweep_flags;
  sweep_flags.cfg.out_dir = "sweep";
  std::string sweep_kind = "sp";
  std::vector<double> sweep_values;
  std::vector<std::uint64_t> sweep_seeds = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Sensitivity sweep for the eps sampler");
  add_common_options(sweep_cmd, sweep_flags);
  sweep_cmd->add_option("--kind", sweep_kind, "sp (select fraction) or cpmp (cp x mp grid)")
      ->default_val(sweep_kind);
  sweep_cmd->add_option("--values", sweep_values, "Grid values")->delimiter(',');
  sweep_cmd->add_option("--seeds", sweep_seeds, "Seeds to average over")
      ->delimiter(',')
      ->default_val(sweep_seeds);

  std::string front_problem = "zdt3";
  std::size_t front_n = 1000;
  std::string front_out = "-";
  CLI::App* front_cmd = app.add_subcommand("front", "Export a problem's reference front as CSV");
  front_cmd->add_option("--problem", front_problem, "Benchmark problem name")
      ->default_val(front_problem);
  front_cmd->add_option("--n", front_n, "Number of front points")->default_val(front_n);
  front_cmd->add_option("--out", front_out, "Output file, - for stdout")->default_val(front_out);

  std::string plots_run_dir;
  std::string plots_out;
  CLI::App* plots_cmd = app.add_subcommand("plots", "Render SVG plots from a run directory");
  plots_cmd->add_option("--run-dir", plots_run_dir, "Run directory with artifacts")->required();
  plots_cmd->add_option("--out-dir", plots_out, "Plot output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return psl::kExitConfigError;
  }

  try {
    if (run_cmd->parsed()) {
      run_flags.cfg.log_preferences = log_prefs;
      std::string dir;
      const int code = psl::run_single(resolve(run_flags), &dir);
      std::cout << "run artifacts in " << dir << "\n";
      if (code != psl::kExitOk) std::cerr << "run failed with a numeric error\n";
      return code;
    }
    if (matrix_cmd->parsed()) {
      psl::MatrixConfig mc;
      mc.base = resolve(matrix_flags);
      mc.problems = mat_problems;
      mc.scalarizations.clear();
      for (const std::string& s : mat_scals) {
        mc.scalarizations.push_back(psl::parse_scalarization(s));
      }
      mc.samplers.clear();
      for (const std::string& s : mat_samplers) mc.samplers.push_back(psl::parse_sampler(s));
      mc.seeds = mat_seeds;
      mc.jobs = jobs;
      const psl::MatrixResult mr = psl::run_matrix(mc);
      const fs::path out(mc.base.out_dir);
      fs::create_directories(out);
      {
        std::ofstream os(out / "matrix.csv");
        psl::write_matrix_csv(mr, os);
      }
      {
        std::ofstream os(out / "aggregates.csv");
        psl::write_aggregates_csv(mr, os);
      }
      {
        std::ofstream os(out / "convergence.csv");
        psl::write_convergence_csv(mr, os);
      }
      std::cout << mr.rows.size() << " runs, summaries in " << out.string() << "\n";
      return mr.exit_code;
    }
    if (sweep_cmd->parsed()) {
      if (sweep_values.empty()) {
        sweep_values = sweep_kind == "sp" ? std::vector<double>{0.05, 0.1, 0.2, 0.4}
                                          : std::vector<double>{0.3, 0.6, 0.9};
      }
      const auto rows =
          psl::run_sweep(resolve(sweep_flags), sweep_kind, sweep_values, sweep_seeds);
      const fs::path out(sweep_flags.cfg.out_dir);
      fs::create_directories(out);
      std::ofstream os(out / ("sweep_" + sweep_kind + ".csv"));
      psl::write_sweep_csv(rows, os);
      std::cout << rows.size() << " sweep cells, summary in " << out.string() << "\n";
      return psl::kExitOk;
    }
    if (front_cmd->parsed()) {
      const psl::FrontSample front =
          psl::problem_by_name(front_problem).reference_front(front_n);
      if (front_out == "-") {
        psl::front_to_csv(front, std::cout);
      } else {
        std::ofstream os(front_out);
        psl::front_to_csv(front, os);
        std::cout << front.points.size() << " points (" << psl::to_string(front.source)
                  << ") written to " << front_out << "\n";
      }
      return psl::kExitOk;
    }
    if (plots_cmd->parsed()) {
      return emit_plots(plots_run_dir, plots_out);
    }
  } catch (const psl::numeric_error& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return psl::kExitNumericError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return psl::kExitConfigError;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return psl::kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return psl::kExitNumericError;
  }
  return psl::kExitOk;
}
