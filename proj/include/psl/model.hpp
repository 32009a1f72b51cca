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
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "psl/core.hpp"
#include "psl/problems.hpp"
#include "psl/scalarize.hpp"

namespace psl {

struct OptimizerConfig {
  double learning_rate = 0.001;
  std::size_t batch_size = 8;
  std::size_t max_iterations = 1000;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double adam_epsilon = 1e-8;
};

struct TrainStepResult {
  double loss = 0.0;
  std::vector<ObjectiveVector> objectives;  // per batch element, f(phi(lambda))
};

/// Preference-conditioned solution network: a fully connected map from the
/// weight simplex into the decision box. Two ReLU hidden layers, sigmoid
/// output squashed onto [lb, ub] per coordinate.
class ParetoSetModel {
 public:
  /// Weights start uniform in +-1/sqrt(fan_in) (drawn from rng, layer by
  /// layer), all biases at zero.
  ParetoSetModel(ProblemSpec spec, RngStream& rng, std::size_t hidden_width = 256)
      : spec_(std::move(spec)), hidden_(hidden_width) {
    if (spec_.m < 2 || spec_.d < 1 || hidden_ < 1) {
      throw config_error("ParetoSetModel: bad layer sizes");
    }
    w1_.assign(hidden_ * spec_.m, 0.0);
    b1_.assign(hidden_, 0.0);
    w2_.assign(hidden_ * hidden_, 0.0);
    b2_.assign(hidden_, 0.0);
    w3_.assign(spec_.d * hidden_, 0.0);
    b3_.assign(spec_.d, 0.0);
    const double r1 = 1.0 / std::sqrt(static_cast<double>(spec_.m));
    for (double& w : w1_) w = rng.uniform(-r1, r1);
    const double r2 = 1.0 / std::sqrt(static_cast<double>(hidden_));
    for (double& w : w2_) w = rng.uniform(-r2, r2);
    for (double& w : w3_) w = rng.uniform(-r2, r2);
    reset_optimizer();
  }

  const ProblemSpec& spec() const noexcept { return spec_; }
  std::size_t hidden_width() const noexcept { return hidden_; }

  std::vector<std::size_t> layer_sizes() const {
    return {spec_.m, hidden_, hidden_, spec_.d};
  }

  std::size_t num_parameters() const noexcept {
    return w1_.size() + b1_.size() + w2_.size() + b2_.size() + w3_.size() + b3_.size();
  }

  DecisionVector forward_one(const PreferenceVector& lambda) const {
    Cache c;
    forward_cached(lambda, c);
    return DecisionVector(std::move(c.x));
  }

  std::vector<DecisionVector> forward(const std::vector<PreferenceVector>& batch) const {
    std::vector<DecisionVector> out;
    out.reserve(batch.size());
    for (const PreferenceVector& lambda : batch) out.push_back(forward_one(lambda));
    return out;
  }

  /// Mean scalarized loss and its analytic gradient over a batch, at the
  /// current parameters and a fixed ideal point. Pure; no state is touched.
  struct BatchEval {
    double loss = 0.0;
    std::vector<double> grad;                 // flat, parameters() order
    std::vector<ObjectiveVector> objectives;  // per batch element
  };

  BatchEval batch_eval(const std::vector<PreferenceVector>& batch, const Problem& problem,
                       ScalarizationKind kind, double mu, const IdealPoint& ideal) const {
    if (batch.empty()) throw degenerate_input_error("batch_eval: empty batch");
    check_problem(problem);
    BatchEval ev;
    ev.grad.assign(num_parameters(), 0.0);
    ev.objectives.reserve(batch.size());

    std::vector<double> grad_one(num_parameters());
    for (const PreferenceVector& lambda : batch) {
      if (lambda.size() != spec_.m) {
        throw dimension_error("batch_eval: preference size does not match objective count");
      }
      Cache c;
      forward_cached(lambda, c);
      const ObjectiveVector f = problem.evaluate(DecisionVector(c.x));
      const ScalarGrad sg = scalarize_with_grad(kind, f, lambda, ideal, mu);
      ev.loss += sg.value;
      backward(lambda, c, problem, sg.dvalue_df, grad_one);
      for (std::size_t i = 0; i < grad_one.size(); ++i) ev.grad[i] += grad_one[i];
      ev.objectives.push_back(f);
    }
    const double inv = 1.0 / static_cast<double>(batch.size());
    ev.loss *= inv;
    for (double& g : ev.grad) g *= inv;
    if (!std::isfinite(ev.loss)) throw numeric_error("batch_eval: non-finite loss");
    return ev;
  }

  /// One optimization step. Evaluates each batch element exactly once,
  /// folds the objective values into the ideal point, then applies an Adam
  /// update of the mean scalarized loss taken at the updated ideal.
  TrainStepResult training_step(const std::vector<PreferenceVector>& batch,
                                const Problem& problem, ScalarizationKind kind, double mu,
                                IdealPoint& ideal, const OptimizerConfig& config) {
    if (batch.empty()) throw degenerate_input_error("training_step: empty batch");
    check_problem(problem);

    std::vector<Cache> caches(batch.size());
    std::vector<ObjectiveVector> objectives;
    objectives.reserve(batch.size());
    for (std::size_t b = 0; b < batch.size(); ++b) {
      forward_cached(batch[b], caches[b]);
      objectives.push_back(problem.evaluate(DecisionVector(caches[b].x)));
    }
    ideal = update_ideal(ideal, objectives);

    double loss = 0.0;
    std::vector<double> grad(num_parameters(), 0.0);
    std::vector<double> grad_one(num_parameters());
    for (std::size_t b = 0; b < batch.size(); ++b) {
      const ScalarGrad sg = scalarize_with_grad(kind, objectives[b], batch[b], ideal, mu);
      loss += sg.value;
      backward(batch[b], caches[b], problem, sg.dvalue_df, grad_one);
      for (std::size_t i = 0; i < grad.size(); ++i) grad[i] += grad_one[i];
    }
    const double inv = 1.0 / static_cast<double>(batch.size());
    loss *= inv;
    for (double& g : grad) g *= inv;
    if (!std::isfinite(loss)) throw numeric_error("training_step: non-finite loss");

    adam_update(grad, config);
    return TrainStepResult{loss, std::move(objectives)};
  }

  /// Flat parameter vector: w1, b1, w2, b2, w3, b3 in row-major order.
  std::vector<double> parameters() const {
    std::vector<double> p;
    p.reserve(num_parameters());
    for (const auto* v : {&w1_, &b1_, &w2_, &b2_, &w3_, &b3_}) {
      p.insert(p.end(), v->begin(), v->end());
    }
    return p;
  }

  void set_parameters(const std::vector<double>& p) {
    if (p.size() != num_parameters()) {
      throw dimension_error("set_parameters: expected " + std::to_string(num_parameters()) +
                            " values, got " + std::to_string(p.size()));
    }
    std::size_t off = 0;
    for (auto* v : {&w1_, &b1_, &w2_, &b2_, &w3_, &b3_}) {
      std::copy(p.begin() + off, p.begin() + off + v->size(), v->begin());
      off += v->size();
    }
  }

  void reset_optimizer() {
    adam_m_.assign(num_parameters(), 0.0);
    adam_v_.assign(num_parameters(), 0.0);
    adam_t_ = 0;
  }

  /// Text checkpoint: header lines, then one parameter per line at full
  /// precision (round-trips bitwise). Optimizer state is not persisted.
  void save(std::ostream& os) const {
    os << "pslearn-model 1\n";
    os << "problem " << spec_.name << "\n";
    os << "layers " << spec_.m << " " << hidden_ << " " << hidden_ << " " << spec_.d << "\n";
    char buf[40];
    for (double p : parameters()) {
      std::snprintf(buf, sizeof(buf), "%.17g", p);
      os << buf << "\n";
    }
  }

  static ParetoSetModel load(std::istream& is) {
    std::string magic;
    int version = 0;
    if (!(is >> magic >> version) || magic != "pslearn-model" || version != 1) {
      throw config_error("model load: unrecognized checkpoint header");
    }
    std::string key, name;
    if (!(is >> key >> name) || key != "problem") {
      throw config_error("model load: missing problem line");
    }
    std::size_t m = 0, h1 = 0, h2 = 0, d = 0;
    if (!(is >> key >> m >> h1 >> h2 >> d) || key != "layers" || h1 != h2) {
      throw config_error("model load: bad layers line");
    }
    const Problem& problem = problem_by_name(name);
    if (problem.num_objectives() != m || problem.dimension() != d) {
      throw config_error("model load: layer sizes disagree with problem '" + name + "'");
    }
    RngStream dummy(0);
    ParetoSetModel model(problem.spec(), dummy, h1);
    std::vector<double> p(model.num_parameters());
    for (double& v : p) {
      if (!(is >> v)) throw config_error("model load: truncated parameter list");
    }
    model.set_parameters(p);
    return model;
  }

 private:
  struct Cache {
    std::vector<double> z1, a1;  // hidden pre/post activation, layer 1
    std::vector<double> z2, a2;  // layer 2
    std::vector<double> u, s;    // output pre-activation and sigmoid
    std::vector<double> x;       // decision vector
  };

  void check_problem(const Problem& problem) const {
    if (problem.name() != spec_.name || problem.num_objectives() != spec_.m ||
        problem.dimension() != spec_.d) {
      throw config_error("model is bound to problem '" + spec_.name + "', got '" +
                         problem.name() + "'");
    }
  }

  // Clamped to the open unit interval so the box mapping below can never land
  // exactly on a bound face, however large the pre-activation gets.
  static double sigmoid(double v) {
    const double s = 1.0 / (1.0 + std::exp(-v));
    return std::min(std::max(s, 1e-12), 1.0 - 1e-12);
  }

  void forward_cached(const PreferenceVector& lambda, Cache& c) const {
    if (lambda.size() != spec_.m) {
      throw dimension_error("forward: preference size does not match objective count");
    }
    const std::size_t h = hidden_, m = spec_.m, d = spec_.d;
    c.z1.assign(h, 0.0);
    c.a1.assign(h, 0.0);
    for (std::size_t i = 0; i < h; ++i) {
      double acc = b1_[i];
      for (std::size_t j = 0; j < m; ++j) acc += w1_[i * m + j] * lambda[j];
      c.z1[i] = acc;
      c.a1[i] = acc > 0.0 ? acc : 0.0;
    }
    c.z2.assign(h, 0.0);
    c.a2.assign(h, 0.0);
    for (std::size_t i = 0; i < h; ++i) {
      double acc = b2_[i];
      for (std::size_t j = 0; j < h; ++j) acc += w2_[i * h + j] * c.a1[j];
      c.z2[i] = acc;
      c.a2[i] = acc > 0.0 ? acc : 0.0;
    }
    c.u.assign(d, 0.0);
    c.s.assign(d, 0.0);
    c.x.assign(d, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
      double acc = b3_[i];
      for (std::size_t j = 0; j < h; ++j) acc += w3_[i * h + j] * c.a2[j];
      c.u[i] = acc;
      const double s = sigmoid(acc);
      c.s[i] = s;
      c.x[i] = spec_.lower_bounds[i] + (spec_.upper_bounds[i] - spec_.lower_bounds[i]) * s;
      if (!std::isfinite(c.x[i])) throw numeric_error("forward: non-finite output");
    }
  }

  /// Chain rule from dS/df through the problem Jacobian and the network,
  /// writing the per-sample parameter gradient into `grad` (flat layout).
  void backward(const PreferenceVector& lambda, const Cache& c, const Problem& problem,
                const std::vector<double>& ds_df, std::vector<double>& grad) const {
    const std::size_t h = hidden_, m = spec_.m, d = spec_.d;
    JacobianMatrix jac;
    try {
      jac = problem.jacobian(DecisionVector(c.x));
    } catch (const bounds_error&) {
      // A saturated sigmoid has pinned an output to the box face; the run is
      // numerically degenerate rather than misconfigured.
      throw numeric_error("backward: output saturated onto the decision box face");
    }

    std::vector<double> delta_u(d, 0.0);
    for (std::size_t j = 0; j < d; ++j) {
      double dx = 0.0;
      for (std::size_t i = 0; i < m; ++i) dx += ds_df[i] * jac[i][j];
      const double span = spec_.upper_bounds[j] - spec_.lower_bounds[j];
      delta_u[j] = dx * span * c.s[j] * (1.0 - c.s[j]);
    }

    std::vector<double> delta_a2(h, 0.0);
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t k = 0; k < h; ++k) delta_a2[k] += delta_u[j] * w3_[j * h + k];
    }
    std::vector<double> delta_z2(h);
    for (std::size_t k = 0; k < h; ++k) delta_z2[k] = c.z2[k] > 0.0 ? delta_a2[k] : 0.0;

    std::vector<double> delta_a1(h, 0.0);
    for (std::size_t i = 0; i < h; ++i) {
      for (std::size_t j = 0; j < h; ++j) delta_a1[j] += delta_z2[i] * w2_[i * h + j];
    }
    std::vector<double> delta_z1(h);
    for (std::size_t k = 0; k < h; ++k) delta_z1[k] = c.z1[k] > 0.0 ? delta_a1[k] : 0.0;

    std::size_t off = 0;
    for (std::size_t i = 0; i < h; ++i) {
      for (std::size_t j = 0; j < m; ++j) grad[off++] = delta_z1[i] * lambda[j];
    }
    for (std::size_t i = 0; i < h; ++i) grad[off++] = delta_z1[i];
    for (std::size_t i = 0; i < h; ++i) {
      for (std::size_t j = 0; j < h; ++j) grad[off++] = delta_z2[i] * c.a1[j];
    }
    for (std::size_t i = 0; i < h; ++i) grad[off++] = delta_z2[i];
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < h; ++j) grad[off++] = delta_u[i] * c.a2[j];
    }
    for (std::size_t i = 0; i < d; ++i) grad[off++] = delta_u[i];
  }

  void adam_update(const std::vector<double>& grad, const OptimizerConfig& config) {
    ++adam_t_;
    const double bc1 = 1.0 - std::pow(config.beta1, static_cast<double>(adam_t_));
    const double bc2 = 1.0 - std::pow(config.beta2, static_cast<double>(adam_t_));
    std::vector<double> p = parameters();
    for (std::size_t i = 0; i < p.size(); ++i) {
      adam_m_[i] = config.beta1 * adam_m_[i] + (1.0 - config.beta1) * grad[i];
      adam_v_[i] = config.beta2 * adam_v_[i] + (1.0 - config.beta2) * grad[i] * grad[i];
      const double mhat = adam_m_[i] / bc1;
      const double vhat = adam_v_[i] / bc2;
      p[i] -= config.learning_rate * mhat / (std::sqrt(vhat) + config.adam_epsilon);
      if (!std::isfinite(p[i])) throw numeric_error("adam_update: non-finite parameter");
    }
    set_parameters(p);
  }

  ProblemSpec spec_;
  std::size_t hidden_;
  std::vector<double> w1_, b1_, w2_, b2_, w3_, b3_;
  std::vector<double> adam_m_, adam_v_;
  std::size_t adam_t_ = 0;
};

}  // namespace psl
