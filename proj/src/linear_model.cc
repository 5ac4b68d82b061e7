// Copyright 2026 The ctfaug Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ctfaug/linear_model.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

#include "ctfaug/status.h"
#include "json.hpp"

namespace ctfaug {

namespace {

// log(1 + exp(t)) without overflow.
double Softplus(double t) {
  return t > 0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t));
}

double Dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double InfNorm(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

struct Correction {
  std::vector<double> s;
  std::vector<double> y;
  double rho;
};

// Two-loop recursion: returns -H * grad.
std::vector<double> LbfgsDirection(const std::deque<Correction>& memory,
                                   const std::vector<double>& grad) {
  std::vector<double> q = grad;
  std::vector<double> alpha(memory.size());
  for (std::size_t k = memory.size(); k-- > 0;) {
    const auto& c = memory[k];
    alpha[k] = c.rho * Dot(c.s, q);
    for (std::size_t i = 0; i < q.size(); ++i) q[i] -= alpha[k] * c.y[i];
  }
  if (!memory.empty()) {
    const auto& last = memory.back();
    const double gamma = Dot(last.s, last.y) / Dot(last.y, last.y);
    for (double& v : q) v *= gamma;
  }
  for (std::size_t k = 0; k < memory.size(); ++k) {
    const auto& c = memory[k];
    const double beta = c.rho * Dot(c.y, q);
    for (std::size_t i = 0; i < q.size(); ++i) q[i] += c.s[i] * (alpha[k] - beta);
  }
  for (double& v : q) v = -v;
  return q;
}

}  // namespace

double LinearModel::Coefficient(const Vocabulary& vocab,
                                std::string_view term) const {
  auto index = vocab.IndexOf(term);
  if (!index || *index >= coefficients.size()) return 0.0;
  return coefficients[*index];
}

LinearModel LinearModel::Negated() const {
  LinearModel out = *this;
  for (double& c : out.coefficients) c = -c;
  out.intercept = -intercept;
  return out;
}

TrainingSet MakeTrainingSet(const LabeledCorpus& corpus,
                            const Vocabulary& vocab) {
  TrainingSet data;
  data.num_features = vocab.size();
  data.rows.reserve(corpus.size());
  data.labels.reserve(corpus.size());
  for (const auto& doc : corpus.documents) {
    data.rows.push_back(Vectorize(doc, vocab));
    data.labels.push_back(ToInt(doc.label));
  }
  return data;
}

LogisticObjective::LogisticObjective(const TrainingSet& data, double l2_c)
    : data_(data), l2_c_(l2_c) {
  if (!(l2_c > 0.0)) throw InvalidArgument("l2_c must be positive");
  if (data.rows.empty()) throw InvalidArgument("empty training set");
}

double LogisticObjective::Value(std::span<const double> params) const {
  const std::size_t v = data_.num_features;
  const double n = static_cast<double>(data_.rows.size());
  const double b = params[v];
  double loss = 0.0;
  for (std::size_t i = 0; i < data_.rows.size(); ++i) {
    double z = b;
    for (auto j : data_.rows[i].indices) z += params[j];
    loss += Softplus(-data_.labels[i] * z);
  }
  return loss / n + Dot(params.first(v), params.first(v)) / (2.0 * l2_c_ * n);
}

double LogisticObjective::ValueAndGradient(std::span<const double> params,
                                           std::span<double> grad) const {
  const std::size_t v = data_.num_features;
  const double n = static_cast<double>(data_.rows.size());
  const double b = params[v];
  std::fill(grad.begin(), grad.end(), 0.0);
  double loss = 0.0;
  for (std::size_t i = 0; i < data_.rows.size(); ++i) {
    const auto& row = data_.rows[i].indices;
    const double y = data_.labels[i];
    double z = b;
    for (auto j : row) z += params[j];
    loss += Softplus(-y * z);
    // d/dz softplus(-y z) = -y * sigmoid(-y z)
    const double g = -y * Sigmoid(-y * z) / n;
    for (auto j : row) grad[j] += g;
    grad[v] += g;
  }
  const double scale = 1.0 / (l2_c_ * n);
  for (std::size_t j = 0; j < v; ++j) grad[j] += params[j] * scale;
  return loss / n + Dot(params.first(v), params.first(v)) * scale / 2.0;
}

FitResult Fit(const TrainingSet& data, const FitOptions& options) {
  if (!(options.l2_c > 0.0)) throw InvalidArgument("l2_c must be positive");
  const bool has_pos = std::count(data.labels.begin(), data.labels.end(), 1) > 0;
  const bool has_neg = std::count(data.labels.begin(), data.labels.end(), -1) > 0;
  if (!has_pos || !has_neg) {
    throw InvalidArgument("training data must contain both labels");
  }
  LogisticObjective objective(data, options.l2_c);
  const std::size_t dim = objective.dimension();

  std::vector<double> x(dim, 0.0), grad(dim), x_new(dim), grad_new(dim);
  double f = objective.ValueAndGradient(x, grad);
  std::deque<Correction> memory;

  FitResult result;
  if (options.record_trace) result.objective_trace.push_back(f);
  constexpr double kArmijo = 1e-4;
  int iter = 0;
  for (; iter < options.max_iterations; ++iter) {
    if (InfNorm(grad) < options.gradient_tolerance) {
      result.converged = true;
      break;
    }
    std::vector<double> dir = LbfgsDirection(memory, grad);
    double slope = Dot(dir, grad);
    if (!(slope < 0.0)) {
      memory.clear();
      dir = grad;
      for (double& d : dir) d = -d;
      slope = Dot(dir, grad);
    }
    double step = memory.empty() ? 1.0 / std::max(1.0, InfNorm(grad)) : 1.0;
    bool accepted = false;
    double f_new = f;
    for (int bt = 0; bt < 60; ++bt) {
      for (std::size_t i = 0; i < dim; ++i) x_new[i] = x[i] + step * dir[i];
      f_new = objective.ValueAndGradient(x_new, grad_new);
      if (std::isfinite(f_new) && f_new <= f + kArmijo * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      if (memory.empty()) break;  // no descent possible at machine precision
      memory.clear();
      continue;
    }
    Correction c;
    c.s.resize(dim);
    c.y.resize(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      c.s[i] = x_new[i] - x[i];
      c.y[i] = grad_new[i] - grad[i];
    }
    const double sy = Dot(c.s, c.y);
    if (sy > 1e-16) {
      c.rho = 1.0 / sy;
      memory.push_back(std::move(c));
      if (static_cast<int>(memory.size()) > options.history) memory.pop_front();
    }
    x.swap(x_new);
    grad.swap(grad_new);
    f = f_new;
    if (options.record_trace) result.objective_trace.push_back(f);
  }
  if (!result.converged && InfNorm(grad) < options.gradient_tolerance) {
    result.converged = true;
  }

  result.iterations = iter;
  result.gradient_norm = InfNorm(grad);
  result.model.coefficients.assign(x.begin(), x.begin() + data.num_features);
  result.model.intercept = x[data.num_features];
  result.model.l2_c = options.l2_c;
  result.model.seed = options.seed;
  return result;
}

FitResult Fit(const LabeledCorpus& corpus, const Vocabulary& vocab,
              const FitOptions& options) {
  if (corpus.empty()) throw InvalidArgument("cannot fit on an empty corpus");
  corpus.CheckTrainable();
  FitResult result = Fit(MakeTrainingSet(corpus, vocab), options);
  result.model.trained_on = corpus.name;
  result.model.vocab_hash = vocab.Hash();
  return result;
}

double Sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

Prediction Predict(const LinearModel& model, const FeatureVector& x) {
  double z = model.intercept;
  for (auto j : x.indices) z += model.coefficients.at(j);
  const double p = Sigmoid(z);
  return {p >= 0.5 ? Label::kPositive : Label::kNegative, p};
}

Prediction Predict(const LinearModel& model, const Document& doc,
                   const Vocabulary& vocab) {
  return Predict(model, Vectorize(doc, vocab));
}

double Accuracy(const LinearModel& model, const LabeledCorpus& corpus,
                const Vocabulary& vocab) {
  if (corpus.empty()) throw InvalidArgument("accuracy of an empty corpus");
  std::size_t correct = 0;
  for (const auto& doc : corpus.documents) {
    if (Predict(model, doc, vocab).label == doc.label) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(corpus.size());
}

bool TopTermSet::Contains(std::string_view term) const {
  return std::any_of(entries.begin(), entries.end(),
                     [&](const auto& e) { return e.first == term; });
}

TopTermSet TopTerms(const LinearModel& model, const Vocabulary& vocab,
                    double threshold) {
  if (!(threshold > 0.0)) throw InvalidArgument("top-term threshold must be > 0");
  TopTermSet out;
  out.threshold = threshold;
  for (std::uint32_t i = 0; i < model.coefficients.size() && i < vocab.size(); ++i) {
    if (std::abs(model.coefficients[i]) >= threshold) {
      out.entries.emplace_back(vocab.Term(i), model.coefficients[i]);
    }
  }
  std::sort(out.entries.begin(), out.entries.end(),
            [](const auto& a, const auto& b) {
              const double ma = std::abs(a.second), mb = std::abs(b.second);
              if (ma != mb) return ma > mb;
              return a.first < b.first;
            });
  return out;
}

std::string ModelToJson(const LinearModel& model, const Vocabulary& vocab) {
  nlohmann::ordered_json obj;
  obj["vocab_hash"] = vocab.Hash();
  obj["intercept"] = model.intercept;
  auto coefs = nlohmann::ordered_json::array();
  for (std::uint32_t i = 0; i < vocab.size(); ++i) {
    coefs.push_back({vocab.Term(i), model.coefficients.at(i)});
  }
  obj["coefficients"] = std::move(coefs);
  obj["l2_c"] = model.l2_c;
  obj["seed"] = model.seed;
  obj["trained_on"] = model.trained_on;
  return obj.dump(1) + "\n";
}

LinearModel ModelFromJson(std::string_view text, Vocabulary* vocab) {
  nlohmann::json obj;
  try {
    obj = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw IoError(std::string("invalid model JSON: ") + e.what());
  }
  std::vector<std::pair<std::string, double>> pairs;
  for (const auto& entry : obj.at("coefficients")) {
    pairs.emplace_back(entry.at(0).get<std::string>(), entry.at(1).get<double>());
  }
  std::vector<std::string> terms;
  for (auto& [t, c] : pairs) terms.push_back(t);
  Vocabulary v(terms);
  LinearModel model;
  model.coefficients.assign(v.size(), 0.0);
  for (auto& [t, c] : pairs) model.coefficients[*v.IndexOf(t)] = c;
  model.intercept = obj.at("intercept").get<double>();
  model.l2_c = obj.value("l2_c", 1.0);
  model.seed = obj.value("seed", std::uint64_t{0});
  model.trained_on = obj.value("trained_on", std::string());
  model.vocab_hash = obj.value("vocab_hash", std::string());
  if (!model.vocab_hash.empty() && model.vocab_hash != v.Hash()) {
    throw IoError("model vocab_hash does not match its coefficient terms");
  }
  model.vocab_hash = v.Hash();
  if (vocab) *vocab = std::move(v);
  return model;
}

}  // namespace ctfaug
