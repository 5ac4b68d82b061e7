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

#include "testing/test_util.h"

#include <atomic>
#include <cmath>
#include <fstream>
#include <set>

#include <Eigen/Dense>

#include "ctfaug/lexicon.h"
#include "ctfaug/util.h"

namespace ctfaug::testing {

namespace fs = std::filesystem;

ScratchDir::ScratchDir(const std::string& tag) {
  static std::atomic<int> counter{0};
  path_ = fs::temp_directory_path() /
          (tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
  fs::remove_all(path_);
  fs::create_directories(path_);
}

ScratchDir::~ScratchDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

void WriteText(const std::string& path, const std::string& text) {
  fs::create_directories(fs::path(path).parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
}

LabeledCorpus MakeCorpus(const std::vector<std::pair<std::string, int>>& docs,
                         const std::string& name) {
  LabeledCorpus corpus;
  corpus.name = name;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    corpus.documents.push_back(MakeDocument(
        "d" + std::to_string(i), docs[i].first,
        docs[i].second > 0 ? Label::kPositive : Label::kNegative));
  }
  return corpus;
}

LabeledCorpus RandomCorpus(std::mt19937_64& rng, const RandomCorpusOptions& o) {
  auto uniform = [&](std::size_t lo, std::size_t hi) {
    return lo + static_cast<std::size_t>(rng() % (hi - lo + 1));
  };
  const std::size_t n = uniform(o.min_docs, o.max_docs);
  std::vector<std::pair<std::string, int>> docs;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t len = uniform(o.min_len, o.max_len);
    std::string text;
    for (std::size_t k = 0; k < len; ++k) {
      if (k) text += ' ';
      text += "w" + std::string(1, static_cast<char>('a' + uniform(0, o.vocab - 1)));
    }
    int label = i == 0 ? 1 : i == 1 ? -1 : (rng() % 2 ? 1 : -1);
    docs.emplace_back(text, label);
  }
  return MakeCorpus(docs, "random");
}

Embedding HashEmbedder::Embed(const std::string& context) const {
  Embedding v(dim_, 0.0);
  auto tokens = Tokenize(context);
  if (tokens.empty()) tokens.push_back("<empty>");
  for (const auto& token : tokens) {
    std::mt19937_64 rng(DeriveSeed(salt_, token));
    for (auto& x : v) {
      x += static_cast<double>(rng() % 2001) / 1000.0 - 1.0;
    }
  }
  for (auto& x : v) x /= static_cast<double>(tokens.size());
  return v;
}

double ReferenceObjective(const TrainingSet& data, double l2_c,
                          const std::vector<double>& params) {
  const std::size_t d = data.num_features;
  const double n = static_cast<double>(data.rows.size());
  double loss = 0.0;
  for (std::size_t i = 0; i < data.rows.size(); ++i) {
    std::vector<double> x(d, 0.0);
    for (auto j : data.rows[i].indices) x[j] = 1.0;
    double z = params[d];
    for (std::size_t j = 0; j < d; ++j) z += x[j] * params[j];
    const double m = -data.labels[i] * z;
    loss += m > 0 ? m + std::log1p(std::exp(-m)) : std::log1p(std::exp(m));
  }
  double norm = 0.0;
  for (std::size_t j = 0; j < d; ++j) norm += params[j] * params[j];
  return loss / n + norm / (2.0 * l2_c * n);
}

NewtonSolution NewtonOracle(const TrainingSet& data, double l2_c) {
  const int d = static_cast<int>(data.num_features);
  const int n = static_cast<int>(data.rows.size());
  Eigen::MatrixXd X = Eigen::MatrixXd::Zero(n, d + 1);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) {
    for (auto j : data.rows[i].indices) X(i, j) = 1.0;
    X(i, d) = 1.0;
    y(i) = data.labels[i];
  }
  Eigen::VectorXd theta = Eigen::VectorXd::Zero(d + 1);
  Eigen::VectorXd reg = Eigen::VectorXd::Constant(d + 1, 1.0 / (l2_c * n));
  reg(d) = 0.0;

  NewtonSolution out;
  for (int it = 0; it < 100; ++it) {
    Eigen::VectorXd z = X * theta;
    Eigen::VectorXd grad = reg.cwiseProduct(theta);
    Eigen::VectorXd w(n);
    for (int i = 0; i < n; ++i) {
      const double s = 1.0 / (1.0 + std::exp(y(i) * z(i)));  // sigma(-y z)
      grad += (-y(i) * s / n) * X.row(i).transpose();
      w(i) = s * (1.0 - s) / n;
    }
    out.gradient_norm = grad.cwiseAbs().maxCoeff();
    out.iterations = it;
    if (out.gradient_norm < 1e-12) break;
    Eigen::MatrixXd H = X.transpose() * w.asDiagonal() * X;
    H.diagonal() += reg;
    Eigen::VectorXd step = H.ldlt().solve(grad);
    // damped step keeps the oracle monotone on badly conditioned instances
    double t = 1.0;
    auto value = [&](const Eigen::VectorXd& p) {
      std::vector<double> v(p.data(), p.data() + p.size());
      return ReferenceObjective(data, l2_c, v);
    };
    const double f0 = value(theta);
    while (t > 1e-10 && value(theta - t * step) > f0 - 1e-4 * t * grad.dot(step)) t *= 0.5;
    theta -= t * step;
  }
  out.weights.assign(theta.data(), theta.data() + d);
  out.intercept = theta(d);
  return out;
}

std::optional<Match> BruteForceMatch(const std::string& term,
                                     const LabeledCorpus& corpus,
                                     const TopTermSet& top_terms,
                                     const ContextEmbedder& embedder) {
  std::optional<Match> best;
  for (const auto& d : corpus.documents) {
    if (!d.Contains(term)) continue;
    const Embedding u = embedder.Embed(ContextOf(d, term));
    for (const auto& other : corpus.documents) {
      if (other.label == d.label || other.Contains(term)) continue;
      for (const auto& [t_star, coef] : top_terms.entries) {
        if (t_star == term || !other.Contains(t_star)) continue;
        Match m{term, d.id, other.id, t_star,
                Cosine(u, embedder.Embed(ContextOf(other, t_star)))};
        const bool better =
            !best || m.score > best->score ||
            (m.score == best->score &&
             std::tie(m.doc_id, m.matched_doc_id, m.matched_term) <
                 std::tie(best->doc_id, best->matched_doc_id, best->matched_term));
        if (better) best = m;
      }
    }
  }
  return best;
}

// Small sentiment dataset where "film" leans positive and "movie" negative.
Dataset SmallDataset() {
  const char* pos[] = {"great", "fun", "lovely", "superb", "witty", "moving"};
  const char* neg[] = {"awful", "dull", "bleak", "inept", "stale", "tedious"};
  const char* nouns[] = {"plot", "cast", "score", "ending"};
  std::mt19937_64 rng(1);
  auto make = [&](const std::string& prefix, int n) {
    LabeledCorpus c;
    c.name = prefix;
    for (int i = 0; i < n; ++i) {
      const bool positive = i % 2 == 0;
      const std::string adj = positive ? pos[rng() % 6] : neg[rng() % 6];
      const std::string noun = nouns[rng() % 4];
      const bool lean = rng() % 20 < 19;
      const std::string spur = (positive == lean) ? "film" : "movie";
      c.documents.push_back(MakeDocument(prefix + std::to_string(i),
                                         "the " + noun + " of this " + spur + " was " + adj,
                                         positive ? Label::kPositive : Label::kNegative));
    }
    return c;
  };
  Dataset ds;
  ds.name = "small";
  ds.coef_threshold = 0.5;
  ds.train = make("tr", 60);
  ds.test = make("te", 20);
  LabeledCorpus ctf;
  ctf.split = Split::kTest;
  for (const auto& d : ds.test.documents) {
    std::string text = d.raw_text;
    for (std::size_t k = 0; k < 6; ++k) {
      const std::string a = pos[k], b = neg[k];
      auto swap = [&](const std::string& from, const std::string& to) {
        auto p = text.rfind(from);
        if (p != std::string::npos && p + from.size() == text.size()) {
          text.replace(p, from.size(), to);
          return true;
        }
        return false;
      };
      if (swap(a, b) || swap(b, a)) break;
    }
    ctf.documents.push_back(MakeDocument(d.id + "~h", text, Flip(d.label),
                                         Origin::kHumanCounterfactual, d.id));
  }
  ds.ctf_test = ctf;
  std::vector<std::string> adjectives(std::begin(pos), std::end(pos));
  adjectives.insert(adjectives.end(), std::begin(neg), std::end(neg));
  ds.annotated_causal = adjectives;
  std::string lexicon;
  for (std::size_t k = 0; k < 6; ++k) {
    lexicon += std::string(pos[k]) + "\tant\t" + neg[k] + "\n";
  }
  ds.lexicon = ParseLexicon(lexicon);
  ds.embedder = std::make_shared<HashEmbedder>(8);
  return ds;
}

}  // namespace ctfaug::testing
