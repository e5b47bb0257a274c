#include "binomials/logistic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "binomials/errors.hpp"
#include "binomials/random.hpp"

namespace binomials {

namespace {

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// log(1 + e^z) without overflow
double softplus(double z) { return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

struct Split {
  std::vector<std::size_t> train, test;
};

Split split_indices(std::size_t n, const LogisticHyperparams& hp) {
  if (!(hp.train_fraction > 0.0 && hp.train_fraction <= 1.0)) {
    throw ArgumentError("train fraction must lie in (0, 1]");
  }
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  Rng rng(hp.seed);
  portable_shuffle(idx, rng);
  auto n_train = static_cast<std::size_t>(std::llround(hp.train_fraction * static_cast<double>(n)));
  n_train = std::clamp<std::size_t>(n_train, 1, n);
  if (n_train == n && n >= 2 && hp.train_fraction < 1.0) n_train = n - 1;
  return Split{{idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n_train)},
               {idx.begin() + static_cast<std::ptrdiff_t>(n_train), idx.end()}};
}

double accuracy(const LogisticModel& m, const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                const std::vector<std::size_t>& rows) {
  if (rows.empty()) return 0.0;
  std::size_t hit = 0;
  for (const auto r : rows) hit += ((m.decision(x[r]) > 0) == (y[r] == 1)) ? 1 : 0;
  return static_cast<double>(hit) / static_cast<double>(rows.size());
}

// Trains on the split and fills the report; `rows` maps feature rows to examples.
ModelReport fit_and_report(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                           const std::vector<const OrderExample*>& rows, std::size_t n_examples,
                           const LogisticHyperparams& hp, bool standardize) {
  if (x.empty()) throw EmptyInputError("no examples with usable features");
  ModelReport rep;
  rep.coverage = static_cast<double>(x.size()) / static_cast<double>(n_examples);
  if (rep.coverage < 0.5) rep.warnings.push_back("feature coverage below 50%");
  const auto split = split_indices(x.size(), hp);
  std::vector<std::vector<double>> xs = x;
  if (standardize) {
    const std::size_t d = x.front().size();
    for (std::size_t j = 0; j < d; ++j) {
      double mean = 0, ss = 0;
      for (const auto r : split.train) mean += x[r][j];
      mean /= static_cast<double>(split.train.size());
      for (const auto r : split.train) ss += (x[r][j] - mean) * (x[r][j] - mean);
      double sd = std::sqrt(ss / static_cast<double>(split.train.size()));
      if (sd == 0) sd = 1;
      // differences are antisymmetric, so only scale (no centering) keeps score(i,j) = -score(j,i)
      for (auto& row : xs) row[j] /= sd;
    }
  }
  std::vector<std::vector<double>> xt;
  std::vector<int> yt;
  for (const auto r : split.train) {
    xt.push_back(xs[r]);
    yt.push_back(y[r]);
  }
  rep.model = train_logistic(xt, yt, hp);
  rep.train_size = split.train.size();
  rep.test_size = split.test.size();
  rep.train_accuracy = accuracy(rep.model, xs, y, split.train);
  rep.held_out_accuracy = accuracy(rep.model, xs, y, split.test);
  if (!split.test.empty()) {
    std::vector<ScoredPair> scored;
    for (const auto r : split.test) {
      const auto o = rep.model.decision(xs[r]) > 0 ? Orientation::forward : Orientation::backward;
      scored.push_back(ScoredPair{rows[r]->pair, rows[r]->counts, o});
    }
    rep.held_out_card = score(scored);
  }
  return rep;
}

}  // namespace

double LogisticModel::decision(const std::vector<double>& x) const {
  double z = bias;
  for (std::size_t i = 0; i < weights.size(); ++i) z += weights[i] * x[i];
  return z;
}

double logistic_loss_and_gradient(const LogisticModel& model, const std::vector<std::vector<double>>& x,
                                  const std::vector<int>& y, double l2, std::vector<double>& grad_w,
                                  double& grad_b) {
  const std::size_t n = x.size();
  const std::size_t d = model.weights.size();
  grad_w.assign(d, 0.0);
  grad_b = 0;
  double loss = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double z = model.decision(x[i]);
    loss += softplus(z) - (y[i] == 1 ? z : 0.0);
    const double r = sigmoid(z) - (y[i] == 1 ? 1.0 : 0.0);
    for (std::size_t j = 0; j < d; ++j) grad_w[j] += r * x[i][j];
    grad_b += r;
  }
  const double inv = 1.0 / static_cast<double>(n);
  loss *= inv;
  grad_b *= inv;
  double norm = 0;
  for (std::size_t j = 0; j < d; ++j) {
    grad_w[j] = grad_w[j] * inv + l2 * model.weights[j];
    norm += model.weights[j] * model.weights[j];
  }
  return loss + 0.5 * l2 * norm;
}

LogisticModel train_logistic(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                             const LogisticHyperparams& hp, TrainingTrace* trace) {
  if (x.empty() || x.size() != y.size()) throw EmptyInputError("logistic training needs labelled examples");
  LogisticModel m;
  m.weights.assign(x.front().size(), 0.0);
  std::vector<double> gw;
  double gb = 0;
  for (std::size_t e = 0; e < hp.epochs; ++e) {
    const double loss = logistic_loss_and_gradient(m, x, y, hp.l2, gw, gb);
    if (trace != nullptr) trace->loss.push_back(loss);
    for (std::size_t j = 0; j < gw.size(); ++j) m.weights[j] -= hp.learning_rate * gw[j];
    m.bias -= hp.learning_rate * gb;
  }
  return m;
}

std::vector<OrderExample> majority_examples(const PairTable& pairs) {
  std::vector<OrderExample> out;
  for (const auto& [key, stats] : pairs) {
    const auto t = stats.totals();
    if (t.forward == t.backward) continue;
    out.push_back(OrderExample{key, t, t.forward > t.backward ? 1 : 0});
  }
  return out;
}

ModelReport train_sweepline(const EmbeddingTable& embedding, const std::vector<OrderExample>& examples,
                            const LogisticHyperparams& hp) {
  if (examples.empty()) throw EmptyInputError("no training pairs");
  std::vector<std::vector<double>> x;
  std::vector<int> y;
  std::vector<const OrderExample*> rows;
  for (const auto& ex : examples) {
    const auto* a = embedding.find(ex.pair.first);
    const auto* b = embedding.find(ex.pair.second);
    if (a == nullptr || b == nullptr) continue;
    std::vector<double> diff(embedding.dimension());
    for (std::size_t j = 0; j < diff.size(); ++j) diff[j] = (*a)[j] - (*b)[j];
    x.push_back(std::move(diff));
    y.push_back(ex.label);
    rows.push_back(&ex);
  }
  return fit_and_report(x, y, rows, examples.size(), hp, false);
}

double sweepline_score(const LogisticModel& model, const EmbeddingTable& embedding, std::string_view i,
                       std::string_view j) {
  const auto* a = embedding.find(i);
  const auto* b = embedding.find(j);
  if (a == nullptr || b == nullptr) throw UndefinedValueError("word has no embedding");
  double z = model.bias;
  for (std::size_t k = 0; k < model.weights.size(); ++k) z += model.weights[k] * ((*a)[k] - (*b)[k]);
  return z;
}

ModelReport train_linear_model(const std::vector<OrderExample>& examples, const PredictorResources& resources,
                               const LogisticHyperparams& hp) {
  if (examples.empty()) throw EmptyInputError("no training pairs");
  std::vector<Rule> rules = {Rule::length, Rule::alphabetical};
  if (resources.dictionary != nullptr) {
    rules.push_back(Rule::phonemes);
    rules.push_back(Rule::syllables);
  }
  if (resources.unigrams != nullptr) rules.push_back(Rule::frequency);
  std::vector<std::vector<double>> x;
  std::vector<int> y;
  std::vector<const OrderExample*> rows;
  for (const auto& ex : examples) {
    std::vector<double> f;
    bool ok = true;
    for (const Rule r : rules) {
      const auto a = rule_feature(ex.pair.first, r, resources);
      const auto b = rule_feature(ex.pair.second, r, resources);
      if (!a || !b) {
        ok = false;
        break;
      }
      f.push_back(r == Rule::frequency ? std::log(*a) - std::log(*b) : *a - *b);
    }
    if (!ok) continue;
    x.push_back(std::move(f));
    y.push_back(ex.label);
    rows.push_back(&ex);
  }
  return fit_and_report(x, y, rows, examples.size(), hp, true);
}

}  // namespace binomials
