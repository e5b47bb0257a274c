#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "binomials/metrics.hpp"
#include "binomials/predictors.hpp"

namespace binomials {

struct LogisticHyperparams {
  double learning_rate = 0.5;
  std::size_t epochs = 500;
  double l2 = 1e-4;
  double train_fraction = 0.8;
  std::uint64_t seed = 1;
};

struct LogisticModel {
  std::vector<double> weights;
  double bias = 0;

  double decision(const std::vector<double>& x) const;
};

/// Mean log-loss plus (l2 / 2) * |w|^2 (bias unregularized). Labels are 0/1.
/// Writes d loss / d w into grad_w and d loss / d bias into grad_b.
double logistic_loss_and_gradient(const LogisticModel& model, const std::vector<std::vector<double>>& x,
                                  const std::vector<int>& y, double l2, std::vector<double>& grad_w,
                                  double& grad_b);

struct TrainingTrace {
  std::vector<double> loss;  // one value per epoch, before the update
};

/// Full-batch gradient descent from zero weights. Throws EmptyInputError on empty input.
LogisticModel train_logistic(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                             const LogisticHyperparams& hp, TrainingTrace* trace = nullptr);

/// Labelled pair for the ordering models: label 1 iff the majority order is [first, second].
struct OrderExample {
  PairKey pair;
  SliceCounts counts;
  int label = 0;
};

/// Pairs with a strict majority order, in PairKey order.
std::vector<OrderExample> majority_examples(const PairTable& pairs);

struct ModelReport {
  LogisticModel model;
  std::size_t train_size = 0;
  std::size_t test_size = 0;
  double train_accuracy = 0;
  double held_out_accuracy = 0;
  double coverage = 0;  // share of examples with usable features
  std::optional<ScoreCard> held_out_card;
  std::vector<std::string> warnings;
};

/// Feature x_first - x_second; label from the majority order. The examples are
/// shuffled with hp.seed and split by pair type. Throws EmptyInputError when no
/// example is embedded; warns when coverage is below one half.
ModelReport train_sweepline(const EmbeddingTable& embedding, const std::vector<OrderExample>& examples,
                            const LogisticHyperparams& hp);

/// v* . (x_i - x_j) + bias: positive means [i, j] is predicted.
double sweepline_score(const LogisticModel& model, const EmbeddingTable& embedding, std::string_view i,
                       std::string_view j);

/// Logistic regression on standardized differences of the basic rule features
/// (length, phonemes, syllables, log frequency, first letter) that are available.
ModelReport train_linear_model(const std::vector<OrderExample>& examples, const PredictorResources& resources,
                               const LogisticHyperparams& hp);

}  // namespace binomials
