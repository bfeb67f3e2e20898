// Copyright 2026 The IBGN Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "ibgn/classifier.hpp"
#include "ibgn/dataset_io.hpp"
#include "ibgn/learning.hpp"
#include "ibgn/matrix.hpp"
#include "ibgn/model_io.hpp"

namespace ibgn {

/// Trains one model per class of `corpus`. Class c draws from
/// derive_seed(config.seed, c), so results do not depend on `jobs`.
ModelBundle train_bundle(const Corpus& corpus, const TrainConfig& config,
                         std::size_t jobs = 1,
                         std::vector<TrainDiagnostics>* diagnostics = nullptr);

/// Predicts every instance; the corpus must already use the bundle's vocab.
std::vector<Prediction> predict_corpus(const ModelBundle& bundle,
                                       const Corpus& corpus);

/// Fraction of instances whose prediction equals the label.
double accuracy(const std::vector<Prediction>& predictions,
                const Corpus& corpus);

/// CSV: index,predicted[,true],score_<class>...,margin
void write_predictions_csv(std::ostream& out, const ModelBundle& bundle,
                           const Corpus& corpus,
                           const std::vector<Prediction>& predictions);

enum class PerturbMode { kNone, kLabels, kDurations };
PerturbMode parse_perturb_mode(std::string_view name);
std::string_view perturb_mode_name(PerturbMode mode);

Corpus apply_perturbation(const Corpus& corpus, PerturbMode mode, double rate,
                          std::uint64_t seed);

struct CrossValidationReport {
  std::vector<double> fold_accuracy;
  double mean_accuracy = 0.0;    // average of the per-fold accuracies
  double pooled_accuracy = 0.0;  // trace(confusion) / sum(confusion)
  Matrix<int> confusion;  // rows = true class, columns = predicted class
};

/// Stratified k-fold evaluation. The perturbation, if any, is applied to
/// each test fold only.
CrossValidationReport cross_validate(const Corpus& corpus, std::size_t folds,
                                     const TrainConfig& config,
                                     PerturbMode perturb, double rate,
                                     std::size_t jobs = 1);

/// Header row "true\predicted,<classes...>", then one row per true class.
void write_confusion_csv(std::ostream& out, const std::vector<std::string>& classes,
                         const Matrix<int>& confusion);

}  // namespace ibgn
