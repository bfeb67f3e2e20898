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


#include "ibgn/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>

#include "ibgn/error.hpp"

namespace ibgn {
namespace {

std::string format_double(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

}  // namespace

ModelBundle train_bundle(const Corpus& corpus, const TrainConfig& config,
                         std::size_t jobs,
                         std::vector<TrainDiagnostics>* diagnostics) {
  validate(config);
  const std::size_t classes = corpus.classes.size();
  if (classes == 0 || corpus.instances.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "no labeled instances to train on");
  }
  ModelBundle bundle;
  bundle.vocab = corpus.vocab;
  bundle.classes = corpus.classes;
  bundle.models.resize(classes);
  std::vector<TrainDiagnostics> diag(classes);
  std::vector<std::exception_ptr> errors(classes);

  auto train_one = [&](std::size_t c) {
    try {
      const auto members = corpus.of_class(static_cast<int>(c));
      if (members.empty()) {
        throw Error(ErrorCode::kEmptyCorpus,
                    "class '" + corpus.classes[c] + "' has no instances");
      }
      Rng rng = make_rng(derive_seed(config.seed, c));
      bundle.models[c] =
          train_class_model(members, corpus.vocab, config, rng, &diag[c]);
    } catch (...) {
      errors[c] = std::current_exception();
    }
  };

  const std::size_t workers = std::clamp<std::size_t>(jobs, 1, classes);
  if (workers == 1) {
    for (std::size_t c = 0; c < classes; ++c) train_one(c);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t c = next++; c < classes; c = next++) train_one(c);
      });
    }
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  if (diagnostics) *diagnostics = std::move(diag);
  return bundle;
}

std::vector<Prediction> predict_corpus(const ModelBundle& bundle,
                                       const Corpus& corpus) {
  std::vector<Prediction> out;
  out.reserve(corpus.size());
  for (const Instance& inst : corpus.instances) {
    out.push_back(predict(bundle.models, inst));
  }
  return out;
}

double accuracy(const std::vector<Prediction>& predictions,
                const Corpus& corpus) {
  if (predictions.empty()) return 0.0;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    correct += predictions[i].label == corpus.instances[i].label ? 1 : 0;
  }
  return double(correct) / double(predictions.size());
}

void write_predictions_csv(std::ostream& out, const ModelBundle& bundle,
                           const Corpus& corpus,
                           const std::vector<Prediction>& predictions) {
  const bool labeled = !corpus.instances.empty() && corpus.labeled();
  out << "index,predicted";
  if (labeled) out << ",true";
  for (const auto& c : bundle.classes) out << ",score_" << c;
  out << ",margin\n";
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    const Prediction& p = predictions[i];
    out << i << ',' << bundle.classes.at(p.label);
    if (labeled) out << ',' << corpus.classes.at(corpus.instances[i].label);
    for (double s : p.log_scores) out << ',' << format_double(s);
    out << ',' << format_double(p.margin) << '\n';
  }
}

PerturbMode parse_perturb_mode(std::string_view name) {
  if (name == "none") return PerturbMode::kNone;
  if (name == "labels") return PerturbMode::kLabels;
  if (name == "durations") return PerturbMode::kDurations;
  throw Error(ErrorCode::kConfigInvalid,
              "unknown perturbation '" + std::string(name) + "'");
}

std::string_view perturb_mode_name(PerturbMode mode) {
  switch (mode) {
    case PerturbMode::kNone: return "none";
    case PerturbMode::kLabels: return "labels";
    case PerturbMode::kDurations: return "durations";
  }
  return "none";
}

Corpus apply_perturbation(const Corpus& corpus, PerturbMode mode, double rate,
                          std::uint64_t seed) {
  switch (mode) {
    case PerturbMode::kNone: return corpus;
    case PerturbMode::kLabels: return perturb_labels(corpus, rate, seed);
    case PerturbMode::kDurations: return perturb_durations(corpus, rate, seed);
  }
  return corpus;
}

CrossValidationReport cross_validate(const Corpus& corpus, std::size_t folds,
                                     const TrainConfig& config,
                                     PerturbMode perturb, double rate,
                                     std::size_t jobs) {
  const auto splits = kfold_split(corpus, folds, config.seed);
  const std::size_t classes = corpus.classes.size();
  CrossValidationReport report;
  report.confusion = Matrix<int>(classes, classes, 0);
  std::size_t correct = 0, total = 0;
  for (std::size_t f = 0; f < splits.size(); ++f) {
    TrainConfig fold_config = config;
    fold_config.seed = derive_seed(config.seed, 1000 + f);
    const ModelBundle bundle =
        train_bundle(subset(corpus, splits[f].train), fold_config, jobs);
    const Corpus test =
        apply_perturbation(subset(corpus, splits[f].test), perturb, rate,
                           derive_seed(config.seed, 2000 + f));
    const auto predictions = predict_corpus(bundle, test);
    std::size_t fold_correct = 0;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
      const int truth = test.instances[i].label;
      ++report.confusion(truth, predictions[i].label);
      fold_correct += predictions[i].label == truth ? 1 : 0;
    }
    report.fold_accuracy.push_back(double(fold_correct) /
                                   double(predictions.size()));
    correct += fold_correct;
    total += predictions.size();
  }
  double sum = 0.0;
  for (double a : report.fold_accuracy) sum += a;
  report.mean_accuracy = sum / double(report.fold_accuracy.size());
  report.pooled_accuracy = double(correct) / double(total);
  return report;
}

void write_confusion_csv(std::ostream& out,
                         const std::vector<std::string>& classes,
                         const Matrix<int>& confusion) {
  out << "true\\predicted";
  for (const auto& c : classes) out << ',' << c;
  out << '\n';
  for (std::size_t r = 0; r < confusion.rows(); ++r) {
    out << classes.at(r);
    for (int v : confusion.row(r)) out << ',' << v;
    out << '\n';
  }
}

}  // namespace ibgn
