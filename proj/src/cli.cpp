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


#include "ibgn/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <ostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ibgn/error.hpp"
#include "ibgn/interval_algebra.hpp"
#include "ibgn/pipeline.hpp"

namespace ibgn {
namespace {

using json = nlohmann::json;

enum class LogLevel { kError = 0, kInfo = 1, kDebug = 2 };

LogLevel log_level_from_env() {
  const char* v = std::getenv("IBGN_LOG");
  if (!v) return LogLevel::kInfo;
  const std::string s(v);
  if (s == "error") return LogLevel::kError;
  if (s == "debug") return LogLevel::kDebug;
  return LogLevel::kInfo;
}

class Logger {
 public:
  explicit Logger(std::ostream& err) : err_(err), level_(log_level_from_env()) {}
  std::ostream* at(LogLevel level) {
    return level <= level_ ? &err_ : nullptr;
  }

 private:
  std::ostream& err_;
  LogLevel level_;
};

#define IBGN_LOG(logger, level) \
  if (auto* log_stream_ = (logger).at(level)) *log_stream_

// Output sink: a file when a path is given, otherwise the data stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (path.empty() || path == "-") {
      stream_ = &fallback;
      return;
    }
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file_) throw Error(ErrorCode::kIo, "cannot write " + path);
    stream_ = file_.get();
  }
  std::ostream& get() { return *stream_; }
  bool is_file() const { return file_ != nullptr; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_ = nullptr;
};

struct TrainFlags {
  std::string structure = "learned";
  int iterations = 2000;
  int burn_in = 500;
  int avg_window = 1000;
  double rho = 1e-5;
  double alpha_init = 1.0;
  double beta_init = 0.5;
  double clamp_min = 1e-6;
  double clamp_max = 1e6;

  void attach(CLI::App& cmd) {
    cmd.add_option("--structure", structure, "learned | chain | full")
        ->check(CLI::IsMember({"learned", "chain", "full"}));
    cmd.add_option("--iters", iterations, "total Gibbs sweeps");
    cmd.add_option("--burnin", burn_in, "sweeps discarded before averaging");
    cmd.add_option("--avg-window", avg_window, "sweeps averaged after burn-in");
    cmd.add_option("--rho", rho, "phi smoothing constant");
    cmd.add_option("--alpha-init", alpha_init);
    cmd.add_option("--beta-init", beta_init);
    cmd.add_option("--clamp-min", clamp_min);
    cmd.add_option("--clamp-max", clamp_max);
  }

  TrainConfig config(std::uint64_t seed) const {
    TrainConfig c;
    c.structure = parse_structure_mode(structure);
    c.iterations = iterations;
    c.burn_in = burn_in;
    c.avg_window = avg_window;
    c.rho = rho;
    c.seed = seed;
    c.alpha_init = alpha_init;
    c.beta_init = beta_init;
    c.clamp_min = clamp_min;
    c.clamp_max = clamp_max;
    return c;
  }
};

json config_to_json(const TrainConfig& c) {
  return {{"structure", structure_mode_name(c.structure)},
          {"iterations", c.iterations},
          {"burn_in", c.burn_in},
          {"avg_window", c.avg_window},
          {"rho", c.rho},
          {"seed", c.seed},
          {"alpha_init", c.alpha_init},
          {"beta_init", c.beta_init},
          {"clamp_min", c.clamp_min},
          {"clamp_max", c.clamp_max}};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  Logger logger(err);
  CLI::App app{"Interval-based Bayesian generative network toolkit", "ibgn"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  auto add_shared = [&](CLI::App& cmd) {
    cmd.add_option("--seed", seed, "random seed");
    cmd.add_option("--jobs", jobs, "parallel class trainers")
        ->check(CLI::PositiveNumber);
  };

  // train
  auto* train = app.add_subcommand("train", "learn one model per class");
  std::string train_input, train_out;
  TrainFlags train_flags;
  train->add_option("--input", train_input, "corpus JSONL")->required();
  train->add_option("--out", train_out, "model JSON")->required();
  train_flags.attach(*train);
  add_shared(*train);

  // predict
  auto* predict_cmd = app.add_subcommand("predict", "classify instances");
  std::string predict_model, predict_input, predict_out;
  predict_cmd->add_option("--model", predict_model)->required();
  predict_cmd->add_option("--input", predict_input)->required();
  predict_cmd->add_option("--out", predict_out, "predictions CSV (default stdout)");
  add_shared(*predict_cmd);

  // eval
  auto* eval = app.add_subcommand("eval", "stratified k-fold cross-validation");
  std::string eval_input, eval_report = "report.json",
                          eval_confusion = "confusion.csv",
                          eval_perturb = "none";
  std::size_t eval_folds = 5;
  double eval_rate = 0.0;
  TrainFlags eval_flags;
  eval->add_option("--input", eval_input)->required();
  eval->add_option("--folds", eval_folds)->check(CLI::Range(2, 1000));
  eval->add_option("--report", eval_report, "report JSON path");
  eval->add_option("--confusion", eval_confusion, "confusion CSV path");
  eval->add_option("--perturb", eval_perturb, "none | labels | durations")
      ->check(CLI::IsMember({"none", "labels", "durations"}));
  eval->add_option("--rate", eval_rate)->check(CLI::Range(0.0, 1.0));
  eval_flags.attach(*eval);
  add_shared(*eval);

  // generate
  auto* generate = app.add_subcommand("generate", "sample synthetic instances");
  std::string gen_model, gen_class, gen_out;
  std::size_t gen_count = 100;
  std::optional<std::size_t> gen_size;
  generate->add_option("--model", gen_model)->required();
  generate->add_option("--class", gen_class)->required();
  generate->add_option("--count", gen_count);
  generate->add_option("--size", gen_size, "fixed instance length");
  generate->add_option("--out", gen_out, "corpus JSONL (default stdout)");
  add_shared(*generate);

  // perturb
  auto* perturb = app.add_subcommand("perturb", "add label or duration noise");
  std::string perturb_input, perturb_out, perturb_mode = "labels";
  double perturb_rate = 0.1;
  perturb->add_option("--input", perturb_input)->required();
  perturb->add_option("--mode", perturb_mode)
      ->check(CLI::IsMember({"labels", "durations"}));
  perturb->add_option("--rate", perturb_rate)->check(CLI::Range(0.0, 1.0));
  perturb->add_option("--out", perturb_out, "corpus JSONL (default stdout)");
  add_shared(*perturb);

  // algebra
  auto* algebra = app.add_subcommand("algebra", "interval algebra utilities");
  algebra->require_subcommand(1);
  auto* compose_cmd = algebra->add_subcommand("compose", "print r1 ∘ r2");
  std::string rel1, rel2;
  compose_cmd->add_option("r1", rel1)->required();
  compose_cmd->add_option("r2", rel2)->required();
  auto* classes_cmd = algebra->add_subcommand("classes", "list composition classes");
  auto* check_cmd = algebra->add_subcommand("check", "consistency of a corpus");
  std::string check_file;
  check_cmd->add_option("file", check_file)->required();

  std::vector<const char*> argv{"ibgn"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code;
  }

  try {
    if (*train) {
      const TrainConfig config = train_flags.config(seed);
      const Corpus corpus = load_instances(train_input);
      if (!corpus.labeled()) {
        throw Error(ErrorCode::kParseError, "training input must be labeled");
      }
      std::vector<TrainDiagnostics> diag;
      const ModelBundle bundle = train_bundle(corpus, config, jobs, &diag);
      save_bundle(train_out, bundle);
      for (std::size_t c = 0; c < bundle.classes.size(); ++c) {
        const ClassModel& m = bundle.models[c];
        out << bundle.classes[c] << ": k*=" << m.k_star
            << " links=" << m.structure.link_count()
            << " occupied_tables=" << diag[c].occupied_tables << '\n';
        IBGN_LOG(logger, LogLevel::kDebug)
            << "class " << bundle.classes[c] << " geweke_z=" << diag[c].geweke_z
            << '\n';
      }
      IBGN_LOG(logger, LogLevel::kInfo) << "wrote " << train_out << '\n';
      return 0;
    }

    if (*predict_cmd) {
      const ModelBundle bundle = load_bundle(predict_model);
      const Corpus raw = load_instances(predict_input);
      const Corpus corpus = remap(raw, bundle.vocab, bundle.classes);
      const auto predictions = predict_corpus(bundle, corpus);
      Sink sink(predict_out, out);
      write_predictions_csv(sink.get(), bundle, corpus, predictions);
      if (!corpus.instances.empty() && raw.labeled()) {
        std::ostream& report = sink.is_file() ? out : err;
        report << "accuracy " << accuracy(predictions, corpus) << '\n';
      }
      return 0;
    }

    if (*eval) {
      const TrainConfig config = eval_flags.config(seed);
      const Corpus corpus = load_instances(eval_input);
      if (!corpus.labeled()) {
        throw Error(ErrorCode::kParseError, "evaluation input must be labeled");
      }
      const PerturbMode mode = parse_perturb_mode(eval_perturb);
      const CrossValidationReport report =
          cross_validate(corpus, eval_folds, config, mode, eval_rate, jobs);
      {
        std::ofstream conf(eval_confusion, std::ios::binary);
        if (!conf) throw Error(ErrorCode::kIo, "cannot write " + eval_confusion);
        write_confusion_csv(conf, corpus.classes, report.confusion);
      }
      const json doc = {{"folds", eval_folds},
                        {"fold_accuracy", report.fold_accuracy},
                        {"mean_accuracy", report.mean_accuracy},
                        {"pooled_accuracy", report.pooled_accuracy},
                        {"perturb", perturb_mode_name(mode)},
                        {"rate", eval_rate},
                        {"classes", corpus.classes},
                        {"config", config_to_json(config)}};
      std::ofstream rep(eval_report, std::ios::binary);
      if (!rep) throw Error(ErrorCode::kIo, "cannot write " + eval_report);
      rep << doc.dump(1) << '\n';
      out << "mean accuracy " << report.mean_accuracy << '\n';
      return 0;
    }

    if (*generate) {
      const ModelBundle bundle = load_bundle(gen_model);
      std::size_t c = 0;
      while (c < bundle.classes.size() && bundle.classes[c] != gen_class) ++c;
      if (c == bundle.classes.size()) {
        throw Error(ErrorCode::kUnknownClass, "no class named '" + gen_class + "'");
      }
      const ClassModel& model = bundle.models[c];
      if (gen_size && (*gen_size < 1 || *gen_size > model.k_star)) {
        throw Error(ErrorCode::kConfigInvalid,
                    "--size must lie in [1, " + std::to_string(model.k_star) + "]");
      }
      Corpus corpus = build_synthetic_corpus({{gen_class, model}}, bundle.vocab,
                                             gen_count, seed, gen_size);
      for (const Instance& inst : corpus.instances) {
        if (!check_consistency(instance_to_network(inst)).consistent) {
          throw Error(ErrorCode::kInternalInvariant,
                      "generated an inconsistent network");
        }
      }
      Sink sink(gen_out, out);
      write_corpus(sink.get(), corpus);
      return 0;
    }

    if (*perturb) {
      const Corpus corpus = load_instances(perturb_input);
      const Corpus noisy = apply_perturbation(
          corpus, parse_perturb_mode(perturb_mode), perturb_rate, seed);
      Sink sink(perturb_out, out);
      write_corpus(sink.get(), noisy);
      return 0;
    }

    if (*algebra) {
      if (*compose_cmd) {
        out << to_string(compose(parse_relation(rel1), parse_relation(rel2)))
            << '\n';
      } else if (*classes_cmd) {
        for (const CompositionClass& c : composition_classes()) {
          out << c.index << ' ' << c.members.size() << ' '
              << to_string(c.members) << '\n';
        }
      } else if (*check_cmd) {
        const Corpus corpus = load_instances(check_file);
        std::size_t bad = 0;
        for (std::size_t i = 0; i < corpus.size(); ++i) {
          const auto report =
              check_consistency(instance_to_network(corpus.instances[i]));
          out << i << ' ' << (report.consistent ? "consistent" : "inconsistent");
          for (const auto& t : report.violations) {
            out << " (" << t[0] << ',' << t[1] << ',' << t[2] << ')';
          }
          out << '\n';
          bad += report.consistent ? 0 : 1;
        }
        IBGN_LOG(logger, LogLevel::kInfo)
            << corpus.size() - bad << '/' << corpus.size()
            << " instances consistent\n";
      }
      return 0;
    }
  } catch (const Error& e) {
    IBGN_LOG(logger, LogLevel::kError) << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    IBGN_LOG(logger, LogLevel::kError) << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace ibgn
