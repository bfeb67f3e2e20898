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


#include "ibgn/dataset_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <unordered_map>

#include <json.hpp>

#include "ibgn/error.hpp"
#include "ibgn/random.hpp"

namespace ibgn {
namespace {

using json = nlohmann::json;

class NameIndex {
 public:
  explicit NameIndex(std::vector<std::string>& names) : names_(names) {
    for (std::size_t i = 0; i < names_.size(); ++i) index_[names_[i]] = i;
  }
  std::size_t intern(const std::string& name) {
    auto [it, inserted] = index_.try_emplace(name, names_.size());
    if (inserted) names_.push_back(name);
    return it->second;
  }

 private:
  std::vector<std::string>& names_;
  std::unordered_map<std::string, std::size_t> index_;
};

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::kParseError,
              "line " + std::to_string(line) + ": " + what);
}

double read_time(const json& iv, const char* key, std::size_t line) {
  const auto it = iv.find(key);
  if (it == iv.end() || !it->is_number()) {
    parse_fail(line, std::string("interval needs numeric \"") + key + "\"");
  }
  const double v = it->get<double>();
  if (!std::isfinite(v)) parse_fail(line, "non-finite time");
  return v;
}

}  // namespace

bool Corpus::labeled() const {
  return std::all_of(instances.begin(), instances.end(),
                     [](const Instance& i) { return i.label >= 0; });
}

std::vector<Instance> Corpus::of_class(int label) const {
  std::vector<Instance> out;
  for (const Instance& inst : instances) {
    if (inst.label == label) out.push_back(inst);
  }
  return out;
}

Corpus read_corpus(std::istream& in) {
  Corpus corpus;
  NameIndex vocab(corpus.vocab);
  NameIndex classes(corpus.classes);
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    json record;
    try {
      record = json::parse(text);
    } catch (const json::parse_error& e) {
      parse_fail(line, e.what());
    }
    if (!record.is_object()) parse_fail(line, "expected a JSON object");

    Instance inst;
    if (const auto it = record.find("label"); it != record.end()) {
      if (!it->is_string()) parse_fail(line, "\"label\" must be a string");
      inst.label = static_cast<int>(classes.intern(it->get<std::string>()));
    }
    const auto ivs = record.find("intervals");
    if (ivs == record.end() || !ivs->is_array()) {
      parse_fail(line, "missing \"intervals\" array");
    }
    for (const json& iv : *ivs) {
      if (!iv.is_object()) parse_fail(line, "interval must be an object");
      const auto action = iv.find("action");
      if (action == iv.end() || !action->is_string()) {
        parse_fail(line, "interval needs a string \"action\"");
      }
      Interval out;
      out.action =
          static_cast<ActionId>(vocab.intern(action->get<std::string>())) + 1;
      out.start = read_time(iv, "start", line);
      out.end = read_time(iv, "end", line);
      if (!(out.start < out.end)) {
        throw Error(ErrorCode::kDegenerateInterval,
                    "line " + std::to_string(line) +
                        ": interval start must precede its end");
      }
      inst.intervals.push_back(out);
    }
    canonicalize(inst);
    corpus.instances.push_back(std::move(inst));
  }
  return corpus;
}

Corpus load_instances(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  return read_corpus(in);
}

void write_corpus(std::ostream& out, const Corpus& corpus) {
  for (const Instance& inst : corpus.instances) {
    Instance sorted = inst;
    canonicalize(sorted);
    json record = json::object();
    if (inst.label >= 0) record["label"] = corpus.classes.at(inst.label);
    json ivs = json::array();
    for (const Interval& iv : sorted.intervals) {
      if (iv.is_null()) continue;
      ivs.push_back({{"action", corpus.vocab.at(iv.action - 1)},
                     {"start", iv.start},
                     {"end", iv.end}});
    }
    record["intervals"] = std::move(ivs);
    out << record.dump() << '\n';
  }
}

void save_instances(const std::filesystem::path& path, const Corpus& corpus) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  write_corpus(out, corpus);
}

Corpus remap(const Corpus& corpus, const std::vector<std::string>& vocab,
             const std::vector<std::string>& classes) {
  auto lookup = [](const std::vector<std::string>& names) {
    std::unordered_map<std::string, int> index;
    for (std::size_t i = 0; i < names.size(); ++i) index[names[i]] = int(i);
    return index;
  };
  const auto vocab_index = lookup(vocab);
  const auto class_index = lookup(classes);
  Corpus out;
  out.vocab = vocab;
  out.classes = classes;
  for (const Instance& inst : corpus.instances) {
    Instance mapped;
    if (inst.label >= 0) {
      const auto it = class_index.find(corpus.classes.at(inst.label));
      mapped.label = it == class_index.end() ? -1 : it->second;
    }
    for (const Interval& iv : inst.intervals) {
      Interval m = iv;
      if (!iv.is_null()) {
        const auto it = vocab_index.find(corpus.vocab.at(iv.action - 1));
        m.action = it == vocab_index.end() ? kUnknownAction : it->second + 1;
      }
      mapped.intervals.push_back(m);
    }
    out.instances.push_back(std::move(mapped));
  }
  return out;
}

std::vector<Fold> kfold_split(const Corpus& corpus, std::size_t folds,
                              std::uint64_t seed) {
  if (folds < 2) throw Error(ErrorCode::kConfigInvalid, "folds must be >= 2");
  std::vector<std::vector<std::size_t>> by_class(corpus.classes.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const int label = corpus.instances[i].label;
    if (label < 0) {
      throw Error(ErrorCode::kConfigInvalid,
                  "cross-validation needs a labeled corpus");
    }
    by_class[label].push_back(i);
  }
  Rng rng = make_rng(seed);
  std::vector<std::vector<std::size_t>> test(folds);
  std::size_t offset = 0;
  for (std::size_t c = 0; c < by_class.size(); ++c) {
    auto& members = by_class[c];
    if (members.empty()) continue;
    if (members.size() < folds) {
      throw Error(ErrorCode::kInsufficientClassInstances,
                  "class '" + corpus.classes[c] + "' has " +
                      std::to_string(members.size()) + " instances, needs " +
                      std::to_string(folds));
    }
    // Fisher-Yates with the portable index sampler.
    for (std::size_t i = members.size(); i > 1; --i) {
      std::swap(members[i - 1], members[uniform_index(rng, i)]);
    }
    // Dealing continues where the previous class stopped so fold sizes
    // differ by at most one overall.
    for (std::size_t i = 0; i < members.size(); ++i) {
      test[(offset + i) % folds].push_back(members[i]);
    }
    offset = (offset + members.size()) % folds;
  }
  std::vector<Fold> out(folds);
  for (std::size_t f = 0; f < folds; ++f) {
    std::sort(test[f].begin(), test[f].end());
    const std::set<std::size_t> in_test(test[f].begin(), test[f].end());
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      if (!in_test.count(i)) out[f].train.push_back(i);
    }
    out[f].test = std::move(test[f]);
  }
  return out;
}

Corpus subset(const Corpus& corpus, const std::vector<std::size_t>& indices) {
  Corpus out;
  out.vocab = corpus.vocab;
  out.classes = corpus.classes;
  out.instances.reserve(indices.size());
  for (std::size_t i : indices) out.instances.push_back(corpus.instances.at(i));
  return out;
}

Corpus perturb_labels(const Corpus& corpus, double rate, std::uint64_t seed) {
  if (!(rate >= 0.0 && rate <= 1.0)) {
    throw Error(ErrorCode::kConfigInvalid, "rate must lie in [0, 1]");
  }
  Corpus out = corpus;
  const std::size_t m = corpus.vocab.size();
  if (m < 2) return out;
  Rng rng = make_rng(seed);
  for (Instance& inst : out.instances) {
    for (Interval& iv : inst.intervals) {
      if (iv.is_null()) continue;
      const double u = uniform01(rng);
      // One of the m-1 other actions, drawn whether or not it is used.
      const auto pick = static_cast<ActionId>(uniform_index(rng, m - 1)) + 1;
      if (u < rate && iv.action >= 1) {
        iv.action = pick >= iv.action ? pick + 1 : pick;
      }
    }
  }
  return out;
}

Corpus perturb_durations(const Corpus& corpus, double rate,
                         std::uint64_t seed) {
  if (!(rate >= 0.0 && rate <= 1.0)) {
    throw Error(ErrorCode::kConfigInvalid, "rate must lie in [0, 1]");
  }
  Corpus out = corpus;
  if (rate == 0.0) return out;
  Rng rng = make_rng(seed);
  for (Instance& inst : out.instances) {
    std::vector<double> endpoints;
    for (const Interval& iv : inst.intervals) {
      if (iv.is_null()) continue;
      endpoints.push_back(iv.start);
      endpoints.push_back(iv.end);
    }
    std::sort(endpoints.begin(), endpoints.end());
    double step = 0.0;
    for (std::size_t i = 1; i < endpoints.size(); ++i) {
      const double gap = endpoints[i] - endpoints[i - 1];
      if (gap > 0.0 && (step == 0.0 || gap < step)) step = gap;
    }
    if (step == 0.0) step = 1.0;

    for (Interval& iv : inst.intervals) {
      if (iv.is_null()) continue;
      const double len = iv.end - iv.start;
      const double ds = (2.0 * uniform01(rng) - 1.0) * rate * len;
      const double de = (2.0 * uniform01(rng) - 1.0) * rate * len;
      double s = iv.start + ds;
      double e = iv.end + de;
      if (s > e) std::swap(s, e);
      if (!(s < e)) e = s + step;
      iv.start = s;
      iv.end = e;
    }
    canonicalize(inst);
  }
  return out;
}

Corpus build_synthetic_corpus(const std::vector<SyntheticClass>& classes,
                              const std::vector<std::string>& vocab,
                              std::size_t per_class, std::uint64_t seed,
                              std::optional<std::size_t> fixed_size) {
  Corpus corpus;
  corpus.vocab = vocab;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    const ClassModel& gen = classes[c].generator;
    validate(gen);
    if (gen.num_actions() != vocab.size()) {
      throw Error(ErrorCode::kConfigInvalid,
                  "generator vocabulary size differs from the corpus vocab");
    }
    corpus.classes.push_back(classes[c].name);
    Rng rng = make_rng(derive_seed(seed, c));
    for (std::size_t i = 0; i < per_class; ++i) {
      const std::size_t k = fixed_size ? *fixed_size : sample_size(gen, rng);
      const GeneratedNetwork net = sample_network(gen, k, rng);
      auto intervals = realize_timestamps(net);
      if (!intervals) {
        throw Error(ErrorCode::kInternalInvariant,
                    "generated network has no timestamp realization");
      }
      Instance inst;
      inst.label = static_cast<int>(c);
      inst.intervals = std::move(*intervals);
      corpus.instances.push_back(std::move(inst));
    }
  }
  return corpus;
}

}  // namespace ibgn
