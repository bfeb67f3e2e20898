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
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ibgn/generative_model.hpp"
#include "ibgn/temporal_network.hpp"

namespace ibgn {

/// Instances with action ids into `vocab` (id = position + 1) and labels
/// into `classes`.
struct Corpus {
  std::vector<Instance> instances;
  std::vector<std::string> vocab;
  std::vector<std::string> classes;

  std::size_t size() const { return instances.size(); }
  bool labeled() const;
  /// Instances of class `label`, in corpus order.
  std::vector<Instance> of_class(int label) const;

  bool operator==(const Corpus&) const = default;
};

/// Reads one JSON object per non-blank line:
///   {"label": "<class>", "intervals": [{"action": "<name>", "start": t0, "end": t1}, ...]}
/// "label" may be omitted. Intervals are sorted canonically; vocab and
/// classes grow in first-appearance order. Throws Error(kParseError) or
/// Error(kDegenerateInterval), both naming the 1-based line.
Corpus read_corpus(std::istream& in);
Corpus load_instances(const std::filesystem::path& path);

/// Writes the corpus in canonical interval order, one instance per line.
void write_corpus(std::ostream& out, const Corpus& corpus);
void save_instances(const std::filesystem::path& path, const Corpus& corpus);

/// Maps every instance onto another vocabulary/class list by name. Unknown
/// actions become kUnknownAction and unknown labels -1.
Corpus remap(const Corpus& corpus, const std::vector<std::string>& vocab,
             const std::vector<std::string>& classes);

struct Fold {
  std::vector<std::size_t> train;  // corpus indices, ascending
  std::vector<std::size_t> test;
};

/// Stratified k-fold split with a seeded shuffle per class. Throws
/// Error(kInsufficientClassInstances) if a class has fewer than `folds`
/// instances, or Error(kConfigInvalid) if folds < 2.
std::vector<Fold> kfold_split(const Corpus& corpus, std::size_t folds,
                              std::uint64_t seed);

/// Gathers the instances at `indices`, sharing vocab and classes.
Corpus subset(const Corpus& corpus, const std::vector<std::size_t>& indices);

/// With probability `rate`, replaces each interval's action by a uniformly
/// chosen different action. The draws per interval do not depend on the
/// rate, so one seed gives nested relabelings across rates.
Corpus perturb_labels(const Corpus& corpus, double rate, std::uint64_t seed);

/// Shifts each endpoint by uniform noise in [-rate·len, rate·len], repairs
/// inverted or empty intervals, and re-sorts each instance.
Corpus perturb_durations(const Corpus& corpus, double rate,
                         std::uint64_t seed);

struct SyntheticClass {
  std::string name;
  ClassModel generator;
};

/// Samples `per_class` networks from each generator (sizes from the size
/// histogram unless `fixed_size` is set), realizes integer timestamps and
/// labels them. All generators share `vocab`.
Corpus build_synthetic_corpus(const std::vector<SyntheticClass>& classes,
                              const std::vector<std::string>& vocab,
                              std::size_t per_class, std::uint64_t seed,
                              std::optional<std::size_t> fixed_size = {});

}  // namespace ibgn
