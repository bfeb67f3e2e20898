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

#include <span>
#include <vector>

#include "ibgn/generative_model.hpp"
#include "ibgn/temporal_network.hpp"

namespace ibgn {

/// Floor used for actions a model has never seen.
inline constexpr double kUnknownActionProbability = 1e-8;

struct Prediction {
  int label = -1;
  std::vector<double> log_scores;
  double margin = 0.0;  // best minus runner-up; +inf with a single model
};

/// log P(a', r'; D_l): Σ_i log Σ_ζ θ_ζ,a_i over every observed interval plus
/// Σ log φ over the model's structure links among the first k* intervals.
/// Action ids must index the model's vocabulary; anything else scores with
/// kUnknownActionProbability.
double score_instance(const ClassModel& model, const Instance& instance);

/// Maximum-score class; ties go to the lowest index. Throws Error(kNoModels).
Prediction predict(std::span<const ClassModel> models, const Instance& instance);

/// argmax with lowest-index tie-break over precomputed scores.
Prediction predict_from_scores(std::vector<double> log_scores);

}  // namespace ibgn
