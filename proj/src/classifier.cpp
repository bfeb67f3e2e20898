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


#include "ibgn/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ibgn/error.hpp"

namespace ibgn {

double score_instance(const ClassModel& model, const Instance& instance) {
  const std::size_t observed = observed_length(instance);
  const std::size_t m = model.num_actions();
  double score = 0.0;

  for (std::size_t p = 0; p < observed; ++p) {
    const ActionId a = instance.intervals[p].action;
    double mass = 0.0;
    if (a >= 1 && static_cast<std::size_t>(a) <= m) {
      for (std::size_t z = 0; z < model.ell; ++z) mass += model.theta(z, a - 1);
    }
    score += std::log(mass > 0.0 ? mass : kUnknownActionProbability);
  }

  const std::size_t linked = std::min(observed, model.k_star);
  if (linked < 2) return score;
  Instance prefix;
  prefix.intervals.assign(instance.intervals.begin(),
                          instance.intervals.begin() + std::ptrdiff_t(linked));
  const IntervalNetwork net = instance_to_network(prefix);
  const ResolvedConstraints resolved =
      resolve_constraints(net, model.structure, linked);
  for (std::size_t to = 1; to < linked; ++to) {
    for (std::size_t from = 0; from < to; ++from) {
      if (!model.structure.contains(from, to)) continue;
      const double p = model.phi_probability(
          net.actions[from], net.actions[to], resolved.constraints(from, to),
          *net.relations(from, to));
      score += std::log(p);
    }
  }
  return score;
}

Prediction predict_from_scores(std::vector<double> log_scores) {
  if (log_scores.empty()) throw Error(ErrorCode::kNoModels, "no class models");
  Prediction out;
  std::size_t best = 0;
  for (std::size_t l = 1; l < log_scores.size(); ++l) {
    if (log_scores[l] > log_scores[best]) best = l;
  }
  double runner_up = -std::numeric_limits<double>::infinity();
  for (std::size_t l = 0; l < log_scores.size(); ++l) {
    if (l != best) runner_up = std::max(runner_up, log_scores[l]);
  }
  out.label = static_cast<int>(best);
  out.margin = log_scores[best] - runner_up;
  out.log_scores = std::move(log_scores);
  return out;
}

Prediction predict(std::span<const ClassModel> models, const Instance& instance) {
  if (models.empty()) throw Error(ErrorCode::kNoModels, "no class models");
  std::vector<double> scores;
  scores.reserve(models.size());
  for (const ClassModel& model : models) {
    scores.push_back(score_instance(model, instance));
  }
  return predict_from_scores(std::move(scores));
}

}  // namespace ibgn
