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


#include "ibgn/generative_model.hpp"

#include <cmath>
#include <string>

#include "ibgn/error.hpp"

namespace ibgn {
namespace {

constexpr double kDistributionTolerance = 1e-9;

bool sums_to_one(std::span<const double> v) {
  double total = 0.0;
  for (double p : v) {
    if (!(p >= 0.0)) return false;
    total += p;
  }
  return std::abs(total - 1.0) <= kDistributionTolerance;
}

}  // namespace

double ClassModel::phi_probability(ActionId from, ActionId to,
                                   RelationSet constraint,
                                   Relation relation) const {
  if (!constraint.contains(relation)) return 0.0;
  const auto it = phi.find(PhiKey{from, to, constraint});
  if (it == phi.end()) return 1.0 / constraint.size();
  return it->second[constraint.rank_of(relation)];
}

void validate(const ClassModel& model) {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kConfigInvalid, "invalid class model: " + what);
  };
  const std::size_t m = model.num_actions();
  if (model.ell == 0) fail("table budget is zero");
  if (model.alpha.size() != model.ell) fail("alpha size != ell");
  if (model.beta.rows() != model.ell || model.beta.cols() != m)
    fail("beta shape");
  if (model.theta.rows() != model.ell || model.theta.cols() != m)
    fail("theta shape");
  for (double a : model.alpha) {
    if (!(a > 0.0)) fail("alpha must be positive");
  }
  for (double b : model.beta.data()) {
    if (!(b > 0.0)) fail("beta must be positive");
  }
  for (std::size_t z = 0; z < model.ell; ++z) {
    if (!sums_to_one(model.theta.row(z))) fail("theta row does not sum to 1");
  }
  for (const auto& [key, probs] : model.phi) {
    if (key.constraint.empty()) fail("phi keyed by an empty constraint");
    if (probs.size() != static_cast<std::size_t>(key.constraint.size()))
      fail("phi vector length != constraint size");
    if (!sums_to_one(probs)) fail("phi vector does not sum to 1");
  }
  if (model.structure.nodes() != model.k_star) fail("structure size != k*");
}

std::vector<double> crp_table_distribution(std::span<const int> occupied,
                                           std::size_t n,
                                           std::span<const double> alpha) {
  const std::size_t budget = alpha.size();
  const std::size_t tables = occupied.size();
  std::vector<double> weights;
  weights.reserve(tables + 1);
  const double nd = static_cast<double>(n);
  for (std::size_t z = 0; z < tables; ++z) {
    weights.push_back(occupied[z] / (nd + alpha[z] - 1.0));
  }
  if (tables < budget) {
    const double a = alpha[tables];
    weights.push_back(a / (nd + a - 1.0));
  }
  double total = 0.0;
  for (double w : weights) total += w;
  for (double& w : weights) w /= total;
  return weights;
}

NodeDraw sample_node(GenerationState& state, const ClassModel& model,
                     Rng& rng) {
  const std::size_t n = state.tables.size() + 1;
  const auto dist = crp_table_distribution(state.nt, n, model.alpha);
  const auto table = static_cast<int>(sample_categorical(rng, dist));
  if (static_cast<std::size_t>(table) == state.nt.size()) state.nt.push_back(0);
  ++state.nt[table];
  const auto action =
      static_cast<ActionId>(sample_categorical(rng, model.theta.row(table))) + 1;
  state.tables.push_back(table);
  state.actions.push_back(action);
  return {table, action};
}

std::optional<IntervalNetwork> GeneratedNetwork::as_interval_network() const {
  IntervalNetwork net;
  net.actions = actions;
  net.relations = UpperTriangular<std::optional<Relation>>(size());
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = i + 1; j < size(); ++j) {
      if (!x(i, j).is_singleton()) return std::nullopt;
      net.relations(i, j) = x(i, j).members().front();
    }
  }
  return net;
}

GeneratedNetwork sample_network(const ClassModel& model, std::size_t k,
                                Rng& rng) {
  if (k < 1 || k > model.k_star) {
    throw Error(ErrorCode::kConfigInvalid,
                "network size " + std::to_string(k) + " outside [1, k*=" +
                    std::to_string(model.k_star) + "]");
  }
  GenerationState state;
  for (std::size_t n = 0; n < k; ++n) sample_node(state, model, rng);

  GeneratedNetwork out{state.tables, state.actions, RelationSetMatrix(k),
                       RelationSetMatrix(k)};
  std::vector<double> weights;
  for (std::size_t to = 1; to < k; ++to) {
    for (std::size_t from = to; from-- > 0;) {
      const RelationSet c = compute_constraint(out.x, from, to);
      out.constraints(from, to) = c;
      if (!model.structure.contains(from, to)) {
        out.x(from, to) = c;
        continue;
      }
      const auto members = c.members();
      weights.assign(members.size(), 0.0);
      for (std::size_t r = 0; r < members.size(); ++r) {
        weights[r] = model.phi_probability(out.actions[from], out.actions[to],
                                           c, members[r]);
      }
      out.x(from, to) = RelationSet::single(members[sample_categorical(rng, weights)]);
    }
  }
  return out;
}

std::size_t sample_size(const ClassModel& model, Rng& rng) {
  std::vector<double> weights(model.size_histogram.size(), 0.0);
  double total = 0.0;
  for (std::size_t k = 1; k < weights.size() && k <= model.k_star; ++k) {
    weights[k] = static_cast<double>(model.size_histogram[k]);
    total += weights[k];
  }
  if (total <= 0.0) return model.k_star;
  return sample_categorical(rng, weights);
}

namespace {

class Realizer {
 public:
  explicit Realizer(const GeneratedNetwork& net)
      : net_(net), k_(net.size()), grid_(static_cast<int>(2 * net.size())) {
    spans_.resize(k_);
  }

  bool solve(std::size_t node) {
    if (node == k_) return true;
    if (++visits_ > kMaxVisits) return false;
    const int min_start = node == 0 ? 0 : static_cast<int>(spans_[node - 1].start);
    for (int s = min_start; s < grid_; ++s) {
      for (int e = s + 1; e < grid_; ++e) {
        const TimeSpan span{double(s), double(e)};
        if (node > 0) {
          const TimeSpan& prev = spans_[node - 1];
          if (prev.start == span.start && prev.end > span.end) continue;
        }
        if (!fits(node, span)) continue;
        spans_[node] = span;
        if (solve(node + 1)) return true;
        if (visits_ > kMaxVisits) return false;
      }
    }
    return false;
  }

  const std::vector<TimeSpan>& spans() const { return spans_; }

 private:
  bool fits(std::size_t node, TimeSpan span) const {
    for (std::size_t i = 0; i < node; ++i) {
      if (!net_.x(i, node).contains(relation_of(spans_[i], span))) return false;
    }
    return true;
  }

  static constexpr std::size_t kMaxVisits = 5'000'000;
  const GeneratedNetwork& net_;
  std::size_t k_;
  int grid_;
  std::size_t visits_ = 0;
  std::vector<TimeSpan> spans_;
};

}  // namespace

std::optional<std::vector<Interval>> realize_timestamps(
    const GeneratedNetwork& network) {
  Realizer realizer(network);
  if (!realizer.solve(0)) return std::nullopt;
  std::vector<Interval> out;
  out.reserve(network.size());
  for (std::size_t i = 0; i < network.size(); ++i) {
    const TimeSpan& s = realizer.spans()[i];
    out.push_back({network.actions[i], s.start, s.end});
  }
  return out;
}

}  // namespace ibgn
