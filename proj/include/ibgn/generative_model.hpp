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

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ibgn/interval_algebra.hpp"
#include "ibgn/matrix.hpp"
#include "ibgn/random.hpp"
#include "ibgn/temporal_network.hpp"

namespace ibgn {

/// φ is keyed by the action pair of a link and the raw constraint set it
/// was sampled under.
struct PhiKey {
  ActionId from_action;
  ActionId to_action;
  RelationSet constraint;

  auto operator<=>(const PhiKey&) const = default;
};

/// Probabilities over the members of the key's constraint, in canonical
/// relation order.
using PhiTable = std::map<PhiKey, std::vector<double>>;

/// Learned parameters for one activity class.
struct ClassModel {
  std::size_t k_star = 0;
  std::size_t ell = 0;                // table budget
  std::vector<double> alpha;          // ell
  Matrix<double> beta;                // ell × M
  Matrix<double> theta;               // ell × M, rows sum to 1
  StructureMask structure;
  PhiTable phi;
  std::vector<std::string> action_vocab;  // M names; action id = index + 1
  std::vector<std::size_t> size_histogram;  // [k] = instances of length k

  std::size_t num_actions() const { return action_vocab.size(); }

  /// Probability of `relation` on a link keyed by (from, to, constraint);
  /// uniform over the constraint when the key is unseen.
  double phi_probability(ActionId from, ActionId to, RelationSet constraint,
                         Relation relation) const;

  bool operator==(const ClassModel&) const = default;
};

/// Throws Error(kConfigInvalid) when dimensions or distributions are off.
void validate(const ClassModel& model);

/// CRP weights for node `n` (1-based) given counts of the occupied tables.
/// Entry ζ < occupied.size() is ∝ nt_ζ/(n+α_ζ-1); the trailing entry, present
/// only while occupied.size() < alpha.size(), is the new table, ∝
/// α_new/(n+α_new-1). The result is normalized; at the budget the new-table
/// mass is thereby spread proportionally over the occupied tables.
std::vector<double> crp_table_distribution(std::span<const int> occupied,
                                           std::size_t n,
                                           std::span<const double> alpha);

struct GenerationState {
  std::vector<int> tables;
  std::vector<ActionId> actions;
  std::vector<int> nt;  // occupancy of tables 0..nt.size()-1
};

struct NodeDraw {
  int table;
  ActionId action;
};

/// Draws a table by the CRP and an action from that table's θ row, and
/// records both in `state`.
NodeDraw sample_node(GenerationState& state, const ClassModel& model,
                     Rng& rng);

/// A generated network: singleton sets on structure links and the resolved
/// constraint elsewhere.
struct GeneratedNetwork {
  std::vector<int> tables;
  std::vector<ActionId> actions;
  RelationSetMatrix x;
  RelationSetMatrix constraints;

  std::size_t size() const { return actions.size(); }
  /// Converts to an IntervalNetwork when every pair holds a singleton.
  std::optional<IntervalNetwork> as_interval_network() const;
};

/// Runs the generative process for a network of `k` nodes.
GeneratedNetwork sample_network(const ClassModel& model, std::size_t k,
                                Rng& rng);

/// Draws a network size from the model's size histogram (sizes >= 1).
std::size_t sample_size(const ClassModel& model, Rng& rng);

/// Assigns integer endpoints on [0, 2k) so that every pair's relation lies in
/// its resolved set and the intervals are canonically ordered. Returns
/// nullopt if no realization exists.
std::optional<std::vector<Interval>> realize_timestamps(
    const GeneratedNetwork& network);

}  // namespace ibgn
