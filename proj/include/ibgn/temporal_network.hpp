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

#include <array>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ibgn/interval_algebra.hpp"
#include "ibgn/matrix.hpp"

namespace ibgn {

/// Vocabulary index of an atomic action. Real actions are 1..M.
using ActionId = int;
inline constexpr ActionId kNullAction = 0;
/// Action absent from a model's vocabulary.
inline constexpr ActionId kUnknownAction = -1;

inline constexpr double kNullTime = std::numeric_limits<double>::infinity();

struct Interval {
  ActionId action = kNullAction;
  double start = kNullTime;
  double end = kNullTime;

  static constexpr Interval null() { return {}; }
  bool is_null() const { return action == kNullAction; }
  TimeSpan span() const { return {start, end}; }

  bool operator==(const Interval&) const = default;
};

struct Instance {
  int label = -1;  // class index, -1 when unlabeled
  std::vector<Interval> intervals;

  std::size_t size() const { return intervals.size(); }
  bool operator==(const Instance&) const = default;
};

/// True if `a` may precede `b` in a canonically ordered instance.
bool precedes_canonically(const Interval& a, const Interval& b);

bool is_canonical(std::span<const Interval> intervals);

/// Stable sort by (start, end); null intervals sort to the rear.
void canonicalize(Instance& instance);

/// Number of leading non-null intervals.
std::size_t observed_length(const Instance& instance);

/// Nodes are intervals; relations(i, j) for i < j is the relation from node
/// i to node j, or nullopt when either endpoint is a null node.
struct IntervalNetwork {
  std::vector<ActionId> actions;
  UpperTriangular<std::optional<Relation>> relations;

  std::size_t size() const { return actions.size(); }
};

/// Set of links (i, j), i < j, whose relations are modeled. Node indices
/// are zero-based.
class StructureMask {
 public:
  StructureMask() = default;
  explicit StructureMask(std::size_t nodes) : links_(nodes, 0) {}

  static StructureMask chain(std::size_t nodes);
  static StructureMask full(std::size_t nodes);
  static StructureMask from_links(std::size_t nodes,
                                  std::span<const std::pair<int, int>> links);

  std::size_t nodes() const { return links_.size(); }

  /// False for pairs outside the mask's node range.
  bool contains(std::size_t i, std::size_t j) const {
    return j < links_.size() && i < j && links_(i, j) != 0;
  }
  void set(std::size_t i, std::size_t j, bool on) { links_(i, j) = on ? 1 : 0; }

  std::size_t link_count() const;
  std::vector<std::pair<int, int>> links() const;

  bool operator==(const StructureMask&) const = default;

 private:
  UpperTriangular<char> links_;
};

/// Builds the full pairwise relation matrix of an instance.
IntervalNetwork instance_to_network(const Instance& instance);

struct ConsistencyReport {
  bool consistent = true;
  std::vector<std::array<int, 3>> violations;  // (i, j, k), zero-based
};

/// Checks r(i,k) ∈ r(i,j) ∘ r(j,k) for every triangle with three non-null
/// relations and reports every violating triangle.
ConsistencyReport check_consistency(const IntervalNetwork& network);

/// Partially resolved relation sets: singletons on structure links, computed
/// constraints elsewhere.
using RelationSetMatrix = UpperTriangular<RelationSet>;

/// Interval relation constraint for (from, to): ℝ for adjacent nodes,
/// otherwise ⋂_{m=from+1}^{to-1} x(from, m) ∘ x(m, to). Every x(p, q) with
/// from <= p < q <= to other than (from, to) must already be resolved.
/// Throws Error(kEmptyConstraint) if the intersection is empty.
RelationSet compute_constraint(const RelationSetMatrix& x, std::size_t from,
                               std::size_t to);

struct ResolvedConstraints {
  RelationSetMatrix x;            // resolved relation sets
  RelationSetMatrix constraints;  // c(n', n) for every pair
};

/// Resolves constraints over the first `nodes` nodes of a network, visiting
/// n = 1.. in ascending order and n' = n-1 down to 0. Structure links take
/// the observed relation; other pairs take their constraint.
ResolvedConstraints resolve_constraints(const IntervalNetwork& network,
                                        const StructureMask& mask,
                                        std::size_t nodes);

/// Appends null intervals up to `k_star`. Throws Error(kInstanceTooLong).
Instance pad_nulls(const Instance& instance, std::size_t k_star);

}  // namespace ibgn
