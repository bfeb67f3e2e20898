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


#include "ibgn/temporal_network.hpp"

#include <algorithm>
#include <string>

#include "ibgn/error.hpp"

namespace ibgn {

bool precedes_canonically(const Interval& a, const Interval& b) {
  if (b.is_null()) return true;
  if (a.is_null()) return false;
  return a.start < b.start || (a.start == b.start && a.end <= b.end);
}

bool is_canonical(std::span<const Interval> intervals) {
  for (std::size_t i = 1; i < intervals.size(); ++i) {
    if (!precedes_canonically(intervals[i - 1], intervals[i])) return false;
  }
  return true;
}

void canonicalize(Instance& instance) {
  std::stable_sort(instance.intervals.begin(), instance.intervals.end(),
                   [](const Interval& a, const Interval& b) {
                     if (a.is_null() != b.is_null()) return b.is_null();
                     if (a.is_null()) return false;
                     if (a.start != b.start) return a.start < b.start;
                     return a.end < b.end;
                   });
}

std::size_t observed_length(const Instance& instance) {
  std::size_t n = 0;
  while (n < instance.intervals.size() && !instance.intervals[n].is_null()) ++n;
  return n;
}

StructureMask StructureMask::chain(std::size_t nodes) {
  StructureMask mask(nodes);
  for (std::size_t i = 0; i + 1 < nodes; ++i) mask.set(i, i + 1, true);
  return mask;
}

StructureMask StructureMask::full(std::size_t nodes) {
  StructureMask mask(nodes);
  for (std::size_t j = 1; j < nodes; ++j) {
    for (std::size_t i = 0; i < j; ++i) mask.set(i, j, true);
  }
  return mask;
}

StructureMask StructureMask::from_links(
    std::size_t nodes, std::span<const std::pair<int, int>> links) {
  StructureMask mask(nodes);
  for (auto [i, j] : links) {
    if (i < 0 || j <= i || static_cast<std::size_t>(j) >= nodes) {
      throw Error(ErrorCode::kConfigInvalid,
                  "structure link (" + std::to_string(i) + "," +
                      std::to_string(j) + ") out of range");
    }
    mask.set(i, j, true);
  }
  return mask;
}

std::size_t StructureMask::link_count() const {
  std::size_t count = 0;
  for (std::size_t j = 1; j < nodes(); ++j) {
    for (std::size_t i = 0; i < j; ++i) count += contains(i, j) ? 1 : 0;
  }
  return count;
}

std::vector<std::pair<int, int>> StructureMask::links() const {
  std::vector<std::pair<int, int>> out;
  for (std::size_t i = 0; i < nodes(); ++i) {
    for (std::size_t j = i + 1; j < nodes(); ++j) {
      if (contains(i, j)) out.emplace_back(int(i), int(j));
    }
  }
  return out;
}

IntervalNetwork instance_to_network(const Instance& instance) {
  const std::size_t n = instance.intervals.size();
  IntervalNetwork net;
  net.actions.reserve(n);
  for (const Interval& iv : instance.intervals) net.actions.push_back(iv.action);
  net.relations = UpperTriangular<std::optional<Relation>>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Interval& a = instance.intervals[i];
    if (a.is_null()) continue;
    for (std::size_t j = i + 1; j < n; ++j) {
      const Interval& b = instance.intervals[j];
      if (b.is_null()) continue;
      net.relations(i, j) = relation_of(a.span(), b.span());
    }
  }
  return net;
}

ConsistencyReport check_consistency(const IntervalNetwork& network) {
  ConsistencyReport report;
  const std::size_t n = network.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto& rij = network.relations(i, j);
      if (!rij) continue;
      for (std::size_t k = j + 1; k < n; ++k) {
        const auto& rjk = network.relations(j, k);
        const auto& rik = network.relations(i, k);
        if (!rjk || !rik) continue;
        if (!compose(*rij, *rjk).contains(*rik)) {
          report.consistent = false;
          report.violations.push_back({int(i), int(j), int(k)});
        }
      }
    }
  }
  return report;
}

RelationSet compute_constraint(const RelationSetMatrix& x, std::size_t from,
                               std::size_t to) {
  if (to == from + 1) return RelationSet::all();
  RelationSet out = RelationSet::all();
  for (std::size_t mid = from + 1; mid < to; ++mid) {
    out = intersect(out, compose_sets(x(from, mid), x(mid, to)));
  }
  if (out.empty()) {
    throw Error(ErrorCode::kEmptyConstraint,
                "empty interval relation constraint on link (" +
                    std::to_string(from) + "," + std::to_string(to) + ")");
  }
  return out;
}

ResolvedConstraints resolve_constraints(const IntervalNetwork& network,
                                        const StructureMask& mask,
                                        std::size_t nodes) {
  ResolvedConstraints out{RelationSetMatrix(nodes), RelationSetMatrix(nodes)};
  for (std::size_t to = 1; to < nodes; ++to) {
    for (std::size_t from = to; from-- > 0;) {
      const RelationSet c = compute_constraint(out.x, from, to);
      out.constraints(from, to) = c;
      if (mask.contains(from, to)) {
        const auto& r = network.relations(from, to);
        if (!r) {
          throw Error(ErrorCode::kInternalInvariant,
                      "structure link with a null endpoint inside the "
                      "observed prefix");
        }
        out.x(from, to) = RelationSet::single(*r);
      } else {
        out.x(from, to) = c;
      }
    }
  }
  return out;
}

Instance pad_nulls(const Instance& instance, std::size_t k_star) {
  if (instance.intervals.size() > k_star) {
    throw Error(ErrorCode::kInstanceTooLong,
                "instance of length " +
                    std::to_string(instance.intervals.size()) +
                    " exceeds k* = " + std::to_string(k_star));
  }
  Instance out = instance;
  out.intervals.resize(k_star, Interval::null());
  return out;
}

}  // namespace ibgn
