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
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ibgn {

/// The seven forward Allen relations that can hold from an earlier interval
/// to a later one under canonical ordering. The enumerator values are the
/// canonical indices used for serialization and φ vectors.
enum class Relation : std::uint8_t {
  kBefore = 0,
  kMeets = 1,
  kOverlaps = 2,
  kStarts = 3,
  kContains = 4,
  kFinishedBy = 5,
  kEqual = 6,
};

inline constexpr int kNumRelations = 7;

inline constexpr std::array<Relation, kNumRelations> kAllRelations = {
    Relation::kBefore,   Relation::kMeets,      Relation::kOverlaps,
    Relation::kStarts,   Relation::kContains,   Relation::kFinishedBy,
    Relation::kEqual};

constexpr int index_of(Relation r) { return static_cast<int>(r); }

/// Canonical short name: "b", "m", "o", "s", "c", "f" or "eq".
std::string_view relation_name(Relation r);

/// Inverse of relation_name; throws Error(kUnknownRelation).
Relation parse_relation(std::string_view name);

/// A subset of the seven relations, stored as one flag per relation in
/// canonical order (bit i set <=> relation with index i is a member).
class RelationSet {
 public:
  constexpr RelationSet() = default;
  constexpr explicit RelationSet(std::uint8_t bits) : bits_(bits & kAllBits) {}

  static constexpr RelationSet all() { return RelationSet(kAllBits); }
  static constexpr RelationSet single(Relation r) {
    return RelationSet(static_cast<std::uint8_t>(1u << index_of(r)));
  }

  constexpr std::uint8_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool contains(Relation r) const {
    return (bits_ >> index_of(r)) & 1u;
  }
  constexpr int size() const { return __builtin_popcount(bits_); }
  constexpr bool is_singleton() const { return size() == 1; }

  constexpr void insert(Relation r) { bits_ |= single(r).bits_; }

  /// Members in canonical order.
  std::vector<Relation> members() const;

  /// Position of `r` among members(); requires contains(r).
  int rank_of(Relation r) const;

  constexpr RelationSet operator&(RelationSet o) const {
    return RelationSet(static_cast<std::uint8_t>(bits_ & o.bits_));
  }
  constexpr RelationSet operator|(RelationSet o) const {
    return RelationSet(static_cast<std::uint8_t>(bits_ | o.bits_));
  }
  constexpr bool is_subset_of(RelationSet o) const {
    return (bits_ & ~o.bits_) == 0;
  }

  constexpr auto operator<=>(const RelationSet&) const = default;

 private:
  static constexpr std::uint8_t kAllBits = 0x7f;
  std::uint8_t bits_ = 0;
};

/// Comma-joined member names in canonical order, e.g. "b,m,o". The empty
/// set renders as "".
std::string to_string(RelationSet set);

/// Inverse of to_string. Whitespace around names is ignored.
RelationSet parse_relation_set(std::string_view text);

/// Half-open time span [start, end).
struct TimeSpan {
  double start;
  double end;
};

/// Relation from `first` to `second`. Throws Error(kDegenerateInterval) if
/// either span has start >= end and Error(kOrderViolation) if the pair is
/// not canonically ordered.
Relation relation_of(TimeSpan first, TimeSpan second);

/// Transitivity-table lookup for r1 ∘ r2.
RelationSet compose(Relation r1, Relation r2);

/// Recomputes r1 ∘ r2 by enumerating interval triples with integer endpoints
/// in [0, 8). Slow; kept as the reference for the frozen table.
RelationSet brute_force_compose(Relation r1, Relation r2);

/// Union of pairwise compositions. Throws Error(kEmptyRelationSet) if either
/// operand is empty.
RelationSet compose_sets(RelationSet lhs, RelationSet rhs);

constexpr RelationSet intersect(RelationSet lhs, RelationSet rhs) {
  return lhs & rhs;
}

inline constexpr int kNumCompositionClasses = 11;

struct CompositionClass {
  int index;  // 1..11
  RelationSet members;
};

/// Builds the composition classes from the table: every distinct r1 ∘ r2
/// plus ℝ (the constraint on adjacent nodes). Singletons take indices 1..7
/// in relation order; the rest are ordered by (size, flag encoding). Throws
/// Error(kClassCountMismatch) unless exactly 11 sets result.
std::vector<CompositionClass> enumerate_composition_classes();

/// Cached result of enumerate_composition_classes().
const std::vector<CompositionClass>& composition_classes();

/// Class index of `set`, or nullopt if the set is not one of the classes.
/// Throws Error(kEmptyRelationSet) for the empty set.
std::optional<int> classify_constraint(RelationSet set);

}  // namespace ibgn
