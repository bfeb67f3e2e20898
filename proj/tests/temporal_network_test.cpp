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

#include <functional>
#include <set>
#include <tuple>

#include <gtest/gtest.h>

#include "ibgn/error.hpp"
#include "test_support.hpp"

namespace ibgn {
namespace {

using testing::random_instance;

Instance make(std::initializer_list<Interval> ivs) {
  Instance inst;
  inst.label = 0;
  inst.intervals = ivs;
  return inst;
}

TEST(InstanceToNetwork, MeetPair) {
  const auto net = instance_to_network(make({{1, 0, 2}, {2, 2, 5}}));
  ASSERT_EQ(net.size(), 2u);
  EXPECT_EQ(net.relations(0, 1), Relation::kMeets);
}

TEST(InstanceToNetwork, SingleInterval) {
  const auto net = instance_to_network(make({{1, 0, 2}}));
  EXPECT_EQ(net.size(), 1u);
}

TEST(InstanceToNetwork, ThreeIntervals) {
  const auto net = instance_to_network(make({{1, 0, 4}, {2, 1, 3}, {1, 5, 6}}));
  EXPECT_EQ(net.relations(0, 1), Relation::kContains);
  EXPECT_EQ(net.relations(0, 2), Relation::kBefore);
  EXPECT_EQ(net.relations(1, 2), Relation::kBefore);
}

TEST(InstanceToNetwork, NullNodesGetNullRelations) {
  const auto net = instance_to_network(pad_nulls(make({{1, 0, 2}, {2, 3, 4}}), 4));
  EXPECT_EQ(net.relations(0, 1), Relation::kBefore);
  EXPECT_FALSE(net.relations(0, 2).has_value());
  EXPECT_FALSE(net.relations(1, 3).has_value());
  EXPECT_FALSE(net.relations(2, 3).has_value());
}

TEST(InstanceToNetwork, RejectsNonCanonicalOrder) {
  try {
    instance_to_network(make({{1, 3, 4}, {2, 0, 2}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOrderViolation);
  }
}

IntervalNetwork triangle(Relation r12, Relation r23, Relation r13) {
  IntervalNetwork net;
  net.actions = {1, 1, 1};
  net.relations = UpperTriangular<std::optional<Relation>>(3);
  net.relations(0, 1) = r12;
  net.relations(1, 2) = r23;
  net.relations(0, 2) = r13;
  return net;
}

TEST(CheckConsistency, Triangles) {
  EXPECT_TRUE(check_consistency(
                  triangle(Relation::kMeets, Relation::kStarts, Relation::kMeets))
                  .consistent);
  const auto bad = check_consistency(
      triangle(Relation::kMeets, Relation::kStarts, Relation::kBefore));
  EXPECT_FALSE(bad.consistent);
  ASSERT_EQ(bad.violations.size(), 1u);
  EXPECT_EQ(bad.violations[0], (std::array<int, 3>{0, 1, 2}));
}

TEST(CheckConsistency, SkipsTrianglesWithNullLinks) {
  auto net = triangle(Relation::kMeets, Relation::kStarts, Relation::kBefore);
  net.relations(0, 2).reset();
  EXPECT_TRUE(check_consistency(net).consistent);
}

TEST(CheckConsistency, TimestampNetworksAreConsistent) {
  Rng rng = make_rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const auto inst = random_instance(rng, 2 + trial % 7, 10, 3);
    EXPECT_TRUE(check_consistency(instance_to_network(inst)).consistent);
  }
}

TEST(PathConsistency, ChainedCompositionContainsDirectRelation) {
  Rng rng = make_rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = 3 + trial % 4;  // up to 6 nodes
    const auto net = instance_to_network(random_instance(rng, k, 9, 2));
    // Every increasing path i -> ... -> j.
    std::function<void(std::size_t, std::size_t, RelationSet)> walk =
        [&](std::size_t start, std::size_t at, RelationSet chained) {
          for (std::size_t next = at + 1; next < k; ++next) {
            const RelationSet step = RelationSet::single(*net.relations(at, next));
            const RelationSet extended =
                at == start ? step : compose_sets(chained, step);
            EXPECT_TRUE(extended.contains(*net.relations(start, next)));
            walk(start, next, extended);
          }
        };
    for (std::size_t i = 0; i < k; ++i) walk(i, i, RelationSet::all());
  }
}

TEST(ComputeConstraint, AdjacentPairIsUniversal) {
  RelationSetMatrix x(4, RelationSet::single(Relation::kBefore));
  EXPECT_EQ(compute_constraint(x, 1, 2), RelationSet::all());
}

TEST(ComputeConstraint, MeetsThenStarts) {
  RelationSetMatrix x(3);
  x(0, 1) = RelationSet::single(Relation::kMeets);
  x(1, 2) = RelationSet::single(Relation::kStarts);
  EXPECT_EQ(compute_constraint(x, 0, 2), RelationSet::single(Relation::kMeets));
}

TEST(ComputeConstraint, EmptyIntersectionIsAnError) {
  RelationSetMatrix x(4);
  x(0, 1) = RelationSet::single(Relation::kMeets);
  x(1, 3) = RelationSet::single(Relation::kStarts);  // -> {m}
  x(0, 2) = RelationSet::single(Relation::kBefore);
  x(2, 3) = RelationSet::single(Relation::kBefore);  // -> {b}
  try {
    compute_constraint(x, 0, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyConstraint);
  }
}

// Every relation r14 realizable with the other five relations fixed must
// lie in the full-structure constraint (x12∘x24) ∩ (x13∘x34).
TEST(ComputeConstraint, FourNodeFullStructureAgainstRealizations) {
  using Key = std::tuple<int, int, int, int, int>;
  std::map<Key, RelationSet> realized;
  std::vector<TimeSpan> spans;
  for (int s = 0; s < 8; ++s)
    for (int e = s + 1; e < 8; ++e) spans.push_back({double(s), double(e)});
  auto ordered = [](TimeSpan a, TimeSpan b) {
    return a.start < b.start || (a.start == b.start && a.end <= b.end);
  };
  for (const auto& a : spans)
    for (const auto& b : spans) {
      if (!ordered(a, b)) continue;
      for (const auto& c : spans) {
        if (!ordered(b, c)) continue;
        for (const auto& d : spans) {
          if (!ordered(c, d)) continue;
          const Key key{index_of(relation_of(a, b)), index_of(relation_of(a, c)),
                        index_of(relation_of(b, c)), index_of(relation_of(b, d)),
                        index_of(relation_of(c, d))};
          realized[key].insert(relation_of(a, d));
        }
      }
    }
  ASSERT_FALSE(realized.empty());
  for (const auto& [key, r14s] : realized) {
    RelationSetMatrix x(4);
    x(0, 1) = RelationSet::single(kAllRelations[std::get<0>(key)]);
    x(0, 2) = RelationSet::single(kAllRelations[std::get<1>(key)]);
    x(1, 2) = RelationSet::single(kAllRelations[std::get<2>(key)]);
    x(1, 3) = RelationSet::single(kAllRelations[std::get<3>(key)]);
    x(2, 3) = RelationSet::single(kAllRelations[std::get<4>(key)]);
    const RelationSet direct = intersect(compose_sets(x(0, 1), x(1, 3)),
                                         compose_sets(x(0, 2), x(2, 3)));
    const RelationSet c14 = compute_constraint(x, 0, 3);
    EXPECT_EQ(c14, direct);
    EXPECT_TRUE(r14s.is_subset_of(c14));
  }
}

TEST(ResolveConstraints, ObservedRelationLiesInConstraintForEveryMask) {
  Rng rng = make_rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t k = 2 + trial % 7;
    const auto inst = random_instance(rng, k, 12, 3);
    const auto net = instance_to_network(inst);
    StructureMask random_mask(k);
    for (std::size_t j = 1; j < k; ++j)
      for (std::size_t i = 0; i < j; ++i)
        random_mask.set(i, j, uniform01(rng) < 0.5);
    for (const auto& mask :
         {StructureMask::chain(k), StructureMask::full(k), random_mask}) {
      const auto resolved = resolve_constraints(net, mask, k);
      for (std::size_t j = 1; j < k; ++j)
        for (std::size_t i = 0; i < j; ++i) {
          EXPECT_TRUE(resolved.constraints(i, j).contains(*net.relations(i, j)));
          EXPECT_TRUE(resolved.x(i, j).contains(*net.relations(i, j)));
        }
    }
  }
}

TEST(StructureMask, ChainAndFull) {
  EXPECT_EQ(StructureMask::chain(4).links(),
            (std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {2, 3}}));
  EXPECT_EQ(StructureMask::full(4).link_count(), 6u);
  EXPECT_FALSE(StructureMask::full(3).contains(1, 5));
}

TEST(PadNulls, AppendsAtTheRear) {
  const Instance inst = make({{1, 0, 2}, {2, 1, 3}});
  const Instance padded = pad_nulls(inst, 4);
  ASSERT_EQ(padded.size(), 4u);
  EXPECT_EQ(padded.intervals[0], inst.intervals[0]);
  EXPECT_EQ(padded.intervals[1], inst.intervals[1]);
  EXPECT_TRUE(padded.intervals[2].is_null());
  EXPECT_TRUE(padded.intervals[3].is_null());
  EXPECT_EQ(pad_nulls(padded, 4), padded);
  EXPECT_EQ(pad_nulls(Instance{}, 3).size(), 3u);
  EXPECT_TRUE(is_canonical(padded.intervals));
}

TEST(PadNulls, TooLongIsAnError) {
  try {
    pad_nulls(make({{1, 0, 2}, {2, 1, 3}}), 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInstanceTooLong);
  }
}

TEST(Canonicalize, SortsByStartThenEnd) {
  Instance inst = make({{1, 2, 5}, {2, 0, 4}, {3, 0, 1}});
  canonicalize(inst);
  EXPECT_TRUE(is_canonical(inst.intervals));
  EXPECT_EQ(inst.intervals[0].action, 3);
  EXPECT_EQ(inst.intervals[1].action, 2);
}

}  // namespace
}  // namespace ibgn
