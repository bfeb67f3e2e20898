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


#include "ibgn/interval_algebra.hpp"

#include <algorithm>
#include <vector>

#include <gtest/gtest.h>

#include "ibgn/error.hpp"

namespace ibgn {
namespace {

constexpr Relation b = Relation::kBefore, m = Relation::kMeets,
                   o = Relation::kOverlaps, s = Relation::kStarts,
                   c = Relation::kContains, f = Relation::kFinishedBy,
                   eq = Relation::kEqual;

RelationSet set_of(std::initializer_list<Relation> rs) {
  RelationSet out;
  for (Relation r : rs) out.insert(r);
  return out;
}

TEST(RelationOf, TimestampConditions) {
  EXPECT_EQ(relation_of({0, 2}, {3, 5}), b);
  EXPECT_EQ(relation_of({0, 2}, {2, 5}), m);
  EXPECT_EQ(relation_of({0, 3}, {1, 5}), o);
  EXPECT_EQ(relation_of({0, 3}, {0, 5}), s);
  EXPECT_EQ(relation_of({0, 5}, {1, 3}), c);
  EXPECT_EQ(relation_of({0, 5}, {1, 5}), f);
  EXPECT_EQ(relation_of({0, 3}, {0, 3}), eq);
}

TEST(RelationOf, RejectsBadInput) {
  try {
    relation_of({3, 5}, {0, 2});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOrderViolation);
  }
  try {
    relation_of({0, 5}, {0, 3});  // equal starts, longer first
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOrderViolation);
  }
  try {
    relation_of({2, 2}, {3, 4});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateInterval);
  }
}

TEST(RelationOf, ConditionsPartitionCanonicalPairs) {
  // Each canonically ordered pair on a small grid matches exactly one
  // defining condition.
  for (int s1 = 0; s1 < 6; ++s1)
    for (int e1 = s1 + 1; e1 < 7; ++e1)
      for (int s2 = s1; s2 < 6; ++s2)
        for (int e2 = s2 + 1; e2 < 7; ++e2) {
          if (s1 == s2 && e1 > e2) continue;
          const int matches = (e1 < s2) + (e1 == s2) +
                              (s1 < s2 && s2 < e1 && e1 < e2) +
                              (s1 == s2 && e1 < e2) +
                              (s1 < s2 && e2 < e1) +
                              (s1 < s2 && e1 == e2 && s2 < e1) +
                              (s1 == s2 && e1 == e2);
          EXPECT_EQ(matches, 1) << s1 << e1 << s2 << e2;
        }
}

TEST(Compose, QuotedEntries) {
  EXPECT_EQ(compose(m, s), set_of({m}));
  EXPECT_EQ(compose(s, f), set_of({b, m, o}));
  EXPECT_EQ(compose(b, b), set_of({b}));
}

TEST(Compose, EqualIsIdentity) {
  for (Relation r : kAllRelations) {
    EXPECT_EQ(compose(eq, r), RelationSet::single(r));
    EXPECT_EQ(compose(r, eq), RelationSet::single(r));
  }
}

TEST(Compose, MatchesBruteForceOnAllPairs) {
  for (Relation r1 : kAllRelations) {
    for (Relation r2 : kAllRelations) {
      const RelationSet table = compose(r1, r2);
      EXPECT_EQ(table, brute_force_compose(r1, r2))
          << relation_name(r1) << " o " << relation_name(r2);
      EXPECT_FALSE(table.empty());
      EXPECT_TRUE(table.is_subset_of(RelationSet::all()));
    }
  }
}

TEST(BruteForceCompose, Examples) {
  EXPECT_EQ(brute_force_compose(m, m), set_of({b}));
  EXPECT_EQ(brute_force_compose(m, s), set_of({m}));
  EXPECT_EQ(brute_force_compose(eq, c), set_of({c}));
}

TEST(ComposeSets, Examples) {
  EXPECT_EQ(compose_sets(set_of({m}), set_of({s})), set_of({m}));
  EXPECT_EQ(compose_sets(RelationSet::all(), set_of({eq})), RelationSet::all());
  EXPECT_EQ(compose_sets(set_of({s, f}), set_of({eq})), set_of({s, f}));
}

TEST(ComposeSets, EmptyOperandIsAnError) {
  try {
    compose_sets(RelationSet{}, RelationSet::all());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyRelationSet);
  }
}

TEST(Intersect, Basics) {
  const RelationSet x = set_of({o, c, f});
  EXPECT_EQ(intersect(RelationSet::all(), x), x);
  EXPECT_EQ(intersect(set_of({b, m, o}), set_of({m})), set_of({m}));
  EXPECT_EQ(intersect(x, x), x);
  EXPECT_TRUE(intersect(set_of({b}), set_of({m})).empty());
}

TEST(CompositionClasses, ElevenWithExpectedSizes) {
  const auto classes = enumerate_composition_classes();
  ASSERT_EQ(classes.size(), 11u);
  std::vector<int> sizes;
  for (const auto& cls : classes) sizes.push_back(cls.members.size());
  EXPECT_EQ(sizes, (std::vector<int>{1, 1, 1, 1, 1, 1, 1, 3, 3, 5, 7}));
  for (int i = 0; i < 7; ++i) {
    EXPECT_EQ(classes[i].index, i + 1);
    EXPECT_EQ(classes[i].members, RelationSet::single(kAllRelations[i]));
  }
  EXPECT_EQ(classes[7].members, set_of({b, m, o}));
  EXPECT_EQ(classes[8].members, set_of({o, c, f}));
  EXPECT_EQ(classes[9].members, set_of({b, m, o, c, f}));
  EXPECT_EQ(classes[10].members, RelationSet::all());
}

TEST(CompositionClasses, EveryPairCompositionIsAClass) {
  for (Relation r1 : kAllRelations) {
    for (Relation r2 : kAllRelations) {
      EXPECT_TRUE(classify_constraint(compose(r1, r2)).has_value());
    }
  }
}

TEST(ClassifyConstraint, Lookup) {
  EXPECT_EQ(classify_constraint(RelationSet::all()), 11);
  EXPECT_EQ(classify_constraint(set_of({m})), 2);
  EXPECT_EQ(classify_constraint(set_of({b, o})), std::nullopt);
  EXPECT_THROW(classify_constraint(RelationSet{}), Error);
}

TEST(CompositionClasses, AssociativeOverAllClassTriples) {
  const auto& classes = composition_classes();
  for (const auto& x : classes)
    for (const auto& y : classes)
      for (const auto& z : classes) {
        EXPECT_EQ(compose_sets(compose_sets(x.members, y.members), z.members),
                  compose_sets(x.members, compose_sets(y.members, z.members)));
      }
}

TEST(RelationSetText, NamesAndRoundTrip) {
  EXPECT_EQ(to_string(set_of({b, m, o})), "b,m,o");
  EXPECT_EQ(to_string(RelationSet::single(eq)), "eq");
  EXPECT_EQ(to_string(RelationSet{}), "");
  for (int bits = 0; bits < 128; ++bits) {
    const RelationSet set(static_cast<std::uint8_t>(bits));
    EXPECT_EQ(parse_relation_set(to_string(set)), set);
  }
  EXPECT_THROW(parse_relation("x"), Error);
}

TEST(RelationSet, RankOfFollowsCanonicalOrder) {
  const RelationSet set = set_of({o, c, f});
  EXPECT_EQ(set.rank_of(o), 0);
  EXPECT_EQ(set.rank_of(c), 1);
  EXPECT_EQ(set.rank_of(f), 2);
}

}  // namespace
}  // namespace ibgn
