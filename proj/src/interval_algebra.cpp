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
#include <cctype>
#include <string>

#include "ibgn/error.hpp"

namespace ibgn {
namespace {

constexpr std::array<std::string_view, kNumRelations> kNames = {
    "b", "m", "o", "s", "c", "f", "eq"};

// kTransitivity[r1][r2] = r1 ∘ r2 as flag bits. Generated by
// brute_force_compose; the test suite re-derives every cell.
constexpr std::uint8_t kTransitivity[kNumRelations][kNumRelations] = {
    // b     m     o     s     c     f     eq
    {0x01, 0x01, 0x01, 0x01, 0x01, 0x01, 0x01},  // b
    {0x01, 0x01, 0x01, 0x02, 0x01, 0x01, 0x02},  // m
    {0x01, 0x01, 0x07, 0x04, 0x37, 0x07, 0x04},  // o
    {0x01, 0x01, 0x07, 0x08, 0x37, 0x07, 0x08},  // s
    {0x37, 0x34, 0x34, 0x34, 0x10, 0x10, 0x10},  // c
    {0x01, 0x02, 0x04, 0x04, 0x10, 0x20, 0x20},  // f
    {0x01, 0x02, 0x04, 0x08, 0x10, 0x20, 0x40},  // eq
};

bool canonically_ordered(TimeSpan first, TimeSpan second) {
  return first.start < second.start ||
         (first.start == second.start && first.end <= second.end);
}

// Relation between canonically ordered, non-degenerate spans.
Relation classify(TimeSpan a, TimeSpan b) {
  if (a.start < b.start) {
    if (a.end < b.start) return Relation::kBefore;
    if (a.end == b.start) return Relation::kMeets;
    if (a.end < b.end) return Relation::kOverlaps;
    if (a.end == b.end) return Relation::kFinishedBy;
    return Relation::kContains;
  }
  return a.end < b.end ? Relation::kStarts : Relation::kEqual;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

}  // namespace

std::string_view relation_name(Relation r) { return kNames[index_of(r)]; }

Relation parse_relation(std::string_view name) {
  name = trim(name);
  for (Relation r : kAllRelations) {
    if (kNames[index_of(r)] == name) return r;
  }
  throw Error(ErrorCode::kUnknownRelation,
              "unknown relation name '" + std::string(name) + "'");
}

std::vector<Relation> RelationSet::members() const {
  std::vector<Relation> out;
  for (Relation r : kAllRelations) {
    if (contains(r)) out.push_back(r);
  }
  return out;
}

int RelationSet::rank_of(Relation r) const {
  const unsigned below = bits_ & ((1u << index_of(r)) - 1u);
  return __builtin_popcount(below);
}

std::string to_string(RelationSet set) {
  std::string out;
  for (Relation r : set.members()) {
    if (!out.empty()) out += ',';
    out += relation_name(r);
  }
  return out;
}

RelationSet parse_relation_set(std::string_view text) {
  RelationSet out;
  if (trim(text).empty()) return out;
  while (true) {
    const auto comma = text.find(',');
    out.insert(parse_relation(text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

Relation relation_of(TimeSpan first, TimeSpan second) {
  if (!(first.start < first.end) || !(second.start < second.end)) {
    throw Error(ErrorCode::kDegenerateInterval,
                "interval start must precede its end");
  }
  if (!canonically_ordered(first, second)) {
    throw Error(ErrorCode::kOrderViolation,
                "interval pair is not in canonical order");
  }
  return classify(first, second);
}

RelationSet compose(Relation r1, Relation r2) {
  return RelationSet(kTransitivity[index_of(r1)][index_of(r2)]);
}

RelationSet brute_force_compose(Relation r1, Relation r2) {
  constexpr int kWidth = 8;
  std::vector<TimeSpan> spans;
  for (int s = 0; s < kWidth; ++s) {
    for (int e = s + 1; e < kWidth; ++e) spans.push_back({double(s), double(e)});
  }
  RelationSet out;
  for (const TimeSpan& a : spans) {
    for (const TimeSpan& b : spans) {
      if (!canonically_ordered(a, b) || classify(a, b) != r1) continue;
      for (const TimeSpan& c : spans) {
        if (!canonically_ordered(b, c) || classify(b, c) != r2) continue;
        out.insert(classify(a, c));
      }
    }
  }
  return out;
}

RelationSet compose_sets(RelationSet lhs, RelationSet rhs) {
  if (lhs.empty() || rhs.empty()) {
    throw Error(ErrorCode::kEmptyRelationSet,
                "cannot compose an empty relation set");
  }
  RelationSet out;
  for (Relation a : lhs.members()) {
    for (Relation b : rhs.members()) out = out | compose(a, b);
  }
  return out;
}

std::vector<CompositionClass> enumerate_composition_classes() {
  std::vector<RelationSet> sets;
  auto add = [&sets](RelationSet s) {
    if (std::find(sets.begin(), sets.end(), s) == sets.end()) sets.push_back(s);
  };
  for (Relation a : kAllRelations) {
    for (Relation b : kAllRelations) add(compose(a, b));
  }
  add(RelationSet::all());

  // Singletons sort first in relation order because a lower flag is a lower
  // encoding; the rest by (size, encoding).
  std::sort(sets.begin(), sets.end(), [](RelationSet x, RelationSet y) {
    const bool xs = x.is_singleton(), ys = y.is_singleton();
    if (xs != ys) return xs;
    if (xs) return x.bits() < y.bits();
    if (x.size() != y.size()) return x.size() < y.size();
    return x.bits() < y.bits();
  });

  if (sets.size() != kNumCompositionClasses) {
    throw Error(ErrorCode::kClassCountMismatch,
                "composition closure yields " + std::to_string(sets.size()) +
                    " classes, expected 11");
  }
  std::vector<CompositionClass> out;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    out.push_back({static_cast<int>(i) + 1, sets[i]});
  }
  return out;
}

const std::vector<CompositionClass>& composition_classes() {
  static const std::vector<CompositionClass> classes =
      enumerate_composition_classes();
  return classes;
}

std::optional<int> classify_constraint(RelationSet set) {
  if (set.empty()) {
    throw Error(ErrorCode::kEmptyRelationSet, "empty constraint");
  }
  for (const CompositionClass& c : composition_classes()) {
    if (c.members == set) return c.index;
  }
  return std::nullopt;
}

}  // namespace ibgn
