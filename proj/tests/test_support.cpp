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


#include "test_support.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <string>
#include <tuple>

namespace ibgn::testing {

Instance random_instance(Rng& rng, std::size_t k, int grid,
                         std::size_t num_actions, int label) {
  Instance inst;
  inst.label = label;
  for (std::size_t i = 0; i < k; ++i) {
    const int s = static_cast<int>(uniform_index(rng, grid - 1));
    const int e = s + 1 + static_cast<int>(uniform_index(rng, grid - 1 - s));
    inst.intervals.push_back(
        {static_cast<ActionId>(uniform_index(rng, num_actions)) + 1, double(s),
         double(e)});
  }
  canonicalize(inst);
  return inst;
}

std::vector<std::string> action_names(std::size_t m) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < m; ++i) out.push_back("A" + std::to_string(i + 1));
  return out;
}

ClassModel make_generator(std::vector<std::vector<double>> theta_rows,
                          std::size_t k_star, StructureMask structure,
                          PhiTable phi, std::size_t min_size) {
  ClassModel m;
  const std::size_t m_actions = theta_rows.front().size();
  m.k_star = k_star;
  m.ell = theta_rows.size();
  m.alpha.assign(m.ell, 1.0);
  m.beta = Matrix<double>(m.ell, m_actions, 0.5);
  m.theta = Matrix<double>(m.ell, m_actions);
  for (std::size_t z = 0; z < m.ell; ++z) {
    for (std::size_t i = 0; i < m_actions; ++i) m.theta(z, i) = theta_rows[z][i];
  }
  m.structure = std::move(structure);
  m.phi = std::move(phi);
  m.action_vocab = action_names(m_actions);
  m.size_histogram.assign(k_star + 1, 0);
  for (std::size_t k = min_size; k <= k_star; ++k) m.size_histogram[k] = 1;
  return m;
}

PhiTable peaked_phi(std::size_t num_actions, Relation favored, double peak) {
  PhiTable phi;
  for (const CompositionClass& c : composition_classes()) {
    const auto members = c.members.members();
    std::vector<double> probs(members.size());
    const bool has = c.members.contains(favored);
    for (std::size_t r = 0; r < members.size(); ++r) {
      if (members.size() == 1) {
        probs[r] = 1.0;
      } else if (has) {
        probs[r] = members[r] == favored ? peak
                                         : (1.0 - peak) / double(members.size() - 1);
      } else {
        probs[r] = 1.0 / double(members.size());
      }
    }
    for (std::size_t i = 1; i <= num_actions; ++i) {
      for (std::size_t j = 1; j <= num_actions; ++j) {
        phi[PhiKey{ActionId(i), ActionId(j), c.members}] = probs;
      }
    }
  }
  return phi;
}

namespace {

double xlogx_sum(const std::map<std::vector<int>, int>& joint,
                 const std::map<std::vector<int>, int>& parents,
                 std::size_t parent_arity) {
  double ll = 0.0;
  for (const auto& [key, n] : joint) {
    std::vector<int> parent(key.begin(), key.begin() + std::ptrdiff_t(parent_arity));
    ll += n * std::log(double(n) / double(parents.at(parent)));
  }
  return ll;
}

}  // namespace

double exhaustive_bic_total(std::span<const Instance> padded,
                            std::size_t num_actions, const StructureMask& mask) {
  const std::size_t k = padded.front().size();
  const double d = double(padded.size());
  const double half_log = std::log(d) / 2.0;
  double total = 0.0;

  std::vector<IntervalNetwork> nets;
  for (const Instance& inst : padded) nets.push_back(instance_to_network(inst));

  // Action nodes: no parents, M+1 values.
  for (std::size_t n = 0; n < k; ++n) {
    std::map<std::vector<int>, int> joint, parents;
    for (const auto& net : nets) {
      ++joint[{net.actions[n]}];
      ++parents[{}];
    }
    total += xlogx_sum(joint, parents, 0) - half_log * double(num_actions);
  }
  // Relation nodes: 8 values, parents are both endpoint actions when linked.
  for (std::size_t j = 1; j < k; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      const bool linked = mask.contains(i, j);
      std::map<std::vector<int>, int> joint, parents;
      for (const auto& net : nets) {
        const auto& r = net.relations(i, j);
        const int value = r ? index_of(*r) : kNumRelations;
        if (linked) {
          ++joint[{net.actions[i], net.actions[j], value}];
          ++parents[{net.actions[i], net.actions[j]}];
        } else {
          ++joint[{value}];
          ++parents[{}];
        }
      }
      const double configs =
          linked ? double((num_actions + 1) * (num_actions + 1)) : 1.0;
      total += xlogx_sum(joint, parents, linked ? 2 : 0) -
               half_log * 7.0 * configs;
    }
  }
  return total;
}

StructureMask exhaustive_best_mask(std::span<const Instance> padded,
                                   std::size_t num_actions) {
  const std::size_t k = padded.front().size();
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) pairs.emplace_back(int(i), int(j));
  }
  StructureMask best(k);
  double best_score = -std::numeric_limits<double>::infinity();
  for (std::uint64_t bits = 0; bits < (1ULL << pairs.size()); ++bits) {
    StructureMask mask(k);
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      if ((bits >> p) & 1) mask.set(pairs[p].first, pairs[p].second, true);
    }
    const double score = exhaustive_bic_total(padded, num_actions, mask);
    if (bits == 0 || score > best_score + 1e-9 * std::abs(best_score)) {
      best_score = score;
      best = mask;
    }
  }
  return best;
}

double total_variation(std::span<const double> p, std::span<const double> q) {
  double tv = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) tv += std::abs(p[i] - q[i]);
  return tv / 2.0;
}

double best_matching_tv(const std::vector<std::vector<double>>& truth,
                        const Matrix<double>& estimate) {
  std::vector<std::size_t> rows(estimate.rows());
  std::iota(rows.begin(), rows.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double worst = 0.0;
    for (std::size_t t = 0; t < truth.size(); ++t) {
      worst = std::max(worst, total_variation(truth[t], estimate.row(rows[t])));
    }
    best = std::min(best, worst);
  } while (std::next_permutation(rows.begin(), rows.end()));
  return best;
}

}  // namespace ibgn::testing
