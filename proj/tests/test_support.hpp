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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ibgn/generative_model.hpp"
#include "ibgn/learning.hpp"
#include "ibgn/random.hpp"
#include "ibgn/temporal_network.hpp"

namespace ibgn::testing {

/// Canonically ordered instance of `k` intervals with integer endpoints in
/// [0, grid) and actions uniform over 1..num_actions.
Instance random_instance(Rng& rng, std::size_t k, int grid,
                         std::size_t num_actions, int label = 0);

std::vector<std::string> action_names(std::size_t m);

/// Generator with `theta_rows.size()` tables; k* fixed, sizes uniform over
/// [min_size, k_star].
ClassModel make_generator(std::vector<std::vector<double>> theta_rows,
                          std::size_t k_star, StructureMask structure,
                          PhiTable phi = {}, std::size_t min_size = 1);

/// φ that puts `peak` mass on `favored` whenever it is a member of the
/// constraint, spreading the rest evenly, for every action pair and every
/// composition class.
PhiTable peaked_phi(std::size_t num_actions, Relation favored, double peak);

/// Independent structure oracle: total BIC of the bipartite network for a
/// link mask, computed from raw tuples (action nodes included).
double exhaustive_bic_total(std::span<const Instance> padded,
                            std::size_t num_actions, const StructureMask& mask);

/// Argmax of exhaustive_bic_total over all masks; ties keep the mask with
/// the smaller bit encoding.
StructureMask exhaustive_best_mask(std::span<const Instance> padded,
                                   std::size_t num_actions);

/// Total-variation distance between two distributions.
double total_variation(std::span<const double> p, std::span<const double> q);

/// max over truth rows of TV to its matched estimated row, minimized over
/// injective matchings (truth rows <= estimated rows).
double best_matching_tv(const std::vector<std::vector<double>>& truth,
                        const Matrix<double>& estimate);

}  // namespace ibgn::testing
