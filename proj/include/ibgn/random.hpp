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
#include <random>
#include <span>

namespace ibgn {

// mt19937_64's output sequence is fixed by the standard; the helpers below
// avoid <random> distributions, whose outputs vary between library vendors.
using Rng = std::mt19937_64;

Rng make_rng(std::uint64_t seed);

/// Derives an independent stream seed from a base seed and a stream index.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Uniform double in [0, 1) with 53 random bits.
double uniform01(Rng& rng);

/// Uniform integer in [0, n). Requires n > 0.
std::size_t uniform_index(Rng& rng, std::size_t n);

/// Draws an index with probability proportional to `weights` (nonnegative,
/// positive total).
std::size_t sample_categorical(Rng& rng, std::span<const double> weights);

}  // namespace ibgn
