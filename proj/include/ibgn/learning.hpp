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
#include <cstdint>
#include <deque>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "ibgn/generative_model.hpp"
#include "ibgn/matrix.hpp"
#include "ibgn/random.hpp"
#include "ibgn/temporal_network.hpp"

namespace ibgn {

enum class StructureMode { kLearned, kChain, kFull };

std::string_view structure_mode_name(StructureMode mode);
/// Accepts "learned", "chain" or "full"; throws Error(kConfigInvalid).
StructureMode parse_structure_mode(std::string_view name);

struct TrainConfig {
  int iterations = 2000;
  int burn_in = 500;
  int avg_window = 1000;
  StructureMode structure = StructureMode::kLearned;
  double rho = 1e-5;
  std::uint64_t seed = 0;
  double alpha_init = 1.0;
  double beta_init = 0.5;
  double clamp_min = 1e-6;
  double clamp_max = 1e6;
  bool update_hyperparams = true;
};

/// Throws Error(kConfigInvalid) on inconsistent settings.
void validate(const TrainConfig& config);

/// Ψ(x) for x > 0: upward recurrence to x >= 6, then the asymptotic series.
/// Throws Error(kDomainError) for x <= 0 or NaN.
double digamma(double x);

/// Gibbs weights over the ell tables for one node whose own assignment has
/// already been removed from `na` (ell × M) and `nt` (ell, this instance).
/// Occupied tables follow the collapsed conditional with nt_ζ/(n+α_ζ-1);
/// the new-table slot α_ζ/(n+α_ζ-1) is shared evenly by the tables the
/// instance does not occupy, each with its own action factor. When every
/// table is occupied there is no new-table slot. Normalized.
/// `action` is zero-based.
std::vector<double> gibbs_conditional(const Matrix<int>& na,
                                      std::span<const int> nt,
                                      std::span<const double> alpha,
                                      const Matrix<double>& beta,
                                      std::size_t action, std::size_t n);

/// Per-sweep counts retained for the hyperparameter updates, kept as
/// histograms of count values so each update costs O(distinct values).
class CountHistory {
 public:
  CountHistory(std::size_t ell, std::size_t actions, std::size_t window);

  /// Records one sweep: corpus table-action counts and corpus table totals
  /// Σ_d nt_ζ. Evicts the oldest sweep once the window is full.
  void record(const Matrix<int>& na, std::span<const int> table_totals);

  std::size_t samples() const { return samples_.size(); }
  std::size_t ell() const { return ell_; }
  std::size_t actions() const { return actions_; }

  // Each histogram maps a count value to the number of recorded sweeps
  // holding that value.
  const std::map<int, int>& table_total_hist(std::size_t z) const {
    return table_hist_[z];
  }
  const std::map<int, int>& action_hist(std::size_t z, std::size_t i) const {
    return action_hist_[z * actions_ + i];
  }
  const std::map<int, int>& row_total_hist(std::size_t z) const {
    return row_hist_[z];
  }

 private:
  struct Sample {
    std::vector<int> na;
    std::vector<int> table_totals;
  };
  void apply(const Sample& s, int delta);

  std::size_t ell_, actions_, window_;
  std::deque<Sample> samples_;
  std::vector<std::map<int, int>> table_hist_;
  std::vector<std::map<int, int>> action_hist_;
  std::vector<std::map<int, int>> row_hist_;
};

struct Hyperparams {
  std::vector<double> alpha;
  Matrix<double> beta;
};

/// One round of the fixed-point updates over the recorded sweeps:
///   α_ζ ← α_ζ · Σ_s[Ψ(T_ζ⁽ˢ⁾+α_ζ) − Ψ(α_ζ)] / Σ_s[Ψ(N+A) − Ψ(A)]
///   β_ζi ← β_ζi · Σ_s[Ψ(na_ζi⁽ˢ⁾+β_ζi) − Ψ(β_ζi)] / Σ_s[Ψ(R_ζ⁽ˢ⁾+B_ζ) − Ψ(B_ζ)]
/// with T_ζ = Σ_d nt_ζ, N = Σ_d |V_d|, A = Σα, R_ζ = Σ_i na_ζi, B_ζ = Σ_i β_ζi.
/// Results are clamped to [clamp_min, clamp_max]; a parameter whose
/// denominator is not positive keeps its value.
Hyperparams update_hyperparams(const Hyperparams& current,
                               const CountHistory& history,
                               std::size_t total_nodes, double clamp_min,
                               double clamp_max);

/// The multiplicative factor the α update would apply to table `z`.
double alpha_update_factor(const Hyperparams& current,
                           const CountHistory& history, std::size_t total_nodes,
                           std::size_t z);

/// Collapsed Gibbs state for one class corpus. Actions are zero-based here.
struct SamplerState {
  std::vector<std::vector<std::size_t>> actions;      // [d][n]
  std::vector<std::vector<int>> assignments;          // [d][n] table
  Matrix<int> na;                                     // ell × M
  std::vector<std::vector<int>> nt;                   // [d][ζ]
  std::vector<double> alpha;
  Matrix<double> beta;
  int iteration = 0;

  std::size_t ell() const { return alpha.size(); }
  std::size_t total_nodes() const;
};

/// Prepares a sampler over the non-null intervals of `corpus`; assignments
/// start from a sequential CRP prior draw.
SamplerState init_sampler(std::span<const Instance> corpus, std::size_t ell,
                          std::size_t num_actions, const TrainConfig& config,
                          Rng& rng);

/// Resamples every node once, in corpus then position order.
void gibbs_sweep(SamplerState& state, Rng& rng);

struct GibbsResult {
  Matrix<double> averaged_na;                 // ell × M
  std::vector<std::vector<double>> averaged_nt;  // [d][ζ]
  std::vector<double> alpha;
  Matrix<double> beta;
  std::vector<double> occupied_tables;  // per sweep, corpus-wide
  double geweke_z = 0.0;
};

/// Burn-in, then averages na and nt over the next avg_window sweeps.
/// Throws Error(kEmptyCorpus) or Error(kConfigInvalid).
GibbsResult run_gibbs(std::span<const Instance> corpus, std::size_t ell,
                      std::size_t num_actions, const TrainConfig& config,
                      Rng& rng);

/// Geweke z-score comparing the first 10% and last 50% of a chain.
double geweke_z_score(std::span<const double> chain);

/// θ_ζi = (na_ζi + β_ζi) / Σ_i'(na_ζi' + β_ζi').
Matrix<double> estimate_theta(const Matrix<double>& na,
                              const Matrix<double>& beta);

/// Relation counts per φ key, indexed by canonical relation index.
using RelationCounts = std::map<PhiKey, std::array<double, kNumRelations>>;

/// φ_r = (nr_r + ρ) / (Σ_{r'∈C} nr_r' + ρ|C|) over the constraint members.
PhiTable estimate_phi(const RelationCounts& counts, double rho);

/// Counts for one relation variable r(n', n) of the bipartite translation.
/// Relation values 0..6 are the base relations and 7 is null; parent
/// configurations are (a_n' , a_n) over M+1 action values, null included.
struct BicFamilyCounts {
  static constexpr std::size_t kValues = kNumRelations + 1;
  std::size_t num_actions = 0;                  // M
  Matrix<int> joint;                            // (M+1)² × 8
  std::array<int, kValues> marginal{};
  std::size_t dataset_size = 0;

  std::size_t parent_configs() const {
    return (num_actions + 1) * (num_actions + 1);
  }
};

/// Tallies r(from, to) against its two parent actions over a padded corpus.
BicFamilyCounts count_family(std::span<const Instance> padded,
                             std::size_t num_actions, std::size_t from,
                             std::size_t to);

/// Family log-likelihood at the ML estimate minus (log|D|/2)·7·Π̂, with
/// Π̂ = (M+1)² when the relation has both parents and 1 otherwise.
double bic_family_score(const BicFamilyCounts& counts, bool with_parents);

/// Includes link (n', n) iff its with-parents family score beats the
/// parentless one. All instances must have length k*.
StructureMask learn_structure(std::span<const Instance> padded,
                              std::size_t num_actions);

struct TrainDiagnostics {
  int occupied_tables = 0;  // tables with averaged count >= 0.5
  double geweke_z = 0.0;
};

/// Trains a full class model. Instance action ids index `action_vocab`.
ClassModel train_class_model(std::span<const Instance> corpus,
                             const std::vector<std::string>& action_vocab,
                             const TrainConfig& config, Rng& rng,
                             TrainDiagnostics* diagnostics = nullptr);

/// The nr tallies over structure links used for φ; exposed for tests.
RelationCounts count_relations(std::span<const Instance> corpus,
                               const StructureMask& mask, std::size_t k_star);

}  // namespace ibgn
