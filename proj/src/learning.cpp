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


#include "ibgn/learning.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ibgn/error.hpp"

namespace ibgn {

std::string_view structure_mode_name(StructureMode mode) {
  switch (mode) {
    case StructureMode::kLearned: return "learned";
    case StructureMode::kChain: return "chain";
    case StructureMode::kFull: return "full";
  }
  return "learned";
}

StructureMode parse_structure_mode(std::string_view name) {
  if (name == "learned") return StructureMode::kLearned;
  if (name == "chain") return StructureMode::kChain;
  if (name == "full") return StructureMode::kFull;
  throw Error(ErrorCode::kConfigInvalid,
              "unknown structure mode '" + std::string(name) + "'");
}

void validate(const TrainConfig& c) {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kConfigInvalid, what);
  };
  if (c.burn_in < 0) fail("burn-in must be >= 0");
  if (c.avg_window < 1) fail("averaging window must be >= 1");
  if (c.iterations < c.burn_in + c.avg_window)
    fail("iterations must be >= burn-in + averaging window");
  if (!(c.rho > 0.0)) fail("rho must be positive");
  if (!(c.alpha_init > 0.0) || !(c.beta_init > 0.0))
    fail("initial hyperparameters must be positive");
  if (!(c.clamp_min > 0.0) || !(c.clamp_min < c.clamp_max))
    fail("clamp bounds must satisfy 0 < min < max");
}

double digamma(double x) {
  if (!(x > 0.0)) {
    throw Error(ErrorCode::kDomainError, "digamma requires x > 0");
  }
  double result = 0.0;
  while (x < 6.0) {
    result -= 1.0 / x;
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  // Ψ(x) ~ ln x − 1/(2x) − Σ B_2k / (2k x^2k)
  const double series =
      inv2 * (1.0 / 12 -
      inv2 * (1.0 / 120 -
      inv2 * (1.0 / 252 -
      inv2 * (1.0 / 240 -
      inv2 * (1.0 / 132 -
      inv2 * (691.0 / 32760 -
      inv2 * (1.0 / 12)))))));
  return result + std::log(x) - 0.5 * inv - series;
}

namespace {

// Shared body of the conditional; `row_totals[z]` = Σ_i (na_zi + β_zi).
void conditional_weights(const Matrix<int>& na, std::span<const int> nt,
                         std::span<const double> alpha,
                         const Matrix<double>& beta,
                         std::span<const double> row_totals, std::size_t action,
                         std::size_t n, std::vector<double>& out) {
  const std::size_t ell = alpha.size();
  std::size_t free_tables = 0;
  for (std::size_t z = 0; z < ell; ++z) free_tables += nt[z] == 0 ? 1 : 0;
  out.assign(ell, 0.0);
  const double nd = static_cast<double>(n);
  double total = 0.0;
  for (std::size_t z = 0; z < ell; ++z) {
    const double dish = (na(z, action) + beta(z, action)) / row_totals[z];
    const double denom = nd + alpha[z] - 1.0;
    const double seat = nt[z] > 0 ? nt[z] / denom
                                  : alpha[z] / denom / double(free_tables);
    out[z] = dish * seat;
    total += out[z];
  }
  for (double& w : out) w /= total;
}

std::vector<double> beta_row_totals(const Matrix<int>& na,
                                    const Matrix<double>& beta) {
  std::vector<double> totals(beta.rows(), 0.0);
  for (std::size_t z = 0; z < beta.rows(); ++z) {
    for (std::size_t i = 0; i < beta.cols(); ++i) totals[z] += na(z, i) + beta(z, i);
  }
  return totals;
}

double clamp(double v, double lo, double hi) { return std::min(std::max(v, lo), hi); }

}  // namespace

std::vector<double> gibbs_conditional(const Matrix<int>& na,
                                      std::span<const int> nt,
                                      std::span<const double> alpha,
                                      const Matrix<double>& beta,
                                      std::size_t action, std::size_t n) {
  std::vector<double> out;
  conditional_weights(na, nt, alpha, beta, beta_row_totals(na, beta), action, n,
                      out);
  return out;
}

CountHistory::CountHistory(std::size_t ell, std::size_t actions,
                           std::size_t window)
    : ell_(ell),
      actions_(actions),
      window_(window),
      table_hist_(ell),
      action_hist_(ell * actions),
      row_hist_(ell) {}

void CountHistory::apply(const Sample& s, int delta) {
  auto bump = [delta](std::map<int, int>& hist, int value) {
    auto& slot = hist[value];
    slot += delta;
    if (slot == 0) hist.erase(value);
  };
  for (std::size_t z = 0; z < ell_; ++z) {
    bump(table_hist_[z], s.table_totals[z]);
    int row = 0;
    for (std::size_t i = 0; i < actions_; ++i) {
      const int v = s.na[z * actions_ + i];
      bump(action_hist_[z * actions_ + i], v);
      row += v;
    }
    bump(row_hist_[z], row);
  }
}

void CountHistory::record(const Matrix<int>& na,
                          std::span<const int> table_totals) {
  Sample s{std::vector<int>(na.data().begin(), na.data().end()),
           std::vector<int>(table_totals.begin(), table_totals.end())};
  if (samples_.size() == window_) {
    apply(samples_.front(), -1);
    samples_.pop_front();
  }
  apply(s, +1);
  samples_.push_back(std::move(s));
}

namespace {

// Σ_s [Ψ(c_s + a) − Ψ(a)] over a histogram of count values.
double digamma_gain(const std::map<int, int>& hist, double a) {
  const double base = digamma(a);
  double sum = 0.0;
  for (const auto& [value, times] : hist) {
    sum += times * (digamma(value + a) - base);
  }
  return sum;
}

}  // namespace

double alpha_update_factor(const Hyperparams& current,
                           const CountHistory& history, std::size_t total_nodes,
                           std::size_t z) {
  const double a_sum =
      std::accumulate(current.alpha.begin(), current.alpha.end(), 0.0);
  const double den = static_cast<double>(history.samples()) *
                     (digamma(double(total_nodes) + a_sum) - digamma(a_sum));
  if (!(den > 0.0)) return 1.0;
  return digamma_gain(history.table_total_hist(z), current.alpha[z]) / den;
}

Hyperparams update_hyperparams(const Hyperparams& current,
                               const CountHistory& history,
                               std::size_t total_nodes, double clamp_min,
                               double clamp_max) {
  Hyperparams next = current;
  if (history.samples() == 0) return next;
  for (std::size_t z = 0; z < current.alpha.size(); ++z) {
    const double factor = alpha_update_factor(current, history, total_nodes, z);
    next.alpha[z] = clamp(current.alpha[z] * factor, clamp_min, clamp_max);
  }
  for (std::size_t z = 0; z < current.beta.rows(); ++z) {
    double b_sum = 0.0;
    for (double b : current.beta.row(z)) b_sum += b;
    const double den = digamma_gain(history.row_total_hist(z), b_sum);
    if (!(den > 0.0)) continue;
    for (std::size_t i = 0; i < current.beta.cols(); ++i) {
      const double b = current.beta(z, i);
      const double num = digamma_gain(history.action_hist(z, i), b);
      next.beta(z, i) = clamp(b * num / den, clamp_min, clamp_max);
    }
  }
  return next;
}

std::size_t SamplerState::total_nodes() const {
  std::size_t total = 0;
  for (const auto& a : actions) total += a.size();
  return total;
}

SamplerState init_sampler(std::span<const Instance> corpus, std::size_t ell,
                          std::size_t num_actions, const TrainConfig& config,
                          Rng& rng) {
  if (ell == 0 || num_actions == 0) {
    throw Error(ErrorCode::kConfigInvalid,
                "sampler needs at least one table and one action");
  }
  SamplerState state;
  state.alpha.assign(ell, config.alpha_init);
  state.beta = Matrix<double>(ell, num_actions, config.beta_init);
  state.na = Matrix<int>(ell, num_actions, 0);
  std::vector<double> weights(ell);
  for (const Instance& inst : corpus) {
    std::vector<std::size_t> acts;
    for (const Interval& iv : inst.intervals) {
      if (iv.is_null()) continue;
      if (iv.action < 1 || static_cast<std::size_t>(iv.action) > num_actions) {
        throw Error(ErrorCode::kConfigInvalid,
                    "training action id outside the vocabulary");
      }
      acts.push_back(static_cast<std::size_t>(iv.action - 1));
    }
    std::vector<int> nt(ell, 0);
    std::vector<int> tables;
    for (std::size_t p = 0; p < acts.size(); ++p) {
      // Prior draw: CRP seating only, ignoring the dishes.
      std::size_t free_tables = 0;
      for (int c : nt) free_tables += c == 0 ? 1 : 0;
      const double n = static_cast<double>(p + 1);
      for (std::size_t z = 0; z < ell; ++z) {
        const double denom = n + state.alpha[z] - 1.0;
        weights[z] = nt[z] > 0 ? nt[z] / denom
                               : state.alpha[z] / denom / double(free_tables);
      }
      const auto z = sample_categorical(rng, weights);
      ++nt[z];
      ++state.na(z, acts[p]);
      tables.push_back(static_cast<int>(z));
    }
    state.actions.push_back(std::move(acts));
    state.assignments.push_back(std::move(tables));
    state.nt.push_back(std::move(nt));
  }
  return state;
}

void gibbs_sweep(SamplerState& state, Rng& rng) {
  std::vector<double> row_totals = beta_row_totals(state.na, state.beta);
  std::vector<double> weights;
  for (std::size_t d = 0; d < state.actions.size(); ++d) {
    const auto& acts = state.actions[d];
    auto& tables = state.assignments[d];
    auto& nt = state.nt[d];
    // The resampled node is the last customer of its instance.
    const std::size_t n = acts.size();
    for (std::size_t p = 0; p < acts.size(); ++p) {
      const std::size_t a = acts[p];
      const auto old = static_cast<std::size_t>(tables[p]);
      --state.na(old, a);
      --nt[old];
      row_totals[old] -= 1.0;
      conditional_weights(state.na, nt, state.alpha, state.beta, row_totals, a,
                          n, weights);
      const std::size_t z = sample_categorical(rng, weights);
      ++state.na(z, a);
      ++nt[z];
      row_totals[z] += 1.0;
      tables[p] = static_cast<int>(z);
    }
  }
  ++state.iteration;
}

double geweke_z_score(std::span<const double> chain) {
  const std::size_t n = chain.size();
  const std::size_t na = n / 10, nb = n / 2;
  if (na < 2 || nb < 2) return 0.0;
  auto moments = [](std::span<const double> s) {
    double mean = 0.0;
    for (double v : s) mean += v;
    mean /= double(s.size());
    double var = 0.0;
    for (double v : s) var += (v - mean) * (v - mean);
    var /= double(s.size() - 1);
    return std::pair{mean, var};
  };
  const auto [ma, va] = moments(chain.first(na));
  const auto [mb, vb] = moments(chain.last(nb));
  const double se = std::sqrt(va / double(na) + vb / double(nb));
  if (!(se > 0.0)) return 0.0;
  return (ma - mb) / se;
}

GibbsResult run_gibbs(std::span<const Instance> corpus, std::size_t ell,
                      std::size_t num_actions, const TrainConfig& config,
                      Rng& rng) {
  if (corpus.empty()) throw Error(ErrorCode::kEmptyCorpus, "empty corpus");
  validate(config);
  SamplerState state = init_sampler(corpus, ell, num_actions, config, rng);
  const std::size_t total_nodes = state.total_nodes();

  GibbsResult result;
  result.averaged_na = Matrix<double>(ell, num_actions, 0.0);
  result.averaged_nt.assign(corpus.size(), std::vector<double>(ell, 0.0));
  CountHistory history(ell, num_actions,
                       static_cast<std::size_t>(config.avg_window));
  std::vector<int> table_totals(ell);
  const int window_end = config.burn_in + config.avg_window;

  for (int sweep = 1; sweep <= config.iterations; ++sweep) {
    gibbs_sweep(state, rng);

    std::fill(table_totals.begin(), table_totals.end(), 0);
    for (const auto& nt : state.nt) {
      for (std::size_t z = 0; z < ell; ++z) table_totals[z] += nt[z];
    }
    int occupied = 0;
    for (int t : table_totals) occupied += t > 0 ? 1 : 0;
    result.occupied_tables.push_back(occupied);

    if (config.update_hyperparams) {
      history.record(state.na, table_totals);
      Hyperparams next = update_hyperparams({state.alpha, state.beta}, history,
                                            total_nodes, config.clamp_min,
                                            config.clamp_max);
      state.alpha = std::move(next.alpha);
      state.beta = std::move(next.beta);
    }

    if (sweep > config.burn_in && sweep <= window_end) {
      for (std::size_t z = 0; z < ell; ++z) {
        for (std::size_t i = 0; i < num_actions; ++i) {
          result.averaged_na(z, i) += state.na(z, i);
        }
      }
      for (std::size_t d = 0; d < corpus.size(); ++d) {
        for (std::size_t z = 0; z < ell; ++z) {
          result.averaged_nt[d][z] += state.nt[d][z];
        }
      }
    }
  }

  const double scale = 1.0 / config.avg_window;
  for (double& v : result.averaged_na.data()) v *= scale;
  for (auto& row : result.averaged_nt) {
    for (double& v : row) v *= scale;
  }
  result.alpha = state.alpha;
  result.beta = state.beta;
  result.geweke_z = geweke_z_score(result.occupied_tables);
  return result;
}

Matrix<double> estimate_theta(const Matrix<double>& na,
                              const Matrix<double>& beta) {
  Matrix<double> theta(na.rows(), na.cols());
  for (std::size_t z = 0; z < na.rows(); ++z) {
    double total = 0.0;
    for (std::size_t i = 0; i < na.cols(); ++i) total += na(z, i) + beta(z, i);
    for (std::size_t i = 0; i < na.cols(); ++i) {
      theta(z, i) = (na(z, i) + beta(z, i)) / total;
    }
  }
  return theta;
}

PhiTable estimate_phi(const RelationCounts& counts, double rho) {
  PhiTable phi;
  for (const auto& [key, nr] : counts) {
    const auto members = key.constraint.members();
    double total = 0.0;
    for (Relation r : members) total += nr[index_of(r)];
    const double denom = total + rho * double(members.size());
    std::vector<double> probs;
    probs.reserve(members.size());
    for (Relation r : members) probs.push_back((nr[index_of(r)] + rho) / denom);
    phi.emplace(key, std::move(probs));
  }
  return phi;
}

namespace {

constexpr std::size_t kNullValue = kNumRelations;

BicFamilyCounts count_family_networks(std::span<const IntervalNetwork> nets,
                                      std::size_t num_actions,
                                      std::size_t from, std::size_t to) {
  BicFamilyCounts counts;
  counts.num_actions = num_actions;
  counts.joint = Matrix<int>(counts.parent_configs(), BicFamilyCounts::kValues, 0);
  counts.dataset_size = nets.size();
  for (const IntervalNetwork& net : nets) {
    auto parent_value = [num_actions](ActionId a) -> std::size_t {
      if (a < 1 || static_cast<std::size_t>(a) > num_actions) return 0;
      return static_cast<std::size_t>(a);
    };
    const std::size_t j =
        parent_value(net.actions[from]) * (num_actions + 1) +
        parent_value(net.actions[to]);
    const auto& r = net.relations(from, to);
    const std::size_t k = r ? static_cast<std::size_t>(index_of(*r)) : kNullValue;
    ++counts.joint(j, k);
    ++counts.marginal[k];
  }
  return counts;
}

std::vector<IntervalNetwork> padded_networks(std::span<const Instance> padded) {
  std::vector<IntervalNetwork> nets;
  nets.reserve(padded.size());
  const std::size_t k_star = padded.front().size();
  for (const Instance& inst : padded) {
    if (inst.size() != k_star) {
      throw Error(ErrorCode::kConfigInvalid,
                  "structure learning needs instances padded to k*");
    }
    nets.push_back(instance_to_network(inst));
  }
  return nets;
}

}  // namespace

BicFamilyCounts count_family(std::span<const Instance> padded,
                             std::size_t num_actions, std::size_t from,
                             std::size_t to) {
  if (padded.empty()) throw Error(ErrorCode::kEmptyCorpus, "empty corpus");
  const auto nets = padded_networks(padded);
  return count_family_networks(nets, num_actions, from, to);
}

double bic_family_score(const BicFamilyCounts& counts, bool with_parents) {
  const double d = static_cast<double>(counts.dataset_size);
  const double half_log_d = d > 0.0 ? std::log(d) / 2.0 : 0.0;
  double loglik = 0.0;
  double params = 7.0;
  if (with_parents) {
    params *= double(counts.parent_configs());
    for (std::size_t j = 0; j < counts.joint.rows(); ++j) {
      double nj = 0.0;
      for (int v : counts.joint.row(j)) nj += v;
      if (nj == 0.0) continue;
      for (int v : counts.joint.row(j)) {
        if (v > 0) loglik += v * std::log(v / nj);
      }
    }
  } else {
    for (int v : counts.marginal) {
      if (v > 0) loglik += v * std::log(v / d);
    }
  }
  return loglik - half_log_d * params;
}

StructureMask learn_structure(std::span<const Instance> padded,
                              std::size_t num_actions) {
  if (padded.empty()) throw Error(ErrorCode::kEmptyCorpus, "empty corpus");
  const auto nets = padded_networks(padded);
  const std::size_t k_star = padded.front().size();
  StructureMask mask(k_star);
  for (std::size_t to = 1; to < k_star; ++to) {
    for (std::size_t from = 0; from < to; ++from) {
      const auto counts = count_family_networks(nets, num_actions, from, to);
      mask.set(from, to,
               bic_family_score(counts, true) > bic_family_score(counts, false));
    }
  }
  return mask;
}

RelationCounts count_relations(std::span<const Instance> corpus,
                               const StructureMask& mask, std::size_t k_star) {
  RelationCounts counts;
  for (const Instance& inst : corpus) {
    Instance prefix;
    prefix.intervals.assign(
        inst.intervals.begin(),
        inst.intervals.begin() +
            static_cast<std::ptrdiff_t>(std::min(observed_length(inst), k_star)));
    const std::size_t len = prefix.size();
    const IntervalNetwork net = instance_to_network(prefix);
    const ResolvedConstraints resolved = resolve_constraints(net, mask, len);
    for (std::size_t to = 1; to < len; ++to) {
      for (std::size_t from = 0; from < to; ++from) {
        if (!mask.contains(from, to)) continue;
        const Relation r = *net.relations(from, to);
        const RelationSet c = resolved.constraints(from, to);
        if (!c.contains(r)) {
          throw Error(ErrorCode::kInternalInvariant,
                      "observed relation outside its interval constraint");
        }
        auto [it, inserted] = counts.try_emplace(
            PhiKey{net.actions[from], net.actions[to], c});
        if (inserted) it->second.fill(0.0);
        it->second[index_of(r)] += 1.0;
      }
    }
  }
  return counts;
}

ClassModel train_class_model(std::span<const Instance> corpus,
                             const std::vector<std::string>& action_vocab,
                             const TrainConfig& config, Rng& rng,
                             TrainDiagnostics* diagnostics) {
  if (corpus.empty()) throw Error(ErrorCode::kEmptyCorpus, "empty corpus");
  validate(config);
  std::size_t k_star = 0;
  for (const Instance& inst : corpus) {
    k_star = std::max(k_star, observed_length(inst));
  }
  if (k_star == 0) {
    throw Error(ErrorCode::kEmptyCorpus, "corpus contains no intervals");
  }

  ClassModel model;
  model.k_star = k_star;
  model.ell = k_star;
  model.action_vocab = action_vocab;
  const std::size_t m = action_vocab.size();

  switch (config.structure) {
    case StructureMode::kChain:
      model.structure = StructureMask::chain(k_star);
      break;
    case StructureMode::kFull:
      model.structure = StructureMask::full(k_star);
      break;
    case StructureMode::kLearned: {
      std::vector<Instance> padded;
      padded.reserve(corpus.size());
      for (const Instance& inst : corpus) {
        Instance observed = inst;
        observed.intervals.resize(observed_length(inst));
        padded.push_back(pad_nulls(observed, k_star));
      }
      model.structure = learn_structure(padded, m);
      break;
    }
  }

  const GibbsResult gibbs = run_gibbs(corpus, model.ell, m, config, rng);
  model.alpha = gibbs.alpha;
  model.beta = gibbs.beta;
  model.theta = estimate_theta(gibbs.averaged_na, gibbs.beta);
  model.phi = estimate_phi(count_relations(corpus, model.structure, k_star),
                           config.rho);

  if (diagnostics) {
    diagnostics->occupied_tables = 0;
    for (std::size_t z = 0; z < model.ell; ++z) {
      double row = 0.0;
      for (double v : gibbs.averaged_na.row(z)) row += v;
      diagnostics->occupied_tables += row >= 0.5 ? 1 : 0;
    }
    diagnostics->geweke_z = gibbs.geweke_z;
  }

  model.size_histogram.assign(k_star + 1, 0);
  for (const Instance& inst : corpus) ++model.size_histogram[observed_length(inst)];
  return model;
}

}  // namespace ibgn
