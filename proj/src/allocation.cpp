#include "dbpriv/allocation.hpp"

#include <algorithm>
#include <cmath>

#include "dbpriv/rng.hpp"

namespace dbpriv {

namespace {

DiscreteSampler make_init_sampler(const Dataset& dataset, const Intent& published_intent,
                                  bool uniform_cells) {
  std::vector<int64_t> cells;
  std::vector<int64_t> weights;
  for (int64_t idx : dataset.populated) {
    if (!published_intent.contains_index(dataset.space, idx)) continue;
    cells.push_back(idx);
    weights.push_back(uniform_cells ? 1 : dataset.freq[idx]);
  }
  if (cells.empty())
    throw Error(errkind::degenerate_intent, "no purchasable records inside the published intent");
  return DiscreteSampler(std::move(cells), weights);
}

PurchaseSet sample_multiset(const DiscreteSampler& sampler, int64_t q, std::mt19937_64& rng) {
  std::vector<std::pair<int64_t, int32_t>> counts;
  counts.reserve(static_cast<size_t>(q));
  for (int64_t i = 0; i < q; ++i) counts.emplace_back(sampler.draw(rng), 1);
  return PurchaseSet::from_counts(std::move(counts));
}

struct Evaluation {
  bool feasible = false;
  double utility = 0.0;
};

Evaluation evaluate(const PurchaseSet& candidate, const Intent& true_intent,
                    const Dataset& dataset, const AllocationConfig& config) {
  return Evaluation{
      is_feasible(candidate, true_intent, dataset, config.lambda, config.pvalue),
      utility(dataset.space, candidate, true_intent)};
}

AllocationResult finish(PurchaseSet purchased, const Intent& true_intent,
                        const Dataset& dataset, const AllocationConfig& config) {
  AllocationResult result;
  result.utility = utility(dataset.space, purchased, true_intent);
  result.report = feasibility_report(purchased, true_intent, dataset, config.pvalue);
  for (const auto& row : result.report)
    result.confidence_upper = std::max(result.confidence_upper, row.confidence);
  result.purchased = std::move(purchased);
  return result;
}

template <bool Parallel>
AllocationResult mc_scan(const Intent& published_intent, const Intent& true_intent,
                         const Dataset& dataset, const AllocationConfig& config) {
  if (config.mc_sets < 1) throw Error(errkind::config, "Z must be at least 1");
  const DiscreteSampler sampler =
      make_init_sampler(dataset, published_intent, config.uniform_cells);
  const int64_t z = config.mc_sets;
  // Utility per replicate, -1 marking infeasible; replicate i always draws
  // from substream(seed, i), so the scan order never affects the answer.
  std::vector<double> utilities(static_cast<size_t>(z), -1.0);
  auto run_one = [&](int64_t i) {
    auto rng = rng_substream(config.seed, static_cast<uint64_t>(i));
    const PurchaseSet candidate = sample_multiset(sampler, config.q, rng);
    const Evaluation eval = evaluate(candidate, true_intent, dataset, config);
    if (eval.feasible) utilities[static_cast<size_t>(i)] = eval.utility;
  };
  if constexpr (Parallel) {
#pragma omp parallel for schedule(static)
    for (int64_t i = 0; i < z; ++i) run_one(i);
  } else {
    for (int64_t i = 0; i < z; ++i) run_one(i);
  }
  int64_t best = -1;
  for (int64_t i = 0; i < z; ++i)
    if (utilities[i] >= 0.0 && (best < 0 || utilities[i] > utilities[best])) best = i;
  if (best < 0)
    throw Error(errkind::no_feasible_allocation,
                "none of the sampled sets satisfies the privacy constraint");
  auto rng = rng_substream(config.seed, static_cast<uint64_t>(best));
  return finish(sample_multiset(sampler, config.q, rng), true_intent, dataset, config);
}

}  // namespace

double utility(const DataSpace& space, const PurchaseSet& purchased, const Intent& true_intent) {
  if (purchased.q == 0) throw Error(errkind::config, "utility is undefined for q = 0");
  int64_t in_ti = 0;
  for (const auto& [cell, n] : purchased.cells)
    if (true_intent.contains_index(space, cell)) in_ti += n;
  return static_cast<double>(in_ti) / static_cast<double>(purchased.q);
}

bool is_feasible(const PurchaseSet& purchased, const Intent& true_intent,
                 const Dataset& dataset, double lambda, const PValueConfig& pvalue_config) {
  const Intent pseudo = infer_pseudo_pi(dataset.space, purchased);
  for (const auto& [cell, n] : purchased.cells) {
    (void)n;
    if (!true_intent.contains_index(dataset.space, cell)) continue;
    if (pvalue(cell, purchased, pseudo, dataset, pvalue_config) < 1.0 - lambda) return false;
  }
  return true;
}

std::vector<FeasibilityRow> feasibility_report(const PurchaseSet& purchased,
                                               const Intent& true_intent,
                                               const Dataset& dataset,
                                               const PValueConfig& pvalue_config) {
  const Intent pseudo = infer_pseudo_pi(dataset.space, purchased);
  std::vector<FeasibilityRow> rows;
  for (const auto& [cell, n] : purchased.cells) {
    if (!true_intent.contains_index(dataset.space, cell)) continue;
    FeasibilityRow row;
    row.cell = cell;
    row.count = n;
    row.f_p = empirical_dist(purchased, cell);
    row.f_d_pi = conditional_density(dataset, pseudo, cell);
    row.p_value = pvalue(cell, purchased, pseudo, dataset, pvalue_config);
    row.confidence = 1.0 - row.p_value;
    rows.push_back(row);
  }
  return rows;
}

AllocationResult allocate_mc(const Intent& published_intent, const Intent& true_intent,
                             const Dataset& dataset, const AllocationConfig& config) {
  return mc_scan<true>(published_intent, true_intent, dataset, config);
}

AllocationResult allocate_mc_serial(const Intent& published_intent, const Intent& true_intent,
                                    const Dataset& dataset, const AllocationConfig& config) {
  return mc_scan<false>(published_intent, true_intent, dataset, config);
}

namespace {

// Move groups: (1) disguise -> true intent, (2) disguise -> other disguise,
// (3) true intent -> disguise, (4) true intent -> other true intent.
struct MoveClasses {
  std::vector<int64_t> ti_cells;        // purchasable TI cells inside the PI
  std::vector<int64_t> disguise_cells;  // purchasable non-TI cells inside the PI
};

MoveClasses purchasable_classes(const Dataset& dataset, const Intent& published_intent,
                                const Intent& true_intent) {
  MoveClasses classes;
  for (int64_t idx : dataset.populated) {
    if (!published_intent.contains_index(dataset.space, idx)) continue;
    if (true_intent.contains_index(dataset.space, idx))
      classes.ti_cells.push_back(idx);
    else
      classes.disguise_cells.push_back(idx);
  }
  return classes;
}

// Multiplicity-weighted uniform pick of a purchased record from one class.
int64_t pick_removal(const PurchaseSet& x, const DataSpace& space, const Intent& true_intent,
                     bool from_ti, std::mt19937_64& rng) {
  int64_t total = 0;
  for (const auto& [cell, n] : x.cells)
    if (true_intent.contains_index(space, cell) == from_ti) total += n;
  std::uniform_int_distribution<int64_t> uni(0, total - 1);
  int64_t r = uni(rng);
  for (const auto& [cell, n] : x.cells) {
    if (true_intent.contains_index(space, cell) != from_ti) continue;
    if (r < n) return cell;
    r -= n;
  }
  throw Error(errkind::config, "empty removal class");
}

PurchaseSet apply_move(const PurchaseSet& x, int64_t remove_cell, int64_t add_cell) {
  std::vector<std::pair<int64_t, int32_t>> counts = x.cells;
  for (auto& [cell, n] : counts)
    if (cell == remove_cell) {
      --n;
      break;
    }
  std::erase_if(counts, [](const auto& e) { return e.second == 0; });
  counts.emplace_back(add_cell, 1);
  return PurchaseSet::from_counts(std::move(counts));
}

// Smallest gap between lambda and the attacker confidence over purchased TI
// cells; +inf when no TI cell is purchased.
double min_lambda_gap(const PurchaseSet& x, const Intent& true_intent, const Dataset& dataset,
                      const AllocationConfig& config) {
  const Intent pseudo = infer_pseudo_pi(dataset.space, x);
  double gap = std::numeric_limits<double>::infinity();
  for (const auto& [cell, n] : x.cells) {
    (void)n;
    if (!true_intent.contains_index(dataset.space, cell)) continue;
    const double conf = 1.0 - pvalue(cell, x, pseudo, dataset, config.pvalue);
    gap = std::min(gap, config.lambda - conf);
  }
  return gap;
}

}  // namespace

double mcmc_accept_probability(double old_utility, double new_utility) {
  if (old_utility > 0.0) return std::min(1.0, new_utility / old_utility);
  return new_utility > 0.0 ? 1.0 : 0.5;
}

AllocationResult allocate_mcmc(const Intent& published_intent, const Intent& true_intent,
                               const Dataset& dataset, const AllocationConfig& config) {
  if (config.epsilon <= 0.0) throw Error(errkind::config, "epsilon must be positive");
  const bool greedy_only = config.method == AllocationMethod::gmcmc;
  const DiscreteSampler sampler =
      make_init_sampler(dataset, published_intent, config.uniform_cells);
  const MoveClasses classes = purchasable_classes(dataset, published_intent, true_intent);

  // Initial feasible state, bounded re-draws.
  PurchaseSet x;
  bool initialized = false;
  for (int64_t attempt = 0; attempt < config.init_redraws; ++attempt) {
    auto rng = rng_substream(config.seed, 0x10000000ULL + static_cast<uint64_t>(attempt));
    x = sample_multiset(sampler, config.q, rng);
    if (is_feasible(x, true_intent, dataset, config.lambda, config.pvalue)) {
      initialized = true;
      break;
    }
  }
  if (!initialized)
    throw Error(errkind::no_feasible_allocation,
                "no feasible initial sample within the re-draw budget");

  double x_utility = utility(dataset.space, x, true_intent);
  PurchaseSet best = x;
  double best_utility = x_utility;

  auto chain_rng = rng_substream(config.seed, 0x20000000ULL);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int64_t cap = 100 * config.q;
  // The state only changes on acceptance, so the termination gap and the
  // per-move evaluations are cached between accepted moves. The chain
  // trajectory is identical to the uncached one: random draws happen in the
  // same order either way.
  double gap = min_lambda_gap(x, true_intent, dataset, config);
  std::map<std::pair<int64_t, int64_t>, Evaluation> move_cache;
  for (int64_t proposal = 0; proposal < cap; ++proposal) {
    if (gap < config.epsilon) return finish(std::move(x), true_intent, dataset, config);

    int64_t ti_in_x = 0;
    for (const auto& [cell, n] : x.cells)
      if (true_intent.contains_index(dataset.space, cell)) ti_in_x += n;
    const int64_t disguise_in_x = x.q - ti_in_x;

    std::vector<int> groups;
    if (disguise_in_x > 0 && !classes.ti_cells.empty()) groups.push_back(1);
    if (!greedy_only) {
      if (disguise_in_x > 0 && classes.disguise_cells.size() > 1) groups.push_back(2);
      if (ti_in_x > 0 && !classes.disguise_cells.empty()) groups.push_back(3);
      if (ti_in_x > 0 && classes.ti_cells.size() > 1) groups.push_back(4);
    }
    if (groups.empty()) break;

    std::uniform_int_distribution<size_t> group_pick(0, groups.size() - 1);
    const int group = groups[group_pick(chain_rng)];
    const bool remove_from_ti = group == 3 || group == 4;
    const int64_t removed =
        pick_removal(x, dataset.space, true_intent, remove_from_ti, chain_rng);

    const auto& add_class = (group == 1 || group == 4) ? classes.ti_cells
                                                       : classes.disguise_cells;
    std::vector<int64_t> add_candidates;
    for (int64_t cell : add_class) {
      if ((group == 2 || group == 4) && cell == removed) continue;  // "different" record
      add_candidates.push_back(cell);
    }
    if (add_candidates.empty()) continue;
    std::uniform_int_distribution<size_t> add_pick(0, add_candidates.size() - 1);
    const int64_t added = add_candidates[add_pick(chain_rng)];

    const PurchaseSet proposal_set = apply_move(x, removed, added);
    if (!is_feasible(proposal_set, true_intent, dataset, config.lambda, config.pvalue))
      continue;
    const double proposal_utility = utility(dataset.space, proposal_set, true_intent);
    const double accept_prob = mcmc_accept_probability(x_utility, proposal_utility);
    if (unit(chain_rng) <= accept_prob) {
      x = proposal_set;
      x_utility = proposal_utility;
      if (x_utility > best_utility) {
        best = x;
        best_utility = x_utility;
      }
    }
  }
  return finish(std::move(best), true_intent, dataset, config);
}

namespace {

PurchaseSet crossover_child(const std::vector<int64_t>& a, const std::vector<int64_t>& b,
                            int64_t point) {
  std::vector<std::pair<int64_t, int32_t>> counts;
  counts.reserve(a.size());
  for (int64_t i = 0; i < static_cast<int64_t>(a.size()); ++i)
    counts.emplace_back(i < point ? a[static_cast<size_t>(i)] : b[static_cast<size_t>(i)], 1);
  return PurchaseSet::from_counts(std::move(counts));
}

template <bool Parallel>
AllocationResult genetic_search(const Intent& published_intent, const Intent& true_intent,
                                const Dataset& dataset, const AllocationConfig& config) {
  if (config.population < 1 || config.elite < 1 || config.generations < 1)
    throw Error(errkind::config, "population, elite count and iterations must be positive");
  if (config.elite > config.population)
    throw Error(errkind::config, "elite count cannot exceed the population");
  const DiscreteSampler sampler =
      make_init_sampler(dataset, published_intent, config.uniform_cells);

  std::vector<PurchaseSet> pool;
  pool.reserve(static_cast<size_t>(config.population));
  for (int i = 0; i < config.population; ++i) {
    auto rng = rng_substream(config.seed, 0x30000000ULL + static_cast<uint64_t>(i));
    pool.push_back(sample_multiset(sampler, config.q, rng));
  }

  bool have_best = false;
  PurchaseSet best;
  double best_utility = -1.0;

  for (int gen = 0; gen <= config.generations; ++gen) {
    std::vector<Evaluation> evals(pool.size());
    if constexpr (Parallel) {
#pragma omp parallel for schedule(static)
      for (int64_t i = 0; i < static_cast<int64_t>(pool.size()); ++i)
        evals[static_cast<size_t>(i)] =
            evaluate(pool[static_cast<size_t>(i)], true_intent, dataset, config);
    } else {
      for (size_t i = 0; i < pool.size(); ++i)
        evals[i] = evaluate(pool[i], true_intent, dataset, config);
    }

    std::vector<size_t> feasible;
    for (size_t i = 0; i < pool.size(); ++i) {
      if (!evals[i].feasible) continue;
      feasible.push_back(i);
      if (evals[i].utility > best_utility) {
        best = pool[i];
        best_utility = evals[i].utility;
        have_best = true;
      }
    }
    if (gen == config.generations || feasible.empty()) break;

    std::stable_sort(feasible.begin(), feasible.end(), [&](size_t lhs, size_t rhs) {
      return evals[lhs].utility > evals[rhs].utility;
    });
    const size_t elite = std::min<size_t>(static_cast<size_t>(config.elite), feasible.size());

    std::vector<std::vector<int64_t>> parents(elite);
    for (size_t i = 0; i < elite; ++i) parents[i] = pool[feasible[i]].expanded();

    std::vector<PurchaseSet> next;
    next.reserve(elite * elite * 2);
    uint64_t pair_index = 0;
    for (size_t i = 0; i < elite; ++i) {
      for (size_t j = 0; j < elite; ++j, ++pair_index) {
        auto rng = rng_substream(config.seed, 0x40000000ULL +
                                                  static_cast<uint64_t>(gen) * 0x100000ULL +
                                                  pair_index);
        int64_t point = 0;
        if (config.q > 1) {
          std::uniform_int_distribution<int64_t> cut(1, config.q - 1);
          point = cut(rng);
        }
        next.push_back(crossover_child(parents[i], parents[j], point));
        next.push_back(crossover_child(parents[j], parents[i], point));
      }
    }
    pool = std::move(next);
  }

  if (!have_best)
    throw Error(errkind::no_feasible_allocation,
                "no feasible purchase set observed in any generation");
  return finish(std::move(best), true_intent, dataset, config);
}

}  // namespace

AllocationResult allocate_genetic(const Intent& published_intent, const Intent& true_intent,
                                  const Dataset& dataset, const AllocationConfig& config) {
  return genetic_search<true>(published_intent, true_intent, dataset, config);
}

AllocationResult allocate_genetic_serial(const Intent& published_intent,
                                         const Intent& true_intent, const Dataset& dataset,
                                         const AllocationConfig& config) {
  return genetic_search<false>(published_intent, true_intent, dataset, config);
}

AllocationResult allocate(const Intent& published_intent, const Intent& true_intent,
                          const Dataset& dataset, const AllocationConfig& config) {
  if (config.q < 1) throw Error(errkind::config, "q must be at least 1");
  if (!(config.lambda > 0.0 && config.lambda <= 1.0))
    throw Error(errkind::config, "lambda must lie in (0,1]");
  if (!true_intent.subset_of(published_intent))
    throw Error(errkind::invalid_intent,
                "true intent is not contained in the published intent");
  switch (config.method) {
    case AllocationMethod::mc_simulation:
      return allocate_mc(published_intent, true_intent, dataset, config);
    case AllocationMethod::mcmc:
    case AllocationMethod::gmcmc:
      return allocate_mcmc(published_intent, true_intent, dataset, config);
    case AllocationMethod::genetic:
      return allocate_genetic(published_intent, true_intent, dataset, config);
  }
  throw Error(errkind::config, "unknown allocation method");
}

}  // namespace dbpriv
