#pragma once

#include <cstdint>
#include <vector>

#include "dbpriv/attacks.hpp"
#include "dbpriv/domain.hpp"

namespace dbpriv {

enum class AllocationMethod { mc_simulation, mcmc, gmcmc, genetic };

struct AllocationConfig {
  int64_t q = 1;              // purchase size
  double lambda = 0.3;        // privacy threshold
  AllocationMethod method = AllocationMethod::mc_simulation;
  int64_t mc_sets = 100000;   // Z
  double epsilon = 0.001;     // MCMC stopping margin
  int population = 50;        // T
  int elite = 10;             // R
  int generations = 30;       // W
  PValueConfig pvalue;
  uint64_t seed = 0;
  bool uniform_cells = false;  // init uniformly over populated PI cells
  int64_t init_redraws = 1000;
};

// Fraction of purchased records inside the true intent.
double utility(const DataSpace& space, const PurchaseSet& purchased, const Intent& true_intent);

// True iff every purchased cell of the true intent satisfies
// pvalue >= 1 - lambda under the null inferred from the purchase itself.
bool is_feasible(const PurchaseSet& purchased, const Intent& true_intent,
                 const Dataset& dataset, double lambda, const PValueConfig& pvalue_config);

struct FeasibilityRow {
  int64_t cell = 0;
  int32_t count = 0;
  double f_p = 0.0;
  double f_d_pi = 0.0;
  double p_value = 1.0;
  double confidence = 0.0;
};

// Per purchased-TI-cell p-values and confidences under the purchase's own
// pseudo published intent.
std::vector<FeasibilityRow> feasibility_report(const PurchaseSet& purchased,
                                               const Intent& true_intent,
                                               const Dataset& dataset,
                                               const PValueConfig& pvalue_config);

struct AllocationResult {
  PurchaseSet purchased;
  double utility = 0.0;
  double confidence_upper = 0.0;  // max over purchased TI cells; 0 when none
  std::vector<FeasibilityRow> report;
};

// Z i.i.d. candidate multisets from f_{D,PI} restricted to the published
// intent; returns the feasible one with maximal utility (lowest replicate
// index on ties, so the result is independent of thread count).
AllocationResult allocate_mc(const Intent& published_intent, const Intent& true_intent,
                             const Dataset& dataset, const AllocationConfig& config);
AllocationResult allocate_mc_serial(const Intent& published_intent, const Intent& true_intent,
                                    const Dataset& dataset, const AllocationConfig& config);

// min(1, new/old), with zero-utility states resolved as: accept improvements
// surely, stay symmetric (1/2) between two zero-utility states.
double mcmc_accept_probability(double old_utility, double new_utility);

// Metropolis-style chain over feasible purchase sets. method=mcmc walks all
// four move groups; method=gmcmc only the greedy group (drop a disguise,
// add a true-intent record). Stops when the attacker confidence on some
// purchased true-intent cell comes within epsilon of lambda, or at the
// 100*q proposal cap (returning the best feasible set seen).
AllocationResult allocate_mcmc(const Intent& published_intent, const Intent& true_intent,
                               const Dataset& dataset, const AllocationConfig& config);

// Utility-ranked truncation selection with one-point crossover on the
// canonical record lists.
AllocationResult allocate_genetic(const Intent& published_intent, const Intent& true_intent,
                                  const Dataset& dataset, const AllocationConfig& config);
AllocationResult allocate_genetic_serial(const Intent& published_intent,
                                         const Intent& true_intent, const Dataset& dataset,
                                         const AllocationConfig& config);

AllocationResult allocate(const Intent& published_intent, const Intent& true_intent,
                          const Dataset& dataset, const AllocationConfig& config);

}  // namespace dbpriv
