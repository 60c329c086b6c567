#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dbpriv/domain.hpp"

namespace dbpriv {

// Which background knowledge an attacker holds. (false,false) is the
// PI-uniform attacker; the other combinations are the EM variants.
struct AttackerKnowledge {
  bool knows_distribution = false;
  bool knows_cost = false;

  bool is_pi_uniform() const { return !knows_distribution && !knows_cost; }
  bool operator==(const AttackerKnowledge&) const = default;
};

// Throws config when the knowledge combination has no EM weight (PI-uniform).
EmWeight em_weight_kind(AttackerKnowledge knowledge);

struct ConfidenceBounds {
  std::optional<double> lower;  // absent for EM/PRI variants
  double upper = 0.0;
};

// Multiset of purchased cells; q is the total number of records.
struct PurchaseSet {
  // Sorted by cell index, counts > 0.
  std::vector<std::pair<int64_t, int32_t>> cells;
  int64_t q = 0;

  static PurchaseSet from_counts(std::vector<std::pair<int64_t, int32_t>> counts);

  int32_t count_of(int64_t cell_index) const;
  // One entry per record, sorted by cell index (the canonical record list).
  std::vector<int64_t> expanded() const;

  bool operator==(const PurchaseSet&) const = default;
};

struct PValueConfig {
  enum class Mode { monte_carlo, exact_binomial };

  int64_t replicates = 100000;  // L
  uint64_t seed = 0;
  Mode mode = Mode::exact_binomial;
};

// Eq-1 style bounds for the PI-uniform attacker: lower = prod 1/|U_i|,
// upper = prod |V_i|/|U_i|. Requires V subseteq U componentwise.
ConfidenceBounds conf_pi_uniform(const Intent& true_intent, const Intent& published_intent);

// w(cell) / sum_{t in U} w(t) with w = f_D, f_D*cost, or cost depending on
// the attacker's knowledge.
double conf_em_upper(const Dataset& dataset, AttackerKnowledge knowledge,
                     const Intent& published_intent, int64_t cell_index);

// Attainable confidence floor when the buyer claims the entire data space:
// max_{r in V} w(r) / sum_{t in D} w(t).
double conf_em_worst_case(const Dataset& dataset, AttackerKnowledge knowledge,
                          const Intent& true_intent);

// Cartesian-minimal intent covering every purchased record: per dimension the
// union of observed values.
Intent infer_pseudo_pi(const DataSpace& space, const PurchaseSet& purchased);

// f_P(cell) = h(cell)/q; zero for unobserved cells.
double empirical_dist(const PurchaseSet& purchased, int64_t cell_index);

// f_{D,PI}(cell) = f_D(cell) / sum over the pseudo published intent.
double conditional_density(const Dataset& dataset, const Intent& pseudo_pi, int64_t cell_index);

// P[Binomial(n, p) >= h].
double binomial_tail_upper(int64_t n, double p, int64_t h);

// One-sided p-value of the observed proportion of `cell_index` in the
// purchased set under the null of i.i.d. sampling from f_{D,PI}.
// Monte-Carlo mode draws `replicates` multisets of size q (deterministic per
// (seed, replicate), so the result does not depend on thread count);
// exact-binomial mode evaluates the matching binomial tail directly.
double pvalue(int64_t cell_index, const PurchaseSet& purchased, const Intent& pseudo_pi,
              const Dataset& dataset, const PValueConfig& config);

double pvalue_monte_carlo(int64_t cell_index, const PurchaseSet& purchased,
                          const Intent& pseudo_pi, const Dataset& dataset,
                          int64_t replicates, uint64_t seed);
// Single-threaded reference; bit-identical to the parallel kernel.
double pvalue_monte_carlo_serial(int64_t cell_index, const PurchaseSet& purchased,
                                 const Intent& pseudo_pi, const Dataset& dataset,
                                 int64_t replicates, uint64_t seed);

// PRI confidence upper bound: without distribution knowledge it is
// f_P(cell); with it, 1 - pvalue(cell). `dataset` may be null for the
// no-knowledge variant.
double conf_pri(int64_t cell_index, const PurchaseSet& purchased, const Dataset* dataset,
                const PValueConfig& config);

}  // namespace dbpriv
