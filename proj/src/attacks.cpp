#include "dbpriv/attacks.hpp"

#include <algorithm>
#include <cmath>

#include "dbpriv/rng.hpp"

namespace dbpriv {

EmWeight em_weight_kind(AttackerKnowledge knowledge) {
  if (knowledge.knows_distribution && knowledge.knows_cost) return EmWeight::frequency_cost;
  if (knowledge.knows_distribution) return EmWeight::frequency;
  if (knowledge.knows_cost) return EmWeight::cost;
  throw Error(errkind::config, "the PI-uniform attacker has no EM weight");
}

PurchaseSet PurchaseSet::from_counts(std::vector<std::pair<int64_t, int32_t>> counts) {
  std::sort(counts.begin(), counts.end());
  PurchaseSet ps;
  for (const auto& [cell, n] : counts) {
    if (n <= 0) throw Error(errkind::config, "purchase multiplicities must be positive");
    if (!ps.cells.empty() && ps.cells.back().first == cell)
      ps.cells.back().second += n;
    else
      ps.cells.emplace_back(cell, n);
    ps.q += n;
  }
  if (ps.q == 0) throw Error(errkind::config, "purchase set is empty");
  return ps;
}

int32_t PurchaseSet::count_of(int64_t cell_index) const {
  auto it = std::lower_bound(cells.begin(), cells.end(), cell_index,
                             [](const auto& e, int64_t v) { return e.first < v; });
  if (it == cells.end() || it->first != cell_index) return 0;
  return it->second;
}

std::vector<int64_t> PurchaseSet::expanded() const {
  std::vector<int64_t> out;
  out.reserve(static_cast<size_t>(q));
  for (const auto& [cell, n] : cells)
    for (int32_t i = 0; i < n; ++i) out.push_back(cell);
  return out;
}

ConfidenceBounds conf_pi_uniform(const Intent& true_intent, const Intent& published_intent) {
  if (!true_intent.subset_of(published_intent))
    throw Error(errkind::invalid_intent,
                "true intent is not contained in the published intent");
  double lower = 1.0, upper = 1.0;
  for (int d = 0; d < true_intent.rank(); ++d) {
    const double u = static_cast<double>(published_intent.selection(d).size());
    lower *= 1.0 / u;
    upper *= static_cast<double>(true_intent.selection(d).size()) / u;
  }
  return ConfidenceBounds{lower, upper};
}

double conf_em_upper(const Dataset& dataset, AttackerKnowledge knowledge,
                     const Intent& published_intent, int64_t cell_index) {
  const EmWeight kind = em_weight_kind(knowledge);
  if (!published_intent.contains_index(dataset.space, cell_index))
    throw Error(errkind::invalid_intent, "cell lies outside the published intent");
  const double denom = intent_weight_sum(dataset, published_intent, kind);
  if (denom <= 0.0)
    throw Error(errkind::degenerate_intent, "no weight mass inside the published intent");
  return cell_weight(dataset, cell_index, kind) / denom;
}

double conf_em_worst_case(const Dataset& dataset, AttackerKnowledge knowledge,
                          const Intent& true_intent) {
  const EmWeight kind = em_weight_kind(knowledge);
  const Intent whole = Intent::all(dataset.space);
  return max_weight_in_intent(dataset, true_intent, kind) /
         intent_weight_sum(dataset, whole, kind);
}

Intent infer_pseudo_pi(const DataSpace& space, const PurchaseSet& purchased) {
  if (purchased.q == 0) throw Error(errkind::config, "purchase set is empty");
  std::vector<std::vector<int>> sel(space.rank());
  for (const auto& [cell, n] : purchased.cells) {
    (void)n;
    for (int d = 0; d < space.rank(); ++d) sel[d].push_back(space.coord_at(cell, d));
  }
  return Intent(space, std::move(sel));
}

double empirical_dist(const PurchaseSet& purchased, int64_t cell_index) {
  if (purchased.q == 0) return 0.0;
  return static_cast<double>(purchased.count_of(cell_index)) /
         static_cast<double>(purchased.q);
}

double conditional_density(const Dataset& dataset, const Intent& pseudo_pi,
                           int64_t cell_index) {
  if (!pseudo_pi.contains_index(dataset.space, cell_index))
    throw Error(errkind::invalid_intent, "cell lies outside the pseudo published intent");
  const double denom = intent_weight_sum(dataset, pseudo_pi, EmWeight::frequency);
  if (denom <= 0.0)
    throw Error(errkind::degenerate_intent, "no density mass inside the pseudo intent");
  return static_cast<double>(dataset.freq[cell_index]) / denom;
}

double binomial_tail_upper(int64_t n, double p, int64_t h) {
  if (h <= 0) return 1.0;
  if (h > n) return 0.0;
  if (p <= 0.0) return 0.0;  // h >= 1 here
  if (p >= 1.0) return 1.0;
  // Sum the smaller side of the distribution in log space.
  auto log_pmf = [&](int64_t k) {
    return std::lgamma(static_cast<double>(n) + 1.0) -
           std::lgamma(static_cast<double>(k) + 1.0) -
           std::lgamma(static_cast<double>(n - k) + 1.0) +
           static_cast<double>(k) * std::log(p) +
           static_cast<double>(n - k) * std::log1p(-p);
  };
  const bool upper_smaller = static_cast<double>(h) > static_cast<double>(n) * p;
  double sum = 0.0;
  if (upper_smaller) {
    for (int64_t k = n; k >= h; --k) sum += std::exp(log_pmf(k));
    return std::min(1.0, sum);
  }
  for (int64_t k = 0; k < h; ++k) sum += std::exp(log_pmf(k));
  return std::clamp(1.0 - sum, 0.0, 1.0);
}

namespace {

struct NullModel {
  DiscreteSampler sampler;
  int64_t target_cell;  // linear index of the cell under test
};

NullModel make_null(const Dataset& dataset, const Intent& pseudo_pi, int64_t cell_index) {
  std::vector<int64_t> cells;
  std::vector<int64_t> weights;
  for (int64_t idx : dataset.populated) {
    if (!pseudo_pi.contains_index(dataset.space, idx)) continue;
    cells.push_back(idx);
    weights.push_back(dataset.freq[idx]);
  }
  if (cells.empty())
    throw Error(errkind::degenerate_intent, "no density mass inside the pseudo intent");
  return NullModel{DiscreteSampler(std::move(cells), weights), cell_index};
}

// One replicate: draw a multiset of size q from f_{D,PI} and report whether
// the target cell's proportion is at least as extreme as the observed one.
bool replicate_at_least_as_extreme(const NullModel& null, int64_t q, int32_t observed,
                                   uint64_t seed, int64_t replicate) {
  auto rng = rng_substream(seed, static_cast<uint64_t>(replicate));
  int64_t hits = 0;
  for (int64_t i = 0; i < q; ++i)
    if (null.sampler.draw(rng) == null.target_cell) ++hits;
  return hits >= observed;
}

}  // namespace

double pvalue_monte_carlo(int64_t cell_index, const PurchaseSet& purchased,
                          const Intent& pseudo_pi, const Dataset& dataset,
                          int64_t replicates, uint64_t seed) {
  if (replicates < 1) throw Error(errkind::config, "replicate count must be at least 1");
  const NullModel null = make_null(dataset, pseudo_pi, cell_index);
  const int32_t observed = purchased.count_of(cell_index);
  const int64_t q = purchased.q;
  int64_t extreme = 0;
#pragma omp parallel for reduction(+ : extreme) schedule(static)
  for (int64_t rep = 0; rep < replicates; ++rep)
    extreme += replicate_at_least_as_extreme(null, q, observed, seed, rep) ? 1 : 0;
  return static_cast<double>(extreme) / static_cast<double>(replicates);
}

double pvalue_monte_carlo_serial(int64_t cell_index, const PurchaseSet& purchased,
                                 const Intent& pseudo_pi, const Dataset& dataset,
                                 int64_t replicates, uint64_t seed) {
  if (replicates < 1) throw Error(errkind::config, "replicate count must be at least 1");
  const NullModel null = make_null(dataset, pseudo_pi, cell_index);
  const int32_t observed = purchased.count_of(cell_index);
  const int64_t q = purchased.q;
  int64_t extreme = 0;
  for (int64_t rep = 0; rep < replicates; ++rep)
    extreme += replicate_at_least_as_extreme(null, q, observed, seed, rep) ? 1 : 0;
  return static_cast<double>(extreme) / static_cast<double>(replicates);
}

double pvalue(int64_t cell_index, const PurchaseSet& purchased, const Intent& pseudo_pi,
              const Dataset& dataset, const PValueConfig& config) {
  if (config.mode == PValueConfig::Mode::monte_carlo)
    return pvalue_monte_carlo(cell_index, purchased, pseudo_pi, dataset,
                              config.replicates, config.seed);
  // Under i.i.d. sampling from f_{D,PI} the per-cell count is
  // Binomial(q, f_{D,PI}(cell)).
  const double p0 = conditional_density(dataset, pseudo_pi, cell_index);
  return binomial_tail_upper(purchased.q, p0, purchased.count_of(cell_index));
}

double conf_pri(int64_t cell_index, const PurchaseSet& purchased, const Dataset* dataset,
                const PValueConfig& config) {
  if (dataset == nullptr) return empirical_dist(purchased, cell_index);
  const Intent pseudo = infer_pseudo_pi(dataset->space, purchased);
  return 1.0 - pvalue(cell_index, purchased, pseudo, *dataset, config);
}

}  // namespace dbpriv
