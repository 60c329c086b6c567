#include "dbpriv/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace dbpriv {

namespace {

// The slab U_1 x ... x {value} x ... x U_n with `value` substituted on `dim`.
Intent slab_intent(const DataSpace& space, const Intent& current_pi, int dim, int value) {
  std::vector<std::vector<int>> sel;
  sel.reserve(static_cast<size_t>(current_pi.rank()));
  for (int d = 0; d < current_pi.rank(); ++d)
    sel.push_back(d == dim ? std::vector<int>{value} : current_pi.selection(d));
  return Intent(space, std::move(sel));
}

bool constraint_violated(const Dataset& dataset, const Intent& true_intent,
                         const Intent& published, const ExpansionConfig& config) {
  if (config.attack.is_pi_uniform()) {
    const double need = static_cast<double>(true_intent.cartesian_size()) / config.lambda;
    return need > static_cast<double>(published.cartesian_size());
  }
  const EmWeight kind = em_weight_kind(config.attack);
  const double need =
      max_weight_in_intent(dataset, true_intent, kind) / config.lambda;
  return need > intent_weight_sum(dataset, published, kind);
}

ConfidenceBounds final_bounds(const Dataset& dataset, const Intent& true_intent,
                              const Intent& published, const ExpansionConfig& config) {
  if (config.attack.is_pi_uniform()) return conf_pi_uniform(true_intent, published);
  const EmWeight kind = em_weight_kind(config.attack);
  const double denom = intent_weight_sum(dataset, published, kind);
  if (denom <= 0.0)
    throw Error(errkind::degenerate_intent, "no weight mass inside the published intent");
  return ConfidenceBounds{std::nullopt,
                          max_weight_in_intent(dataset, true_intent, kind) / denom};
}

}  // namespace

std::vector<Candidate> nearest_candidates(const DataSpace& space, const Intent& current_pi) {
  std::vector<Candidate> out;
  for (int d = 0; d < space.rank(); ++d) {
    const auto& sel = current_pi.selection(d);
    if (static_cast<int>(sel.size()) == space.cardinality(d)) continue;  // saturated
    if (space.dim(d).ordinal) {
      int best_value = -1;
      int64_t best_dist = 0;
      for (int v = 0; v < space.cardinality(d); ++v) {
        if (current_pi.has_value(d, v)) continue;
        int64_t dist = 0;
        for (int u : sel) dist += std::abs(v - u);
        if (best_value < 0 || dist < best_dist) {
          best_value = v;
          best_dist = dist;
        }
      }
      out.push_back(Candidate{d, best_value, static_cast<double>(best_dist), 0, 0.0});
    } else {
      // No semantic distance among nominal values: every remaining value.
      for (int v = 0; v < space.cardinality(d); ++v)
        if (!current_pi.has_value(d, v)) out.push_back(Candidate{d, v, 0.0, 0, 0.0});
    }
  }
  return out;
}

int64_t candidate_addition(const Dataset& dataset, const Intent& current_pi,
                           const Candidate& candidate) {
  const Intent slab = slab_intent(dataset.space, current_pi, candidate.dim, candidate.value);
  return records_in_intent(dataset, slab).count;
}

double candidate_increase(const Dataset& dataset, const Intent& current_pi,
                          const Candidate& candidate, AttackerKnowledge attack) {
  if (attack.is_pi_uniform()) {
    int64_t size = 1;
    for (int d = 0; d < current_pi.rank(); ++d)
      if (d != candidate.dim) size *= static_cast<int64_t>(current_pi.selection(d).size());
    return static_cast<double>(size);
  }
  const Intent slab = slab_intent(dataset.space, current_pi, candidate.dim, candidate.value);
  return intent_weight_sum(dataset, slab, em_weight_kind(attack));
}

std::vector<double> score_candidates(const std::vector<Candidate>& candidates, double alpha) {
  if (candidates.empty()) throw Error(errkind::no_candidate, "no expansion candidates");
  auto normalized = [&](auto get) {
    double mn = get(candidates[0]), mx = mn;
    for (const auto& c : candidates) {
      mn = std::min(mn, get(c));
      mx = std::max(mx, get(c));
    }
    std::vector<double> out(candidates.size(), 0.0);
    if (mx > mn)
      for (size_t i = 0; i < candidates.size(); ++i)
        out[i] = (get(candidates[i]) - mn) / (mx - mn);
    return out;
  };
  const auto add_hat =
      normalized([](const Candidate& c) { return static_cast<double>(c.addition); });
  const auto inc_hat = normalized([](const Candidate& c) { return c.increase; });
  const double max_add_hat = *std::max_element(add_hat.begin(), add_hat.end());
  std::vector<double> scores(candidates.size());
  for (size_t i = 0; i < candidates.size(); ++i)
    scores[i] = alpha * (max_add_hat - add_hat[i]) + (1.0 - alpha) * inc_hat[i];
  return scores;
}

ExpansionResult expand(const Dataset& dataset, const Intent& true_intent,
                       const ExpansionConfig& config) {
  if (!(config.lambda > 0.0 && config.lambda <= 1.0))
    throw Error(errkind::config, "lambda must lie in (0,1]");
  if (!(config.alpha >= 0.0 && config.alpha <= 1.0))
    throw Error(errkind::config, "alpha must lie in [0,1]");
  if (!config.attack.is_pi_uniform()) {
    const double floor = conf_em_worst_case(dataset, config.attack, true_intent);
    if (floor > config.lambda) {
      std::ostringstream msg;
      msg << "no published intent can reach lambda=" << config.lambda
          << "; the worst-case confidence floor is " << floor;
      throw Error(errkind::infeasible, msg.str());
    }
  }

  ExpansionResult result{true_intent, {}, {}};
  int64_t iterations = 0;
  while (constraint_violated(dataset, true_intent, result.published_intent, config)) {
    if (++iterations > config.max_iterations)
      throw Error(errkind::config, "expansion exceeded max_iterations");
    auto candidates = nearest_candidates(dataset.space, result.published_intent);
    if (candidates.empty())
      throw Error(errkind::infeasible,
                  "the threshold is unattainable even with the entire data space "
                  "as the published intent");
    for (auto& c : candidates) {
      c.addition = candidate_addition(dataset, result.published_intent, c);
      c.increase = candidate_increase(dataset, result.published_intent, c, config.attack);
    }
    const auto scores = score_candidates(candidates, config.alpha);
    // Candidates are enumerated by (dim, value) ascending, so keeping the
    // first strict maximum applies the tie-break.
    size_t best = 0;
    for (size_t i = 1; i < scores.size(); ++i)
      if (scores[i] > scores[best]) best = i;
    const Candidate& chosen = candidates[best];
    result.published_intent = result.published_intent.with_value(chosen.dim, chosen.value);
    result.trace.push_back(ExpansionStep{chosen.dim, chosen.value, chosen.addition,
                                         chosen.increase, scores[best]});
  }
  result.bounds = final_bounds(dataset, true_intent, result.published_intent, config);
  return result;
}

}  // namespace dbpriv
