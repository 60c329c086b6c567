#include "dbpriv/projection.hpp"

#include <algorithm>

namespace dbpriv {

namespace {

ConfidenceBounds bounds_for(const Dataset& dataset, const Intent& true_intent,
                            const Intent& published_intent, AttackerKnowledge attack) {
  if (attack.is_pi_uniform()) return conf_pi_uniform(true_intent, published_intent);
  const EmWeight kind = em_weight_kind(attack);
  const double denom = intent_weight_sum(dataset, published_intent, kind);
  if (denom <= 0.0)
    throw Error(errkind::degenerate_intent, "no weight mass inside the published intent");
  return ConfidenceBounds{std::nullopt,
                          max_weight_in_intent(dataset, true_intent, kind) / denom};
}

}  // namespace

ProjectedSetting project_dimension(const Dataset& dataset, const Intent& true_intent,
                                   const Intent& published_intent,
                                   const std::string& dim_name) {
  const DataSpace& space = dataset.space;
  const int drop = space.dim_index(dim_name);
  if (drop < 0) throw Error(errkind::schema, "unknown dimension '" + dim_name + "'");
  if (space.rank() < 2)
    throw Error(errkind::invalid_operation, "cannot project away the only dimension");

  std::vector<Dimension> dims;
  for (int d = 0; d < space.rank(); ++d)
    if (d != drop) dims.push_back(space.dim(d));
  DataSpace reduced(std::move(dims));

  std::vector<int64_t> freq(static_cast<size_t>(reduced.cell_count()), 0);
  std::vector<double> freq_cost(static_cast<size_t>(reduced.cell_count()), 0.0);
  std::vector<double> cost_sum(static_cast<size_t>(reduced.cell_count()), 0.0);
  const int dropped_card = space.cardinality(drop);
  Cell small(reduced.rank());
  for (int64_t idx = 0; idx < space.cell_count(); ++idx) {
    int k = 0;
    for (int d = 0; d < space.rank(); ++d)
      if (d != drop) small[k++] = space.coord_at(idx, d);
    const int64_t ridx = reduced.index_of(small);
    freq[ridx] += dataset.freq[idx];
    freq_cost[ridx] += static_cast<double>(dataset.freq[idx]) * dataset.cost[idx];
    cost_sum[ridx] += dataset.cost[idx];
  }
  std::vector<double> cost(static_cast<size_t>(reduced.cell_count()), 1.0);
  for (size_t i = 0; i < cost.size(); ++i)
    cost[i] = freq[i] > 0 ? freq_cost[i] / static_cast<double>(freq[i])
                          : cost_sum[i] / static_cast<double>(dropped_card);

  return ProjectedSetting{make_dataset(reduced, std::move(freq), std::move(cost)),
                          true_intent.without_dimension(drop),
                          published_intent.without_dimension(drop), drop};
}

ProjectionRow project_and_reexpand(const Dataset& dataset, const Intent& true_intent,
                                   const Intent& published_intent,
                                   const std::string& dim_name,
                                   const ExpansionConfig& config) {
  ProjectionRow row;
  row.dimension = dim_name;
  row.before = bounds_for(dataset, true_intent, published_intent, config.attack);

  ProjectedSetting proj = project_dimension(dataset, true_intent, published_intent, dim_name);
  row.projected =
      bounds_for(proj.dataset, proj.true_intent, proj.published_intent, config.attack);
  if (row.before.lower && row.projected.lower)
    row.change_lower = *row.projected.lower - *row.before.lower;
  row.change_upper = row.projected.upper - row.before.upper;

  row.records_pi = records_in_intent(dataset, published_intent).count;
  // Purchased records whose remaining coordinates land in the projected TI:
  // the original TI widened to the full published selection on the dropped
  // dimension.
  std::vector<std::vector<int>> widened;
  for (int d = 0; d < dataset.space.rank(); ++d)
    widened.push_back(d == proj.dropped_dim ? published_intent.selection(d)
                                            : true_intent.selection(d));
  row.records_ti = records_in_intent(dataset, Intent(dataset.space, widened)).count;
  row.proj_utility =
      static_cast<double>(row.records_ti) / static_cast<double>(row.records_pi);
  row.proj_pi_size = proj.published_intent.cartesian_size();

  if (row.projected.upper > config.lambda) {
    row.reexpanded = true;
    const ExpansionResult updated = expand(proj.dataset, proj.true_intent, config);
    row.updated_records_pi = records_in_intent(proj.dataset, updated.published_intent).count;
    row.updated_pi_size = updated.published_intent.cartesian_size();
  } else {
    row.updated_records_pi = row.records_pi;
    row.updated_pi_size = row.proj_pi_size;
  }
  row.updated_utility =
      static_cast<double>(row.records_ti) / static_cast<double>(row.updated_records_pi);
  return row;
}

}  // namespace dbpriv
