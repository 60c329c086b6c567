#include "dbpriv/domain.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "dbpriv/rng.hpp"

namespace dbpriv {

namespace {
// Dense per-cell storage; keeps every confidence computation a flat scan.
constexpr int64_t kMaxCells = int64_t{1} << 24;
}  // namespace

DataSpace::DataSpace(std::vector<Dimension> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw Error(errkind::schema, "data space needs at least one dimension");
  std::set<std::string> names;
  for (const auto& d : dims_) {
    if (d.values.empty())
      throw Error(errkind::schema, "dimension '" + d.name + "' has no values");
    if (!names.insert(d.name).second)
      throw Error(errkind::schema, "duplicate dimension name '" + d.name + "'");
    std::set<std::string> vals(d.values.begin(), d.values.end());
    if (vals.size() != d.values.size())
      throw Error(errkind::schema, "duplicate value in dimension '" + d.name + "'");
  }
  strides_.assign(dims_.size(), 1);
  for (int i = static_cast<int>(dims_.size()) - 1; i >= 0; --i) {
    strides_[i] = cell_count_;
    cell_count_ *= static_cast<int64_t>(dims_[i].values.size());
    if (cell_count_ > kMaxCells)
      throw Error(errkind::schema, "data space exceeds the supported cell count");
  }
}

int DataSpace::dim_index(const std::string& name) const {
  for (int i = 0; i < rank(); ++i)
    if (dims_[i].name == name) return i;
  return -1;
}

int DataSpace::value_index(int dim, const std::string& value) const {
  const auto& vals = dims_[dim].values;
  for (int i = 0; i < static_cast<int>(vals.size()); ++i)
    if (vals[i] == value) return i;
  return -1;
}

int64_t DataSpace::index_of(const Cell& coords) const {
  int64_t idx = 0;
  for (int i = 0; i < rank(); ++i) idx += strides_[i] * coords[i];
  return idx;
}

Cell DataSpace::coords_of(int64_t index) const {
  Cell c(rank());
  for (int i = 0; i < rank(); ++i) {
    c[i] = static_cast<int>((index / strides_[i]) % cardinality(i));
  }
  return c;
}

int DataSpace::coord_at(int64_t index, int dim) const {
  return static_cast<int>((index / strides_[dim]) % cardinality(dim));
}

bool DataSpace::dims_same(const DataSpace& other) const {
  if (dims_.size() != other.dims_.size()) return false;
  for (size_t i = 0; i < dims_.size(); ++i) {
    if (dims_[i].name != other.dims_[i].name || dims_[i].ordinal != other.dims_[i].ordinal ||
        dims_[i].values != other.dims_[i].values)
      return false;
  }
  return true;
}

Intent::Intent(const DataSpace& space, std::vector<std::vector<int>> selections) {
  if (static_cast<int>(selections.size()) != space.rank())
    throw Error(errkind::invalid_intent, "intent rank does not match the data space");
  selections_ = std::move(selections);
  member_.resize(selections_.size());
  cards_.resize(selections_.size());
  for (int d = 0; d < static_cast<int>(selections_.size()); ++d) {
    auto& sel = selections_[d];
    std::sort(sel.begin(), sel.end());
    sel.erase(std::unique(sel.begin(), sel.end()), sel.end());
    if (sel.empty())
      throw Error(errkind::invalid_intent,
                  "empty selection on dimension '" + space.dim(d).name + "'");
    if (sel.front() < 0 || sel.back() >= space.cardinality(d))
      throw Error(errkind::invalid_intent,
                  "value index out of range on dimension '" + space.dim(d).name + "'");
    cards_[d] = space.cardinality(d);
    member_[d].assign(cards_[d], 0);
    for (int v : sel) member_[d][v] = 1;
  }
}

Intent Intent::all(const DataSpace& space) {
  std::vector<std::vector<int>> sel(space.rank());
  for (int d = 0; d < space.rank(); ++d) {
    sel[d].resize(space.cardinality(d));
    for (int v = 0; v < space.cardinality(d); ++v) sel[d][v] = v;
  }
  return Intent(space, std::move(sel));
}

Intent Intent::single_cell(const DataSpace& space, const Cell& cell) {
  std::vector<std::vector<int>> sel(space.rank());
  for (int d = 0; d < space.rank(); ++d) sel[d] = {cell[d]};
  return Intent(space, std::move(sel));
}

bool Intent::is_all(int dim) const {
  return static_cast<int>(selections_[dim].size()) == cards_[dim];
}

bool Intent::contains_cell(const Cell& cell) const {
  for (int d = 0; d < rank(); ++d)
    if (!member_[d][cell[d]]) return false;
  return true;
}

bool Intent::contains_index(const DataSpace& space, int64_t index) const {
  for (int d = 0; d < rank(); ++d)
    if (!member_[d][space.coord_at(index, d)]) return false;
  return true;
}

bool Intent::subset_of(const Intent& other) const {
  if (rank() != other.rank()) return false;
  for (int d = 0; d < rank(); ++d)
    for (int v : selections_[d])
      if (!other.member_[d][v]) return false;
  return true;
}

int64_t Intent::cartesian_size() const {
  int64_t size = 1;
  for (const auto& sel : selections_) size *= static_cast<int64_t>(sel.size());
  return size;
}

Intent Intent::with_value(int dim, int value) const {
  Intent copy = *this;
  if (copy.member_[dim][value])
    throw Error(errkind::invalid_intent, "value already selected on that dimension");
  copy.member_[dim][value] = 1;
  auto& sel = copy.selections_[dim];
  sel.insert(std::lower_bound(sel.begin(), sel.end(), value), value);
  return copy;
}

Intent Intent::without_dimension(int dim) const {
  if (rank() <= 1)
    throw Error(errkind::invalid_operation, "cannot project away the only dimension");
  Intent copy = *this;
  copy.selections_.erase(copy.selections_.begin() + dim);
  copy.member_.erase(copy.member_.begin() + dim);
  copy.cards_.erase(copy.cards_.begin() + dim);
  return copy;
}

std::vector<int64_t> Intent::cell_indices(const DataSpace& space) const {
  std::vector<int64_t> out;
  out.reserve(static_cast<size_t>(cartesian_size()));
  Cell cur(rank());
  std::vector<int> pos(rank(), 0);
  for (int d = 0; d < rank(); ++d) cur[d] = selections_[d][0];
  while (true) {
    out.push_back(space.index_of(cur));
    int d = rank() - 1;
    while (d >= 0) {
      if (++pos[d] < static_cast<int>(selections_[d].size())) {
        cur[d] = selections_[d][pos[d]];
        break;
      }
      pos[d] = 0;
      cur[d] = selections_[d][0];
      --d;
    }
    if (d < 0) break;
  }
  return out;
}

Dataset make_dataset(DataSpace space, std::vector<int64_t> freq, std::vector<double> cost) {
  Dataset ds{std::move(space), std::move(freq), std::move(cost), 0, {}};
  const auto cells = ds.space.cell_count();
  if (static_cast<int64_t>(ds.freq.size()) != cells)
    throw Error(errkind::schema, "frequency table does not match the data space");
  if (ds.cost.empty()) ds.cost.assign(static_cast<size_t>(cells), 1.0);
  if (static_cast<int64_t>(ds.cost.size()) != cells)
    throw Error(errkind::schema, "cost table does not match the data space");
  for (int64_t i = 0; i < cells; ++i) {
    if (ds.freq[i] < 0) throw Error(errkind::schema, "negative cell frequency");
    if (!(ds.cost[i] > 0.0)) throw Error(errkind::schema, "cell cost must be positive");
    if (ds.freq[i] > 0) {
      ds.total_count += ds.freq[i];
      ds.populated.push_back(i);
    }
  }
  if (ds.total_count == 0) throw Error(errkind::empty_dataset, "dataset has no records");
  return ds;
}

Dataset generate_synthetic(const DataSpace& space, const SyntheticParams& params) {
  if (params.freq_std < 0 || params.cost_std < 0 || params.cost_floor < 0)
    throw Error(errkind::config, "synthetic deviations and cost floor must be non-negative");
  const int64_t cells = space.cell_count();
  std::vector<int64_t> freq(static_cast<size_t>(cells));
  std::vector<double> cost(static_cast<size_t>(cells));
  for (int64_t i = 0; i < cells; ++i) {
    auto rng = rng_substream(params.seed, static_cast<uint64_t>(i));
    std::normal_distribution<double> freq_draw(params.freq_mean, params.freq_std);
    std::normal_distribution<double> cost_draw(params.cost_mean, params.cost_std);
    freq[i] = static_cast<int64_t>(std::llround(std::max(0.0, freq_draw(rng))));
    cost[i] = std::max(params.cost_floor, cost_draw(rng));
  }
  return make_dataset(space, std::move(freq), std::move(cost));
}

int64_t cartesian_size(const DataSpace& space, const Intent& intent) {
  (void)space;
  return intent.cartesian_size();
}

IntentStats records_in_intent(const Dataset& dataset, const Intent& intent) {
  IntentStats stats;
  for (int64_t idx : dataset.populated) {
    if (!intent.contains_index(dataset.space, idx)) continue;
    stats.count += dataset.freq[idx];
    stats.total_cost += static_cast<double>(dataset.freq[idx]) * dataset.cost[idx];
  }
  return stats;
}

double cell_weight(const Dataset& dataset, int64_t index, EmWeight kind) {
  switch (kind) {
    case EmWeight::frequency:
      return static_cast<double>(dataset.freq[index]);
    case EmWeight::frequency_cost:
      return static_cast<double>(dataset.freq[index]) * dataset.cost[index];
    case EmWeight::cost:
      return dataset.cost[index];
  }
  return 0.0;
}

double intent_weight_sum(const Dataset& dataset, const Intent& intent, EmWeight kind) {
  double sum = 0.0;
  if (kind == EmWeight::cost) {
    // Cost is defined for every cell, populated or not.
    for (int64_t idx : intent.cell_indices(dataset.space)) sum += dataset.cost[idx];
    return sum;
  }
  for (int64_t idx : dataset.populated)
    if (intent.contains_index(dataset.space, idx)) sum += cell_weight(dataset, idx, kind);
  return sum;
}

double max_weight_in_intent(const Dataset& dataset, const Intent& intent, EmWeight kind) {
  double best = 0.0;
  if (kind == EmWeight::cost) {
    for (int64_t idx : intent.cell_indices(dataset.space))
      best = std::max(best, dataset.cost[idx]);
    return best;
  }
  for (int64_t idx : dataset.populated)
    if (intent.contains_index(dataset.space, idx))
      best = std::max(best, cell_weight(dataset, idx, kind));
  return best;
}

}  // namespace dbpriv
