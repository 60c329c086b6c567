#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dbpriv/error.hpp"

namespace dbpriv {

struct Dimension {
  std::string name;
  std::vector<std::string> values;  // order is significant for ordinal dims
  bool ordinal = false;
};

// A cell is one value index per dimension.
using Cell = std::vector<int>;

// Finite categorical product space D = D1 x ... x Dn. Immutable after
// construction; safe to share across threads.
class DataSpace {
 public:
  explicit DataSpace(std::vector<Dimension> dims);

  int rank() const { return static_cast<int>(dims_.size()); }
  const Dimension& dim(int i) const { return dims_[i]; }
  const std::vector<Dimension>& dims() const { return dims_; }
  int cardinality(int i) const { return static_cast<int>(dims_[i].values.size()); }

  // -1 when the name is unknown.
  int dim_index(const std::string& name) const;
  // -1 when the value is unknown on that dimension.
  int value_index(int dim, const std::string& value) const;

  int64_t cell_count() const { return cell_count_; }

  int64_t index_of(const Cell& coords) const;
  Cell coords_of(int64_t index) const;
  int coord_at(int64_t index, int dim) const;

  bool operator==(const DataSpace& other) const { return dims_same(other); }

 private:
  bool dims_same(const DataSpace& other) const;

  std::vector<Dimension> dims_;
  std::vector<int64_t> strides_;
  int64_t cell_count_ = 1;
};

// Conjunctive selection: one non-empty value-index set per dimension. A
// selection equal to the full dimension is ALL. Used for both the true
// intent V and the published intent U.
class Intent {
 public:
  Intent(const DataSpace& space, std::vector<std::vector<int>> selections);

  static Intent all(const DataSpace& space);
  static Intent single_cell(const DataSpace& space, const Cell& cell);

  int rank() const { return static_cast<int>(selections_.size()); }
  const std::vector<int>& selection(int dim) const { return selections_[dim]; }
  bool has_value(int dim, int value) const { return member_[dim][value] != 0; }
  bool is_all(int dim) const;

  bool contains_cell(const Cell& cell) const;
  bool contains_index(const DataSpace& space, int64_t index) const;
  // Componentwise containment (this subset of other).
  bool subset_of(const Intent& other) const;

  int64_t cartesian_size() const;

  // Copy with one extra value on one dimension.
  Intent with_value(int dim, int value) const;
  // Copy with dimension `dim` removed (for projections).
  Intent without_dimension(int dim) const;

  // Enumerates all cells of the intent in lexicographic coordinate order.
  std::vector<int64_t> cell_indices(const DataSpace& space) const;

  bool operator==(const Intent& other) const { return selections_ == other.selections_; }

 private:
  Intent() = default;

  std::vector<std::vector<int>> selections_;   // sorted, unique
  std::vector<std::vector<char>> member_;      // per-dim membership table
  std::vector<int> cards_;
};

// Aggregated dataset: per-cell frequency and per-cell cost over a DataSpace.
// Induces the density f_D(x) = freq(x) / total_count. Immutable after
// construction.
struct Dataset {
  DataSpace space;
  std::vector<int64_t> freq;    // indexed by linear cell index
  std::vector<double> cost;     // defined for every cell; defaults to 1
  int64_t total_count = 0;
  std::vector<int64_t> populated;  // cell indices with freq > 0

  double density(int64_t index) const {
    return static_cast<double>(freq[index]) / static_cast<double>(total_count);
  }
};

// Validates invariants and fills totals/populated. Throws empty-dataset when
// every frequency is zero.
Dataset make_dataset(DataSpace space, std::vector<int64_t> freq, std::vector<double> cost);

struct SyntheticParams {
  double freq_mean = 1000.0;
  double freq_std = 300.0;
  double cost_mean = 20.0;
  double cost_std = 5.0;
  double cost_floor = 1.0;
  uint64_t seed = 0;
};

// Per-cell frequency = round(max(0, Normal(freq_mean, freq_std))), cost =
// max(cost_floor, Normal(cost_mean, cost_std)). Each cell uses its own
// deterministic substream of `seed`, so the result is reproducible and
// independent of evaluation order.
Dataset generate_synthetic(const DataSpace& space, const SyntheticParams& params);

int64_t cartesian_size(const DataSpace& space, const Intent& intent);

struct IntentStats {
  int64_t count = 0;
  double total_cost = 0.0;
};

// count = sum of freq over cells in the intent; total_cost = sum freq * cost.
IntentStats records_in_intent(const Dataset& dataset, const Intent& intent);

// Attacker weight per cell, shared by the EM confidence bounds and the
// expansion constraint. Kept unnormalized (counts, count*cost, cost): every
// consumer takes ratios, and integer-derived weights keep exactly-tied
// scores exactly tied.
enum class EmWeight { frequency, frequency_cost, cost };

double cell_weight(const Dataset& dataset, int64_t index, EmWeight kind);
double intent_weight_sum(const Dataset& dataset, const Intent& intent, EmWeight kind);
double max_weight_in_intent(const Dataset& dataset, const Intent& intent, EmWeight kind);

}  // namespace dbpriv
