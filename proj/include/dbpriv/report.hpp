#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dbpriv/allocation.hpp"
#include "dbpriv/expansion.hpp"

namespace dbpriv {

struct ReportRow {
  std::string setting;
  std::string attack;
  std::string method;
  std::optional<double> conf_lower;
  double conf_upper = 0.0;
  double total_cost = 0.0;
  double cost_ti = 0.0;
  double cost_ratio = 0.0;
  double records_pi = 0.0;
  double records_ti = 0.0;
  double utility = 0.0;
  double elapsed_seconds = 0.0;
  // Present for repeated allocation runs (mean+std reporting).
  std::optional<double> conf_upper_std;
  std::optional<double> records_ti_std;
  std::optional<double> utility_std;
  std::optional<double> elapsed_std;
  std::optional<std::string> error;
};

// Fixed column order; raw full-precision values.
std::string report_csv(const std::vector<ReportRow>& rows);

struct AttackSetting {
  std::string name;  // pi-uniform | em-f | em-c | em-fc
  AttackerKnowledge knowledge;
  double lambda = 0.3;
  double alpha = 0.5;
};

AttackerKnowledge knowledge_from_name(const std::string& name);

// One "w/o protection" row (U = V) and one "expansion" row per attack.
std::vector<ReportRow> run_expansion_experiment(const Dataset& dataset,
                                                const std::string& setting,
                                                const Intent& true_intent,
                                                const std::vector<AttackSetting>& attacks);

struct AllocationExperiment {
  std::string setting;
  Intent published_intent;
  Intent true_intent;
  AllocationConfig base;  // per-method epsilon overrides applied by the caller
  int repeats = 10;
  bool include_no_protection = true;
};

// Runs one method `repeats` times with seeds base.seed + 0..repeats-1.
ReportRow run_allocation_method(const Dataset& dataset, const AllocationExperiment& experiment,
                                AllocationMethod method);

// The utility-maximizing purchase of size q with no privacy protection: all
// true-intent records first (most frequent cells first), disguise records
// after. The baseline row of the allocation tables.
PurchaseSet no_protection_purchase(const Dataset& dataset, const Intent& published_intent,
                                   const Intent& true_intent, int64_t q);

enum class SweepParam { lambda, alpha, ti_size };

struct SweepPoint {
  double param = 0.0;
  int64_t records_pi = 0;
  std::optional<double> conf_lower;
  double conf_upper = 0.0;
  int64_t pi_size = 0;
  std::optional<std::string> error;
};

// One expansion per grid point; failures are recorded on the point and the
// sweep continues. For ti_size sweeps the swept dimension's selection grows
// to the target size by adding values in schema order.
std::vector<SweepPoint> sweep(const Dataset& dataset, const Intent& true_intent,
                              const ExpansionConfig& base, SweepParam param,
                              const std::vector<double>& grid, int ti_dim = -1);

std::string sweep_csv(const std::vector<SweepPoint>& points);

}  // namespace dbpriv
