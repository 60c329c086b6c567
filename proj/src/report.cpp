#include "dbpriv/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

namespace dbpriv {

namespace {

double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

std::string fmt_opt(const std::optional<double>& v) { return v ? fmt(*v) : ""; }

ConfidenceBounds unprotected_bounds(const Dataset& dataset, const Intent& true_intent,
                                    AttackerKnowledge attack) {
  if (attack.is_pi_uniform()) return conf_pi_uniform(true_intent, true_intent);
  const EmWeight kind = em_weight_kind(attack);
  const double denom = intent_weight_sum(dataset, true_intent, kind);
  if (denom <= 0.0)
    throw Error(errkind::degenerate_intent, "no weight mass inside the true intent");
  return ConfidenceBounds{std::nullopt,
                          max_weight_in_intent(dataset, true_intent, kind) / denom};
}

ReportRow stats_row(const Dataset& dataset, const Intent& true_intent,
                    const Intent& published_intent, const ConfidenceBounds& bounds) {
  const IntentStats pi = records_in_intent(dataset, published_intent);
  const IntentStats ti = records_in_intent(dataset, true_intent);
  ReportRow row;
  row.conf_lower = bounds.lower;
  row.conf_upper = bounds.upper;
  row.total_cost = pi.total_cost;
  row.cost_ti = ti.total_cost;
  row.cost_ratio = pi.total_cost > 0 ? ti.total_cost / pi.total_cost : 0.0;
  row.records_pi = static_cast<double>(pi.count);
  row.records_ti = static_cast<double>(ti.count);
  row.utility = pi.count > 0 ? static_cast<double>(ti.count) / static_cast<double>(pi.count)
                             : 0.0;
  return row;
}

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;
};

MeanStd mean_std(const std::vector<double>& xs) {
  MeanStd ms;
  if (xs.empty()) return ms;
  for (double x : xs) ms.mean += x;
  ms.mean /= static_cast<double>(xs.size());
  for (double x : xs) ms.std += (x - ms.mean) * (x - ms.mean);
  ms.std = std::sqrt(ms.std / static_cast<double>(xs.size()));
  return ms;
}

}  // namespace

std::string report_csv(const std::vector<ReportRow>& rows) {
  std::ostringstream out;
  out << "setting,attack,method,conf_lower,conf_upper,total_cost,cost_ti,cost_ratio,"
         "records_pi,records_ti,utility,elapsed_seconds,conf_upper_std,records_ti_std,"
         "utility_std,elapsed_std,error\n";
  for (const auto& r : rows) {
    out << r.setting << "," << r.attack << "," << r.method << "," << fmt_opt(r.conf_lower)
        << "," << fmt(r.conf_upper) << "," << fmt(r.total_cost) << "," << fmt(r.cost_ti)
        << "," << fmt(r.cost_ratio) << "," << fmt(r.records_pi) << "," << fmt(r.records_ti)
        << "," << fmt(r.utility) << "," << fmt(r.elapsed_seconds) << ","
        << fmt_opt(r.conf_upper_std) << "," << fmt_opt(r.records_ti_std) << ","
        << fmt_opt(r.utility_std) << "," << fmt_opt(r.elapsed_std) << ","
        << r.error.value_or("") << "\n";
  }
  return out.str();
}

AttackerKnowledge knowledge_from_name(const std::string& name) {
  if (name == "pi-uniform") return AttackerKnowledge{false, false};
  if (name == "em-f") return AttackerKnowledge{true, false};
  if (name == "em-c") return AttackerKnowledge{false, true};
  if (name == "em-fc") return AttackerKnowledge{true, true};
  throw Error(errkind::config, "unknown attack '" + name + "'");
}

std::vector<ReportRow> run_expansion_experiment(const Dataset& dataset,
                                                const std::string& setting,
                                                const Intent& true_intent,
                                                const std::vector<AttackSetting>& attacks) {
  std::vector<ReportRow> rows;
  for (const auto& attack : attacks) {
    {
      ReportRow row = stats_row(dataset, true_intent, true_intent,
                                unprotected_bounds(dataset, true_intent, attack.knowledge));
      row.setting = setting;
      row.attack = attack.name;
      row.method = "w/o protection";
      rows.push_back(std::move(row));
    }
    ReportRow row;
    row.setting = setting;
    row.attack = attack.name;
    row.method = "expansion";
    try {
      ExpansionConfig config;
      config.lambda = attack.lambda;
      config.alpha = attack.alpha;
      config.attack = attack.knowledge;
      const double t0 = now_seconds();
      const ExpansionResult result = expand(dataset, true_intent, config);
      const double elapsed = now_seconds() - t0;
      row = stats_row(dataset, true_intent, result.published_intent, result.bounds);
      row.setting = setting;
      row.attack = attack.name;
      row.method = "expansion";
      row.elapsed_seconds = elapsed;
    } catch (const Error& e) {
      row.error = std::string(e.kind()) + ": " + e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

PurchaseSet no_protection_purchase(const Dataset& dataset, const Intent& published_intent,
                                   const Intent& true_intent, int64_t q) {
  if (q < 1) throw Error(errkind::config, "q must be at least 1");
  std::vector<std::pair<int64_t, int64_t>> ti_cells, rest;  // (cell, freq)
  for (int64_t idx : dataset.populated) {
    if (!published_intent.contains_index(dataset.space, idx)) continue;
    (true_intent.contains_index(dataset.space, idx) ? ti_cells : rest)
        .emplace_back(idx, dataset.freq[idx]);
  }
  auto by_freq_desc = [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  };
  std::sort(ti_cells.begin(), ti_cells.end(), by_freq_desc);
  std::sort(rest.begin(), rest.end(), by_freq_desc);
  std::vector<std::pair<int64_t, int32_t>> counts;
  int64_t remaining = q;
  for (const auto& list : {ti_cells, rest}) {
    for (const auto& [cell, freq] : list) {
      if (remaining == 0) break;
      const int64_t take = std::min(remaining, freq);
      counts.emplace_back(cell, static_cast<int32_t>(take));
      remaining -= take;
    }
  }
  if (remaining > 0)
    throw Error(errkind::config, "q exceeds the records inside the published intent");
  return PurchaseSet::from_counts(std::move(counts));
}

ReportRow run_allocation_method(const Dataset& dataset, const AllocationExperiment& experiment,
                                AllocationMethod method) {
  std::vector<double> confs, ti_counts, utilities, times;
  ReportRow row;
  row.setting = experiment.setting;
  row.attack = "pri";
  switch (method) {
    case AllocationMethod::mc_simulation: row.method = "mc-simulation"; break;
    case AllocationMethod::mcmc: row.method = "mcmc"; break;
    case AllocationMethod::gmcmc: row.method = "gmcmc"; break;
    case AllocationMethod::genetic: row.method = "genetic"; break;
  }
  std::string failures;
  for (int rep = 0; rep < experiment.repeats; ++rep) {
    AllocationConfig config = experiment.base;
    config.method = method;
    config.seed = experiment.base.seed + static_cast<uint64_t>(rep);
    try {
      const double t0 = now_seconds();
      const AllocationResult result =
          allocate(experiment.published_intent, experiment.true_intent, dataset, config);
      times.push_back(now_seconds() - t0);
      confs.push_back(result.confidence_upper);
      utilities.push_back(result.utility);
      double in_ti = 0;
      for (const auto& [cell, n] : result.purchased.cells)
        if (experiment.true_intent.contains_index(dataset.space, cell)) in_ti += n;
      ti_counts.push_back(in_ti);
    } catch (const Error& e) {
      failures += (failures.empty() ? "" : "; ") + std::string("run ") +
                  std::to_string(rep) + ": " + e.kind();
    }
  }
  if (!failures.empty()) row.error = failures;
  if (confs.empty()) return row;
  const MeanStd conf = mean_std(confs), ti = mean_std(ti_counts), util = mean_std(utilities),
                time = mean_std(times);
  row.conf_upper = conf.mean;
  row.conf_upper_std = conf.std;
  row.records_pi = static_cast<double>(experiment.base.q);
  row.records_ti = ti.mean;
  row.records_ti_std = ti.std;
  row.utility = util.mean;
  row.utility_std = util.std;
  row.elapsed_seconds = time.mean;
  row.elapsed_std = time.std;
  return row;
}

std::vector<SweepPoint> sweep(const Dataset& dataset, const Intent& true_intent,
                              const ExpansionConfig& base, SweepParam param,
                              const std::vector<double>& grid, int ti_dim) {
  if (grid.empty()) throw Error(errkind::config, "sweep grid is empty");
  if (param == SweepParam::ti_size &&
      (ti_dim < 0 || ti_dim >= dataset.space.rank()))
    throw Error(errkind::config, "ti-size sweeps need a valid dimension");
  std::vector<SweepPoint> points;
  for (double value : grid) {
    SweepPoint point;
    point.param = value;
    try {
      ExpansionConfig config = base;
      Intent ti = true_intent;
      switch (param) {
        case SweepParam::lambda: config.lambda = value; break;
        case SweepParam::alpha: config.alpha = value; break;
        case SweepParam::ti_size: {
          const int target = static_cast<int>(value);
          if (target < static_cast<int>(ti.selection(ti_dim).size()) ||
              target > dataset.space.cardinality(ti_dim))
            throw Error(errkind::config, "ti size target out of range");
          for (int v = 0; v < dataset.space.cardinality(ti_dim); ++v) {
            if (static_cast<int>(ti.selection(ti_dim).size()) >= target) break;
            if (!ti.has_value(ti_dim, v)) ti = ti.with_value(ti_dim, v);
          }
          break;
        }
      }
      const ExpansionResult result = expand(dataset, ti, config);
      point.records_pi = records_in_intent(dataset, result.published_intent).count;
      point.conf_lower = result.bounds.lower;
      point.conf_upper = result.bounds.upper;
      point.pi_size = result.published_intent.cartesian_size();
    } catch (const Error& e) {
      point.error = std::string(e.kind()) + ": " + e.what();
    }
    points.push_back(std::move(point));
  }
  return points;
}

std::string sweep_csv(const std::vector<SweepPoint>& points) {
  std::ostringstream out;
  out << "param,records_pi,conf_lower,conf_upper,pi_size,error\n";
  for (const auto& p : points) {
    out << fmt(p.param) << "," << p.records_pi << ","
        << (p.conf_lower ? fmt(*p.conf_lower) : "") << "," << fmt(p.conf_upper) << ","
        << p.pi_size << "," << p.error.value_or("") << "\n";
  }
  return out.str();
}

}  // namespace dbpriv
