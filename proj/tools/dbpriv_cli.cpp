// Command-line front end: expand / allocate / attack / synth / project /
// sweep / reproduce. Errors leave as machine-readable JSON on stdout with a
// nonzero exit code.

#include <chrono>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "dbpriv/adult.hpp"
#include "dbpriv/allocation.hpp"
#include "dbpriv/expansion.hpp"
#include "dbpriv/io.hpp"
#include "dbpriv/projection.hpp"
#include "dbpriv/report.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace dbpriv;

namespace {

double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

struct DatasetOptions {
  std::string source = "adult";  // adult | synth | csv path
  std::string schema_path;
  std::string adult_csv = "data/adult_raw.csv";
  uint64_t synth_seed = 42;
};

void add_dataset_options(CLI::App* cmd, DatasetOptions* options) {
  cmd->add_option("--dataset", options->source,
                  "Data source: 'adult', 'synth', or a dataset CSV path")
      ->capture_default_str();
  cmd->add_option("--schema", options->schema_path,
                  "Schema JSON (required for CSV datasets)");
  cmd->add_option("--adult-csv", options->adult_csv, "Raw census CSV for --dataset adult")
      ->capture_default_str();
  cmd->add_option("--synth-seed", options->synth_seed, "Seed for --dataset synth")
      ->capture_default_str();
}

Dataset resolve_dataset(const DatasetOptions& options) {
  if (options.source == "adult") return preprocess_adult(options.adult_csv).dataset;
  if (options.source == "synth") {
    SyntheticParams params;
    params.seed = options.synth_seed;
    return generate_synthetic(adult_space(), params);
  }
  if (options.schema_path.empty())
    throw Error(errkind::config, "--schema is required for CSV datasets");
  return load_dataset_csv(options.source, load_schema(options.schema_path));
}

AttackerKnowledge parse_attack(const std::string& name) { return knowledge_from_name(name); }

PValueConfig::Mode parse_pvalue_mode(const std::string& mode) {
  if (mode == "exact-binomial") return PValueConfig::Mode::exact_binomial;
  if (mode == "monte-carlo") return PValueConfig::Mode::monte_carlo;
  throw Error(errkind::config, "unknown p-value mode '" + mode + "'");
}

void ensure_out_dir(const std::string& out) {
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw Error(errkind::io, "cannot create output directory " + out);
}

json bounds_json(const ConfidenceBounds& bounds) {
  json j;
  if (bounds.lower) j["lower"] = *bounds.lower;
  j["upper"] = bounds.upper;
  return j;
}

json cell_json(const DataSpace& space, int64_t index) {
  json j = json::object();
  for (int d = 0; d < space.rank(); ++d)
    j[space.dim(d).name] = space.dim(d).values[space.coord_at(index, d)];
  return j;
}

std::string trace_csv(const DataSpace& space, const std::vector<ExpansionStep>& trace) {
  std::ostringstream out;
  out << "iteration,dimension,value,addition,increase,score\n";
  out << std::setprecision(12);
  for (size_t i = 0; i < trace.size(); ++i) {
    const auto& step = trace[i];
    out << (i + 1) << "," << space.dim(step.dim).name << ","
        << space.dim(step.dim).values[step.value] << "," << step.addition << ","
        << step.increase << "," << step.score << "\n";
  }
  return out.str();
}

std::string feasibility_csv(const DataSpace& space, const std::vector<FeasibilityRow>& rows) {
  std::ostringstream out;
  for (int d = 0; d < space.rank(); ++d) out << space.dim(d).name << ",";
  out << "count,f_P,f_D_PI,p_value,confidence\n";
  out << std::setprecision(12);
  for (const auto& row : rows) {
    for (int d = 0; d < space.rank(); ++d)
      out << space.dim(d).values[space.coord_at(row.cell, d)] << ",";
    out << row.count << "," << row.f_p << "," << row.f_d_pi << "," << row.p_value << ","
        << row.confidence << "\n";
  }
  return out.str();
}

std::string projection_csv(const std::vector<ProjectionRow>& rows,
                           const std::string& attack) {
  std::ostringstream out;
  out << "attack,dimension,proj_conf_lower,change_lower,proj_conf_upper,change_upper,"
         "proj_records_pi,updated_records_pi,proj_records_ti,proj_utility,"
         "updated_utility,proj_pi_size,updated_pi_size,reexpanded\n";
  out << std::setprecision(12);
  for (const auto& r : rows) {
    out << attack << "," << r.dimension << ",";
    if (r.projected.lower) out << *r.projected.lower;
    out << ",";
    if (r.change_lower) out << *r.change_lower;
    out << "," << r.projected.upper << "," << r.change_upper << "," << r.records_pi << ","
        << r.updated_records_pi << "," << r.records_ti << "," << r.proj_utility << ","
        << r.updated_utility << "," << r.proj_pi_size << "," << r.updated_pi_size << ","
        << (r.reexpanded ? 1 : 0) << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// expand

struct ExpandArgs {
  DatasetOptions data;
  std::string intent_path;
  std::string attack = "pi-uniform";
  double lambda = 0.3;
  double alpha = 0.5;
  std::string out = "out";
};

int run_expand(const ExpandArgs& args) {
  const Dataset dataset = resolve_dataset(args.data);
  const Intent ti = load_intent(args.intent_path, dataset.space);
  ExpansionConfig config;
  config.lambda = args.lambda;
  config.alpha = args.alpha;
  config.attack = parse_attack(args.attack);
  const double t0 = now_seconds();
  const ExpansionResult result = expand(dataset, ti, config);
  const double elapsed = now_seconds() - t0;

  ensure_out_dir(args.out);
  write_text_file(args.out + "/published_intent.json",
                  intent_to_json(result.published_intent, dataset.space));
  write_text_file(args.out + "/trace.csv", trace_csv(dataset.space, result.trace));
  const IntentStats pi_stats = records_in_intent(dataset, result.published_intent);
  const IntentStats ti_stats = records_in_intent(dataset, ti);
  json summary{{"attack", args.attack},
               {"lambda", args.lambda},
               {"alpha", args.alpha},
               {"bounds", bounds_json(result.bounds)},
               {"pi_cartesian_size", result.published_intent.cartesian_size()},
               {"ti_cartesian_size", ti.cartesian_size()},
               {"records_pi", pi_stats.count},
               {"records_ti", ti_stats.count},
               {"total_cost", pi_stats.total_cost},
               {"cost_ti", ti_stats.total_cost},
               {"utility", pi_stats.count > 0 ? static_cast<double>(ti_stats.count) /
                                                    static_cast<double>(pi_stats.count)
                                              : 0.0},
               {"steps", result.trace.size()},
               {"elapsed_seconds", elapsed}};
  write_text_file(args.out + "/summary.json", summary.dump(2) + "\n");
  std::cout << summary.dump(2) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// allocate

struct AllocateArgs {
  DatasetOptions data;
  std::string intent_path;
  std::string pi_path;
  std::string method = "mc";
  std::string attack = "em-f";  // for deriving the published intent
  double alpha = 0.5;
  AllocationConfig config;
  std::string pvalue_mode = "exact-binomial";
  std::string out = "out";
};

AllocationMethod parse_method(const std::string& name) {
  if (name == "mc") return AllocationMethod::mc_simulation;
  if (name == "mcmc") return AllocationMethod::mcmc;
  if (name == "gmcmc") return AllocationMethod::gmcmc;
  if (name == "genetic") return AllocationMethod::genetic;
  throw Error(errkind::config, "unknown allocation method '" + name + "'");
}

int run_allocate(const AllocateArgs& args) {
  const Dataset dataset = resolve_dataset(args.data);
  const Intent ti = load_intent(args.intent_path, dataset.space);
  Intent pi = ti;
  if (!args.pi_path.empty()) {
    pi = load_intent(args.pi_path, dataset.space);
  } else {
    ExpansionConfig expansion;
    expansion.lambda = args.config.lambda;
    expansion.alpha = args.alpha;
    expansion.attack = parse_attack(args.attack);
    pi = expand(dataset, ti, expansion).published_intent;
  }
  AllocationConfig config = args.config;
  config.method = parse_method(args.method);
  config.pvalue.mode = parse_pvalue_mode(args.pvalue_mode);
  config.pvalue.seed = config.seed;
  const double t0 = now_seconds();
  const AllocationResult result = allocate(pi, ti, dataset, config);
  const double elapsed = now_seconds() - t0;

  ensure_out_dir(args.out);
  write_text_file(args.out + "/purchase.csv",
                  purchased_to_csv(result.purchased, dataset.space));
  write_text_file(args.out + "/feasibility.csv",
                  feasibility_csv(dataset.space, result.report));
  write_text_file(args.out + "/published_intent.json", intent_to_json(pi, dataset.space));
  json summary{{"method", args.method},
               {"q", config.q},
               {"lambda", config.lambda},
               {"utility", result.utility},
               {"confidence_upper_bound", result.confidence_upper},
               {"elapsed_seconds", elapsed}};
  write_text_file(args.out + "/summary.json", summary.dump(2) + "\n");
  std::cout << summary.dump(2) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// attack (attacker-side evaluation of a purchase)

struct AttackArgs {
  DatasetOptions data;
  std::string purchased_path;
  std::string knowledge = "dist";
  PValueConfig pvalue;
  std::string pvalue_mode = "exact-binomial";
  std::string out;
};

int run_attack(const AttackArgs& args) {
  const Dataset dataset = resolve_dataset(args.data);
  const PurchaseSet purchased = load_purchased_csv(args.purchased_path, dataset.space);
  const Intent pseudo = infer_pseudo_pi(dataset.space, purchased);
  PValueConfig pvcfg = args.pvalue;
  pvcfg.mode = parse_pvalue_mode(args.pvalue_mode);
  const bool with_distribution = args.knowledge == "dist";
  if (!with_distribution && args.knowledge != "none")
    throw Error(errkind::config, "knowledge must be 'none' or 'dist'");

  json cells = json::array();
  for (const auto& [cell, count] : purchased.cells) {
    json row;
    row["cell"] = cell_json(dataset.space, cell);
    row["count"] = count;
    row["f_P"] = empirical_dist(purchased, cell);
    if (with_distribution) {
      row["f_D_PI"] = conditional_density(dataset, pseudo, cell);
      const double p = pvalue(cell, purchased, pseudo, dataset, pvcfg);
      row["p_value"] = p;
      row["confidence"] = 1.0 - p;
    } else {
      row["confidence"] = empirical_dist(purchased, cell);
    }
    cells.push_back(std::move(row));
  }
  json output{{"knowledge", args.knowledge},
              {"q", purchased.q},
              {"pseudo_published_intent",
               json::parse(intent_to_json(pseudo, dataset.space))},
              {"cells", cells}};
  const std::string text = output.dump(2) + "\n";
  if (args.out.empty()) {
    std::cout << text;
  } else {
    const fs::path parent = fs::path(args.out).parent_path();
    if (!parent.empty()) ensure_out_dir(parent.string());
    write_text_file(args.out, text);
    std::cout << "wrote " << args.out << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// synth

struct SynthArgs {
  std::string schema_path;
  SyntheticParams params;
  std::string out = "synthetic.csv";
};

int run_synth(const SynthArgs& args) {
  const DataSpace space =
      args.schema_path.empty() ? adult_space() : load_schema(args.schema_path);
  const Dataset dataset = generate_synthetic(space, args.params);
  const fs::path parent = fs::path(args.out).parent_path();
  if (!parent.empty()) ensure_out_dir(parent.string());
  write_text_file(args.out, dataset_to_csv(dataset));
  std::cout << json{{"cells", dataset.populated.size()},
                    {"total_count", dataset.total_count},
                    {"out", args.out}}
                   .dump(2)
            << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// project

struct ProjectArgs {
  DatasetOptions data;
  std::string intent_path;
  std::string pi_path;
  std::string drop;
  std::string attack = "pi-uniform";
  double lambda = 0.3;
  double alpha = 0.5;
  std::string out = "out";
};

int run_project(const ProjectArgs& args) {
  const Dataset dataset = resolve_dataset(args.data);
  const Intent ti = load_intent(args.intent_path, dataset.space);
  ExpansionConfig config;
  config.lambda = args.lambda;
  config.alpha = args.alpha;
  config.attack = parse_attack(args.attack);
  const Intent pi = args.pi_path.empty()
                        ? expand(dataset, ti, config).published_intent
                        : load_intent(args.pi_path, dataset.space);
  const ProjectionRow row = project_and_reexpand(dataset, ti, pi, args.drop, config);
  ensure_out_dir(args.out);
  write_text_file(args.out + "/projection.csv", projection_csv({row}, args.attack));
  json summary{{"dimension", row.dimension},
               {"projected_bounds", bounds_json(row.projected)},
               {"change_upper", row.change_upper},
               {"records_pi", row.records_pi},
               {"records_ti", row.records_ti},
               {"updated_records_pi", row.updated_records_pi},
               {"proj_pi_size", row.proj_pi_size},
               {"updated_pi_size", row.updated_pi_size},
               {"reexpanded", row.reexpanded}};
  if (row.change_lower) summary["change_lower"] = *row.change_lower;
  write_text_file(args.out + "/summary.json", summary.dump(2) + "\n");
  std::cout << summary.dump(2) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepArgs {
  DatasetOptions data;
  std::string intent_path;
  std::string param = "lambda";
  std::vector<double> grid;
  std::string dim;
  std::string attack = "pi-uniform";
  double lambda = 0.3;
  double alpha = 0.5;
  std::string out = "out";
};

int run_sweep(const SweepArgs& args) {
  const Dataset dataset = resolve_dataset(args.data);
  const Intent ti = load_intent(args.intent_path, dataset.space);
  ExpansionConfig base;
  base.lambda = args.lambda;
  base.alpha = args.alpha;
  base.attack = parse_attack(args.attack);
  SweepParam param;
  if (args.param == "lambda")
    param = SweepParam::lambda;
  else if (args.param == "alpha")
    param = SweepParam::alpha;
  else if (args.param == "ti-size")
    param = SweepParam::ti_size;
  else
    throw Error(errkind::config, "unknown sweep parameter '" + args.param + "'");
  int dim = -1;
  if (param == SweepParam::ti_size) {
    dim = dataset.space.dim_index(args.dim);
    if (dim < 0) throw Error(errkind::config, "ti-size sweeps need --dim");
  }
  const auto points = sweep(dataset, ti, base, param, args.grid, dim);
  ensure_out_dir(args.out);
  write_text_file(args.out + "/sweep.csv", sweep_csv(points));
  std::cout << "wrote " << args.out << "/sweep.csv (" << points.size() << " points)\n";
  return 0;
}

// ---------------------------------------------------------------------------
// reproduce

struct ReproduceArgs {
  int table = 1;
  std::string out = "out";
  std::string adult_csv = "data/adult_raw.csv";
  uint64_t synth_seed = 42;
  uint64_t seed = 1;
  int repeats = 10;
  int64_t q1 = 0;  // 0 = table default
  int64_t q2 = 0;
  int64_t z = 100000;
  int64_t replicates = 100000;
};

Intent case_study_ti(const DataSpace& space, int size) {
  Intent ti = Intent::single_cell(
      space, {space.value_index(0, "working adult"), space.value_index(1, "Black"),
              space.value_index(2, "Female"), space.value_index(3, "full-time"),
              space.value_index(4, ">50K")});
  if (size == 2) ti = ti.with_value(1, space.value_index(1, "Asian-Pac-Islander"));
  return ti;
}

std::vector<AttackSetting> table_attacks(const std::vector<double>& alphas) {
  return {{"pi-uniform", {false, false}, 0.3, alphas[0]},
          {"em-fc", {true, true}, 0.3, alphas[1]},
          {"em-f", {true, false}, 0.3, alphas[2]},
          {"em-c", {false, true}, 0.3, alphas[3]}};
}

Dataset synth_dataset(uint64_t seed) {
  SyntheticParams params;
  params.seed = seed;
  return generate_synthetic(adult_space(), params);
}

int run_reproduce(const ReproduceArgs& args) {
  ensure_out_dir(args.out);
  if (args.table == 1 || args.table == 2) {
    const bool census = args.table == 1;
    const Dataset dataset =
        census ? preprocess_adult(args.adult_csv).dataset : synth_dataset(args.synth_seed);
    const std::string setting = census ? "adult" : "synthetic";
    const std::vector<std::vector<double>> alphas =
        census ? std::vector<std::vector<double>>{{0.5, 0.5, 0.5, 0.5}, {1.0, 0.6, 0.6, 0.5}}
               : std::vector<std::vector<double>>{{0.8, 0.4, 0.4, 0.8}, {0.6, 0.5, 0.4, 0.7}};
    std::vector<ReportRow> rows;
    for (int size = 1; size <= 2; ++size) {
      const Intent ti = case_study_ti(dataset.space, size);
      const auto part = run_expansion_experiment(
          dataset, setting + "-ti" + std::to_string(size), ti,
          table_attacks(alphas[static_cast<size_t>(size - 1)]));
      rows.insert(rows.end(), part.begin(), part.end());
    }
    const std::string path = args.out + "/table" + std::to_string(args.table) + ".csv";
    write_text_file(path, report_csv(rows));
    std::cout << "wrote " << path << "\n";
    return 0;
  }
  if (args.table == 3) {
    std::vector<ReportRow> rows;
    for (const std::string setting : {"adult", "synthetic"}) {
      const bool census = setting == "adult";
      const Dataset dataset = census ? preprocess_adult(args.adult_csv).dataset
                                     : synth_dataset(args.synth_seed);
      const std::vector<double> emf_alpha = census ? std::vector<double>{0.5, 0.6}
                                                   : std::vector<double>{0.4, 0.4};
      const std::vector<double> gmcmc_eps = census ? std::vector<double>{0.07, 0.01}
                                                   : std::vector<double>{0.005, 0.01};
      const std::vector<int64_t> q_default =
          census ? std::vector<int64_t>{61, 120} : std::vector<int64_t>{1516, 2979};
      for (int size = 1; size <= 2; ++size) {
        const Intent ti = case_study_ti(dataset.space, size);
        ExpansionConfig expansion;
        expansion.lambda = 0.3;
        expansion.alpha = emf_alpha[static_cast<size_t>(size - 1)];
        expansion.attack = {true, false};
        const Intent pi = expand(dataset, ti, expansion).published_intent;
        AllocationExperiment experiment{setting + "-ti" + std::to_string(size), pi, ti,
                                        AllocationConfig{}, args.repeats, true};
        experiment.base.lambda = 0.3;
        experiment.base.q = size == 1 ? (args.q1 > 0 ? args.q1 : q_default[0])
                                      : (args.q2 > 0 ? args.q2 : q_default[1]);
        experiment.base.mc_sets = args.z;
        experiment.base.pvalue.replicates = args.replicates;
        experiment.base.seed = args.seed;
        // Baseline purchase with no disguising beyond the q budget.
        {
          const PurchaseSet purchase =
              no_protection_purchase(dataset, pi, ti, experiment.base.q);
          const auto report =
              feasibility_report(purchase, ti, dataset, experiment.base.pvalue);
          ReportRow row;
          row.setting = experiment.setting;
          row.attack = "pri";
          row.method = "no-protection";
          for (const auto& r : report)
            row.conf_upper = std::max(row.conf_upper, r.confidence);
          row.records_pi = static_cast<double>(purchase.q);
          row.utility = utility(dataset.space, purchase, ti);
          row.records_ti = row.utility * static_cast<double>(purchase.q);
          rows.push_back(std::move(row));
        }
        for (const AllocationMethod method :
             {AllocationMethod::mc_simulation, AllocationMethod::mcmc,
              AllocationMethod::gmcmc, AllocationMethod::genetic}) {
          AllocationExperiment per_method = experiment;
          per_method.base.epsilon = method == AllocationMethod::gmcmc
                                        ? gmcmc_eps[static_cast<size_t>(size - 1)]
                                        : 0.001;
          rows.push_back(run_allocation_method(dataset, per_method, method));
          std::cout << "finished " << per_method.setting << " " << rows.back().method
                    << "\n";
        }
      }
    }
    const std::string path = args.out + "/table3.csv";
    write_text_file(path, report_csv(rows));
    std::cout << "wrote " << path << "\n";
    return 0;
  }
  if (args.table == 4) {
    const Dataset dataset = preprocess_adult(args.adult_csv).dataset;
    const Intent ti = case_study_ti(dataset.space, 2);
    std::string csv;
    for (const std::string attack : {"pi-uniform", "em-fc"}) {
      ExpansionConfig config;
      config.lambda = 0.3;
      config.alpha = attack == "pi-uniform" ? 1.0 : 0.6;
      config.attack = parse_attack(attack);
      const Intent pi = expand(dataset, ti, config).published_intent;
      std::vector<ProjectionRow> projections;
      for (int d = 0; d < dataset.space.rank(); ++d)
        projections.push_back(
            project_and_reexpand(dataset, ti, pi, dataset.space.dim(d).name, config));
      const std::string part = projection_csv(projections, attack);
      csv += csv.empty() ? part : part.substr(part.find('\n') + 1);
    }
    const std::string path = args.out + "/table4.csv";
    write_text_file(path, csv);
    std::cout << "wrote " << path << "\n";
    return 0;
  }
  throw Error(errkind::config, "tables are numbered 1 through 4");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Buyer-side intent privacy toolkit"};
  app.require_subcommand(1);

  ExpandArgs expand_args;
  auto* expand_cmd =
      app.add_subcommand("expand", "Build a privacy-preserving published intent");
  add_dataset_options(expand_cmd, &expand_args.data);
  expand_cmd->add_option("--intent", expand_args.intent_path, "True-intent JSON")
      ->required();
  expand_cmd->add_option("--attack", expand_args.attack, "pi-uniform|em-f|em-c|em-fc")
      ->capture_default_str();
  expand_cmd->add_option("--lambda", expand_args.lambda, "Confidence threshold")
      ->capture_default_str();
  expand_cmd->add_option("--alpha", expand_args.alpha, "Addition-factor weight")
      ->capture_default_str();
  expand_cmd->add_option("--out", expand_args.out, "Output directory")
      ->capture_default_str();

  AllocateArgs alloc_args;
  auto* alloc_cmd =
      app.add_subcommand("allocate", "Build a privacy-preserving purchase set");
  add_dataset_options(alloc_cmd, &alloc_args.data);
  alloc_cmd->add_option("--intent", alloc_args.intent_path, "True-intent JSON")->required();
  alloc_cmd->add_option("--pi", alloc_args.pi_path,
                        "Published-intent JSON (derived by expansion when omitted)");
  alloc_cmd->add_option("--method", alloc_args.method, "mc|mcmc|gmcmc|genetic")
      ->capture_default_str();
  alloc_cmd->add_option("--attack", alloc_args.attack, "Attack for the derived intent")
      ->capture_default_str();
  alloc_cmd->add_option("--alpha", alloc_args.alpha, "Alpha for the derived intent")
      ->capture_default_str();
  alloc_cmd->add_option("--q", alloc_args.config.q, "Purchase size")->required();
  alloc_cmd->add_option("--lambda", alloc_args.config.lambda, "Confidence threshold")
      ->capture_default_str();
  alloc_cmd
      ->add_option("--L", alloc_args.config.pvalue.replicates,
                   "Monte-Carlo p-value replicates")
      ->capture_default_str();
  alloc_cmd->add_option("--pvalue-mode", alloc_args.pvalue_mode, "exact-binomial|monte-carlo")
      ->capture_default_str();
  alloc_cmd->add_option("--Z", alloc_args.config.mc_sets, "MC simulation sets")
      ->capture_default_str();
  alloc_cmd->add_option("--epsilon", alloc_args.config.epsilon, "MCMC stopping margin")
      ->capture_default_str();
  alloc_cmd->add_option("--T", alloc_args.config.population, "Genetic population")
      ->capture_default_str();
  alloc_cmd->add_option("--R", alloc_args.config.elite, "Genetic elite count")
      ->capture_default_str();
  alloc_cmd->add_option("--W", alloc_args.config.generations, "Genetic iterations")
      ->capture_default_str();
  alloc_cmd->add_option("--seed", alloc_args.config.seed, "Seed")->capture_default_str();
  alloc_cmd->add_flag("--uniform-cells", alloc_args.config.uniform_cells,
                      "Sample initial sets uniformly over populated intent cells");
  alloc_cmd->add_option("--out", alloc_args.out, "Output directory")->capture_default_str();

  AttackArgs attack_args;
  auto* attack_cmd = app.add_subcommand("attack", "Evaluate a purchase as the attacker");
  add_dataset_options(attack_cmd, &attack_args.data);
  attack_cmd->add_option("--purchased", attack_args.purchased_path, "Purchase CSV")
      ->required();
  attack_cmd->add_option("--knowledge", attack_args.knowledge, "none|dist")
      ->capture_default_str();
  attack_cmd->add_option("--L", attack_args.pvalue.replicates, "Monte-Carlo replicates")
      ->capture_default_str();
  attack_cmd->add_option("--seed", attack_args.pvalue.seed, "Seed")->capture_default_str();
  attack_cmd->add_option("--pvalue-mode", attack_args.pvalue_mode,
                         "exact-binomial|monte-carlo")
      ->capture_default_str();
  attack_cmd->add_option("--out", attack_args.out, "Output JSON path (stdout if omitted)");

  SynthArgs synth_args;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic dataset CSV");
  synth_cmd->add_option("--schema", synth_args.schema_path,
                        "Schema JSON (census-shaped when omitted)");
  synth_cmd->add_option("--seed", synth_args.params.seed, "Seed")->capture_default_str();
  synth_cmd->add_option("--freq-mean", synth_args.params.freq_mean, "Frequency mean")
      ->capture_default_str();
  synth_cmd->add_option("--freq-std", synth_args.params.freq_std, "Frequency std")
      ->capture_default_str();
  synth_cmd->add_option("--cost-mean", synth_args.params.cost_mean, "Cost mean")
      ->capture_default_str();
  synth_cmd->add_option("--cost-std", synth_args.params.cost_std, "Cost std")
      ->capture_default_str();
  synth_cmd->add_option("--cost-floor", synth_args.params.cost_floor, "Cost lower bound")
      ->capture_default_str();
  synth_cmd->add_option("--out", synth_args.out, "Output CSV path")->capture_default_str();

  ProjectArgs project_args;
  auto* project_cmd = app.add_subcommand("project", "Drop a dimension and re-evaluate");
  add_dataset_options(project_cmd, &project_args.data);
  project_cmd->add_option("--intent", project_args.intent_path, "True-intent JSON")
      ->required();
  project_cmd->add_option("--pi", project_args.pi_path,
                          "Published-intent JSON (derived when omitted)");
  project_cmd->add_option("--drop", project_args.drop, "Dimension to remove")->required();
  project_cmd->add_option("--attack", project_args.attack, "pi-uniform|em-f|em-c|em-fc")
      ->capture_default_str();
  project_cmd->add_option("--lambda", project_args.lambda, "Confidence threshold")
      ->capture_default_str();
  project_cmd->add_option("--alpha", project_args.alpha, "Addition-factor weight")
      ->capture_default_str();
  project_cmd->add_option("--out", project_args.out, "Output directory")
      ->capture_default_str();

  SweepArgs sweep_args;
  auto* sweep_cmd =
      app.add_subcommand("sweep", "Expansion sweeps over lambda/alpha/ti-size");
  add_dataset_options(sweep_cmd, &sweep_args.data);
  sweep_cmd->add_option("--intent", sweep_args.intent_path, "True-intent JSON")->required();
  sweep_cmd->add_option("--param", sweep_args.param, "lambda|alpha|ti-size")
      ->capture_default_str();
  sweep_cmd->add_option("--grid", sweep_args.grid, "Grid values")->required()->delimiter(',');
  sweep_cmd->add_option("--dim", sweep_args.dim, "Swept dimension for ti-size");
  sweep_cmd->add_option("--attack", sweep_args.attack, "pi-uniform|em-f|em-c|em-fc")
      ->capture_default_str();
  sweep_cmd->add_option("--lambda", sweep_args.lambda, "Confidence threshold")
      ->capture_default_str();
  sweep_cmd->add_option("--alpha", sweep_args.alpha, "Addition-factor weight")
      ->capture_default_str();
  sweep_cmd->add_option("--out", sweep_args.out, "Output directory")->capture_default_str();

  ReproduceArgs repro_args;
  auto* repro_cmd = app.add_subcommand("reproduce", "Re-run the benchmark tables");
  repro_cmd->add_option("--table", repro_args.table, "1|2|3|4")->required();
  repro_cmd->add_option("--out", repro_args.out, "Output directory")->capture_default_str();
  repro_cmd->add_option("--adult-csv", repro_args.adult_csv, "Raw census CSV")
      ->capture_default_str();
  repro_cmd->add_option("--synth-seed", repro_args.synth_seed, "Synthetic dataset seed")
      ->capture_default_str();
  repro_cmd->add_option("--seed", repro_args.seed, "Base seed for repeated runs")
      ->capture_default_str();
  repro_cmd->add_option("--repeats", repro_args.repeats, "Runs per method")
      ->capture_default_str();
  repro_cmd->add_option("--q1", repro_args.q1, "Purchase size, intent size 1")
      ->capture_default_str();
  repro_cmd->add_option("--q2", repro_args.q2, "Purchase size, intent size 2")
      ->capture_default_str();
  repro_cmd->add_option("--Z", repro_args.z, "MC simulation sets")->capture_default_str();
  repro_cmd->add_option("--L", repro_args.replicates, "Monte-Carlo p-value replicates")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
    if (expand_cmd->parsed()) return run_expand(expand_args);
    if (alloc_cmd->parsed()) return run_allocate(alloc_args);
    if (attack_cmd->parsed()) return run_attack(attack_args);
    if (synth_cmd->parsed()) return run_synth(synth_args);
    if (project_cmd->parsed()) return run_project(project_args);
    if (sweep_cmd->parsed()) return run_sweep(sweep_args);
    if (repro_cmd->parsed()) return run_reproduce(repro_args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const Error& e) {
    std::cout << json{{"error", {{"kind", e.kind()}, {"message", e.what()}}}}.dump()
              << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cout << json{{"error", {{"kind", "internal"}, {"message", e.what()}}}}.dump()
              << "\n";
    return 1;
  }
  return 0;
}
