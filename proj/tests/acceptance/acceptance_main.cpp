// Acceptance suite: runs every shipped guarantee end to end and prints one
// pass/fail line per criterion. Exits nonzero when any criterion fails.
//
// Usage: acceptance [path-to-cli-binary]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "dbpriv/adult.hpp"
#include "dbpriv/allocation.hpp"
#include "dbpriv/expansion.hpp"
#include "dbpriv/io.hpp"
#include "dbpriv/projection.hpp"
#include "dbpriv/report.hpp"

#ifndef DBPRIV_DATA_DIR
#define DBPRIV_DATA_DIR "data"
#endif

using namespace dbpriv;

namespace {

double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    pass = false;
    detail = detail.empty() ? why : detail + "; " + why;
  }
  void note(const std::string& what) {
    if (detail.empty()) detail = what;
  }
};

const Dataset& adult() {
  static const Dataset ds =
      preprocess_adult(std::string(DBPRIV_DATA_DIR) + "/adult_raw.csv").dataset;
  return ds;
}

Intent adult_ti(int size) {
  const DataSpace& space = adult().space;
  Intent ti = Intent::single_cell(space, {2, 2, 0, 1, 1});
  if (size == 2) ti = ti.with_value(1, 1);
  return ti;
}

DataSpace random_space(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> rank_draw(1, 5);
  std::uniform_int_distribution<int> card_draw(1, 6);
  std::bernoulli_distribution ordinal_draw(0.5);
  std::vector<Dimension> dims;
  const int rank = rank_draw(rng);
  for (int d = 0; d < rank; ++d) {
    Dimension dim;
    dim.name = "d" + std::to_string(d);
    const int card = card_draw(rng);
    for (int v = 0; v < card; ++v) dim.values.push_back("v" + std::to_string(v));
    dim.ordinal = ordinal_draw(rng);
    dims.push_back(std::move(dim));
  }
  return DataSpace(std::move(dims));
}

Dataset random_dataset(const DataSpace& space, std::mt19937_64& rng, bool unit_cost) {
  std::uniform_int_distribution<int> freq_draw(0, 50);
  std::uniform_real_distribution<double> cost_draw(0.5, 10.0);
  std::vector<int64_t> freq(static_cast<size_t>(space.cell_count()));
  std::vector<double> cost(static_cast<size_t>(space.cell_count()), 1.0);
  int64_t total = 0;
  for (auto& f : freq) total += (f = freq_draw(rng));
  if (total == 0) freq[0] = 1;
  if (!unit_cost)
    for (auto& c : cost) c = cost_draw(rng);
  return make_dataset(space, std::move(freq), std::move(cost));
}

Intent random_intent(const DataSpace& space, const Dataset& dataset, std::mt19937_64& rng) {
  std::uniform_int_distribution<size_t> pick(0, dataset.populated.size() - 1);
  Intent intent = Intent::single_cell(space, space.coords_of(dataset.populated[pick(rng)]));
  std::bernoulli_distribution widen(0.3);
  for (int d = 0; d < space.rank(); ++d)
    for (int v = 0; v < space.cardinality(d); ++v)
      if (!intent.has_value(d, v) && widen(rng)) intent = intent.with_value(d, v);
  return intent;
}

// Independent binomial tail via the pmf recurrence (not the library route).
double oracle_tail(int64_t n, double p, int64_t h) {
  if (h <= 0) return 1.0;
  if (h > n) return 0.0;
  if (p <= 0.0) return 0.0;
  if (p >= 1.0) return 1.0;
  double pmf = std::pow(1.0 - p, static_cast<double>(n));
  double sum = 0.0;
  for (int64_t k = 0; k < n; ++k) {
    pmf *= static_cast<double>(n - k) / static_cast<double>(k + 1) * p / (1.0 - p);
    if (k + 1 >= h) sum += pmf;
  }
  return std::min(1.0, sum);
}

bool oracle_feasible(const PurchaseSet& x, const Intent& ti, const Dataset& ds,
                     double lambda) {
  const Intent pseudo = infer_pseudo_pi(ds.space, x);
  double mass = 0.0;
  for (int64_t idx : ds.populated)
    if (pseudo.contains_index(ds.space, idx)) mass += static_cast<double>(ds.freq[idx]);
  for (const auto& [cell, n] : x.cells) {
    if (!ti.contains_index(ds.space, cell)) continue;
    const double p0 = static_cast<double>(ds.freq[cell]) / mass;
    const double conf = 1.0 - oracle_tail(x.q, p0, n);
    if (conf > lambda + 1e-12) return false;
  }
  return true;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------------------

Outcome criterion1_guarantees() {
  Outcome out;
  const double t0 = now_seconds();
  std::mt19937_64 rng(20240501);
  std::uniform_real_distribution<double> alpha_draw(0.0, 1.0);
  std::uniform_real_distribution<double> lambda_draw(0.05, 1.0);
  const std::vector<AttackerKnowledge> attacks = {
      {false, false}, {true, false}, {false, true}, {true, true}};
  for (int trial = 0; trial < 200; ++trial) {
    const DataSpace space = random_space(rng);
    const Dataset dataset = random_dataset(space, rng, trial % 2 == 0);
    const Intent ti = random_intent(space, dataset, rng);
    ExpansionConfig config;
    config.attack = attacks[static_cast<size_t>(trial) % attacks.size()];
    config.alpha = alpha_draw(rng);
    config.lambda = lambda_draw(rng);
    const double floor =
        config.attack.is_pi_uniform()
            ? static_cast<double>(ti.cartesian_size()) /
                  static_cast<double>(space.cell_count())
            : conf_em_worst_case(dataset, config.attack, ti);
    if (config.lambda < floor) config.lambda = std::min(1.0, floor * (1.0 + 1e-9));
    const ExpansionResult result = expand(dataset, ti, config);
    if (!ti.subset_of(result.published_intent))
      out.fail("trial " + std::to_string(trial) + ": containment violated");
    if (result.bounds.upper > config.lambda + 1e-12)
      out.fail("trial " + std::to_string(trial) + ": bound above lambda");
  }
  const double elapsed = now_seconds() - t0;
  if (elapsed >= 10.0) out.fail("took " + std::to_string(elapsed) + "s (budget 10s)");
  out.note("200 instances in " + std::to_string(elapsed) + "s");
  return out;
}

Outcome criterion2_pi_uniform_reproduction() {
  Outcome out;
  const Dataset& ds = adult();
  {
    const double t0 = now_seconds();
    ExpansionConfig config;
    config.lambda = 0.3;
    config.alpha = 0.5;
    const ExpansionResult r = expand(ds, adult_ti(1), config);
    const double elapsed = now_seconds() - t0;
    const int64_t size = r.published_intent.cartesian_size();
    const int64_t records = records_in_intent(ds, r.published_intent).count;
    const bool ub_ok = std::abs(r.bounds.upper - 0.25) < 1e-9 ||
                       std::abs(r.bounds.upper - 1.0 / 6.0) < 1e-9;
    if (!ub_ok) out.fail("ti1 upper bound " + std::to_string(r.bounds.upper));
    if (size == 4 &&
        (std::abs(r.bounds.upper - 0.25) > 1e-12 || std::abs(*r.bounds.lower - 0.25) > 1e-12))
      out.fail("ti1 bounds not exactly (25%,25%) at size 4");
    if (std::llabs(records - 58) > 10)
      out.fail("ti1 records " + std::to_string(records) + " outside 58+-10");
    if (elapsed >= 1.0) out.fail("ti1 run took " + std::to_string(elapsed) + "s");
    out.note("ti1: size " + std::to_string(size) + ", " + std::to_string(records) +
             " records");
  }
  {
    const double t0 = now_seconds();
    ExpansionConfig config;
    config.lambda = 0.3;
    config.alpha = 1.0;
    const ExpansionResult r = expand(ds, adult_ti(2), config);
    const double elapsed = now_seconds() - t0;
    const int64_t records = records_in_intent(ds, r.published_intent).count;
    if (r.bounds.upper > 0.3 + 1e-12) out.fail("ti2 upper bound above lambda");
    if (std::abs(r.bounds.upper - 0.25) > 1e-12 || std::abs(*r.bounds.lower - 0.125) > 1e-12)
      out.fail("ti2 bounds not (12.5%,25%)");
    if (std::llabs(records - 85) > 10)
      out.fail("ti2 records " + std::to_string(records) + " outside 85+-10");
    if (elapsed >= 1.0) out.fail("ti2 run took " + std::to_string(elapsed) + "s");
  }
  return out;
}

Outcome criterion3_em_reproduction() {
  Outcome out;
  const Dataset& ds = adult();
  const double t0 = now_seconds();
  for (const AttackerKnowledge know : {AttackerKnowledge{true, false},
                                       AttackerKnowledge{true, true}}) {
    ExpansionConfig config;
    config.lambda = 0.3;
    config.alpha = 0.5;
    config.attack = know;
    const ExpansionResult r = expand(ds, adult_ti(1), config);
    if (r.bounds.upper > 0.3 + 1e-12) out.fail("em bound above lambda");
    const auto stats = records_in_intent(ds, r.published_intent);
    const double utility = 56.0 / static_cast<double>(stats.count);
    if (std::abs(utility - 0.101) > 0.03)
      out.fail("em utility " + std::to_string(utility) + " outside 10.1%+-3pt");
    out.note("em-f utility " + std::to_string(utility));
  }
  {
    ExpansionConfig config;
    config.lambda = 0.3;
    config.alpha = 0.5;
    config.attack = {false, true};
    const ExpansionResult r = expand(ds, adult_ti(1), config);
    const auto stats = records_in_intent(ds, r.published_intent);
    const double utility = 56.0 / static_cast<double>(stats.count);
    if (std::abs(utility - 0.966) > 0.03)
      out.fail("em-c utility " + std::to_string(utility) + " outside 96.6%+-3pt");
  }
  const double elapsed = now_seconds() - t0;
  if (elapsed >= 5.0) out.fail("took " + std::to_string(elapsed) + "s (budget 5s)");
  return out;
}

Outcome criterion4_lambda_one_identity() {
  Outcome out;
  SyntheticParams params;
  params.seed = 42;
  const Dataset synthetic = generate_synthetic(adult_space(), params);
  const std::vector<AttackerKnowledge> attacks = {
      {false, false}, {true, false}, {false, true}, {true, true}};
  for (const Dataset* ds : {&adult(), &synthetic}) {
    for (int size = 1; size <= 2; ++size) {
      const Intent ti = [&] {
        Intent t = Intent::single_cell(ds->space, {2, 2, 0, 1, 1});
        if (size == 2) t = t.with_value(1, 1);
        return t;
      }();
      for (const auto& attack : attacks) {
        ExpansionConfig config;
        config.lambda = 1.0;
        config.alpha = 0.5;
        config.attack = attack;
        const ExpansionResult r = expand(*ds, ti, config);
        if (!(r.published_intent == ti)) out.fail("published intent differs at lambda=1");
        if (!r.trace.empty()) out.fail("non-empty trace at lambda=1");
      }
    }
  }
  return out;
}

Outcome criterion5_lambda_monotonicity() {
  Outcome out;
  const Dataset& ds = adult();
  for (const AttackerKnowledge attack : {AttackerKnowledge{false, false},
                                         AttackerKnowledge{true, false}}) {
    std::vector<std::vector<ExpansionStep>> traces;
    std::vector<int64_t> purchased;
    for (int i = 1; i <= 20; ++i) {
      ExpansionConfig config;
      config.lambda = 0.05 * i;
      config.alpha = 0.5;
      config.attack = attack;
      const ExpansionResult r = expand(ds, adult_ti(2), config);
      traces.push_back(r.trace);
      purchased.push_back(records_in_intent(ds, r.published_intent).count);
    }
    for (size_t i = 0; i + 1 < traces.size(); ++i) {
      if (purchased[i] < purchased[i + 1]) out.fail("purchased count increased with lambda");
      const auto& longer = traces[i];
      const auto& shorter = traces[i + 1];
      if (shorter.size() > longer.size()) {
        out.fail("trace grew with lambda");
        continue;
      }
      for (size_t k = 0; k < shorter.size(); ++k)
        if (shorter[k].dim != longer[k].dim || shorter[k].value != longer[k].value)
          out.fail("trace-prefix property violated");
    }
  }
  return out;
}

Outcome criterion6_pvalue_oracle() {
  Outcome out;
  const double t0 = now_seconds();
  std::mt19937_64 rng(777);
  std::uniform_int_distribution<int64_t> q_draw(1, 200);
  std::uniform_real_distribution<double> p_draw(0.02, 0.9);
  int within = 0;
  const int cases = 100;
  for (int i = 0; i < cases; ++i) {
    const int64_t q = q_draw(rng);
    const int64_t weight = std::clamp<int64_t>(
        static_cast<int64_t>(std::llround(p_draw(rng) * 1000.0)), 20, 900);
    DataSpace space({{"x", {"hit", "miss"}, false}});
    const Dataset ds = make_dataset(space, {weight, 1000 - weight}, {});
    std::uniform_int_distribution<int64_t> h_draw(1, q);  // the cell must be observed
    const int64_t h = h_draw(rng);
    std::vector<std::pair<int64_t, int32_t>> counts;
    if (h > 0) counts.emplace_back(0, static_cast<int32_t>(h));
    if (q - h > 0) counts.emplace_back(1, static_cast<int32_t>(q - h));
    const PurchaseSet x = PurchaseSet::from_counts(std::move(counts));
    const Intent pseudo = infer_pseudo_pi(space, x);
    PValueConfig exact;
    const double reference = pvalue(0, x, pseudo, ds, exact);
    const double estimate =
        pvalue_monte_carlo(0, x, pseudo, ds, 100000, static_cast<uint64_t>(i) + 1);
    if (std::abs(reference - estimate) <= 0.01) ++within;
  }
  const double elapsed = now_seconds() - t0;
  if (within < 99)
    out.fail("only " + std::to_string(within) + "/100 within 0.01 of the exact tail");
  if (elapsed >= 60.0) out.fail("took " + std::to_string(elapsed) + "s (budget 60s)");
  out.note(std::to_string(within) + "/100 within 0.01, " + std::to_string(elapsed) + "s");
  return out;
}

Outcome criterion7_pseudo_pi_minimality() {
  Outcome out;
  DataSpace space({{"a", {"a1", "a2", "a3"}, false},
                   {"b", {"b1", "b2", "b3"}, false},
                   {"c", {"c1", "c2", "c3"}, false}});
  std::vector<std::vector<int>> subsets;
  for (int mask = 1; mask < 8; ++mask) {
    std::vector<int> s;
    for (int v = 0; v < 3; ++v)
      if (mask & (1 << v)) s.push_back(v);
    subsets.push_back(s);
  }
  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<int> value(0, 2);
  std::uniform_int_distribution<int> set_size(1, 10);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::pair<int64_t, int32_t>> counts;
    const int n = set_size(rng);
    for (int i = 0; i < n; ++i)
      counts.emplace_back(space.index_of({value(rng), value(rng), value(rng)}), 1);
    const PurchaseSet x = PurchaseSet::from_counts(std::move(counts));
    const Intent pseudo = infer_pseudo_pi(space, x);
    int64_t best = space.cell_count() + 1;
    for (const auto& sa : subsets)
      for (const auto& sb : subsets)
        for (const auto& sc : subsets) {
          const Intent candidate(space, {sa, sb, sc});
          bool covers = true;
          for (const auto& [cell, cnt] : x.cells) {
            (void)cnt;
            if (!candidate.contains_index(space, cell)) covers = false;
          }
          if (covers) best = std::min(best, candidate.cartesian_size());
        }
    bool covers = true;
    for (const auto& [cell, cnt] : x.cells) {
      (void)cnt;
      if (!pseudo.contains_index(space, cell)) covers = false;
    }
    if (!covers) out.fail("pseudo intent misses a purchased cell");
    if (pseudo.cartesian_size() != best)
      out.fail("pseudo intent is not cartesian-minimal on trial " + std::to_string(trial));
  }
  return out;
}

struct MethodStats {
  std::vector<double> utilities;
  std::vector<double> seconds;
  bool all_feasible = true;
};

// Shared runs behind criteria 8-10: the census settings with the published
// hyperparameters across 10 seeds.
struct AllocationMatrix {
  MethodStats stats[2][4];  // [ti size - 1][method]
  bool ran = false;
};

const std::vector<AllocationMethod> kMethods = {
    AllocationMethod::mc_simulation, AllocationMethod::mcmc, AllocationMethod::gmcmc,
    AllocationMethod::genetic};

AllocationMatrix& allocation_matrix() {
  static AllocationMatrix matrix;
  if (matrix.ran) return matrix;
  matrix.ran = true;
  const Dataset& ds = adult();
  for (int size = 1; size <= 2; ++size) {
    const Intent ti = adult_ti(size);
    ExpansionConfig expansion;
    expansion.lambda = 0.3;
    expansion.alpha = size == 1 ? 0.5 : 0.6;
    expansion.attack = {true, false};
    const Intent pi = expand(ds, ti, expansion).published_intent;
    for (size_t m = 0; m < kMethods.size(); ++m) {
      MethodStats& stats = matrix.stats[size - 1][m];
      for (uint64_t seed = 0; seed < 10; ++seed) {
        AllocationConfig config;
        config.method = kMethods[m];
        config.q = size == 1 ? 61 : 120;
        config.lambda = 0.3;
        config.mc_sets = 100000;
        config.population = 50;
        config.elite = 10;
        config.generations = 30;
        config.epsilon = config.method == AllocationMethod::gmcmc
                             ? (size == 1 ? 0.07 : 0.01)
                             : 0.001;
        config.seed = seed;
        const double t0 = now_seconds();
        const AllocationResult result = allocate(pi, ti, ds, config);
        stats.seconds.push_back(now_seconds() - t0);
        stats.utilities.push_back(result.utility);
        if (!oracle_feasible(result.purchased, ti, ds, config.lambda))
          stats.all_feasible = false;
        if (result.purchased.q != config.q) stats.all_feasible = false;
      }
    }
  }
  return matrix;
}

double mean(const std::vector<double>& xs) {
  double sum = 0.0;
  for (double x : xs) sum += x;
  return xs.empty() ? 0.0 : sum / static_cast<double>(xs.size());
}

Outcome criterion8_allocation_feasibility() {
  Outcome out;
  const AllocationMatrix& matrix = allocation_matrix();
  const char* names[] = {"mc", "mcmc", "gmcmc", "genetic"};
  for (int size = 0; size < 2; ++size)
    for (size_t m = 0; m < kMethods.size(); ++m)
      if (!matrix.stats[size][m].all_feasible)
        out.fail(std::string(names[m]) + " produced an infeasible set (ti" +
                 std::to_string(size + 1) + ")");
  return out;
}

Outcome criterion9_allocation_utility() {
  Outcome out;
  const AllocationMatrix& matrix = allocation_matrix();
  for (int size = 0; size < 2; ++size) {
    const double mcmc_mean = mean(matrix.stats[size][1].utilities);
    const double gmcmc_mean = mean(matrix.stats[size][2].utilities);
    if (gmcmc_mean + 1e-12 < mcmc_mean)
      out.fail("gmcmc mean below mcmc mean (ti" + std::to_string(size + 1) + ")");
    const double mc_mean = mean(matrix.stats[size][0].utilities);
    const double target = size == 0 ? 0.082 : 0.108;
    if (std::abs(mc_mean - target) > 0.02)
      out.fail("mc utility " + std::to_string(mc_mean) + " outside " +
               std::to_string(target) + "+-2pt");
  }
  out.note("mc means: " + std::to_string(mean(matrix.stats[0][0].utilities)) + ", " +
           std::to_string(mean(matrix.stats[1][0].utilities)));
  return out;
}

Outcome criterion10_allocation_runtime() {
  Outcome out;
  const AllocationMatrix& matrix = allocation_matrix();
  for (int size = 0; size < 2; ++size) {
    const double mc = mean(matrix.stats[size][0].seconds);
    const double gmcmc = mean(matrix.stats[size][2].seconds);
    const double genetic = mean(matrix.stats[size][3].seconds);
    if (!(gmcmc < genetic && genetic < mc))
      out.fail("ordering gmcmc < genetic < mc violated (ti" + std::to_string(size + 1) +
               "): " + std::to_string(gmcmc) + " / " + std::to_string(genetic) + " / " +
               std::to_string(mc));
    if (mc > 300.0) out.fail("mc simulation exceeded the 5 minute budget");
  }
  out.note("means ti1: gmcmc " + std::to_string(mean(matrix.stats[0][2].seconds)) +
           "s, genetic " + std::to_string(mean(matrix.stats[0][3].seconds)) + "s, mc " +
           std::to_string(mean(matrix.stats[0][0].seconds)) + "s");
  return out;
}

Outcome criterion11_projection() {
  Outcome out;
  const Dataset& ds = adult();
  ExpansionConfig config;
  config.lambda = 0.3;
  config.alpha = 1.0;
  const Intent pi = expand(ds, adult_ti(2), config).published_intent;
  const ProjectionRow row = project_and_reexpand(ds, adult_ti(2), pi, "age", config);
  if (row.projected.upper != 1.0)
    out.fail("projected upper bound is " + std::to_string(row.projected.upper) +
             ", expected exactly 100%");
  if (!row.reexpanded) {
    out.fail("projection did not trigger re-expansion");
  } else {
    const ProjectedSetting proj = project_dimension(ds, adult_ti(2), pi, "age");
    const ExpansionResult redo = expand(proj.dataset, proj.true_intent, config);
    if (redo.bounds.upper > 0.3 + 1e-12) out.fail("re-expanded bound above lambda");
  }
  return out;
}

Outcome criterion12_determinism(const std::string& cli) {
  Outcome out;
  if (cli.empty()) {
    out.fail("cli binary path not provided");
    return out;
  }
  const std::string dir = "/tmp/dbpriv_accept";
  if (std::system(("rm -rf " + dir + " && mkdir -p " + dir).c_str()) != 0) {
    out.fail("cannot prepare the scratch directory");
    return out;
  }
  const DataSpace space = adult_space();
  write_text_file(dir + "/ti.json", intent_to_json(
      Intent::single_cell(space, {2, 2, 0, 1, 1}), space));
  const std::string data = std::string(DBPRIV_DATA_DIR) + "/adult_raw.csv";

  struct Command {
    std::string name;
    std::string argv;
    std::vector<std::string> outputs;
  };
  const std::vector<Command> commands = {
      {"expand",
       " expand --dataset adult --adult-csv " + data + " --intent " + dir +
           "/ti.json --attack em-f --lambda 0.3 --alpha 0.5 --out {OUT}",
       {"published_intent.json", "trace.csv"}},
      {"allocate",
       " allocate --dataset adult --adult-csv " + data + " --intent " + dir +
           "/ti.json --method gmcmc --q 61 --lambda 0.3 --epsilon 0.07 --seed 9 "
           "--out {OUT}",
       {"purchase.csv", "feasibility.csv", "published_intent.json"}},
      {"synth", " synth --seed 5 --out {OUT}/synthetic.csv", {"synthetic.csv"}},
      {"sweep",
       " sweep --dataset adult --adult-csv " + data + " --intent " + dir +
           "/ti.json --param lambda --grid 0.2,0.4,0.6,0.8,1.0 --alpha 0.5 --out {OUT}",
       {"sweep.csv"}},
  };
  for (const auto& command : commands) {
    std::vector<std::string> digests;
    for (int run = 0; run < 2; ++run) {
      const std::string out_dir = dir + "/" + command.name + std::to_string(run);
      std::string argv = command.argv;
      while (argv.find("{OUT}") != std::string::npos)
        argv.replace(argv.find("{OUT}"), 5, out_dir);
      const std::string shell = cli + argv + " > /dev/null";
      if (std::system(shell.c_str()) != 0) {
        out.fail(command.name + " exited nonzero");
        break;
      }
      std::string digest;
      for (const auto& file : command.outputs) digest += read_file(out_dir + "/" + file);
      if (digest.empty()) out.fail(command.name + " produced no output");
      digests.push_back(std::move(digest));
    }
    if (digests.size() == 2 && digests[0] != digests[1])
      out.fail(command.name + " outputs differ between identical runs");
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  struct Entry {
    int id;
    const char* name;
    Outcome outcome;
  };
  std::vector<Entry> entries;
  auto run = [&](int id, const char* name, auto&& fn) {
    Outcome outcome;
    try {
      outcome = fn();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    entries.push_back({id, name, std::move(outcome)});
  };

  run(1, "expansion guarantees on randomized instances", criterion1_guarantees);
  run(2, "pi-uniform census reproduction", criterion2_pi_uniform_reproduction);
  run(3, "efficiency-maximization census reproduction", criterion3_em_reproduction);
  run(4, "lambda=1 identity", criterion4_lambda_one_identity);
  run(5, "lambda monotonicity and trace prefixes", criterion5_lambda_monotonicity);
  run(6, "monte-carlo p-value matches the exact tail", criterion6_pvalue_oracle);
  run(7, "pseudo intent minimality", criterion7_pseudo_pi_minimality);
  run(8, "allocation feasibility across methods and seeds", criterion8_allocation_feasibility);
  run(9, "allocation utility ordering", criterion9_allocation_utility);
  run(10, "allocation runtime ordering", criterion10_allocation_runtime);
  run(11, "projection forces and repairs full disclosure", criterion11_projection);
  run(12, "byte-identical outputs under a fixed seed",
      [&] { return criterion12_determinism(cli); });

  bool all_pass = true;
  for (const auto& entry : entries) {
    all_pass = all_pass && entry.outcome.pass;
    std::cout << (entry.outcome.pass ? "PASS" : "FAIL") << " criterion " << entry.id
              << ": " << entry.name;
    if (!entry.outcome.detail.empty()) std::cout << " [" << entry.outcome.detail << "]";
    std::cout << "\n";
  }
  std::cout << (all_pass ? "ALL CRITERIA PASSED" : "SOME CRITERIA FAILED") << "\n";
  return all_pass ? 0 : 1;
}
