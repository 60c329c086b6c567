// Times the OpenMP kernels against their serial reference implementations
// and verifies that both produce identical results.
//
// Usage: dbpriv_bench [replicates] [mc_sets]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include <omp.h>

#include "dbpriv/adult.hpp"
#include "dbpriv/allocation.hpp"
#include "dbpriv/expansion.hpp"

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

struct Timed {
  double seconds;
  double value;
};

template <class Fn>
Timed timed(Fn&& fn) {
  const double t0 = now_seconds();
  const double value = fn();
  return {now_seconds() - t0, value};
}

void report(const char* name, const Timed& serial, const Timed& parallel) {
  const bool same = serial.value == parallel.value;
  std::printf("%-28s serial %8.3fs   parallel %8.3fs   speedup %4.2fx   %s\n", name,
              serial.seconds, parallel.seconds, serial.seconds / parallel.seconds,
              same ? "results identical" : "RESULTS DIFFER");
}

}  // namespace

int main(int argc, char** argv) {
  const int64_t replicates = argc > 1 ? std::atoll(argv[1]) : 200000;
  const int64_t mc_sets = argc > 2 ? std::atoll(argv[2]) : 50000;
  std::printf("threads: %d, L=%lld, Z=%lld\n", omp_get_max_threads(),
              static_cast<long long>(replicates), static_cast<long long>(mc_sets));

  const Dataset dataset =
      preprocess_adult(std::string(DBPRIV_DATA_DIR) + "/adult_raw.csv").dataset;
  const Intent ti = Intent::single_cell(dataset.space, {2, 2, 0, 1, 1});
  ExpansionConfig expansion;
  expansion.lambda = 0.3;
  expansion.alpha = 0.5;
  expansion.attack = {true, false};
  const Intent pi = expand(dataset, ti, expansion).published_intent;

  // Monte-Carlo p-value kernel over a fixed purchase.
  {
    AllocationConfig config;
    config.q = 61;
    config.lambda = 0.3;
    config.mc_sets = 1;
    config.seed = 1;
    const PurchaseSet purchase = allocate_mc(pi, ti, dataset, config).purchased;
    const Intent pseudo = infer_pseudo_pi(dataset.space, purchase);
    const int64_t cell = dataset.space.index_of({2, 2, 0, 1, 1});
    const Timed serial = timed([&] {
      return pvalue_monte_carlo_serial(cell, purchase, pseudo, dataset, replicates, 3);
    });
    const Timed parallel = timed([&] {
      return pvalue_monte_carlo(cell, purchase, pseudo, dataset, replicates, 3);
    });
    report("mc p-value", serial, parallel);
  }

  // MC-simulation allocation scan.
  {
    AllocationConfig config;
    config.q = 61;
    config.lambda = 0.3;
    config.mc_sets = mc_sets;
    config.seed = 2;
    const Timed serial =
        timed([&] { return allocate_mc_serial(pi, ti, dataset, config).utility; });
    const Timed parallel =
        timed([&] { return allocate_mc(pi, ti, dataset, config).utility; });
    report("mc allocation scan", serial, parallel);
  }

  // Genetic fitness evaluation.
  {
    AllocationConfig config;
    config.method = AllocationMethod::genetic;
    config.q = 120;
    config.lambda = 0.3;
    config.population = 50;
    config.elite = 10;
    config.generations = 30;
    config.seed = 3;
    const Intent ti2 = ti.with_value(1, 1);
    ExpansionConfig em2 = expansion;
    em2.alpha = 0.6;
    const Intent pi2 = expand(dataset, ti2, em2).published_intent;
    const Timed serial =
        timed([&] { return allocate_genetic_serial(pi2, ti2, dataset, config).utility; });
    const Timed parallel =
        timed([&] { return allocate_genetic(pi2, ti2, dataset, config).utility; });
    report("genetic fitness evaluation", serial, parallel);
  }
  return 0;
}
