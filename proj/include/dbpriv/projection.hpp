#pragma once

#include <optional>
#include <string>

#include "dbpriv/expansion.hpp"

namespace dbpriv {

struct ProjectedSetting {
  Dataset dataset;          // marginalized over the dropped dimension
  Intent true_intent;       // projected V
  Intent published_intent;  // projected U
  int dropped_dim = -1;     // index in the original space
};

// Drops one dimension: frequencies marginalize by summation; per-cell cost
// becomes the frequency-weighted mean (plain mean where the marginal
// frequency is zero), which makes freq*cost weights marginalize exactly.
ProjectedSetting project_dimension(const Dataset& dataset, const Intent& true_intent,
                                   const Intent& published_intent,
                                   const std::string& dim_name);

struct ProjectionRow {
  std::string dimension;
  ConfidenceBounds before;
  ConfidenceBounds projected;
  std::optional<double> change_lower;
  double change_upper = 0.0;
  int64_t records_pi = 0;          // purchased records, unchanged by projection
  int64_t updated_records_pi = 0;  // purchase of the re-expanded intent
  int64_t records_ti = 0;          // purchased records matching the projected TI
  double proj_utility = 0.0;
  double updated_utility = 0.0;
  int64_t proj_pi_size = 0;
  int64_t updated_pi_size = 0;
  bool reexpanded = false;
};

// Evaluates one dimension removal: attacker bounds on the projected intent,
// and, when the projection breaks the lambda guarantee, a fresh expansion of
// the projected true intent in the reduced space. The published intent is
// the buyer's existing purchase, so record counts against it stay fixed;
// only the updated intent is re-priced in the reduced dataset.
ProjectionRow project_and_reexpand(const Dataset& dataset, const Intent& true_intent,
                                   const Intent& published_intent,
                                   const std::string& dim_name,
                                   const ExpansionConfig& config);

}  // namespace dbpriv
