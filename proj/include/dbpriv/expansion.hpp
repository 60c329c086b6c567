#pragma once

#include <vector>

#include "dbpriv/attacks.hpp"
#include "dbpriv/domain.hpp"

namespace dbpriv {

struct ExpansionConfig {
  double lambda = 0.3;          // buyer's maximal confidence threshold, (0,1]
  double alpha = 0.5;           // weight on the addition factor, [0,1]
  AttackerKnowledge attack;     // (false,false) defends the PI-uniform attack
  int64_t max_iterations = 1 << 20;  // safeguard; saturation terminates first
};

struct Candidate {
  int dim = 0;
  int value = 0;
  double accu_dist = 0.0;   // 0 on nominal dimensions
  int64_t addition = 0;     // records the slab would add
  double increase = 0.0;    // constraint right-hand-side gain
};

// One candidate per ordinal dimension (smallest accumulated index distance,
// ties to the lowest value index); every remaining value on nominal
// dimensions. Saturated dimensions contribute nothing; returns empty when
// everything is saturated.
std::vector<Candidate> nearest_candidates(const DataSpace& space, const Intent& current_pi);

// Records in the slab U_1 x ... x {value} x ... x U_n.
int64_t candidate_addition(const Dataset& dataset, const Intent& current_pi,
                           const Candidate& candidate);

// PI-uniform: the slab's cartesian size. EM: the slab's weight mass under
// the attack's weighting.
double candidate_increase(const Dataset& dataset, const Intent& current_pi,
                          const Candidate& candidate, AttackerKnowledge attack);

// score = alpha * (max normalized addition - normalized addition)
//       + (1-alpha) * normalized increase,
// with both factors min-max normalized over the pool (0 when max == min).
std::vector<double> score_candidates(const std::vector<Candidate>& candidates, double alpha);

struct ExpansionStep {
  int dim = 0;
  int value = 0;
  int64_t addition = 0;
  double increase = 0.0;
  double score = 0.0;
};

struct ExpansionResult {
  Intent published_intent;
  std::vector<ExpansionStep> trace;
  ConfidenceBounds bounds;
};

// Greedy construction of a minimal lambda-privacy-preserving published
// intent: start from U = V, add the best-scoring candidate until the attack
// constraint holds. Ties break to the lower dimension index, then the lower
// value index. Deterministic.
ExpansionResult expand(const Dataset& dataset, const Intent& true_intent,
                       const ExpansionConfig& config);

}  // namespace dbpriv
