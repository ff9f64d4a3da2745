#pragma once

#include <optional>

#include "dlab/core.hpp"

namespace dlab::matching {

struct MatchingResult {
  Matching matching;
  Rat welfare;  // with respect to the weights the mechanism optimized
  std::optional<int> top_matched_agent;  // lowest agent holding her rank-1 item
};

// Exact maximum-total-weight perfect matching. Among equal-welfare optima the
// lexicographically smallest item_of sequence is returned, so outputs are
// canonical. Rejects non-square or negative input.
MatchingResult max_weight_matching(const WeightMatrix& weights);

// Lowest-index agent matched to her most-preferred item, if any.
std::optional<int> lowest_top_matched(const Matching& matching,
                                      const OrdinalProfile& ordinal);

// Rotates one cycle of the graph "agent -> holder of her top item" so that
// every agent on the cycle receives her rank-1 item. Welfare never drops, so
// an optimal input stays optimal. Inputs that already contain a top-matched
// agent are returned unchanged.
Matching top_item_fix(const Matching& matching, const OrdinalProfile& ordinal,
                      const WeightMatrix& weights);

// Maximum predicted-welfare matching followed by the top-item fix.
MatchingResult mechanism_full(const OrdinalProfile& ordinal,
                              const ValuationProfile& predicted);

// Zero-completes the k-truncated prediction, then solves and fixes.
MatchingResult mechanism3(const OrdinalProfile& ordinal,
                          const TruncatedProfile& predicted);

struct MatchingPredictionError {
  ExtRat eta;               // SW(true-truncation optimum | truth) / SW(mechanism matching | truth)
  bool below_one = false;   // eta < 1 can occur through ties off the truncation
  ExtRat distortion_bound;  // min{(n/k + 1) * eta, n^2}
  MatchingResult true_trunc_opt;
  MatchingResult pred_trunc_opt;  // identical to the mechanism's output
  Rat sw_true_of_true_opt;
  Rat sw_true_of_pred_opt;
};

// Prediction error of a k-truncated prediction against the truth: both the
// true and the predicted zero-completed truncations are optimized (and
// top-item fixed), and their welfares under the full truth are compared.
MatchingPredictionError eta_matching(const OrdinalProfile& ordinal,
                                     const ValuationProfile& truth,
                                     const TruncatedProfile& predicted);

}  // namespace dlab::matching
