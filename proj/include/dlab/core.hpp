#pragma once

#include <string>
#include <vector>

#include "dlab/types.hpp"

namespace dlab {

enum class ViolationKind { Shape, Negative, RowSum, NotMonotone, NotExtendable };

// Invariant violations are data, not faults: validation never throws.
struct Violation {
  ViolationKind kind = ViolationKind::Shape;
  int agent = -1;
  int index = -1;  // alternative (Negative) or rank position (NotMonotone)
  Rat detail{};    // RowSum: deficit 1 - sum
  std::string describe() const;
};

// Checks non-negativity, exact unit row sums and monotonicity of each row
// along its agent's ranking. Empty result iff the profile is valid.
std::vector<Violation> validate(const ValuationProfile& profile,
                                const OrdinalProfile& ordinal);

// Truncated rows must be non-negative, non-increasing and sum to at most 1.
// Extendability (sum + (n-k) * last >= 1, i.e. the row can be completed to a
// unit-sum row without breaking monotonicity) is only checked on request.
std::vector<Violation> validate_truncated(const TruncatedProfile& truncated,
                                          const OrdinalProfile& ordinal,
                                          bool require_extendable = false);

// Indices sorted by value descending; equal values break toward the lower
// alternative index.
Ranking induced_ranking(const Row& values);

Rat social_welfare(int candidate, const ValuationProfile& profile);
Rat social_welfare(const Matching& matching, const ValuationProfile& profile);
Rat social_welfare(const Matching& matching, const WeightMatrix& weights);

enum class CompletionMode { Zeros };

// Expands a k-truncated profile to a full n x n evaluation matrix in item
// space, giving every alternative beyond rank k the value 0. The result is
// certified unit-sum only when nothing was actually left undefined.
WeightMatrix complete_truncated(const TruncatedProfile& truncated,
                                const OrdinalProfile& ordinal,
                                CompletionMode mode = CompletionMode::Zeros);

// Rank-space prefix of a full profile (the inverse of zero-completion).
TruncatedProfile truncate_profile(const ValuationProfile& profile,
                                  const OrdinalProfile& ordinal, int k);

WeightMatrix to_weights(const ValuationProfile& profile);

// Per-voter value for the alternative each voter ranks first.
std::vector<Rat> top_values_of(const ValuationProfile& profile,
                               const OrdinalProfile& ordinal);

// Whether a prediction is accurate for the given truth:
//  - an optimal-candidate prediction must name some welfare maximizer,
//  - profile-shaped predictions must agree with the truth on every value
//    they define.
bool prediction_accurate(const ValuationProfile& truth,
                         const OrdinalProfile& ordinal,
                         const Prediction& prediction);

// Structural checks for a whole instance (ranking shapes, prediction and
// truth consistency with the ordinal profile). Throws std::invalid_argument
// on the first problem found.
void check_instance(const Instance& instance);

}  // namespace dlab
