#pragma once

#include <span>
#include <vector>

#include "dlab/core.hpp"

namespace dlab::voting {

// Per-candidate first-place statistics. plu(x) counts the voters ranking x
// first; sw1(x) is their total value for x.
struct Tally {
  std::vector<std::vector<int>> first_voters;
  std::vector<int> plu;
  std::vector<Rat> sw1;

  int n_candidates() const { return static_cast<int>(plu.size()); }
  int max_sw1_candidate() const;  // lowest index among maximizers
  int max_plu_candidate() const;
};

// top_values[i] is voter i's value for the candidate she ranks first.
Tally tally(const OrdinalProfile& ordinal, std::span<const Rat> top_values);

int plurality_winner(const OrdinalProfile& ordinal);

// Winner by maximum predicted first-place welfare; ties break toward the
// lower candidate index.
int mechanism1(const OrdinalProfile& ordinal, std::span<const Rat> predicted_top);

struct Shortlist {
  Rat lambda;
  int a_star = -1;            // candidate with maximum predicted first-place welfare
  Rat threshold;              // sw1(a_star) / lambda
  std::vector<int> members;   // ascending candidate indices
  int winner = -1;            // maximum plurality score inside members
};

// Shortlists every candidate whose predicted first-place welfare is within a
// factor lambda of the maximum, then picks the member with the largest
// plurality score. lambda must lie in [1, m]. With lambda = 1 the winner is
// a_star itself, so the choice coincides with mechanism1's exactly even
// under sw1 ties.
Shortlist mechanism2(const OrdinalProfile& ordinal, std::span<const Rat> predicted_top,
                     const Rat& lambda);

// max_y sw1(y) / sw1(x). Infinite when sw1(x) = 0 while some candidate has
// positive first-place welfare; exactly 1 when every sw1 is 0.
ExtRat rho(int candidate, const Tally& tally);

struct PredictionError {
  ExtRat eta_winner;
  ExtRat eta_shortlist;     // max over the shortlist members
  Rat rho_winner_predicted; // finite for shortlist members
  ExtRat rho_winner_true;
  ExtRat distortion_bound;  // m * eta_shortlist * rho_winner_predicted
};

// Prediction error eta(x) = max{rho(x|truth) / rho(x|predicted), 1} for the
// winner and across the whole shortlist, with the realized-distortion bound
// m * eta * rho alongside.
PredictionError eta_voting(const OrdinalProfile& ordinal, const Shortlist& shortlist,
                           const ValuationProfile& truth,
                           std::span<const Rat> predicted_top);

// Unit-sum rows imply every voter's top value lies in [1/m, 1]. Out-of-range
// predictions are legal input for the mechanisms but worth surfacing.
std::vector<int> out_of_range_top_values(std::span<const Rat> predicted_top, int m);

}  // namespace dlab::voting
