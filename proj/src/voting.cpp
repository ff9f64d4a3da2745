#include "dlab/voting.hpp"

#include <stdexcept>

namespace dlab::voting {

int Tally::max_sw1_candidate() const {
  int best = 0;
  for (int x = 1; x < n_candidates(); ++x) {
    if (sw1[static_cast<size_t>(x)] > sw1[static_cast<size_t>(best)]) best = x;
  }
  return best;
}

int Tally::max_plu_candidate() const {
  int best = 0;
  for (int x = 1; x < n_candidates(); ++x) {
    if (plu[static_cast<size_t>(x)] > plu[static_cast<size_t>(best)]) best = x;
  }
  return best;
}

Tally tally(const OrdinalProfile& ordinal, std::span<const Rat> top_values) {
  const int n = ordinal.n_agents();
  const int m = ordinal.n_alternatives();
  if (static_cast<int>(top_values.size()) != n) {
    throw std::invalid_argument("tally: need one top value per voter");
  }
  Tally t;
  t.first_voters.assign(static_cast<size_t>(m), {});
  t.plu.assign(static_cast<size_t>(m), 0);
  t.sw1.assign(static_cast<size_t>(m), Rat(0));
  for (int i = 0; i < n; ++i) {
    const int x = ordinal.rankings[static_cast<size_t>(i)].top();
    t.first_voters[static_cast<size_t>(x)].push_back(i);
    t.plu[static_cast<size_t>(x)] += 1;
    t.sw1[static_cast<size_t>(x)] += top_values[static_cast<size_t>(i)];
  }
  return t;
}

int plurality_winner(const OrdinalProfile& ordinal) {
  if (ordinal.n_agents() < 1) throw std::invalid_argument("plurality_winner: no voters");
  std::vector<int> plu(static_cast<size_t>(ordinal.n_alternatives()), 0);
  for (const Ranking& r : ordinal.rankings) plu[static_cast<size_t>(r.top())] += 1;
  int best = 0;
  for (int x = 1; x < ordinal.n_alternatives(); ++x) {
    if (plu[static_cast<size_t>(x)] > plu[static_cast<size_t>(best)]) best = x;
  }
  return best;
}

int mechanism1(const OrdinalProfile& ordinal, std::span<const Rat> predicted_top) {
  return tally(ordinal, predicted_top).max_sw1_candidate();
}

Shortlist mechanism2(const OrdinalProfile& ordinal, std::span<const Rat> predicted_top,
                     const Rat& lambda) {
  const int m = ordinal.n_alternatives();
  if (lambda < 1 || lambda > m) {
    throw std::invalid_argument("mechanism2: lambda must lie in [1, m]");
  }
  Tally t = tally(ordinal, predicted_top);
  Shortlist s;
  s.lambda = lambda;
  s.a_star = t.max_sw1_candidate();
  s.threshold = t.sw1[static_cast<size_t>(s.a_star)] / lambda;
  for (int x = 0; x < m; ++x) {
    if (t.sw1[static_cast<size_t>(x)] >= s.threshold) s.members.push_back(x);
  }
  // With sw1(a_star) = 0 the threshold is 0 and every candidate qualifies,
  // so the choice degenerates to plurality.
  if (lambda == 1) {
    // Definitional reduction: exact sw1 ties would otherwise let a higher
    // plurality score override the max-predicted-first-place winner.
    s.winner = s.a_star;
    return s;
  }
  s.winner = s.members.front();
  for (int x : s.members) {
    if (t.plu[static_cast<size_t>(x)] > t.plu[static_cast<size_t>(s.winner)]) s.winner = x;
  }
  return s;
}

ExtRat rho(int candidate, const Tally& tally) {
  const Rat& own = tally.sw1[static_cast<size_t>(candidate)];
  const Rat& best = tally.sw1[static_cast<size_t>(tally.max_sw1_candidate())];
  if (best == 0) return ExtRat(Rat(1));
  if (own == 0) return ExtRat::infinity();
  return ExtRat(best / own);
}

namespace {

// eta(x) = max{rho_true / rho_pred, 1} with infinities propagated: an
// infinite true ratio against a finite predicted one is an infinite error.
ExtRat eta_of(const ExtRat& rho_true, const ExtRat& rho_pred) {
  if (rho_true.is_infinite()) {
    return rho_pred.is_infinite() ? ExtRat(Rat(1)) : ExtRat::infinity();
  }
  if (rho_pred.is_infinite()) return ExtRat(Rat(1));
  Rat ratio = rho_true.value() / rho_pred.value();
  return ExtRat(ratio < 1 ? Rat(1) : ratio);
}

}  // namespace

PredictionError eta_voting(const OrdinalProfile& ordinal, const Shortlist& shortlist,
                           const ValuationProfile& truth,
                           std::span<const Rat> predicted_top) {
  const int m = ordinal.n_alternatives();
  std::vector<Rat> true_top = top_values_of(truth, ordinal);
  Tally t_true = tally(ordinal, true_top);
  Tally t_pred = tally(ordinal, predicted_top);

  PredictionError e;
  e.eta_shortlist = ExtRat(Rat(0));
  for (int x : shortlist.members) {
    ExtRat ex = eta_of(rho(x, t_true), rho(x, t_pred));
    e.eta_shortlist = max(e.eta_shortlist, ex);
    if (x == shortlist.winner) e.eta_winner = ex;
  }
  ExtRat rho_pred_w = rho(shortlist.winner, t_pred);
  // Shortlist membership keeps the predicted ratio finite except in the
  // degenerate all-zero tally, where rho is 1 by definition.
  e.rho_winner_predicted = rho_pred_w.is_infinite() ? Rat(1) : rho_pred_w.value();
  e.rho_winner_true = rho(shortlist.winner, t_true);
  e.distortion_bound = e.eta_shortlist * (Rat(m) * e.rho_winner_predicted);
  return e;
}

std::vector<int> out_of_range_top_values(std::span<const Rat> predicted_top, int m) {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(predicted_top.size()); ++i) {
    const Rat& v = predicted_top[static_cast<size_t>(i)];
    if (v < Rat(1, m) || v > 1) out.push_back(i);
  }
  return out;
}

}  // namespace dlab::voting
