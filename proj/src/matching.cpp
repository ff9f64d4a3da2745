#include "dlab/matching.hpp"

#include <stdexcept>

#include "dlab/assignment.hpp"

namespace dlab::matching {

MatchingResult max_weight_matching(const WeightMatrix& weights) {
  const int n = weights.size();
  if (n == 0) throw std::invalid_argument("max_weight_matching: empty matrix");
  for (const Row& row : weights.values) {
    if (static_cast<int>(row.size()) != n) {
      throw std::invalid_argument("max_weight_matching: matrix must be square");
    }
    for (const Rat& w : row) {
      if (w < 0) throw std::invalid_argument("max_weight_matching: negative weight");
    }
  }
  auto [value, col_of] = detail::assignment_max_lex(weights.values);
  MatchingResult res;
  res.matching = Matching{std::move(col_of)};
  res.welfare = std::move(value);
  return res;
}

std::optional<int> lowest_top_matched(const Matching& matching,
                                      const OrdinalProfile& ordinal) {
  for (int i = 0; i < matching.size(); ++i) {
    if (matching.item_of[static_cast<size_t>(i)] ==
        ordinal.rankings[static_cast<size_t>(i)].top()) {
      return i;
    }
  }
  return std::nullopt;
}

Matching top_item_fix(const Matching& matching, const OrdinalProfile& ordinal,
                      const WeightMatrix& weights) {
  if (lowest_top_matched(matching, ordinal)) return matching;

  const int n = matching.size();
  std::vector<int> holder_of_top(static_cast<size_t>(n));
  std::vector<int> agent_of = matching.agent_of();
  for (int i = 0; i < n; ++i) {
    holder_of_top[static_cast<size_t>(i)] =
        agent_of[static_cast<size_t>(ordinal.rankings[static_cast<size_t>(i)].top())];
  }

  // No agent holds her own top item, so every node has an out-edge and the
  // walk from agent 0 must close a cycle.
  std::vector<int> visit_order(static_cast<size_t>(n), -1);
  int cur = 0;
  int step = 0;
  while (visit_order[static_cast<size_t>(cur)] == -1) {
    visit_order[static_cast<size_t>(cur)] = step++;
    cur = holder_of_top[static_cast<size_t>(cur)];
  }

  Matching fixed = matching;
  const int entry = visit_order[static_cast<size_t>(cur)];
  for (int i = 0; i < n; ++i) {
    if (visit_order[static_cast<size_t>(i)] >= entry) {
      fixed.item_of[static_cast<size_t>(i)] = ordinal.rankings[static_cast<size_t>(i)].top();
    }
  }
  if (social_welfare(fixed, weights) < social_welfare(matching, weights)) {
    throw std::logic_error("top_item_fix: rotation decreased welfare");
  }
  return fixed;
}

namespace {

MatchingResult solve_and_fix(const OrdinalProfile& ordinal, const WeightMatrix& weights) {
  MatchingResult res = max_weight_matching(weights);
  res.matching = top_item_fix(res.matching, ordinal, weights);
  res.welfare = social_welfare(res.matching, weights);
  res.top_matched_agent = lowest_top_matched(res.matching, ordinal);
  return res;
}

}  // namespace

MatchingResult mechanism_full(const OrdinalProfile& ordinal,
                              const ValuationProfile& predicted) {
  if (ordinal.n_agents() != ordinal.n_alternatives()) {
    throw std::invalid_argument("mechanism_full: need as many items as agents");
  }
  if (!validate(predicted, ordinal).empty()) {
    throw std::invalid_argument(
        "mechanism_full: predicted profile inconsistent with the ordinal profile");
  }
  return solve_and_fix(ordinal, to_weights(predicted));
}

MatchingResult mechanism3(const OrdinalProfile& ordinal,
                          const TruncatedProfile& predicted) {
  if (ordinal.n_agents() != ordinal.n_alternatives()) {
    throw std::invalid_argument("mechanism3: need as many items as agents");
  }
  if (!validate_truncated(predicted, ordinal).empty()) {
    throw std::invalid_argument(
        "mechanism3: truncated prediction inconsistent with the ordinal profile");
  }
  return solve_and_fix(ordinal, complete_truncated(predicted, ordinal));
}

MatchingPredictionError eta_matching(const OrdinalProfile& ordinal,
                                     const ValuationProfile& truth,
                                     const TruncatedProfile& predicted) {
  if (!validate(truth, ordinal).empty()) {
    throw std::invalid_argument("eta_matching: truth inconsistent with the ordinal profile");
  }
  const int n = ordinal.n_agents();
  const int k = predicted.k;

  MatchingPredictionError e;
  e.true_trunc_opt =
      solve_and_fix(ordinal, complete_truncated(truncate_profile(truth, ordinal, k), ordinal));
  e.pred_trunc_opt = mechanism3(ordinal, predicted);
  e.sw_true_of_true_opt = social_welfare(e.true_trunc_opt.matching, truth);
  e.sw_true_of_pred_opt = social_welfare(e.pred_trunc_opt.matching, truth);

  if (e.sw_true_of_pred_opt == 0) {
    // Unreachable for a unit-sum truth: the fixed matching serves some agent
    // her top item. A zero here means the truth was not actually unit-sum.
    e.eta = ExtRat::infinity();
  } else {
    e.eta = ExtRat(e.sw_true_of_true_opt / e.sw_true_of_pred_opt);
    e.below_one = e.eta.value() < 1;
  }
  e.distortion_bound = min(e.eta * (Rat(n, k) + 1), ExtRat(Rat(n) * n));
  return e;
}

}  // namespace dlab::matching
