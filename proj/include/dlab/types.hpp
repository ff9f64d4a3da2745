#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "dlab/rational.hpp"

namespace dlab {

// A strict total order over alternatives: order[pos] is the alternative
// ranked at position pos (0 = most preferred).
struct Ranking {
  std::vector<int> order;

  int size() const { return static_cast<int>(order.size()); }
  int at(int pos) const { return order[static_cast<size_t>(pos)]; }
  int top() const { return order[0]; }

  // alternative index -> rank position
  std::vector<int> positions() const;
  bool is_permutation() const;

  friend bool operator==(const Ranking&, const Ranking&) = default;
};

struct OrdinalProfile {
  std::vector<Ranking> rankings;

  int n_agents() const { return static_cast<int>(rankings.size()); }
  int n_alternatives() const {
    return rankings.empty() ? 0 : rankings[0].size();
  }
  bool well_formed() const;

  friend bool operator==(const OrdinalProfile&, const OrdinalProfile&) = default;
};

using Row = std::vector<Rat>;
using Matrix = std::vector<Row>;

// Unit-sum cardinal values in item space: values[agent][alternative].
struct ValuationProfile {
  Matrix values;

  int n_agents() const { return static_cast<int>(values.size()); }
  int n_alternatives() const {
    return values.empty() ? 0 : static_cast<int>(values[0].size());
  }

  friend bool operator==(const ValuationProfile&, const ValuationProfile&) = default;
};

// Values for each agent's k most-preferred alternatives, stored in rank
// space: values[agent][pos] is the value for the alternative the agent
// ranks at position pos < k.
struct TruncatedProfile {
  int k = 0;
  Matrix values;

  int n_agents() const { return static_cast<int>(values.size()); }

  friend bool operator==(const TruncatedProfile&, const TruncatedProfile&) = default;
};

// An n x n value matrix used for matching. unit_sum marks a matrix whose
// rows are certified to sum to exactly 1; zero-completed truncations are
// evaluation-only (rows may sum to less than 1) and carry unit_sum = false.
struct WeightMatrix {
  Matrix values;
  bool unit_sum = false;

  int size() const { return static_cast<int>(values.size()); }

  friend bool operator==(const WeightMatrix&, const WeightMatrix&) = default;
};

// A perfect matching between agents and items.
struct Matching {
  std::vector<int> item_of;  // agent index -> item index

  int size() const { return static_cast<int>(item_of.size()); }
  bool is_bijection() const;
  std::vector<int> agent_of() const;  // inverse map

  friend bool operator==(const Matching&, const Matching&) = default;
};

struct OptimalCandidate {
  int candidate = 0;
  friend bool operator==(const OptimalCandidate&, const OptimalCandidate&) = default;
};

// Per-voter predicted value for the alternative each voter ranks first.
struct TopValues {
  std::vector<Rat> values;
  friend bool operator==(const TopValues&, const TopValues&) = default;
};

using Prediction =
    std::variant<OptimalCandidate, ValuationProfile, TopValues, TruncatedProfile>;

enum class Flavor { Voting, Matching };

struct Instance {
  Flavor flavor = Flavor::Voting;
  OrdinalProfile ordinal;
  Prediction prediction;
  std::optional<ValuationProfile> truth;

  int n_agents() const { return ordinal.n_agents(); }
  int n_alternatives() const { return ordinal.n_alternatives(); }

  friend bool operator==(const Instance&, const Instance&) = default;
};

}  // namespace dlab
