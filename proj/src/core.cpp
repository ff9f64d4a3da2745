#include "dlab/core.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace dlab {

std::vector<int> Ranking::positions() const {
  std::vector<int> pos(order.size(), -1);
  for (int p = 0; p < size(); ++p) pos[static_cast<size_t>(order[static_cast<size_t>(p)])] = p;
  return pos;
}

bool Ranking::is_permutation() const {
  std::vector<char> seen(order.size(), 0);
  for (int a : order) {
    if (a < 0 || a >= size() || seen[static_cast<size_t>(a)]) return false;
    seen[static_cast<size_t>(a)] = 1;
  }
  return true;
}

bool OrdinalProfile::well_formed() const {
  if (rankings.empty()) return false;
  const int m = rankings[0].size();
  for (const Ranking& r : rankings) {
    if (r.size() != m || !r.is_permutation()) return false;
  }
  return true;
}

bool Matching::is_bijection() const {
  std::vector<char> seen(item_of.size(), 0);
  for (int x : item_of) {
    if (x < 0 || x >= size() || seen[static_cast<size_t>(x)]) return false;
    seen[static_cast<size_t>(x)] = 1;
  }
  return true;
}

std::vector<int> Matching::agent_of() const {
  std::vector<int> inv(item_of.size(), -1);
  for (int i = 0; i < size(); ++i) inv[static_cast<size_t>(item_of[static_cast<size_t>(i)])] = i;
  return inv;
}

std::string Violation::describe() const {
  switch (kind) {
    case ViolationKind::Shape:
      return "shape mismatch at agent " + std::to_string(agent);
    case ViolationKind::Negative:
      return "negative value at agent " + std::to_string(agent) + ", alternative " +
             std::to_string(index);
    case ViolationKind::RowSum:
      return "row-sum violation at agent " + std::to_string(agent) + ", deficit " +
             rat_to_string(detail);
    case ViolationKind::NotMonotone:
      return "monotonicity violation at agent " + std::to_string(agent) +
             ", rank position " + std::to_string(index);
    case ViolationKind::NotExtendable:
      return "row of agent " + std::to_string(agent) +
             " cannot extend to a unit-sum profile, shortfall " + rat_to_string(detail);
  }
  return "unknown violation";
}

std::vector<Violation> validate(const ValuationProfile& profile,
                                const OrdinalProfile& ordinal) {
  std::vector<Violation> out;
  const int n = ordinal.n_agents();
  const int m = ordinal.n_alternatives();
  if (profile.n_agents() != n) {
    out.push_back({ViolationKind::Shape, profile.n_agents(), -1, Rat(0)});
    return out;
  }
  for (int i = 0; i < n; ++i) {
    const Row& row = profile.values[static_cast<size_t>(i)];
    if (static_cast<int>(row.size()) != m) {
      out.push_back({ViolationKind::Shape, i, -1, Rat(0)});
      continue;
    }
    Rat sum = 0;
    for (int x = 0; x < m; ++x) {
      if (row[static_cast<size_t>(x)] < 0) {
        out.push_back({ViolationKind::Negative, i, x, row[static_cast<size_t>(x)]});
      }
      sum += row[static_cast<size_t>(x)];
    }
    if (sum != 1) {
      out.push_back({ViolationKind::RowSum, i, -1, Rat(1) - sum});
    }
    const Ranking& rk = ordinal.rankings[static_cast<size_t>(i)];
    for (int p = 0; p + 1 < m; ++p) {
      if (row[static_cast<size_t>(rk.at(p))] < row[static_cast<size_t>(rk.at(p + 1))]) {
        out.push_back({ViolationKind::NotMonotone, i, p + 1, Rat(0)});
      }
    }
  }
  return out;
}

std::vector<Violation> validate_truncated(const TruncatedProfile& truncated,
                                          const OrdinalProfile& ordinal,
                                          bool require_extendable) {
  std::vector<Violation> out;
  const int n = ordinal.n_agents();
  const int m = ordinal.n_alternatives();
  if (truncated.k < 1 || truncated.k > m) {
    out.push_back({ViolationKind::Shape, -1, truncated.k, Rat(0)});
    return out;
  }
  if (truncated.n_agents() != n) {
    out.push_back({ViolationKind::Shape, truncated.n_agents(), -1, Rat(0)});
    return out;
  }
  for (int i = 0; i < n; ++i) {
    const Row& row = truncated.values[static_cast<size_t>(i)];
    if (static_cast<int>(row.size()) != truncated.k) {
      out.push_back({ViolationKind::Shape, i, -1, Rat(0)});
      continue;
    }
    Rat sum = 0;
    for (int p = 0; p < truncated.k; ++p) {
      if (row[static_cast<size_t>(p)] < 0) {
        out.push_back({ViolationKind::Negative, i, p, row[static_cast<size_t>(p)]});
      }
      if (p > 0 && row[static_cast<size_t>(p)] > row[static_cast<size_t>(p - 1)]) {
        out.push_back({ViolationKind::NotMonotone, i, p, Rat(0)});
      }
      sum += row[static_cast<size_t>(p)];
    }
    if (sum > 1) {
      out.push_back({ViolationKind::RowSum, i, -1, Rat(1) - sum});
    }
    if (require_extendable) {
      Rat reach = sum + Rat(m - truncated.k) * row[static_cast<size_t>(truncated.k - 1)];
      if (reach < 1) {
        out.push_back({ViolationKind::NotExtendable, i, -1, Rat(1) - reach});
      }
    }
  }
  return out;
}

Ranking induced_ranking(const Row& values) {
  Ranking r;
  r.order.resize(values.size());
  std::iota(r.order.begin(), r.order.end(), 0);
  std::stable_sort(r.order.begin(), r.order.end(), [&](int a, int b) {
    return values[static_cast<size_t>(a)] > values[static_cast<size_t>(b)];
  });
  return r;
}

Rat social_welfare(int candidate, const ValuationProfile& profile) {
  Rat sum = 0;
  for (const Row& row : profile.values) sum += row[static_cast<size_t>(candidate)];
  return sum;
}

namespace {

Rat matching_welfare(const Matching& matching, const Matrix& values) {
  if (matching.size() != static_cast<int>(values.size())) {
    throw std::invalid_argument("social_welfare: matching size does not match profile");
  }
  Rat sum = 0;
  for (int i = 0; i < matching.size(); ++i) {
    sum += values[static_cast<size_t>(i)][static_cast<size_t>(matching.item_of[static_cast<size_t>(i)])];
  }
  return sum;
}

}  // namespace

Rat social_welfare(const Matching& matching, const ValuationProfile& profile) {
  return matching_welfare(matching, profile.values);
}

Rat social_welfare(const Matching& matching, const WeightMatrix& weights) {
  return matching_welfare(matching, weights.values);
}

WeightMatrix complete_truncated(const TruncatedProfile& truncated,
                                const OrdinalProfile& ordinal, CompletionMode mode) {
  (void)mode;  // only zero-completion exists
  const int n = ordinal.n_agents();
  const int m = ordinal.n_alternatives();
  if (truncated.k < 1 || truncated.k > m) {
    throw std::invalid_argument("complete_truncated: k must be in [1, " +
                                std::to_string(m) + "], got " + std::to_string(truncated.k));
  }
  if (truncated.n_agents() != n) {
    throw std::invalid_argument("complete_truncated: agent count mismatch");
  }
  WeightMatrix out;
  out.values.assign(static_cast<size_t>(n), Row(static_cast<size_t>(m), Rat(0)));
  bool full = truncated.k == m;
  for (int i = 0; i < n; ++i) {
    const Ranking& rk = ordinal.rankings[static_cast<size_t>(i)];
    Rat sum = 0;
    for (int p = 0; p < truncated.k; ++p) {
      const Rat& v = truncated.values[static_cast<size_t>(i)][static_cast<size_t>(p)];
      out.values[static_cast<size_t>(i)][static_cast<size_t>(rk.at(p))] = v;
      sum += v;
    }
    if (sum != 1) full = false;
  }
  out.unit_sum = full;
  return out;
}

TruncatedProfile truncate_profile(const ValuationProfile& profile,
                                  const OrdinalProfile& ordinal, int k) {
  const int m = ordinal.n_alternatives();
  if (k < 1 || k > m) {
    throw std::invalid_argument("truncate_profile: k must be in [1, " + std::to_string(m) +
                                "], got " + std::to_string(k));
  }
  TruncatedProfile out;
  out.k = k;
  out.values.reserve(profile.values.size());
  for (int i = 0; i < profile.n_agents(); ++i) {
    const Ranking& rk = ordinal.rankings[static_cast<size_t>(i)];
    Row row(static_cast<size_t>(k));
    for (int p = 0; p < k; ++p) {
      row[static_cast<size_t>(p)] =
          profile.values[static_cast<size_t>(i)][static_cast<size_t>(rk.at(p))];
    }
    out.values.push_back(std::move(row));
  }
  return out;
}

WeightMatrix to_weights(const ValuationProfile& profile) {
  return WeightMatrix{profile.values, true};
}

std::vector<Rat> top_values_of(const ValuationProfile& profile,
                               const OrdinalProfile& ordinal) {
  std::vector<Rat> top;
  top.reserve(profile.values.size());
  for (int i = 0; i < profile.n_agents(); ++i) {
    top.push_back(profile.values[static_cast<size_t>(i)][static_cast<size_t>(
        ordinal.rankings[static_cast<size_t>(i)].top())]);
  }
  return top;
}

bool prediction_accurate(const ValuationProfile& truth, const OrdinalProfile& ordinal,
                         const Prediction& prediction) {
  if (const auto* oc = std::get_if<OptimalCandidate>(&prediction)) {
    Rat best = 0;
    for (int x = 0; x < ordinal.n_alternatives(); ++x) {
      Rat sw = social_welfare(x, truth);
      if (sw > best) best = sw;
    }
    return social_welfare(oc->candidate, truth) == best;
  }
  if (const auto* full = std::get_if<ValuationProfile>(&prediction)) {
    return *full == truth;
  }
  if (const auto* top = std::get_if<TopValues>(&prediction)) {
    return top->values == top_values_of(truth, ordinal);
  }
  const auto& truncated = std::get<TruncatedProfile>(prediction);
  return truncated == truncate_profile(truth, ordinal, truncated.k);
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

void check_instance(const Instance& instance) {
  require(instance.ordinal.well_formed(), "instance: malformed ordinal profile");
  const int n = instance.n_agents();
  const int m = instance.n_alternatives();
  if (instance.flavor == Flavor::Matching) {
    require(n == m, "instance: matching flavor requires n_agents == n_items");
  }
  if (const auto* oc = std::get_if<OptimalCandidate>(&instance.prediction)) {
    require(oc->candidate >= 0 && oc->candidate < m,
            "instance: predicted candidate out of range");
  } else if (const auto* full = std::get_if<ValuationProfile>(&instance.prediction)) {
    require(validate(*full, instance.ordinal).empty(),
            "instance: predicted profile inconsistent with the ordinal profile");
  } else if (const auto* top = std::get_if<TopValues>(&instance.prediction)) {
    require(static_cast<int>(top->values.size()) == n,
            "instance: top-value prediction must cover every voter");
    for (const Rat& v : top->values) {
      require(v >= 0, "instance: negative top-value prediction");
    }
  } else {
    const auto& truncated = std::get<TruncatedProfile>(instance.prediction);
    require(validate_truncated(truncated, instance.ordinal).empty(),
            "instance: truncated prediction inconsistent with the ordinal profile");
  }
  if (instance.truth) {
    require(validate(*instance.truth, instance.ordinal).empty(),
            "instance: truth profile inconsistent with the ordinal profile");
  }
}

}  // namespace dlab
