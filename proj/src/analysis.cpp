#include "dlab/analysis.hpp"

#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "dlab/assignment.hpp"

namespace dlab::analysis {

ValuationProfile expand(const VertexProfile& vertex, const OrdinalProfile& ordinal) {
  const int n = ordinal.n_agents();
  const int m = ordinal.n_alternatives();
  if (static_cast<int>(vertex.prefix_len.size()) != n) {
    throw std::invalid_argument("expand: one prefix length per agent required");
  }
  ValuationProfile out;
  out.values.assign(static_cast<size_t>(n), Row(static_cast<size_t>(m), Rat(0)));
  for (int i = 0; i < n; ++i) {
    const int p = vertex.prefix_len[static_cast<size_t>(i)];
    if (p < 1 || p > m) throw std::invalid_argument("expand: prefix length out of range");
    for (int pos = 0; pos < p; ++pos) {
      out.values[static_cast<size_t>(i)]
                [static_cast<size_t>(ordinal.rankings[static_cast<size_t>(i)].at(pos))] =
          Rat(1, p);
    }
  }
  return out;
}

OracleLimits OracleLimits::from_env() {
  OracleLimits limits;
  if (const char* raw = std::getenv("DISTORTION_LAB_SIZE_OVERRIDE")) {
    std::string value(raw);
    if (!value.empty() && value != "0") limits.lifted = true;
  }
  return limits;
}

namespace {

using I64 = long long;
using I128 = __int128;

long long lcm_up_to(int m) {
  long long l = 1;
  for (int i = 2; i <= m; ++i) l = std::lcm(l, static_cast<long long>(i));
  return l;
}

// Exact fraction comparison; a zero denominator stands for +infinity.
bool fraction_greater(I64 a_num, I64 a_den, I64 b_num, I64 b_den) {
  if (a_den == 0) return b_den != 0;
  if (b_den == 0) return false;
  return static_cast<I128>(a_num) * b_den > static_cast<I128>(b_num) * a_den;
}

struct SearchBest {
  bool set = false;
  I64 num = 0;
  I64 den = 1;  // 0 encodes an infinite ratio
  std::vector<int> prefix;
  int best_candidate = -1;  // voting only
};

void consider(SearchBest& best, I64 num, I64 den, const std::vector<int>& prefix,
              int best_candidate) {
  if (!best.set || fraction_greater(num, den, best.num, best.den)) {
    best.set = true;
    best.num = num;
    best.den = den;
    best.prefix = prefix;
    best.best_candidate = best_candidate;
  }
}

struct VotingSearch {
  const OrdinalProfile& ordinal;
  int winner;
  int n, m;
  I64 scale;

  SearchBest run_slice(int first_prefix) {
    SearchBest best;
    std::vector<I64> sw(static_cast<size_t>(m), 0);
    std::vector<int> prefix(static_cast<size_t>(n), 0);
    prefix[0] = first_prefix;
    add(0, first_prefix, sw, +1);
    descend(1, sw, prefix, best);
    add(0, first_prefix, sw, -1);
    return best;
  }

  void add(int agent, int p, std::vector<I64>& sw, int sign) const {
    const I64 share = sign * (scale / p);
    const Ranking& rk = ordinal.rankings[static_cast<size_t>(agent)];
    for (int pos = 0; pos < p; ++pos) sw[static_cast<size_t>(rk.at(pos))] += share;
  }

  void descend(int agent, std::vector<I64>& sw, std::vector<int>& prefix,
               SearchBest& best) const {
    if (best.set && best.den == 0) return;  // infinity cannot be beaten
    if (agent == n) {
      int arg = 0;
      for (int x = 1; x < m; ++x) {
        if (sw[static_cast<size_t>(x)] > sw[static_cast<size_t>(arg)]) arg = x;
      }
      consider(best, sw[static_cast<size_t>(arg)], sw[static_cast<size_t>(winner)], prefix, arg);
      return;
    }
    for (int p = 1; p <= m; ++p) {
      prefix[static_cast<size_t>(agent)] = p;
      add(agent, p, sw, +1);
      descend(agent + 1, sw, prefix, best);
      add(agent, p, sw, -1);
    }
  }
};

struct MatchingSearch {
  const OrdinalProfile& ordinal;
  const Matching& output;
  int n;
  I64 scale;
  std::vector<std::vector<int>> pos_of;  // agent -> item -> rank position

  SearchBest run_slice(int first_prefix) {
    SearchBest best;
    std::vector<int> prefix(static_cast<size_t>(n), 1);
    prefix[0] = first_prefix;
    descend(1, prefix, best);
    return best;
  }

  void descend(int agent, std::vector<int>& prefix, SearchBest& best) const {
    if (best.set && best.den == 0) return;
    if (agent == n) {
      evaluate(prefix, best);
      return;
    }
    for (int p = 1; p <= n; ++p) {
      prefix[static_cast<size_t>(agent)] = p;
      descend(agent + 1, prefix, best);
    }
  }

  void evaluate(const std::vector<int>& prefix, SearchBest& best) const {
    std::vector<std::vector<I64>> weights(static_cast<size_t>(n),
                                          std::vector<I64>(static_cast<size_t>(n), 0));
    I64 den = 0;
    for (int i = 0; i < n; ++i) {
      const int p = prefix[static_cast<size_t>(i)];
      const I64 share = scale / p;
      const Ranking& rk = ordinal.rankings[static_cast<size_t>(i)];
      for (int pos = 0; pos < p; ++pos) {
        weights[static_cast<size_t>(i)][static_cast<size_t>(rk.at(pos))] = share;
      }
      den += weights[static_cast<size_t>(i)]
                    [static_cast<size_t>(output.item_of[static_cast<size_t>(i)])];
    }
    const I64 num = matching::detail::assignment_max(weights).first;
    consider(best, num, den, prefix, -1);
  }
};

template <typename Search>
SearchBest sliced_search(Search& search, int slice_count, bool parallel) {
  std::vector<SearchBest> results(static_cast<size_t>(slice_count));
  if (!parallel) {
    for (int s = 0; s < slice_count; ++s) results[static_cast<size_t>(s)] = search.run_slice(s + 1);
  } else {
    std::vector<std::thread> workers;
    workers.reserve(static_cast<size_t>(slice_count));
    for (int s = 0; s < slice_count; ++s) {
      workers.emplace_back([&search, &results, s] {
        Search local = search;  // per-thread working state
        results[static_cast<size_t>(s)] = local.run_slice(s + 1);
      });
    }
    for (std::thread& w : workers) w.join();
  }
  // Deterministic reduction: slice order breaks exact ties, and an infinite
  // ratio in an earlier slice wins outright.
  SearchBest best;
  for (const SearchBest& r : results) {
    if (!r.set) continue;
    if (!best.set) {
      best = r;
    } else if (best.den != 0 && fraction_greater(r.num, r.den, best.num, best.den)) {
      best = r;
    }
  }
  return best;
}

}  // namespace

DistortionReport worst_ratio(const OrdinalProfile& ordinal, const Outcome& outcome,
                             const OracleLimits& limits) {
  if (!ordinal.well_formed()) throw std::invalid_argument("worst_ratio: malformed ordinal profile");
  const int n = ordinal.n_agents();
  const int m = ordinal.n_alternatives();
  const bool voting = std::holds_alternative<int>(outcome);

  double leaves = 1;
  for (int i = 0; i < n; ++i) leaves *= m;
  if (!limits.lifted) {
    if (voting && (n > limits.max_voting_agents || m > limits.max_voting_alternatives)) {
      throw std::invalid_argument(
          "worst_ratio: voting oracle limited to n <= " +
          std::to_string(limits.max_voting_agents) + ", m <= " +
          std::to_string(limits.max_voting_alternatives) +
          " (set DISTORTION_LAB_SIZE_OVERRIDE to lift)");
    }
    if (!voting && n > limits.max_matching_agents) {
      throw std::invalid_argument(
          "worst_ratio: matching oracle limited to n <= " +
          std::to_string(limits.max_matching_agents) +
          " (set DISTORTION_LAB_SIZE_OVERRIDE to lift)");
    }
  }

  const bool parallel = leaves >= 250000 && std::thread::hardware_concurrency() > 1;
  SearchBest best;
  if (voting) {
    const int winner = std::get<int>(outcome);
    if (winner < 0 || winner >= m) throw std::invalid_argument("worst_ratio: candidate out of range");
    VotingSearch search{ordinal, winner, n, m, lcm_up_to(m)};
    best = sliced_search(search, m, parallel);
  } else {
    const Matching& mu = std::get<Matching>(outcome);
    if (mu.size() != n || !mu.is_bijection() || n != m) {
      throw std::invalid_argument("worst_ratio: outcome is not a perfect matching");
    }
    MatchingSearch search{ordinal, mu, n, lcm_up_to(n), {}};
    search.pos_of.reserve(static_cast<size_t>(n));
    for (const Ranking& rk : ordinal.rankings) search.pos_of.push_back(rk.positions());
    best = sliced_search(search, n, parallel);
  }

  DistortionReport report;
  report.mechanism_output = outcome;
  report.witness_truth = expand(VertexProfile{best.prefix}, ordinal);
  report.ratio = best.den == 0 ? ExtRat::infinity() : ExtRat(Rat(best.num, best.den));
  if (voting) {
    report.witness_best = best.best_candidate;
  } else {
    // Canonical best matching at the witness vertex.
    report.witness_best =
        matching::max_weight_matching(to_weights(report.witness_truth)).matching;
  }
  return report;
}

const char* mechanism_name(MechanismId id) {
  switch (id) {
    case MechanismId::Plurality: return "plurality";
    case MechanismId::Mech1: return "mech1";
    case MechanismId::Mech2: return "mech2";
    case MechanismId::MatchFull: return "match_full";
    case MechanismId::Mech3: return "mech3";
  }
  return "?";
}

std::optional<MechanismId> mechanism_from_name(std::string_view name) {
  if (name == "plurality") return MechanismId::Plurality;
  if (name == "mech1") return MechanismId::Mech1;
  if (name == "mech2") return MechanismId::Mech2;
  if (name == "match_full") return MechanismId::MatchFull;
  if (name == "mech3") return MechanismId::Mech3;
  return std::nullopt;
}

std::vector<Rat> predicted_top_values(const Instance& instance) {
  if (const auto* top = std::get_if<TopValues>(&instance.prediction)) {
    return top->values;
  }
  if (const auto* full = std::get_if<ValuationProfile>(&instance.prediction)) {
    return top_values_of(*full, instance.ordinal);
  }
  if (const auto* truncated = std::get_if<TruncatedProfile>(&instance.prediction)) {
    std::vector<Rat> top;
    top.reserve(truncated->values.size());
    for (const Row& row : truncated->values) top.push_back(row[0]);
    return top;
  }
  throw std::invalid_argument(
      "an optimal-candidate prediction carries no cardinal values to run on");
}

TruncatedProfile truncated_prediction(const Instance& instance,
                                      const MechanismSpec& mechanism) {
  if (const auto* truncated = std::get_if<TruncatedProfile>(&instance.prediction)) {
    if (mechanism.k && *mechanism.k != truncated->k) {
      throw std::invalid_argument("mech3: requested k does not match the prediction's k");
    }
    return *truncated;
  }
  if (const auto* full = std::get_if<ValuationProfile>(&instance.prediction)) {
    const int k = mechanism.k.value_or(instance.n_alternatives());
    return truncate_profile(*full, instance.ordinal, k);
  }
  throw std::invalid_argument("mech3 needs a truncated (or full) profile prediction");
}

namespace {

void require_flavor(const Instance& instance, Flavor wanted, const MechanismSpec& m) {
  if (instance.flavor != wanted) {
    throw std::invalid_argument(std::string(mechanism_name(m.id)) +
                                ": instance flavor mismatch");
  }
}

}  // namespace

Outcome run_mechanism(const Instance& instance, const MechanismSpec& mechanism) {
  switch (mechanism.id) {
    case MechanismId::Plurality:
      require_flavor(instance, Flavor::Voting, mechanism);
      return voting::plurality_winner(instance.ordinal);
    case MechanismId::Mech1:
      require_flavor(instance, Flavor::Voting, mechanism);
      return voting::mechanism1(instance.ordinal, predicted_top_values(instance));
    case MechanismId::Mech2: {
      require_flavor(instance, Flavor::Voting, mechanism);
      return voting::mechanism2(instance.ordinal, predicted_top_values(instance),
                                mechanism.lambda)
          .winner;
    }
    case MechanismId::MatchFull: {
      require_flavor(instance, Flavor::Matching, mechanism);
      const auto* full = std::get_if<ValuationProfile>(&instance.prediction);
      if (!full) throw std::invalid_argument("match_full needs a full profile prediction");
      return matching::mechanism_full(instance.ordinal, *full).matching;
    }
    case MechanismId::Mech3: {
      require_flavor(instance, Flavor::Matching, mechanism);
      return matching::mechanism3(instance.ordinal, truncated_prediction(instance, mechanism))
          .matching;
    }
  }
  throw std::logic_error("run_mechanism: unknown mechanism");
}

Rat optimum_welfare(const Instance& instance, const ValuationProfile& truth) {
  if (instance.flavor == Flavor::Voting) {
    Rat best = 0;
    for (int x = 0; x < instance.n_alternatives(); ++x) {
      Rat sw = social_welfare(x, truth);
      if (sw > best) best = sw;
    }
    return best;
  }
  return matching::detail::assignment_max(truth.values).first;
}

Rat outcome_welfare(const Outcome& outcome, const ValuationProfile& truth) {
  if (const int* candidate = std::get_if<int>(&outcome)) {
    return social_welfare(*candidate, truth);
  }
  return social_welfare(std::get<Matching>(outcome), truth);
}

Rat consistency_of(const Instance& instance, const MechanismSpec& mechanism) {
  if (!instance.truth) {
    throw std::invalid_argument("consistency_of: instance carries no truth profile");
  }
  if (!prediction_accurate(*instance.truth, instance.ordinal, instance.prediction)) {
    throw std::invalid_argument("consistency_of: truth is not consistent with the prediction");
  }
  const Outcome output = run_mechanism(instance, mechanism);
  const Rat achieved = outcome_welfare(output, *instance.truth);
  if (achieved == 0) {
    throw std::invalid_argument("consistency_of: mechanism output has zero welfare");
  }
  return optimum_welfare(instance, *instance.truth) / achieved;
}

DistortionReport robustness_of(const Instance& instance, const MechanismSpec& mechanism,
                               const OracleLimits& limits) {
  return worst_ratio(instance.ordinal, run_mechanism(instance, mechanism), limits);
}

const ValuationProfile& GeneratedInstance::truth_named(const std::string& name) const {
  for (const auto& [key, profile] : adversarial_truths) {
    if (key == name) return profile;
  }
  throw std::invalid_argument("no adversarial truth named '" + name + "'");
}

ExtRat GeneratedInstance::expected_named(const std::string& name) const {
  for (const auto& [key, value] : expected) {
    if (key == name) return value;
  }
  throw std::invalid_argument("no expected quantity named '" + name + "'");
}

}  // namespace dlab::analysis
