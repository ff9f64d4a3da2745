#include <algorithm>
#include <stdexcept>

#include "dlab/analysis.hpp"

namespace dlab::analysis {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

// Completes a ranking prefix with the remaining alternatives in ascending
// index order, the deterministic stand-in for "arbitrary" orderings.
Ranking ranking_with_prefix(int m, std::vector<int> prefix) {
  std::vector<char> used(static_cast<size_t>(m), 0);
  for (int x : prefix) used[static_cast<size_t>(x)] = 1;
  for (int x = 0; x < m; ++x) {
    if (!used[static_cast<size_t>(x)]) prefix.push_back(x);
  }
  return Ranking{std::move(prefix)};
}

// Turns per-agent rank-space rows (value at rank position) into a profile in
// item space.
ValuationProfile profile_from_rank_rows(const OrdinalProfile& ordinal,
                                        const std::vector<Row>& rank_rows) {
  const int n = ordinal.n_agents();
  const int m = ordinal.n_alternatives();
  ValuationProfile out;
  out.values.assign(static_cast<size_t>(n), Row(static_cast<size_t>(m), Rat(0)));
  for (int i = 0; i < n; ++i) {
    const Ranking& rk = ordinal.rankings[static_cast<size_t>(i)];
    for (int pos = 0; pos < m; ++pos) {
      out.values[static_cast<size_t>(i)][static_cast<size_t>(rk.at(pos))] =
          rank_rows[static_cast<size_t>(i)][static_cast<size_t>(pos)];
    }
  }
  return out;
}

Row rank_row_top_heavy(int m) {
  Row row(static_cast<size_t>(m), Rat(0));
  row[0] = 1;
  return row;
}

Row rank_row_half_half(int m) {
  Row row(static_cast<size_t>(m), Rat(0));
  row[0] = Rat(1, 2);
  row[1] = Rat(1, 2);
  return row;
}

Row rank_row_uniform(int m) { return Row(static_cast<size_t>(m), Rat(1, m)); }

// Groups of n/(m-1) voters; group g ranks candidate g first and the
// distinguished candidate m-1 second.
OrdinalProfile grouped_ordinal(int n, int m) {
  OrdinalProfile ordinal;
  const int group = n / (m - 1);
  for (int g = 0; g < m - 1; ++g) {
    Ranking r = ranking_with_prefix(m, {g, m - 1});
    for (int i = 0; i < group; ++i) ordinal.rankings.push_back(r);
  }
  return ordinal;
}

}  // namespace

GeneratedInstance gen_optcand_lb(int n, int m) {
  require(m >= 2, "gen optcand_lb: need m >= 2");
  require(n >= 1 && n % (m - 1) == 0, "gen optcand_lb: (m-1) must divide n");
  const int group = n / (m - 1);

  GeneratedInstance gen;
  gen.family = "optcand_lb";
  gen.instance.flavor = Flavor::Voting;
  gen.instance.ordinal = grouped_ordinal(n, m);
  gen.instance.prediction = OptimalCandidate{m - 1};

  std::vector<Row> top_heavy(static_cast<size_t>(n), rank_row_top_heavy(m));
  gen.adversarial_truths.emplace_back(
      "top_heavy", profile_from_rank_rows(gen.instance.ordinal, top_heavy));

  for (int g = 0; g < m - 1; ++g) {
    std::vector<Row> rows;
    rows.reserve(static_cast<size_t>(n));
    for (int other = 0; other < m - 1; ++other) {
      const Row row = other == g ? rank_row_uniform(m) : rank_row_half_half(m);
      for (int i = 0; i < group; ++i) rows.push_back(row);
    }
    gen.adversarial_truths.emplace_back(
        "uniform_group_" + std::to_string(g + 1),
        profile_from_rank_rows(gen.instance.ordinal, rows));
  }

  const Rat sw_group_uniform = Rat(n, m * (m - 1));
  gen.expected = {
      {"top_heavy_sw_predicted", ExtRat(Rat(0))},
      {"top_heavy_sw_group", ExtRat(Rat(n, m - 1))},
      {"top_heavy_ratio", ExtRat::infinity()},
      {"uniform_sw_group", ExtRat(sw_group_uniform)},
      {"uniform_sw_predicted",
       ExtRat(sw_group_uniform + (Rat(n) - Rat(n, m - 1)) / 2)},
      {"uniform_ratio",
       ExtRat((sw_group_uniform + (Rat(n) - Rat(n, m - 1)) / 2) / sw_group_uniform)},
  };
  return gen;
}

GeneratedInstance gen_fullval_lb(int n, int m) {
  require(m >= 2, "gen fullval_lb: need m >= 2");
  require(n >= 1 && n % (m - 1) == 0, "gen fullval_lb: (m-1) must divide n");

  GeneratedInstance gen;
  gen.family = "fullval_lb";
  gen.instance.flavor = Flavor::Voting;
  gen.instance.ordinal = grouped_ordinal(n, m);

  std::vector<Row> predicted(static_cast<size_t>(n), rank_row_half_half(m));
  gen.instance.prediction = profile_from_rank_rows(gen.instance.ordinal, predicted);

  std::vector<Row> top_heavy(static_cast<size_t>(n), rank_row_top_heavy(m));
  gen.adversarial_truths.emplace_back(
      "top_heavy", profile_from_rank_rows(gen.instance.ordinal, top_heavy));

  gen.expected = {
      {"predicted_sw_o", ExtRat(Rat(n, 2))},
      {"predicted_sw_group", ExtRat(Rat(n, 2 * (m - 1)))},
      {"predicted_ratio", ExtRat(Rat(m - 1))},
      {"top_heavy_sw_o", ExtRat(Rat(0))},
      {"top_heavy_ratio", ExtRat::infinity()},
  };
  return gen;
}

GeneratedInstance gen_tradeoff_lb(int m, const Rat& lambda) {
  require(m >= 5 && m % 2 == 1, "gen tradeoff_lb: m must be odd and at least 5");
  require(lambda >= 1 && lambda <= m, "gen tradeoff_lb: lambda must lie in [1, m]");
  const Rat group_b_exact = lambda * m;
  require(denominator(group_b_exact) == 1,
          "gen tradeoff_lb: lambda*m must be an integer (whole voter groups)");
  const int k = (m - 1) / 2;
  const int group_b = static_cast<int>(numerator(group_b_exact));
  const int group_c = m * m;
  const int n = k * (group_b + group_c);

  // Candidate indices: 0 is the predicted favorite, 1..k the b-block,
  // k+1..2k the c-block.
  const auto b_cand = [](int ell) { return ell; };
  const auto c_cand = [k](int ell) { return k + ell; };

  GeneratedInstance gen;
  gen.family = "tradeoff_lb";
  gen.instance.flavor = Flavor::Voting;

  OrdinalProfile ordinal;
  std::vector<Row> predicted_rows;
  for (int ell = 1; ell <= k; ++ell) {
    std::vector<int> prefix = {b_cand(ell), 0};
    for (int j = 1; j <= k; ++j) prefix.push_back(c_cand(j));
    Ranking r = ranking_with_prefix(m, std::move(prefix));
    Row row(static_cast<size_t>(m), Rat(0));
    row[0] = Rat(1, 2);
    row[1] = Rat(1, 2);
    for (int i = 0; i < group_b; ++i) {
      ordinal.rankings.push_back(r);
      predicted_rows.push_back(row);
    }
  }
  for (int ell = 1; ell <= k; ++ell) {
    std::vector<int> prefix = {c_cand(ell), 0};
    for (int j = 1; j <= k; ++j) prefix.push_back(b_cand(j));
    Ranking r = ranking_with_prefix(m, std::move(prefix));
    Row row(static_cast<size_t>(m), Rat(0));
    for (int pos = 0; pos < k + 2; ++pos) row[static_cast<size_t>(pos)] = Rat(1, k + 2);
    for (int i = 0; i < group_c; ++i) {
      ordinal.rankings.push_back(r);
      predicted_rows.push_back(row);
    }
  }
  gen.instance.ordinal = std::move(ordinal);
  gen.instance.prediction = profile_from_rank_rows(gen.instance.ordinal, predicted_rows);

  std::vector<Row> top_heavy(static_cast<size_t>(n), rank_row_top_heavy(m));
  gen.adversarial_truths.emplace_back(
      "top_heavy", profile_from_rank_rows(gen.instance.ordinal, top_heavy));

  for (int ell = 1; ell <= k; ++ell) {
    std::vector<Row> rows;
    rows.reserve(static_cast<size_t>(n));
    for (int other = 1; other <= k; ++other) {
      const Row row = other == ell ? rank_row_uniform(m) : rank_row_half_half(m);
      for (int i = 0; i < group_b; ++i) rows.push_back(row);
    }
    const Row half = rank_row_half_half(m);
    for (int i = 0; i < k * group_c; ++i) rows.push_back(half);
    gen.adversarial_truths.emplace_back(
        "uniform_b_" + std::to_string(ell),
        profile_from_rank_rows(gen.instance.ordinal, rows));
  }

  const Rat pred_sw_a = Rat(k) * group_b / 2 + Rat(k * group_c, k + 2);
  const Rat pred_sw_c = Rat(group_c, k + 2);
  const Rat case2_sw_a = lambda + Rat(group_b * (k - 1), 2) + Rat(k * group_c, 2);
  gen.expected = {
      {"n_voters", ExtRat(Rat(n))},
      {"predicted_sw_a", ExtRat(pred_sw_a)},
      {"predicted_sw_a_floor", ExtRat(lambda * m * m / 8)},
      {"predicted_sw_b", ExtRat(Rat(group_b, 2) + Rat(k * group_c, k + 2))},
      {"predicted_sw_b_cap", ExtRat(Rat(2 * m * m))},
      {"predicted_sw_c", ExtRat(pred_sw_c)},
      {"predicted_sw_c_cap", ExtRat(Rat(4 * m))},
      {"case1_sw_winner", ExtRat(Rat(0))},
      {"case1_ratio", ExtRat::infinity()},
      {"case2_sw_b", ExtRat(lambda)},
      {"case2_sw_a", ExtRat(case2_sw_a)},
      {"case2_ratio", ExtRat(case2_sw_a / lambda)},
      {"case2_ratio_floor", ExtRat(Rat(m) * m * m / (8 * lambda))},
      {"mech1_consistency_ratio", ExtRat(pred_sw_a / pred_sw_c)},
      {"consistency_floor", ExtRat(lambda * m / 16)},
  };
  return gen;
}

namespace {

// Item layout for the truncated-prediction matching bound. The pair-shared
// items sit at even indices so the canonical solver output matches each of
// them inside its own pair; the commonly top-ranked items sit at the tail.
struct MatchingLbLayout {
  int n, k;
  int shared_item(int pair) const { return 2 * pair; }
  int filler_item(int j) const { return 2 * j + 1; }          // j < n/2 - k
  int common_item(int j) const { return n - 2 * k + 1 + 2 * j; }  // j < k
  int covered_pairs() const { return (n - k) / 2; }
};

class MatchingLbAdversary final : public MatchingAdversary {
 public:
  MatchingLbAdversary(MatchingLbLayout layout, OrdinalProfile ordinal)
      : layout_(layout), ordinal_(std::move(ordinal)) {}

  // Spread rows give every post-prefix position 1/((n-k)(k+1)); concentrated
  // rows put 1/(k+1) on the pair's shared item and zero beyond.
  ValuationProfile complete(const Matching& matching) const override {
    const int n = layout_.n;
    std::vector<int> agent_of = matching.agent_of();
    std::vector<Row> rows(static_cast<size_t>(n));
    for (int pair = 0; pair < n / 2; ++pair) {
      const int first = 2 * pair;
      const int holder = agent_of[static_cast<size_t>(layout_.shared_item(pair))];
      const bool first_spread = holder == first;
      const bool second_spread = holder == first + 1;
      rows[static_cast<size_t>(first)] = rank_row(first_spread);
      rows[static_cast<size_t>(first + 1)] = rank_row(second_spread);
    }
    return profile_from_rank_rows(ordinal_, rows);
  }

  Matching reference_matching(const Matching& matching) const override {
    const int n = layout_.n;
    const int k = layout_.k;
    std::vector<int> agent_of = matching.agent_of();
    Matching ref;
    ref.item_of.assign(static_cast<size_t>(n), -1);
    std::vector<char> item_used(static_cast<size_t>(n), 0);
    std::vector<char> agent_done(static_cast<size_t>(n), 0);

    const auto assign = [&](int agent, int item) {
      ref.item_of[static_cast<size_t>(agent)] = item;
      item_used[static_cast<size_t>(item)] = 1;
      agent_done[static_cast<size_t>(agent)] = 1;
    };

    // Shared items of covered pairs go to a pair member valuing them at
    // 1/(k+1): the one the adversary did not spread.
    for (int pair = 0; pair < layout_.covered_pairs(); ++pair) {
      const int item = layout_.shared_item(pair);
      const int first = 2 * pair;
      assign(agent_of[static_cast<size_t>(item)] == first ? first + 1 : first, item);
    }
    // The commonly top-ranked items go to the last k agents.
    for (int j = 0; j < k; ++j) assign(n - k + j, layout_.common_item(j));
    // Everyone left takes the leftovers in ascending order; for spread
    // agents any such item is worth 1/((n-k)(k+1)), for the rest 0.
    int next_item = 0;
    for (int agent = 0; agent < n; ++agent) {
      if (agent_done[static_cast<size_t>(agent)]) continue;
      while (item_used[static_cast<size_t>(next_item)]) ++next_item;
      assign(agent, next_item);
    }
    return ref;
  }

 private:
  Row rank_row(bool spread) const {
    const int n = layout_.n;
    const int k = layout_.k;
    Row row(static_cast<size_t>(n), Rat(0));
    for (int pos = 0; pos < k; ++pos) row[static_cast<size_t>(pos)] = Rat(1, k + 1);
    if (spread) {
      for (int pos = k; pos < n; ++pos) {
        row[static_cast<size_t>(pos)] = Rat(1, (n - k) * (k + 1));
      }
    } else {
      row[static_cast<size_t>(k)] = Rat(1, k + 1);
    }
    return row;
  }

  MatchingLbLayout layout_;
  OrdinalProfile ordinal_;
};

}  // namespace

GeneratedInstance gen_matching_lb(int n, int k) {
  require(n >= 4 && n % 2 == 0, "gen matching_lb: n must be even and at least 4");
  require(k >= 2 && 2 * k <= n,
          "gen matching_lb: k must lie in [2, n/2] (the reference matching needs k >= 2)");
  const MatchingLbLayout layout{n, k};

  OrdinalProfile ordinal;
  for (int pair = 0; pair < n / 2; ++pair) {
    std::vector<int> prefix;
    for (int j = 0; j < k; ++j) prefix.push_back(layout.common_item(j));
    prefix.push_back(layout.shared_item(pair));
    Ranking r = ranking_with_prefix(n, std::move(prefix));
    ordinal.rankings.push_back(r);
    ordinal.rankings.push_back(r);
  }

  GeneratedInstance gen;
  gen.family = "matching_lb";
  gen.instance.flavor = Flavor::Matching;
  gen.instance.ordinal = ordinal;
  TruncatedProfile predicted;
  predicted.k = k;
  predicted.values.assign(static_cast<size_t>(n), Row(static_cast<size_t>(k), Rat(1, k + 1)));
  gen.instance.prediction = std::move(predicted);
  gen.adversary = std::make_shared<MatchingLbAdversary>(layout, std::move(ordinal));

  const int covered = layout.covered_pairs();
  gen.expected = {
      {"prediction_row_value", ExtRat(Rat(1, k + 1))},
      {"mechanism_sw_cap", ExtRat(Rat(1))},
      {"reference_sw_floor", ExtRat(Rat(n + 1, 2 * (k + 1)))},
      {"reference_sw_full_pattern",
       ExtRat(Rat(k, k + 1) + Rat(covered, k + 1) + Rat(covered, (n - k) * (k + 1)))},
  };
  return gen;
}

GeneratedInstance gen_hybrid_lb(int n, int m, int k) {
  require(m >= 3, "gen hybrid_lb: need m >= 3");
  require(n >= 1 && n % (m - 1) == 0, "gen hybrid_lb: (m-1) must divide n");
  require(k >= 1, "gen hybrid_lb: need k >= 1");
  require((1LL << k) <= m, "gen hybrid_lb: need 2^k <= m");
  require(k + 2 <= m, "gen hybrid_lb: need k + 2 <= m (distinguished candidate rank)");
  const int group = n / (m - 1);
  const int mm = m - 1;

  OrdinalProfile ordinal;
  for (int j = 1; j <= mm; ++j) {
    std::vector<int> prefix;
    for (int ell = 1; ell <= k + 1; ++ell) {
      const int idx = ((j - ell) % mm + mm) % mm;  // candidate ranked at position ell
      prefix.push_back(idx);
    }
    prefix.push_back(m - 1);
    Ranking r = ranking_with_prefix(m, std::move(prefix));
    for (int i = 0; i < group; ++i) ordinal.rankings.push_back(r);
  }

  Row predicted_rank_row(static_cast<size_t>(m), Rat(0));
  for (int ell = 1; ell <= k; ++ell) {
    predicted_rank_row[static_cast<size_t>(ell - 1)] = Rat(1, 1LL << ell);
  }
  predicted_rank_row[static_cast<size_t>(k)] = Rat(1, 1LL << (k + 1));
  predicted_rank_row[static_cast<size_t>(k + 1)] = Rat(1, 1LL << (k + 1));

  Row truth_rank_row(static_cast<size_t>(m), Rat(0));
  for (int ell = 1; ell < k; ++ell) {
    truth_rank_row[static_cast<size_t>(ell - 1)] = Rat(1, 1LL << ell);
  }
  truth_rank_row[static_cast<size_t>(k - 1)] = Rat(1, 1LL << (k - 1));

  GeneratedInstance gen;
  gen.family = "hybrid_lb";
  gen.instance.flavor = Flavor::Voting;
  gen.instance.ordinal = ordinal;
  gen.instance.prediction = profile_from_rank_rows(
      ordinal, std::vector<Row>(static_cast<size_t>(n), predicted_rank_row));
  gen.adversarial_truths.emplace_back(
      "geometric_topk",
      profile_from_rank_rows(ordinal, std::vector<Row>(static_cast<size_t>(n), truth_rank_row)));

  const Rat pow = Rat(1LL << (k + 1));
  gen.expected = {
      {"predicted_sw_o", ExtRat(Rat(n) / pow)},
      {"predicted_sw_a", ExtRat(Rat(n, mm) * (1 - 1 / pow))},
      {"predicted_ratio", ExtRat(Rat(mm) / (pow - 1))},
      {"adversarial_sw_o", ExtRat(Rat(0))},
      {"adversarial_sw_a", ExtRat(Rat(n, mm))},
      {"adversarial_ratio", ExtRat::infinity()},
  };
  return gen;
}

}  // namespace dlab::analysis
