#include "dlab/verify.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "dlab/assignment.hpp"
#include "dlab/sampling.hpp"

namespace dlab::verify {

namespace {

using analysis::GeneratedInstance;
using analysis::MechanismId;
using analysis::MechanismSpec;
using analysis::Outcome;
using sampling::Rng;

std::string rstr(const Rat& r) { return rat_to_string(r); }
std::string estr(const ExtRat& r) { return ext_to_string(r); }

// Enumerates every ordinal profile with n agents over m alternatives.
void for_each_ordinal(int n, int m, const std::function<void(const OrdinalProfile&)>& fn) {
  std::vector<Ranking> all;
  Ranking base;
  base.order.resize(static_cast<size_t>(m));
  std::iota(base.order.begin(), base.order.end(), 0);
  do {
    all.push_back(base);
  } while (std::next_permutation(base.order.begin(), base.order.end()));

  std::vector<size_t> pick(static_cast<size_t>(n), 0);
  while (true) {
    OrdinalProfile ordinal;
    for (size_t i : pick) ordinal.rankings.push_back(all[i]);
    fn(ordinal);
    int d = n - 1;
    while (d >= 0 && ++pick[static_cast<size_t>(d)] == all.size()) {
      pick[static_cast<size_t>(d)] = 0;
      --d;
    }
    if (d < 0) break;
  }
}

// Enumerates every vertex profile (prefix-length tuple) for the ordinal.
void for_each_vertex(int n, int m, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> prefix(static_cast<size_t>(n), 1);
  while (true) {
    fn(prefix);
    int d = n - 1;
    while (d >= 0 && ++prefix[static_cast<size_t>(d)] == m + 1) {
      prefix[static_cast<size_t>(d)] = 1;
      --d;
    }
    if (d < 0) break;
  }
}

// Independent of the assignment solver: maximum matching welfare by direct
// enumeration of all permutations.
Rat brute_force_matching_optimum(const Matrix& weights) {
  const int n = static_cast<int>(weights.size());
  std::vector<int> perm(static_cast<size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  Rat best = 0;
  bool first = true;
  do {
    Rat sw = 0;
    for (int i = 0; i < n; ++i) sw += weights[static_cast<size_t>(i)][static_cast<size_t>(perm[static_cast<size_t>(i)])];
    if (first || sw > best) {
      best = sw;
      first = false;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

Rat welfare_of(const Outcome& outcome, const ValuationProfile& truth) {
  return analysis::outcome_welfare(outcome, truth);
}

// ---------------------------------------------------------------------------

Report verify_lemma() {
  Report rep{"lemma"};
  Rng rng(20240601);
  const int trials = 20000;
  Rat worst_i = 0, worst_ii = 0, worst_iii_low = 0;
  bool all_chain = true;
  for (int t = 0; t < trials; ++t) {
    const int n = rng.range(1, 8);
    const int m = rng.range(2, 6);
    OrdinalProfile ordinal = sampling::random_ordinal(n, m, rng);
    ValuationProfile profile = sampling::random_valid_profile(ordinal, rng);
    voting::Tally tally = voting::tally(ordinal, top_values_of(profile, ordinal));
    Rat max_sw1 = tally.sw1[static_cast<size_t>(tally.max_sw1_candidate())];
    for (int x = 0; x < m; ++x) {
      Rat sw = social_welfare(x, profile);
      Rat sw1 = tally.sw1[static_cast<size_t>(x)];
      Rat plu(tally.plu[static_cast<size_t>(x)]);
      if (max_sw1 > 0) {
        Rat r = sw / (Rat(m) * max_sw1);
        if (r > worst_i) worst_i = r;
      }
      if (plu > 0 && sw1 / plu > worst_ii) worst_ii = sw1 / plu;
      if (sw1 > 0 && (plu / Rat(m)) / sw1 > worst_iii_low) worst_iii_low = (plu / Rat(m)) / sw1;
      all_chain = all_chain && sw1 <= sw;
    }
  }
  rep.check(worst_i <= 1, "max SW(x)/(m*max_y SW1(y)) = " + rstr(worst_i) + " <= 1/1 over " +
                              std::to_string(trials) + " random profiles");
  rep.check(worst_ii <= 1, "max SW1(x)/plu(x) = " + rstr(worst_ii) + " <= 1/1");
  rep.check(worst_iii_low <= 1, "max (plu(x)/m)/SW1(x) = " + rstr(worst_iii_low) + " <= 1/1");
  rep.check(all_chain, "SW1(x) <= SW(x) held on every sample");
  return rep;
}

struct BoundsStats {
  Rat max_consistency = 0;
  Rat max_consistency_allowed = 0;
  ExtRat max_robustness = Rat(0);
  Rat max_robustness_allowed = 0;
  bool lambda_one_matches_mech1 = true;
  long long checks = 0;
};

void voting_bounds_on(const OrdinalProfile& ordinal, const Rat& lambda, bool as_mech1,
                      BoundsStats& stats) {
  const int n = ordinal.n_agents();
  const int m = ordinal.n_alternatives();
  const Rat cons_cap = as_mech1 ? Rat(m) : lambda * m;
  const Rat rob_cap = as_mech1 ? std::min(Rat(n) * m, Rat(m) * m * m)
                               : Rat(m) * m * m / lambda;
  for_each_vertex(n, m, [&](const std::vector<int>& prefix) {
    ValuationProfile truth = analysis::expand(analysis::VertexProfile{prefix}, ordinal);
    std::vector<Rat> tops = top_values_of(truth, ordinal);

    // Accurate prediction: consistency.
    int winner = as_mech1 ? voting::mechanism1(ordinal, tops)
                          : voting::mechanism2(ordinal, tops, lambda).winner;
    if (!as_mech1) {
      stats.lambda_one_matches_mech1 =
          stats.lambda_one_matches_mech1 &&
          voting::mechanism2(ordinal, tops, Rat(1)).winner == voting::mechanism1(ordinal, tops);
    }
    Rat opt = 0;
    for (int x = 0; x < m; ++x) {
      Rat sw = social_welfare(x, truth);
      if (sw > opt) opt = sw;
    }
    Rat ratio = opt / social_welfare(winner, truth);
    if (ratio > stats.max_consistency) stats.max_consistency = ratio;
    if (cons_cap > stats.max_consistency_allowed) stats.max_consistency_allowed = cons_cap;

    // The same vertex values as a (generally wrong) prediction: robustness.
    int rob_winner = as_mech1 ? voting::mechanism1(ordinal, tops)
                              : voting::mechanism2(ordinal, tops, lambda).winner;
    analysis::DistortionReport report = analysis::worst_ratio(ordinal, rob_winner);
    if (report.ratio > stats.max_robustness) stats.max_robustness = report.ratio;
    if (rob_cap > stats.max_robustness_allowed) stats.max_robustness_allowed = rob_cap;
    stats.checks += 1;
  });
}

Report verify_voting_bounds(const std::string& id, bool mech2) {
  Report rep{id};
  std::vector<Rat> lambdas = mech2 ? std::vector<Rat>{Rat(1), Rat(3, 2), Rat(2)}
                                   : std::vector<Rat>{Rat(1)};
  for (const Rat& lambda : lambdas) {
    BoundsStats stats;
    for (int n = 1; n <= 3; ++n) {
      for (int m = 2; m <= 3; ++m) {
        if (!mech2) {
          for_each_ordinal(n, m, [&](const OrdinalProfile& o) {
            voting_bounds_on(o, Rat(1), true, stats);
          });
        } else {
          Rat lam = lambda > m ? Rat(m) : lambda;
          for_each_ordinal(n, m, [&](const OrdinalProfile& o) {
            voting_bounds_on(o, lam, false, stats);
          });
        }
      }
    }
    // Random larger instances on top of the exhaustive desk-scale sweep.
    Rng rng(mech2 ? 7701 : 7700);
    for (int t = 0; t < 120; ++t) {
      const int n = rng.range(2, 5);
      const int m = rng.range(2, 4);
      OrdinalProfile ordinal = sampling::random_ordinal(n, m, rng);
      Rat lam = lambda > m ? Rat(m) : lambda;
      voting_bounds_on(ordinal, lam, !mech2, stats);
    }
    std::string tag = mech2 ? " (lambda=" + rstr(lambda) + ")" : "";
    rep.check(stats.max_consistency <= stats.max_consistency_allowed,
              "max accurate-prediction ratio" + tag + " = " + rstr(stats.max_consistency) +
                  " within cap " + rstr(stats.max_consistency_allowed) + " over " +
                  std::to_string(stats.checks) + " runs");
    rep.check(stats.max_robustness <= ExtRat(stats.max_robustness_allowed),
              "max worst-case ratio" + tag + " = " + estr(stats.max_robustness) +
                  " within cap " + rstr(stats.max_robustness_allowed));
    if (mech2) {
      rep.check(stats.lambda_one_matches_mech1,
                "winner with lambda=1/1 equals the max-predicted-first-place winner" + tag);
    }
    if (!mech2) break;
  }
  return rep;
}

Report verify_optcand_lb() {
  Report rep{"optcand_lb"};
  for (auto [n, m] : {std::pair{4, 3}, std::pair{6, 4}}) {
    GeneratedInstance gen = analysis::gen_optcand_lb(n, m);
    const int o = m - 1;
    const ValuationProfile& heavy = gen.truth_named("top_heavy");
    const ValuationProfile& uni = gen.truth_named("uniform_group_1");
    bool valid = true;
    for (const auto& [name, truth] : gen.adversarial_truths) {
      (void)name;
      valid = valid && validate(truth, gen.instance.ordinal).empty();
    }
    std::string tag = " [n=" + std::to_string(n) + ",m=" + std::to_string(m) + "]";
    rep.check(valid, "every adversarial truth is a valid unit-sum profile" + tag);
    rep.check(ExtRat(social_welfare(o, heavy)) == gen.expected_named("top_heavy_sw_predicted"),
              "SW(predicted winner | top-heavy truth) = " + rstr(social_welfare(o, heavy)) + tag);
    rep.check(ExtRat(social_welfare(0, heavy)) == gen.expected_named("top_heavy_sw_group"),
              "SW(group candidate | top-heavy truth) = " + rstr(social_welfare(0, heavy)) + tag);
    Rat ratio = social_welfare(o, uni) / social_welfare(0, uni);
    rep.check(ExtRat(ratio) == gen.expected_named("uniform_ratio"),
              "uniform-truth ratio = " + rstr(ratio) + " (recomputed = stored)" + tag);
  }
  return rep;
}

Report verify_fullval_lb() {
  Report rep{"fullval_lb"};
  for (auto [n, m] : {std::pair{4, 3}, std::pair{8, 5}}) {
    GeneratedInstance gen = analysis::gen_fullval_lb(n, m);
    const auto& predicted = std::get<ValuationProfile>(gen.instance.prediction);
    const int o = m - 1;
    std::string tag = " [n=" + std::to_string(n) + ",m=" + std::to_string(m) + "]";
    rep.check(validate(predicted, gen.instance.ordinal).empty(),
              "predicted profile is a valid unit-sum profile" + tag);
    rep.check(ExtRat(social_welfare(o, predicted)) == gen.expected_named("predicted_sw_o"),
              "predicted SW(o) = " + rstr(social_welfare(o, predicted)) + tag);
    rep.check(ExtRat(social_welfare(0, predicted)) == gen.expected_named("predicted_sw_group"),
              "predicted SW(group candidate) = " + rstr(social_welfare(0, predicted)) + tag);
    const ValuationProfile& heavy = gen.truth_named("top_heavy");
    rep.check(social_welfare(o, heavy) == 0,
              "SW(o | top-heavy truth) = " + rstr(social_welfare(o, heavy)) + tag);
  }
  return rep;
}

Report verify_tradeoff_lb() {
  Report rep{"tradeoff_lb"};
  for (auto [m, lambda] : {std::pair{5, Rat(1)}, std::pair{5, Rat(2)}, std::pair{7, Rat(2)}}) {
    GeneratedInstance gen = analysis::gen_tradeoff_lb(m, lambda);
    const int k = (m - 1) / 2;
    const auto& predicted = std::get<ValuationProfile>(gen.instance.prediction);
    std::string tag = " [m=" + std::to_string(m) + ",lambda=" + rstr(lambda) + "]";

    rep.check(ExtRat(Rat(gen.instance.n_agents())) == gen.expected_named("n_voters"),
              "voter count = " + std::to_string(gen.instance.n_agents()) + tag);
    rep.check(validate(predicted, gen.instance.ordinal).empty(),
              "predicted profile is a valid unit-sum profile" + tag);

    Rat sw_a = social_welfare(0, predicted);
    rep.check(ExtRat(sw_a) == gen.expected_named("predicted_sw_a") &&
                  ExtRat(sw_a) >= gen.expected_named("predicted_sw_a_floor"),
              "predicted SW(a) = " + rstr(sw_a) + " >= " +
                  estr(gen.expected_named("predicted_sw_a_floor")) + tag);
    Rat sw_b = social_welfare(1, predicted);
    rep.check(ExtRat(sw_b) == gen.expected_named("predicted_sw_b") &&
                  ExtRat(sw_b) <= gen.expected_named("predicted_sw_b_cap"),
              "predicted SW(b) = " + rstr(sw_b) + " <= " +
                  estr(gen.expected_named("predicted_sw_b_cap")) + tag);
    Rat sw_c = social_welfare(k + 1, predicted);
    rep.check(ExtRat(sw_c) == gen.expected_named("predicted_sw_c") &&
                  ExtRat(sw_c) <= gen.expected_named("predicted_sw_c_cap"),
              "predicted SW(c) = " + rstr(sw_c) + " <= " +
                  estr(gen.expected_named("predicted_sw_c_cap")) + tag);

    const ValuationProfile& case2 = gen.truth_named("uniform_b_1");
    rep.check(validate(case2, gen.instance.ordinal).empty(),
              "case-2 truth is a valid unit-sum profile" + tag);
    Rat c2b = social_welfare(1, case2);
    Rat c2a = social_welfare(0, case2);
    rep.check(ExtRat(c2b) == gen.expected_named("case2_sw_b") &&
                  ExtRat(c2a) == gen.expected_named("case2_sw_a"),
              "case-2 SW(b) = " + rstr(c2b) + ", SW(a) = " + rstr(c2a) + tag);
    rep.check(ExtRat(c2a / c2b) >= gen.expected_named("case2_ratio_floor"),
              "case-2 ratio = " + rstr(c2a / c2b) + " >= m^3/(8*lambda) = " +
                  estr(gen.expected_named("case2_ratio_floor")) + tag);

    const ValuationProfile& case1 = gen.truth_named("top_heavy");
    rep.check(social_welfare(0, case1) == 0,
              "case-1 truth SW(a) = " + rstr(social_welfare(0, case1)) + tag);

    // With the accurate prediction, the max-predicted-first-place winner is
    // the first c-block candidate, so the consistency floor binds.
    std::vector<Rat> tops = top_values_of(predicted, gen.instance.ordinal);
    int w1 = voting::mechanism1(gen.instance.ordinal, tops);
    rep.check(w1 == k + 1, "max-predicted-first-place winner index = " + std::to_string(w1) + tag);
    Rat cons = sw_a / social_welfare(w1, predicted);
    rep.check(ExtRat(cons) == gen.expected_named("mech1_consistency_ratio") &&
                  ExtRat(cons) >= gen.expected_named("consistency_floor"),
              "its consistency ratio = " + rstr(cons) + " >= lambda*m/16 = " +
                  estr(gen.expected_named("consistency_floor")) + tag);
  }
  return rep;
}

Report verify_matching_solver() {
  Report rep{"matching_solver"};
  Rng rng(99);
  bool all_equal = true;
  bool fix_ok = true;
  int runs = 0;
  for (int n = 2; n <= 7; ++n) {
    for (int t = 0; t < 10; ++t) {
      Matrix w = sampling::random_weight_matrix(n, rng, 12);
      matching::MatchingResult res = matching::max_weight_matching(WeightMatrix{w, false});
      Rat brute = brute_force_matching_optimum(w);
      all_equal = all_equal && res.welfare == brute;

      OrdinalProfile ordinal = sampling::random_ordinal(n, n, rng);
      ValuationProfile vertex = sampling::random_vertex_profile(ordinal, rng);
      matching::MatchingResult opt = matching::max_weight_matching(to_weights(vertex));
      Matching fixed = matching::top_item_fix(opt.matching, ordinal, to_weights(vertex));
      fix_ok = fix_ok && social_welfare(fixed, vertex) == opt.welfare &&
               matching::lowest_top_matched(fixed, ordinal).has_value();
      runs += 1;
    }
  }
  rep.check(all_equal, "solver welfare equals permutation brute force on " +
                           std::to_string(runs) + " random matrices up to 7x7");
  rep.check(fix_ok, "top-item fix kept optimal welfare and produced a top-matched agent");
  return rep;
}

Report verify_matching_consistency() {
  Report rep{"matching_consistency"};
  Rng rng(4242);
  Rat worst_slack = 0;  // max ratio/(n/k+2)
  bool all_ok = true;
  int runs = 0;
  for (int t = 0; t < 200; ++t) {
    const int n = rng.range(2, 6);
    const int k = rng.range(1, n);
    Instance instance = sampling::random_instance(Flavor::Matching, n, n, k, rng);
    Rat ratio = analysis::consistency_of(instance, {MechanismId::Mech3, Rat(1), k});
    Rat cap = Rat(n, k) + 2;
    all_ok = all_ok && ratio <= cap;
    if (ratio / cap > worst_slack) worst_slack = ratio / cap;
    runs += 1;
  }
  rep.check(all_ok, "accurate-prediction ratio <= n/k + 2 on " + std::to_string(runs) +
                        " random instances (max ratio/cap = " + rstr(worst_slack) + ")");
  return rep;
}

Report verify_mech3_bounds() {
  Report rep{"mech3_bounds"};
  Rng rng(515151);
  ExtRat worst = Rat(0);
  bool bounded = true;
  bool floor_ok = true;
  int runs = 0;
  for (int t = 0; t < 60; ++t) {
    const int n = rng.range(2, 5);
    const int k = rng.range(1, n);
    OrdinalProfile ordinal = sampling::random_ordinal(n, n, rng);
    ValuationProfile truth = sampling::random_valid_profile(ordinal, rng);
    // A generally wrong prediction: the truncation of a fresh random profile.
    TruncatedProfile predicted =
        truncate_profile(sampling::random_valid_profile(ordinal, rng), ordinal, k);
    Instance instance{Flavor::Matching, ordinal, predicted, truth};
    analysis::DistortionReport report =
        analysis::robustness_of(instance, {MechanismId::Mech3, Rat(1), k});
    bounded = bounded && report.ratio <= ExtRat(Rat(n) * n);
    if (report.ratio > worst) worst = report.ratio;
    Matching output = std::get<Matching>(
        analysis::run_mechanism(instance, {MechanismId::Mech3, Rat(1), k}));
    floor_ok = floor_ok && social_welfare(output, truth) >= Rat(1, n);
    runs += 1;
  }
  rep.check(bounded, "worst-case ratio <= n^2 over " + std::to_string(runs) +
                         " random wrong predictions (max seen " + estr(worst) + ")");
  rep.check(floor_ok, "true welfare of the output >= 1/n on every run");
  return rep;
}

Report verify_matching_lb() {
  Report rep{"matching_lb"};
  const int n = 8, k = 2;
  GeneratedInstance gen = analysis::gen_matching_lb(n, k);
  MechanismSpec mech{MechanismId::Mech3, Rat(1), k};
  Matching mu = std::get<Matching>(analysis::run_mechanism(gen.instance, mech));
  ValuationProfile truth = gen.adversary->complete(mu);
  rep.check(validate(truth, gen.instance.ordinal).empty(),
            "adaptive truth is a valid unit-sum profile");
  rep.check(truncate_profile(truth, gen.instance.ordinal, k) ==
                std::get<TruncatedProfile>(gen.instance.prediction),
            "adaptive truth extends the truncated prediction");
  Rat mech_sw = social_welfare(mu, truth);
  rep.check(ExtRat(mech_sw) <= gen.expected_named("mechanism_sw_cap"),
            "mechanism welfare = " + rstr(mech_sw) + " <= " +
                estr(gen.expected_named("mechanism_sw_cap")));
  Matching ref = gen.adversary->reference_matching(mu);
  Rat ref_sw = social_welfare(ref, truth);
  rep.check(ExtRat(ref_sw) == gen.expected_named("reference_sw_full_pattern"),
            "reference matching welfare = " + rstr(ref_sw) + " (expected " +
                estr(gen.expected_named("reference_sw_full_pattern")) + ")");
  rep.check(ExtRat(ref_sw) >= gen.expected_named("reference_sw_floor"),
            "reference welfare >= (n+1)/(2(k+1)) = " +
                estr(gen.expected_named("reference_sw_floor")));

  Rng rng(808);
  bool random_ok = true;
  for (int t = 0; t < 25; ++t) {
    Matching random_mu = sampling::random_matching(n, rng);
    ValuationProfile adapted = gen.adversary->complete(random_mu);
    Matching adapted_ref = gen.adversary->reference_matching(random_mu);
    random_ok = random_ok && validate(adapted, gen.instance.ordinal).empty() &&
                ExtRat(social_welfare(random_mu, adapted)) <=
                    gen.expected_named("mechanism_sw_cap") &&
                ExtRat(social_welfare(adapted_ref, adapted)) >=
                    gen.expected_named("reference_sw_floor");
  }
  rep.check(random_ok, "cap and reference floor hold against 25 random matchings");
  return rep;
}

Report verify_hybrid_lb() {
  Report rep{"hybrid_lb"};
  GeneratedInstance gen = analysis::gen_hybrid_lb(8, 5, 2);
  const std::vector<std::vector<int>> table = {
      {0, 3, 2, 4, 1}, {1, 0, 3, 4, 2}, {2, 1, 0, 4, 3}, {3, 2, 1, 4, 0}};
  bool layout_ok = true;
  for (int g = 0; g < 4; ++g) {
    for (int i = 0; i < 2; ++i) {
      layout_ok = layout_ok &&
                  gen.instance.ordinal.rankings[static_cast<size_t>(2 * g + i)].order ==
                      table[static_cast<size_t>(g)];
    }
  }
  rep.check(layout_ok, "cyclic-position rankings match the fixed 8x5 layout");

  const auto& predicted = std::get<ValuationProfile>(gen.instance.prediction);
  rep.check(validate(predicted, gen.instance.ordinal).empty(),
            "predicted profile is a valid unit-sum profile");
  Rat sw_o = social_welfare(4, predicted);
  Rat sw_a = social_welfare(0, predicted);
  rep.check(ExtRat(sw_o) == gen.expected_named("predicted_sw_o") &&
                ExtRat(sw_a) == gen.expected_named("predicted_sw_a"),
            "predicted SW(o) = " + rstr(sw_o) + ", SW(a_j) = " + rstr(sw_a));
  rep.check(ExtRat(sw_o / sw_a) == gen.expected_named("predicted_ratio"),
            "predicted SW(o)/SW(a_j) = " + rstr(sw_o / sw_a));

  const ValuationProfile& truth = gen.truth_named("geometric_topk");
  rep.check(validate(truth, gen.instance.ordinal).empty(),
            "adversarial truth is a valid unit-sum profile");
  rep.check(social_welfare(4, truth) == 0,
            "adversarial SW(o) = " + rstr(social_welfare(4, truth)));
  analysis::DistortionReport report = analysis::worst_ratio(gen.instance.ordinal, Outcome{4});
  rep.check(report.ratio.is_infinite(),
            "worst-case ratio of choosing the distinguished candidate = " + estr(report.ratio));
  return rep;
}

Report verify_error_sweep(const std::string& id, Flavor flavor) {
  Report rep{id};
  Rng rng(flavor == Flavor::Voting ? 31337 : 31338);
  const std::vector<Rat> levels = {Rat(0), Rat(1, 4), Rat(1, 2), Rat(3, 4), Rat(1)};
  bool bounds_ok = true;
  bool level0_eta = true;
  int rows = 0;
  for (int t = 0; t < 30; ++t) {
    Instance instance;
    MechanismSpec mech;
    if (flavor == Flavor::Voting) {
      const int n = rng.range(2, 6);
      const int m = rng.range(2, 5);
      OrdinalProfile ordinal = sampling::random_ordinal(n, m, rng);
      ValuationProfile truth = sampling::random_valid_profile(ordinal, rng);
      instance = Instance{Flavor::Voting, ordinal,
                          TopValues{top_values_of(truth, ordinal)}, truth};
      mech = {MechanismId::Mech2, Rat(1 + t % 2), {}};
    } else {
      const int n = rng.range(2, 6);
      const int k = rng.range(1, n);
      OrdinalProfile ordinal = sampling::random_ordinal(n, n, rng);
      ValuationProfile truth = sampling::random_valid_profile(ordinal, rng);
      instance = Instance{Flavor::Matching, ordinal,
                          truncate_profile(truth, ordinal, k), truth};
      mech = {MechanismId::Mech3, Rat(1), k};
    }
    for (const analysis::SweepRow& row : analysis::error_sweep(instance, mech, levels)) {
      bounds_ok = bounds_ok && row.bound_ok;
      if (row.level == 0) level0_eta = level0_eta && row.eta == ExtRat(Rat(1));
      rows += 1;
    }
  }
  rep.check(bounds_ok, "realized ratio within the error-dependent bound on " +
                           std::to_string(rows) + " sweep rows");
  rep.check(level0_eta, "zero corruption gives prediction error 1/1 on every instance");
  return rep;
}

Report verify_oracle_soundness() {
  Report rep{"oracle_soundness"};
  Rng rng(2718);
  bool sound = true;
  int samples = 0;
  for (int t = 0; t < 8; ++t) {
    const bool voting = t % 2 == 0;
    if (voting) {
      const int n = rng.range(2, 5);
      const int m = rng.range(2, 4);
      OrdinalProfile ordinal = sampling::random_ordinal(n, m, rng);
      std::vector<Rat> pred = sampling::random_top_values(ordinal, rng);
      Outcome outcome{voting::mechanism1(ordinal, pred)};
      analysis::DistortionReport report = analysis::worst_ratio(ordinal, outcome);
      for (int s = 0; s < 2000; ++s) {
        ValuationProfile v = sampling::random_valid_profile(ordinal, rng);
        Rat num = 0;
        for (int x = 0; x < m; ++x) {
          Rat sw = social_welfare(x, v);
          if (sw > num) num = sw;
        }
        Rat den = social_welfare(std::get<int>(outcome), v);
        ExtRat ratio = den == 0 ? ExtRat::infinity() : ExtRat(num / den);
        sound = sound && ratio <= report.ratio;
        samples += 1;
      }
    } else {
      const int n = rng.range(2, 4);
      OrdinalProfile ordinal = sampling::random_ordinal(n, n, rng);
      const int k = rng.range(1, n);
      TruncatedProfile pred =
          truncate_profile(sampling::random_valid_profile(ordinal, rng), ordinal, k);
      Outcome outcome{matching::mechanism3(ordinal, pred).matching};
      analysis::DistortionReport report = analysis::worst_ratio(ordinal, outcome);
      for (int s = 0; s < 800; ++s) {
        ValuationProfile v = sampling::random_valid_profile(ordinal, rng);
        Rat num = matching::detail::assignment_max(v.values).first;
        Rat den = social_welfare(std::get<Matching>(outcome), v);
        ExtRat ratio = den == 0 ? ExtRat::infinity() : ExtRat(num / den);
        sound = sound && ratio <= report.ratio;
        samples += 1;
      }
    }
  }
  rep.check(sound, "no random interior profile beat the vertex maximum (" +
                       std::to_string(samples) + " samples)");
  return rep;
}

const std::map<std::string, Report (*)()>& registry() {
  static const std::map<std::string, Report (*)()> reg = {
      {"lemma", verify_lemma},
      {"mech1_bounds", [] { return verify_voting_bounds("mech1_bounds", false); }},
      {"mech2_bounds", [] { return verify_voting_bounds("mech2_bounds", true); }},
      {"optcand_lb", verify_optcand_lb},
      {"fullval_lb", verify_fullval_lb},
      {"tradeoff_lb", verify_tradeoff_lb},
      {"matching_solver", verify_matching_solver},
      {"matching_consistency", verify_matching_consistency},
      {"mech3_bounds", verify_mech3_bounds},
      {"matching_lb", verify_matching_lb},
      {"hybrid_lb", verify_hybrid_lb},
      {"error_voting", [] { return verify_error_sweep("error_voting", Flavor::Voting); }},
      {"error_matching", [] { return verify_error_sweep("error_matching", Flavor::Matching); }},
      {"oracle_soundness", verify_oracle_soundness},
  };
  return reg;
}

}  // namespace

std::vector<std::string> catalog() {
  std::vector<std::string> ids;
  for (const auto& [id, fn] : registry()) {
    (void)fn;
    ids.push_back(id);
  }
  return ids;
}

bool known(const std::string& id) { return registry().count(id) > 0; }

Report run(const std::string& id) {
  auto it = registry().find(id);
  if (it == registry().end()) {
    throw std::invalid_argument("unknown verification id '" + id + "'");
  }
  return it->second();
}

std::vector<Report> run_all() {
  std::vector<Report> reports;
  for (const auto& [id, fn] : registry()) {
    (void)id;
    reports.push_back(fn());
  }
  return reports;
}

}  // namespace dlab::verify
