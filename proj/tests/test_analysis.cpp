#include "dlab/analysis.hpp"

#include "doctest.h"

#include "dlab/sampling.hpp"
#include "oracles.hpp"

using dlab::ExtRat;
using dlab::Instance;
using dlab::Matching;
using dlab::OrdinalProfile;
using dlab::Ranking;
using dlab::Rat;
using dlab::Row;
using dlab::TruncatedProfile;
using dlab::ValuationProfile;
using namespace dlab::analysis;

namespace {

OrdinalProfile ordinal_of(std::vector<std::vector<int>> orders) {
  OrdinalProfile o;
  for (auto& ord : orders) o.rankings.push_back(Ranking{std::move(ord)});
  return o;
}

}  // namespace

TEST_CASE("vertex expansion gives prefix-uniform rows") {
  OrdinalProfile ordinal = ordinal_of({{2, 0, 1}});
  ValuationProfile v = expand(VertexProfile{{2}}, ordinal);
  CHECK(v.values[0] == Row{Rat(1, 2), Rat(0), Rat(1, 2)});
  CHECK(dlab::validate(v, ordinal).empty());
}

TEST_CASE("worst ratio on the two-voter opposed instance is exactly 3") {
  OrdinalProfile ordinal = ordinal_of({{0, 1}, {1, 0}});
  DistortionReport report = worst_ratio(ordinal, Outcome{0});
  CHECK(report.ratio == ExtRat(Rat(3)));
  CHECK(std::get<int>(report.witness_best) == 1);
  CHECK(report.witness_truth.values[0] == Row{Rat(1, 2), Rat(1, 2)});
  CHECK(report.witness_truth.values[1] == Row{Rat(0), Rat(1)});
  // The report fields reproduce the ratio.
  Rat num = dlab::social_welfare(std::get<int>(report.witness_best), report.witness_truth);
  Rat den = dlab::social_welfare(0, report.witness_truth);
  CHECK(ExtRat(num / den) == report.ratio);
}

TEST_CASE("a unanimous favourite has distortion 1") {
  OrdinalProfile ordinal = ordinal_of({{2, 0, 1}, {2, 1, 0}, {2, 0, 1}});
  DistortionReport report = worst_ratio(ordinal, Outcome{2});
  CHECK(report.ratio == ExtRat(Rat(1)));
}

TEST_CASE("a candidate nobody ranks first can be infinitely bad") {
  GeneratedInstance gen = gen_optcand_lb(4, 3);
  DistortionReport report = worst_ratio(gen.instance.ordinal, Outcome{2});
  CHECK(report.ratio.is_infinite());
  CHECK(dlab::social_welfare(2, report.witness_truth) == 0);
  CHECK(dlab::validate(report.witness_truth, gen.instance.ordinal).empty());
}

TEST_CASE("matching worst ratio agrees with a hand-rolled vertex enumeration") {
  dlab::sampling::Rng rng(161);
  for (int t = 0; t < 12; ++t) {
    const int n = rng.range(2, 4);
    OrdinalProfile ordinal = dlab::sampling::random_ordinal(n, n, rng);
    Matching mu = dlab::sampling::random_matching(n, rng);
    DistortionReport report = worst_ratio(ordinal, Outcome{mu});

    ExtRat best = Rat(0);
    testing_oracles::for_each_prefix_tuple(n, n, [&](const std::vector<int>& prefix) {
      ValuationProfile v = testing_oracles::vertex_profile(ordinal, prefix);
      Rat num = testing_oracles::brute_matching_optimum(v.values);
      Rat den = dlab::social_welfare(mu, v);
      ExtRat ratio = den == 0 ? ExtRat::infinity() : ExtRat(num / den);
      if (ratio > best) best = ratio;
    });
    CHECK(report.ratio == best);
  }
}

TEST_CASE("the oracle refuses oversized instances unless overridden") {
  OrdinalProfile big;
  for (int i = 0; i < 9; ++i) {
    Ranking r;
    for (int x = 0; x < 2; ++x) r.order.push_back(x);
    big.rankings.push_back(r);
  }
  OracleLimits limits;  // defaults, not lifted
  CHECK_THROWS_AS(worst_ratio(big, Outcome{0}, limits), std::invalid_argument);
  OracleLimits lifted = limits;
  lifted.lifted = true;
  CHECK_NOTHROW(worst_ratio(big, Outcome{0}, lifted));
}

TEST_CASE("consistency is 1 for the full-profile matching mechanism") {
  dlab::sampling::Rng rng(171);
  for (int t = 0; t < 25; ++t) {
    const int n = rng.range(1, 5);
    OrdinalProfile ordinal = dlab::sampling::random_ordinal(n, n, rng);
    ValuationProfile truth = dlab::sampling::random_valid_profile(ordinal, rng);
    Instance instance{dlab::Flavor::Matching, ordinal, truth, truth};
    CHECK(consistency_of(instance, {MechanismId::MatchFull, Rat(1), {}}) == Rat(1));
  }
}

TEST_CASE("consistency rejects truths that contradict the prediction") {
  OrdinalProfile ordinal = ordinal_of({{0, 1}, {0, 1}});
  ValuationProfile truth{{{Rat(1), Rat(0)}, {Rat(1), Rat(0)}}};
  Instance instance{dlab::Flavor::Voting, ordinal, dlab::TopValues{{Rat(1, 2), Rat(1)}},
                    truth};
  CHECK_THROWS_AS(consistency_of(instance, {MechanismId::Mech1, Rat(1), {}}),
                  std::invalid_argument);
}

TEST_CASE("single agent instances have consistency 1 for every mechanism") {
  OrdinalProfile ordinal = ordinal_of({{0}});
  ValuationProfile truth{{{Rat(1)}}};
  Instance voting{dlab::Flavor::Voting, ordinal, dlab::TopValues{{Rat(1)}}, truth};
  CHECK(consistency_of(voting, {MechanismId::Plurality, Rat(1), {}}) == Rat(1));
  CHECK(consistency_of(voting, {MechanismId::Mech1, Rat(1), {}}) == Rat(1));
  Instance match{dlab::Flavor::Matching, ordinal, truth, truth};
  CHECK(consistency_of(match, {MechanismId::MatchFull, Rat(1), {}}) == Rat(1));
}

TEST_CASE("robustness reports honour the documented caps on random instances") {
  dlab::sampling::Rng rng(181);
  for (int t = 0; t < 40; ++t) {
    const int n = rng.range(2, 4);
    const int m = rng.range(2, 4);
    OrdinalProfile ordinal = dlab::sampling::random_ordinal(n, m, rng);
    Instance instance{dlab::Flavor::Voting, ordinal,
                      dlab::TopValues{dlab::sampling::random_top_values(ordinal, rng)},
                      std::nullopt};
    DistortionReport r1 = robustness_of(instance, {MechanismId::Mech1, Rat(1), {}});
    CHECK(r1.ratio <= ExtRat(std::min(Rat(n) * m, Rat(m) * m * m)));
    DistortionReport r2 = robustness_of(instance, {MechanismId::Mech2, Rat(2), {}});
    if (m >= 2) CHECK(r2.ratio <= ExtRat(Rat(m) * m * m / 2));
  }
}

TEST_CASE("a mechanism pinned to a never-first candidate has infinite robustness") {
  OrdinalProfile ordinal = gen_optcand_lb(4, 3).instance.ordinal;
  DistortionReport report = worst_ratio(ordinal, Outcome{2});
  CHECK(report.ratio.is_infinite());
}

TEST_CASE("optimal-candidate construction matches its stored expectations") {
  GeneratedInstance gen = gen_optcand_lb(4, 3);
  CHECK(gen.instance.ordinal.rankings[0].order == std::vector<int>{0, 2, 1});
  CHECK(gen.instance.ordinal.rankings[2].order == std::vector<int>{1, 2, 0});

  const ValuationProfile& heavy = gen.truth_named("top_heavy");
  CHECK(dlab::social_welfare(2, heavy) == 0);
  CHECK(dlab::social_welfare(0, heavy) == Rat(2));

  const ValuationProfile& uniform = gen.truth_named("uniform_group_1");
  CHECK(dlab::social_welfare(0, uniform) == Rat(2, 3));
  CHECK(dlab::social_welfare(2, uniform) == Rat(5, 3));
  CHECK(gen.expected_named("uniform_ratio") == ExtRat(Rat(5, 2)));

  for (const auto& [name, truth] : gen.adversarial_truths) {
    (void)name;
    CHECK(dlab::validate(truth, gen.instance.ordinal).empty());
  }
  CHECK_THROWS_AS(gen_optcand_lb(5, 3), std::invalid_argument);
}

TEST_CASE("full-profile construction pins the predicted welfare gap") {
  GeneratedInstance gen = gen_fullval_lb(8, 5);
  const auto& predicted = std::get<ValuationProfile>(gen.instance.prediction);
  CHECK(dlab::social_welfare(4, predicted) == Rat(4));      // n/2
  CHECK(dlab::social_welfare(0, predicted) == Rat(1));      // n/(2(m-1))
  CHECK(gen.expected_named("predicted_ratio") == ExtRat(Rat(4)));
  CHECK(dlab::social_welfare(4, gen.truth_named("top_heavy")) == 0);
}

TEST_CASE("tradeoff construction at m=5 lambda=1 reproduces the derived numbers") {
  GeneratedInstance gen = gen_tradeoff_lb(5, Rat(1));
  CHECK(gen.instance.n_agents() == 60);
  CHECK(gen.expected_named("n_voters") == ExtRat(Rat(60)));
  CHECK(gen.expected_named("predicted_sw_a") == ExtRat(Rat(35, 2)));
  CHECK(gen.expected_named("predicted_sw_a_floor") == ExtRat(Rat(25, 8)));
  CHECK(gen.expected_named("case2_ratio_floor") == ExtRat(Rat(125, 8)));

  const ValuationProfile& case2 = gen.truth_named("uniform_b_1");
  CHECK(dlab::social_welfare(1, case2) == Rat(1));
  CHECK(dlab::social_welfare(0, case2) == Rat(57, 2));
  CHECK(ExtRat(Rat(57, 2)) >= gen.expected_named("case2_ratio_floor"));

  CHECK_THROWS_AS(gen_tradeoff_lb(4, Rat(1)), std::invalid_argument);
  CHECK_THROWS_AS(gen_tradeoff_lb(5, Rat(1, 3)), std::invalid_argument);
  CHECK_THROWS_AS(gen_tradeoff_lb(5, Rat(3, 2)), std::invalid_argument);  // 15/2 voters
}

TEST_CASE("matching construction: adversary pins the mechanism at welfare one") {
  GeneratedInstance gen = gen_matching_lb(8, 2);
  REQUIRE(gen.adversary);
  MechanismSpec mech{MechanismId::Mech3, Rat(1), 2};
  Matching mu = std::get<Matching>(run_mechanism(gen.instance, mech));
  ValuationProfile truth = gen.adversary->complete(mu);
  CHECK(dlab::validate(truth, gen.instance.ordinal).empty());
  CHECK(dlab::social_welfare(mu, truth) <= Rat(1));
  Matching ref = gen.adversary->reference_matching(mu);
  CHECK(ref.is_bijection());
  CHECK(dlab::social_welfare(ref, truth) == Rat(11, 6));
  CHECK(gen.expected_named("reference_sw_full_pattern") == ExtRat(Rat(11, 6)));
  CHECK(gen.expected_named("reference_sw_floor") == ExtRat(Rat(3, 2)));

  SUBCASE("parameter constraints") {
    CHECK_THROWS_AS(gen_matching_lb(7, 2), std::invalid_argument);
    CHECK_THROWS_AS(gen_matching_lb(8, 1), std::invalid_argument);
    CHECK_THROWS_AS(gen_matching_lb(8, 5), std::invalid_argument);
  }

  SUBCASE("adaptive truths stay valid for arbitrary matchings") {
    dlab::sampling::Rng rng(191);
    for (int t = 0; t < 20; ++t) {
      Matching random_mu = dlab::sampling::random_matching(8, rng);
      ValuationProfile adapted = gen.adversary->complete(random_mu);
      CHECK(dlab::validate(adapted, gen.instance.ordinal).empty());
      CHECK(dlab::social_welfare(random_mu, adapted) <= Rat(1));
      Matching r = gen.adversary->reference_matching(random_mu);
      CHECK(r.is_bijection());
      CHECK(ExtRat(dlab::social_welfare(r, adapted)) >=
            gen.expected_named("reference_sw_floor"));
    }
  }
}

TEST_CASE("hybrid construction reproduces the fixed 8x5 table") {
  GeneratedInstance gen = gen_hybrid_lb(8, 5, 2);
  const std::vector<std::vector<int>> table = {
      {0, 3, 2, 4, 1}, {1, 0, 3, 4, 2}, {2, 1, 0, 4, 3}, {3, 2, 1, 4, 0}};
  for (int g = 0; g < 4; ++g) {
    CHECK(gen.instance.ordinal.rankings[2 * g].order == table[g]);
    CHECK(gen.instance.ordinal.rankings[2 * g + 1].order == table[g]);
  }
  const auto& predicted = std::get<ValuationProfile>(gen.instance.prediction);
  CHECK(dlab::social_welfare(4, predicted) == Rat(1));
  CHECK(dlab::social_welfare(0, predicted) == Rat(7, 4));
  CHECK(gen.expected_named("predicted_ratio") == ExtRat(Rat(4, 7)));

  const ValuationProfile& truth = gen.truth_named("geometric_topk");
  CHECK(dlab::validate(truth, gen.instance.ordinal).empty());
  CHECK(truth.values[0][0] == Rat(1, 2));  // rank-1 value
  CHECK(truth.values[0][3] == Rat(1, 2));  // rank-2 value doubled to 1/2
  CHECK(dlab::social_welfare(4, truth) == 0);

  CHECK_THROWS_AS(gen_hybrid_lb(8, 5, 3), std::invalid_argument);  // 2^3 > 5
  CHECK_THROWS_AS(gen_hybrid_lb(7, 5, 2), std::invalid_argument);  // 4 does not divide 7
}

TEST_CASE("error sweep: zero corruption is consistent, bounds hold row-wise") {
  dlab::sampling::Rng rng(201);
  const std::vector<Rat> levels{Rat(0), Rat(1, 4), Rat(1, 2), Rat(3, 4), Rat(1)};

  SUBCASE("voting") {
    for (int t = 0; t < 10; ++t) {
      const int n = rng.range(2, 5);
      const int m = rng.range(2, 5);
      OrdinalProfile ordinal = dlab::sampling::random_ordinal(n, m, rng);
      ValuationProfile truth = dlab::sampling::random_valid_profile(ordinal, rng);
      Instance inst{dlab::Flavor::Voting, ordinal,
                    dlab::TopValues{dlab::top_values_of(truth, ordinal)}, truth};
      auto rows = error_sweep(inst, {MechanismId::Mech2, Rat(2), {}}, levels);
      REQUIRE(rows.size() == levels.size());
      CHECK(rows[0].eta == ExtRat(Rat(1)));
      for (const SweepRow& row : rows) CHECK(row.bound_ok);
    }
  }

  SUBCASE("matching") {
    for (int t = 0; t < 10; ++t) {
      const int n = rng.range(2, 5);
      const int k = rng.range(1, n);
      OrdinalProfile ordinal = dlab::sampling::random_ordinal(n, n, rng);
      ValuationProfile truth = dlab::sampling::random_valid_profile(ordinal, rng);
      Instance inst{dlab::Flavor::Matching, ordinal,
                    dlab::truncate_profile(truth, ordinal, k), truth};
      auto rows = error_sweep(inst, {MechanismId::Mech3, Rat(1), k}, levels);
      REQUIRE(rows.size() == levels.size());
      CHECK(rows[0].eta == ExtRat(Rat(1)));
      for (const SweepRow& row : rows) CHECK(row.bound_ok);
    }
  }

  SUBCASE("input validation") {
    OrdinalProfile ordinal = ordinal_of({{0, 1}, {1, 0}});
    ValuationProfile truth{{{Rat(1), Rat(0)}, {Rat(0), Rat(1)}}};
    Instance no_truth{dlab::Flavor::Voting, ordinal,
                      dlab::TopValues{{Rat(1), Rat(1)}}, std::nullopt};
    CHECK_THROWS_AS(error_sweep(no_truth, {MechanismId::Mech2, Rat(1), {}}, levels),
                    std::invalid_argument);
    Instance with_truth = no_truth;
    with_truth.truth = truth;
    const std::vector<Rat> bad_levels{Rat(3, 2)};
    CHECK_THROWS_AS(error_sweep(with_truth, {MechanismId::Mech2, Rat(1), {}}, bad_levels),
                    std::invalid_argument);
    CHECK_THROWS_AS(error_sweep(with_truth, {MechanismId::Mech2, Rat(1), {}},
                                std::vector<Rat>{}),
                    std::invalid_argument);
  }
}

TEST_CASE("distortion reports are self-consistent") {
  dlab::sampling::Rng rng(211);
  for (int t = 0; t < 20; ++t) {
    const int n = rng.range(2, 4);
    const int m = rng.range(2, 4);
    OrdinalProfile ordinal = dlab::sampling::random_ordinal(n, m, rng);
    const int outcome = static_cast<int>(rng.below(m));
    DistortionReport report = worst_ratio(ordinal, Outcome{outcome});
    Rat num = dlab::social_welfare(std::get<int>(report.witness_best), report.witness_truth);
    Rat den = dlab::social_welfare(outcome, report.witness_truth);
    if (report.ratio.is_infinite()) {
      CHECK(den == 0);
      CHECK(num > 0);
    } else {
      CHECK(ExtRat(num / den) == report.ratio);
    }
    CHECK(dlab::validate(report.witness_truth, ordinal).empty());
  }
}
