#include <stdexcept>

#include "dlab/analysis.hpp"

namespace dlab::analysis {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

ExtRat realized_ratio(const Instance& instance, const Outcome& output) {
  const Rat achieved = outcome_welfare(output, *instance.truth);
  const Rat best = optimum_welfare(instance, *instance.truth);
  if (achieved == 0) return best == 0 ? ExtRat(Rat(1)) : ExtRat::infinity();
  return ExtRat(best / achieved);
}

std::vector<SweepRow> sweep_voting(const Instance& base, const MechanismSpec& mechanism,
                                   std::span<const Rat> levels) {
  const int m = base.n_alternatives();
  const std::vector<Rat> true_top = top_values_of(*base.truth, base.ordinal);
  voting::Tally true_tally = voting::tally(base.ordinal, true_top);
  const int strongest = true_tally.max_sw1_candidate();

  // Misleading target: talk the true first-place leader down to the
  // unit-sum floor and everyone else up to the ceiling.
  std::vector<Rat> adversarial(true_top.size());
  for (size_t i = 0; i < true_top.size(); ++i) {
    const bool backs_strongest = base.ordinal.rankings[i].top() == strongest;
    adversarial[i] = backs_strongest ? Rat(1, m) : Rat(1);
  }

  const Rat lambda = mechanism.id == MechanismId::Mech1 ? Rat(1) : mechanism.lambda;
  std::vector<SweepRow> rows;
  for (const Rat& level : levels) {
    std::vector<Rat> predicted(true_top.size());
    for (size_t i = 0; i < true_top.size(); ++i) {
      predicted[i] = (1 - level) * true_top[i] + level * adversarial[i];
      // Clamp to the per-voter feasible interval; the combination already
      // lies inside it, so this is a guard, not a projection.
      if (predicted[i] < Rat(1, m)) predicted[i] = Rat(1, m);
      if (predicted[i] > 1) predicted[i] = Rat(1);
    }
    voting::Shortlist shortlist = voting::mechanism2(base.ordinal, predicted, lambda);
    voting::PredictionError err =
        voting::eta_voting(base.ordinal, shortlist, *base.truth, predicted);
    SweepRow row;
    row.level = level;
    row.output = shortlist.winner;
    row.eta = err.eta_shortlist;
    row.rho = ExtRat(err.rho_winner_predicted);
    row.realized = realized_ratio(base, row.output);
    row.bound = err.distortion_bound;
    row.bound_ok = row.realized <= row.bound;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<SweepRow> sweep_matching(const Instance& base, const MechanismSpec& mechanism,
                                     std::span<const Rat> levels) {
  const int n = base.n_agents();
  int k = n;
  if (mechanism.k) {
    k = *mechanism.k;
  } else if (const auto* truncated = std::get_if<TruncatedProfile>(&base.prediction)) {
    k = truncated->k;
  }
  const TruncatedProfile true_trunc = truncate_profile(*base.truth, base.ordinal, k);

  std::vector<SweepRow> rows;
  for (const Rat& level : levels) {
    TruncatedProfile predicted;
    predicted.k = k;
    predicted.values.reserve(static_cast<size_t>(n));
    for (const Row& truth_row : true_trunc.values) {
      Row row(static_cast<size_t>(k));
      for (int pos = 0; pos < k; ++pos) {
        // Flatten toward the uninformative uniform row 1/n.
        row[static_cast<size_t>(pos)] =
            (1 - level) * truth_row[static_cast<size_t>(pos)] + level * Rat(1, n);
      }
      // Clamp each entry to the neighboring-rank interval.
      for (int pos = 1; pos < k; ++pos) {
        if (row[static_cast<size_t>(pos)] > row[static_cast<size_t>(pos - 1)]) {
          row[static_cast<size_t>(pos)] = row[static_cast<size_t>(pos - 1)];
        }
      }
      predicted.values.push_back(std::move(row));
    }
    matching::MatchingPredictionError err =
        matching::eta_matching(base.ordinal, *base.truth, predicted);
    SweepRow row;
    row.level = level;
    row.output = err.pred_trunc_opt.matching;
    row.eta = err.eta;
    row.rho = ExtRat(Rat(1));
    row.realized = realized_ratio(base, row.output);
    row.bound = err.distortion_bound;
    row.bound_ok = row.realized <= row.bound;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::vector<SweepRow> error_sweep(const Instance& base, const MechanismSpec& mechanism,
                                  std::span<const Rat> levels) {
  require(base.truth.has_value(), "error_sweep: instance carries no truth profile");
  require(!levels.empty(), "error_sweep: empty corruption schedule");
  for (const Rat& level : levels) {
    require(level >= 0 && level <= 1,
            "error_sweep: corruption level outside [0, 1] would break ordinal consistency");
  }
  require(validate(*base.truth, base.ordinal).empty(),
          "error_sweep: truth inconsistent with the ordinal profile");

  if (base.flavor == Flavor::Voting) {
    require(mechanism.id == MechanismId::Mech1 || mechanism.id == MechanismId::Mech2,
            "error_sweep: voting sweeps drive mech1 or mech2");
    return sweep_voting(base, mechanism, levels);
  }
  require(mechanism.id == MechanismId::Mech3,
          "error_sweep: matching sweeps drive mech3");
  return sweep_matching(base, mechanism, levels);
}

}  // namespace dlab::analysis
