#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "dlab/matching.hpp"
#include "dlab/voting.hpp"

namespace dlab::analysis {

// Extreme point of the per-agent ordered unit-sum polytope: agent i assigns
// 1/prefix_len[i] to her prefix_len[i] most-preferred alternatives.
struct VertexProfile {
  std::vector<int> prefix_len;
};

ValuationProfile expand(const VertexProfile& vertex, const OrdinalProfile& ordinal);

using Outcome = std::variant<int, Matching>;  // candidate or matching

struct DistortionReport {
  ExtRat ratio;
  ValuationProfile witness_truth;
  Outcome witness_best;
  Outcome mechanism_output;
};

// Default enumeration guards (about 10^7 vertex evaluations at most).
// Setting DISTORTION_LAB_SIZE_OVERRIDE to a non-zero value lifts them.
struct OracleLimits {
  int max_voting_agents = 8;
  int max_voting_alternatives = 6;
  int max_matching_agents = 6;
  bool lifted = false;
  static OracleLimits from_env();
};

// Exact worst-case welfare ratio sup_v max_z SW(z|v) / SW(outcome|v) over
// every unit-sum profile consistent with the ordinal profile. The maximum of
// a ratio of linear functions over the product polytope is attained at a
// product of per-agent extreme points, so enumerating VertexProfiles is
// exhaustive. A vertex with zero outcome welfare and positive optimum yields
// an infinite ratio with that vertex as witness.
DistortionReport worst_ratio(const OrdinalProfile& ordinal, const Outcome& outcome,
                             const OracleLimits& limits = OracleLimits::from_env());

enum class MechanismId { Plurality, Mech1, Mech2, MatchFull, Mech3 };

struct MechanismSpec {
  MechanismId id = MechanismId::Plurality;
  Rat lambda = Rat(1);       // Mech2
  std::optional<int> k;      // Mech3 with a full-profile prediction
};

const char* mechanism_name(MechanismId id);
std::optional<MechanismId> mechanism_from_name(std::string_view name);

// Rank-1 values extracted from any cardinal prediction (full profiles are
// down-projected); optimal-candidate predictions have none and are rejected.
std::vector<Rat> predicted_top_values(const Instance& instance);

// The truncated prediction a mech3 run would use, deriving one from a full
// profile when a k is supplied.
TruncatedProfile truncated_prediction(const Instance& instance,
                                      const MechanismSpec& mechanism);

// Runs a mechanism on the instance's ordinal profile and prediction.
// Full-profile predictions are down-projected to top values for the voting
// mechanisms. Throws std::invalid_argument on flavor or prediction mismatch.
Outcome run_mechanism(const Instance& instance, const MechanismSpec& mechanism);

// SW(optimum | truth) / SW(mechanism output | truth) with an accurate
// prediction; rejects instances whose truth does not match the prediction.
Rat consistency_of(const Instance& instance, const MechanismSpec& mechanism);

// Holds the instance's prediction fixed, runs the mechanism, and takes the
// worst ratio over every truth consistent with the ordinal profile.
DistortionReport robustness_of(const Instance& instance, const MechanismSpec& mechanism,
                               const OracleLimits& limits = OracleLimits::from_env());

Rat optimum_welfare(const Instance& instance, const ValuationProfile& truth);
Rat outcome_welfare(const Outcome& outcome, const ValuationProfile& truth);

// Adaptive adversary for the truncated-prediction matching lower bound: the
// truth is completed only after seeing the mechanism's matching.
class MatchingAdversary {
 public:
  virtual ~MatchingAdversary() = default;
  virtual ValuationProfile complete(const Matching& matching) const = 0;
  // The proof's alternative matching for that completion.
  virtual Matching reference_matching(const Matching& matching) const = 0;
};

struct GeneratedInstance {
  std::string family;
  Instance instance;
  std::vector<std::pair<std::string, ValuationProfile>> adversarial_truths;
  std::vector<std::pair<std::string, ExtRat>> expected;
  std::shared_ptr<const MatchingAdversary> adversary;  // matching_lb only

  const ValuationProfile& truth_named(const std::string& name) const;
  ExtRat expected_named(const std::string& name) const;
};

// Named voting instance where an optimal-candidate prediction cannot help:
// (m-1) groups of n/(m-1) voters, each ranking its own candidate first and
// the predicted optimum second.
GeneratedInstance gen_optcand_lb(int n, int m);

// Same ordinal structure with a full half/half predicted profile.
GeneratedInstance gen_fullval_lb(int n, int m);

// The consistency/robustness tradeoff instance: m = 2k+1 candidates, k
// groups of lambda*m voters and k groups of m^2 voters. lambda*m must be an
// integer so group sizes are whole.
GeneratedInstance gen_tradeoff_lb(int m, const Rat& lambda);

// Truncated-prediction matching lower bound with the adaptive adversary.
// Requires n even, k in [2, n/2].
GeneratedInstance gen_matching_lb(int n, int k);

// Cyclic-position construction for hybrid information: accurate geometric
// values on the first k ranks, predicted values below. Requires
// (m-1) | n, 2^k <= m and k + 2 <= m.
GeneratedInstance gen_hybrid_lb(int n, int m, int k);

struct SweepRow {
  Rat level;           // corruption weight in [0, 1]
  Outcome output;
  ExtRat eta;
  ExtRat rho;          // predicted rho of the winner (voting only, else 1)
  ExtRat realized;     // SW(optimum | truth) / SW(output | truth)
  ExtRat bound;        // voting: m * eta * rho; matching: min{(n/k+1) eta, n^2}
  bool bound_ok = false;
};

// Corrupts the accurate prediction toward a misleading one by convex
// combination at each level, runs the mechanism, and compares the realized
// ratio against the error-dependent bound. The instance must carry a truth.
std::vector<SweepRow> error_sweep(const Instance& base, const MechanismSpec& mechanism,
                                  std::span<const Rat> levels);

}  // namespace dlab::analysis
