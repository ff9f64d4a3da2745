#pragma once

#include <cstdint>

#include "dlab/types.hpp"

namespace dlab::sampling {

// SplitMix64: tiny, seedable, identical on every platform, so generated
// corpora and golden files are reproducible byte for byte.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound) without modulo bias.
  std::uint64_t below(std::uint64_t bound);

  // Uniform in [lo, hi], inclusive.
  int range(int lo, int hi) {
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

 private:
  std::uint64_t state_;
};

Ranking random_ranking(int size, Rng& rng);
OrdinalProfile random_ordinal(int n_agents, int n_alternatives, Rng& rng);

// Prefix lengths of a random extreme point, one per agent, each in [1, m].
std::vector<int> random_prefix_lengths(int n_agents, int n_alternatives, Rng& rng);
ValuationProfile random_vertex_profile(const OrdinalProfile& ordinal, Rng& rng);

// A generic valid unit-sum profile: integer grid values sorted along each
// agent's ranking and normalized exactly. Covers interior points, not just
// extreme ones.
ValuationProfile random_valid_profile(const OrdinalProfile& ordinal, Rng& rng,
                                      int grid = 12);

// Per-voter top values in the unit-sum feasible interval [1/m, 1].
std::vector<Rat> random_top_values(const OrdinalProfile& ordinal, Rng& rng,
                                   int denominator = 24);

// Arbitrary non-negative rational weights (not a valuation profile).
Matrix random_weight_matrix(int n, Rng& rng, int grid = 20);

Matching random_matching(int n, Rng& rng);

// Voting: vertex-profile truth with the accurate top-value prediction.
// Matching: vertex-profile truth with the accurate k-truncated prediction.
Instance random_instance(Flavor flavor, int n_agents, int n_alternatives, int k,
                         Rng& rng);

}  // namespace dlab::sampling
