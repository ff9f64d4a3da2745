#include "dlab/sampling.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "dlab/core.hpp"

namespace dlab::sampling {

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Rng::below: zero bound");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t draw;
  do {
    draw = next();
  } while (draw >= limit);
  return draw % bound;
}

Ranking random_ranking(int size, Rng& rng) {
  Ranking r;
  r.order.resize(static_cast<size_t>(size));
  std::iota(r.order.begin(), r.order.end(), 0);
  for (int i = size - 1; i > 0; --i) {
    const int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1));
    std::swap(r.order[static_cast<size_t>(i)], r.order[static_cast<size_t>(j)]);
  }
  return r;
}

OrdinalProfile random_ordinal(int n_agents, int n_alternatives, Rng& rng) {
  OrdinalProfile ordinal;
  ordinal.rankings.reserve(static_cast<size_t>(n_agents));
  for (int i = 0; i < n_agents; ++i) {
    ordinal.rankings.push_back(random_ranking(n_alternatives, rng));
  }
  return ordinal;
}

std::vector<int> random_prefix_lengths(int n_agents, int n_alternatives, Rng& rng) {
  std::vector<int> prefix(static_cast<size_t>(n_agents));
  for (int& p : prefix) p = rng.range(1, n_alternatives);
  return prefix;
}

ValuationProfile random_vertex_profile(const OrdinalProfile& ordinal, Rng& rng) {
  const int n = ordinal.n_agents();
  const int m = ordinal.n_alternatives();
  ValuationProfile out;
  out.values.assign(static_cast<size_t>(n), Row(static_cast<size_t>(m), Rat(0)));
  for (int i = 0; i < n; ++i) {
    const int p = rng.range(1, m);
    for (int pos = 0; pos < p; ++pos) {
      out.values[static_cast<size_t>(i)]
                [static_cast<size_t>(ordinal.rankings[static_cast<size_t>(i)].at(pos))] =
          Rat(1, p);
    }
  }
  return out;
}

ValuationProfile random_valid_profile(const OrdinalProfile& ordinal, Rng& rng, int grid) {
  const int n = ordinal.n_agents();
  const int m = ordinal.n_alternatives();
  ValuationProfile out;
  out.values.assign(static_cast<size_t>(n), Row(static_cast<size_t>(m), Rat(0)));
  std::vector<long long> draws(static_cast<size_t>(m));
  for (int i = 0; i < n; ++i) {
    long long sum = 0;
    for (long long& d : draws) {
      d = static_cast<long long>(rng.below(static_cast<std::uint64_t>(grid) + 1));
      sum += d;
    }
    if (sum == 0) {
      draws[0] = 1;
      sum = 1;
    }
    std::sort(draws.begin(), draws.end(), std::greater<>());
    const Ranking& rk = ordinal.rankings[static_cast<size_t>(i)];
    for (int pos = 0; pos < m; ++pos) {
      out.values[static_cast<size_t>(i)][static_cast<size_t>(rk.at(pos))] =
          Rat(draws[static_cast<size_t>(pos)], sum);
    }
  }
  return out;
}

std::vector<Rat> random_top_values(const OrdinalProfile& ordinal, Rng& rng,
                                   int denominator) {
  const int m = ordinal.n_alternatives();
  const long long lo = (denominator + m - 1) / m;  // ceil(D/m), so value >= 1/m
  std::vector<Rat> top;
  top.reserve(static_cast<size_t>(ordinal.n_agents()));
  for (int i = 0; i < ordinal.n_agents(); ++i) {
    const long long num =
        lo + static_cast<long long>(rng.below(static_cast<std::uint64_t>(denominator - lo + 1)));
    top.emplace_back(num, denominator);
  }
  return top;
}

Matrix random_weight_matrix(int n, Rng& rng, int grid) {
  Matrix w(static_cast<size_t>(n), Row(static_cast<size_t>(n)));
  for (auto& row : w) {
    for (Rat& v : row) {
      v = Rat(static_cast<long long>(rng.below(static_cast<std::uint64_t>(grid) + 1)),
              rng.range(1, grid));
    }
  }
  return w;
}

Matching random_matching(int n, Rng& rng) {
  return Matching{random_ranking(n, rng).order};
}

Instance random_instance(Flavor flavor, int n_agents, int n_alternatives, int k,
                         Rng& rng) {
  Instance instance;
  instance.flavor = flavor;
  if (flavor == Flavor::Matching && n_agents != n_alternatives) {
    throw std::invalid_argument("random_instance: matching needs n_agents == n_items");
  }
  instance.ordinal = random_ordinal(n_agents, n_alternatives, rng);
  ValuationProfile truth = random_vertex_profile(instance.ordinal, rng);
  if (flavor == Flavor::Voting) {
    instance.prediction = TopValues{top_values_of(truth, instance.ordinal)};
  } else {
    instance.prediction = truncate_profile(truth, instance.ordinal, k);
  }
  instance.truth = std::move(truth);
  return instance;
}

}  // namespace dlab::sampling
