#include "mubsim/loss.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace mubsim {

double OutcomeDistribution::total() const {
  double s = 0.0;
  for (const auto& [key, p] : prob) s += p;
  return s;
}

double thinning_probability(int m, int n, double eta) {
  if (n < 0 || m < 0 || m > n) return 0.0;
  if (!(eta >= 0.0 && eta <= 1.0))
    throw std::invalid_argument("thinning_probability: eta must lie in [0, 1]");
  if (eta == 0.0) return m == 0 ? 1.0 : 0.0;
  if (eta == 1.0) return m == n ? 1.0 : 0.0;
  return binomial(n, m) * std::pow(eta, m) * std::pow(1.0 - eta, n - m);
}

OutcomeDistribution ideal_joint_distribution(const BsvSpec& spec, int setting,
                                             SectorWeighting weighting) {
  if (setting < 0 || setting > spec.p)
    throw std::invalid_argument("ideal_joint_distribution: setting must lie in [0, p]");
  OutcomeDistribution dist{spec.p, {}};
  for (const auto& [n, weight] : sector_weights(spec, weighting)) {
    const auto basis = enumerate_basis(spec.p, n);
    const double per_pair = weight / static_cast<double>(basis.size());
    for (const auto& occ : basis) {
      const std::uint64_t key = pack_occupation(occ);
      dist.prob[{key, key}] += per_pair;
    }
  }
  return dist;
}

OutcomeDistribution distribution_from_state(const StateVector& state) {
  if (state.single_party())
    throw std::invalid_argument("distribution_from_state: bipartite state required");
  if (state.modes_a != state.modes_b)
    throw std::invalid_argument("distribution_from_state: parties must have equal mode counts");
  OutcomeDistribution dist{state.modes_a, {}};
  for (const auto& [key, amp] : state.amps) dist.prob[key] += std::norm(amp);
  return dist;
}

namespace {

struct ThinnedSide {
  std::vector<std::uint64_t> keys;
  std::vector<double> weights;
};

// All detected patterns of one side's occupation with their product-of-q weights.
ThinnedSide thin_side(const Occupation& occ, double eta) {
  const int p = static_cast<int>(occ.size());
  ThinnedSide side;
  Occupation detected(static_cast<std::size_t>(p), 0);
  auto rec = [&](auto&& self, int mode, double weight) -> void {
    if (mode == p) {
      side.keys.push_back(pack_occupation(detected));
      side.weights.push_back(weight);
      return;
    }
    const int n = occ[static_cast<std::size_t>(mode)];
    for (int m = 0; m <= n; ++m) {
      detected[static_cast<std::size_t>(mode)] = m;
      self(self, mode + 1, weight * thinning_probability(m, n, eta));
    }
    detected[static_cast<std::size_t>(mode)] = 0;
  };
  rec(rec, 0, 1.0);
  return side;
}

}  // namespace

OutcomeDistribution apply_loss(const OutcomeDistribution& dist, Efficiency eta,
                               double prune) {
  OutcomeDistribution out{dist.modes_per_party, {}};
  if (eta.eta == 1.0) {
    out.prob = dist.prob;
    return out;
  }
  // Thinned patterns depend only on the side occupation; memoize per side key.
  std::unordered_map<std::uint64_t, ThinnedSide> cache;
  auto thinned = [&](std::uint64_t key) -> const ThinnedSide& {
    auto it = cache.find(key);
    if (it == cache.end())
      it = cache.emplace(key, thin_side(unpack_occupation(key, dist.modes_per_party), eta.eta))
               .first;
    return it->second;
  };
  for (const auto& [key, p] : dist.prob) {
    const ThinnedSide& a = thinned(key.a);
    const ThinnedSide& b = thinned(key.b);
    for (std::size_t i = 0; i < a.keys.size(); ++i) {
      const double pa = p * a.weights[i];
      if (pa < prune) continue;  // every b weight is ≤ 1
      for (std::size_t j = 0; j < b.keys.size(); ++j) {
        const double pab = pa * b.weights[j];
        if (pab < prune) continue;
        out.prob[{a.keys[i], b.keys[j]}] += pab;
      }
    }
  }
  return out;
}

}  // namespace mubsim
