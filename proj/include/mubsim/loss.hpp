#pragma once

#include <map>

#include "mubsim/bsv.hpp"
#include "mubsim/fock.hpp"

namespace mubsim {

/// Detector efficiency, identical for all detectors.
struct Efficiency {
  double eta = 1.0;

  explicit Efficiency(double e) : eta(e) {
    if (!(e >= 0.0 && e <= 1.0))
      throw std::invalid_argument("Efficiency: eta must lie in [0, 1]");
  }
};

/// Joint probabilities over detected (A, B) occupation pairs.
struct OutcomeDistribution {
  int modes_per_party = 0;
  std::map<JointKey, double> prob;

  double total() const;
};

/// Binomial thinning kernel q(m, n, η): probability that m of n photons
/// survive a detector of efficiency η. Degenerate η handled exactly:
/// q(m, n, 0) = δ_{m0}, q(m, n, 1) = δ_{mn}.
double thinning_probability(int m, int n, double eta);

/// Detected joint distribution of the source before loss, in analyzer
/// setting m ∈ [0, p]. The source is invariant under every conjugate
/// analyzer pair (validated against the linop oracle), so the distribution
/// is independent of the setting: sector n with probability
/// sector_weights(n), uniform over its composition pairs (n⃗, n⃗).
OutcomeDistribution ideal_joint_distribution(const BsvSpec& spec, int setting,
                                             SectorWeighting weighting =
                                                 SectorWeighting::StateNorm);

/// |amplitude|² of a bipartite state as an OutcomeDistribution.
OutcomeDistribution distribution_from_state(const StateVector& state);

/// Independent binomial thinning of every mode count on both sides.
/// Product terms below `prune` are dropped (bounds the sixfold-sum blowup);
/// with the default threshold the output still sums to 1 within 1e-10.
OutcomeDistribution apply_loss(const OutcomeDistribution& dist, Efficiency eta,
                               double prune = 1e-16);

}  // namespace mubsim
