#pragma once

#include <utility>
#include <vector>

#include "mubsim/fock.hpp"

namespace mubsim {

/// Which sector mixing law turns the gain parameter into per-sector
/// probabilities.
///   StateNorm:        P_n ∝ C(n+p−1, p−1) · tanh²ⁿΓ  (squared state amplitudes)
///   LiteralAppendixC: w_n ∝ tanh²ⁿΓ / C(n+p−1, p−1)  (inverse-multiplicity weights)
/// Both are reported by the verification suite; StateNorm is the default and
/// the one consistent with the state's own norm.
enum class SectorWeighting { StateNorm, LiteralAppendixC };

/// Bright squeezed vacuum source: p two-mode squeezed pairs (a_i, b_i) at
/// equal gain Γ, truncated at `cutoff` photons per party.
struct BsvSpec {
  int p = 3;
  double gamma = 1.0;
  int cutoff = 10;
  bool renormalized = false;  // drop the vacuum sector before normalizing
};

void validate(const BsvSpec& spec);

/// The truncated state: sector n carries amplitude ∝ tanhⁿΓ on each of its
/// C(n+p−1, p−1) joint basis vectors |n⃗⟩_A|n⃗⟩_B, renormalized to unit norm
/// after truncation (and after vacuum projection when renormalized).
StateVector build_bsv(const BsvSpec& spec);

/// Per-sector probabilities (n, P_n), n running from (1 if renormalized
/// else 0) to cutoff, normalized over the kept sectors.
std::vector<std::pair<int, double>> sector_weights(const BsvSpec& spec,
                                                   SectorWeighting weighting =
                                                       SectorWeighting::StateNorm);

/// Probability mass the truncation discards, relative to the untruncated
/// (and, when renormalized, vacuum-projected) series.
double truncated_mass(const BsvSpec& spec,
                      SectorWeighting weighting = SectorWeighting::StateNorm);

}  // namespace mubsim
