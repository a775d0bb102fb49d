#include "mubsim/bsv.hpp"

#include <cmath>
#include <stdexcept>

namespace mubsim {

namespace {

double sector_multiplicity(int p, int n) { return binomial(n + p - 1, p - 1); }

// Unnormalized sector mass under either mixing law.
double raw_weight(const BsvSpec& spec, SectorWeighting weighting, int n) {
  const double t2 = std::pow(std::tanh(spec.gamma), 2.0 * n);
  const double mult = sector_multiplicity(spec.p, n);
  return weighting == SectorWeighting::StateNorm ? mult * t2 : t2 / mult;
}

}  // namespace

void validate(const BsvSpec& spec) {
  if (!is_prime(spec.p)) throw std::invalid_argument("BsvSpec: p must be prime");
  if (spec.gamma < 0.0) throw std::invalid_argument("BsvSpec: gamma must be >= 0");
  if (spec.cutoff < (spec.renormalized ? 1 : 0))
    throw std::invalid_argument("BsvSpec: cutoff leaves no sector");
  if (spec.renormalized && spec.gamma == 0.0)
    throw std::invalid_argument("BsvSpec: vacuum projection of the Γ=0 state is empty");
}

StateVector build_bsv(const BsvSpec& spec) {
  validate(spec);
  const double t = std::tanh(spec.gamma);
  StateVector state{spec.p, spec.p, spec.cutoff, {}};
  for (int n = spec.renormalized ? 1 : 0; n <= spec.cutoff; ++n) {
    const cxd amp{std::pow(t, n), 0.0};
    if (amp == cxd{0.0, 0.0} && n > 0) continue;  // Γ = 0: only the vacuum sector
    for (const auto& occ : enumerate_basis(spec.p, n)) state.add(occ, occ, amp);
  }
  return normalize(std::move(state));
}

std::vector<std::pair<int, double>> sector_weights(const BsvSpec& spec,
                                                   SectorWeighting weighting) {
  validate(spec);
  const int first = spec.renormalized ? 1 : 0;
  std::vector<std::pair<int, double>> weights;
  weights.reserve(static_cast<std::size_t>(spec.cutoff - first + 1));
  double total = 0.0;
  for (int n = first; n <= spec.cutoff; ++n) {
    const double w = raw_weight(spec, weighting, n);
    weights.emplace_back(n, w);
    total += w;
  }
  if (!(total > 0.0))
    throw std::runtime_error("sector_weights: no probability mass in kept sectors");
  for (auto& [n, w] : weights) w /= total;
  return weights;
}

double truncated_mass(const BsvSpec& spec, SectorWeighting weighting) {
  validate(spec);
  const double t2 = std::pow(std::tanh(spec.gamma), 2.0);
  const int first = spec.renormalized ? 1 : 0;
  double kept = 0.0;
  for (int n = first; n <= spec.cutoff; ++n) kept += raw_weight(spec, weighting, n);

  double full = 0.0;
  if (weighting == SectorWeighting::StateNorm) {
    // Σ_n C(n+p−1, p−1) x^n = (1 − x)^{−p}
    full = std::pow(1.0 - t2, -static_cast<double>(spec.p));
    if (spec.renormalized) full -= 1.0;
  } else {
    // No closed form; terms fall off geometrically, sum to convergence.
    double term;
    int n = first;
    do {
      term = raw_weight(spec, weighting, n);
      full += term;
      ++n;
    } while (term > full * 1e-18 && n < 100000);
  }
  return 1.0 - kept / full;
}

}  // namespace mubsim
