#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mubsim/bsv.hpp"
#include "mubsim/fock.hpp"
#include "mubsim/loss.hpp"
#include "mubsim/mub.hpp"

namespace mubsim {

/// The four separability criteria.
///   RateD3:      4·E|R'_A − R'_B|²        vs  3(E[1/N_A; N_A>0] + E[1/N_B; N_B>0])
///   IntensityD3: 4·E|K_A − K_B|²          vs  3(E[N_A] + E[N_B])
///   NumberP:     (p+1)·E Σ_j(n_jA − n_jB)² vs (p−1)(E[N_A] + E[N_B])
///   RateP:       (p+1)·E Σ_j(r_jA − r_jB)² vs (p−1)(1/E[N_A] + 1/E[N_B])
/// with R = Σ_j ω^j n_j/N and K = Σ_j ω^j n_j at p = 3; rates are 0 on empty
/// detections. A witness (LHS − RHS) below zero certifies entanglement; a
/// non-negative witness is inconclusive.
enum class CriterionKind { RateD3, IntensityD3, NumberP, RateP };

std::string_view to_string(CriterionKind kind);
std::optional<CriterionKind> parse_criterion(std::string_view name);
std::string_view to_string(SectorWeighting weighting);
std::optional<SectorWeighting> parse_weighting(std::string_view name);

/// The criteria are one-sided: NotEvaluable marks degenerate statistics
/// (no photons on a marginal), never a "separable" verdict.
enum class Verdict { Entangled, Inconclusive, NotEvaluable };

struct WitnessReport {
  CriterionKind kind = CriterionKind::RateD3;
  int p = 3;
  double gamma = 0.0;
  double eta = 1.0;
  int cutoff = 10;
  SectorWeighting weighting = SectorWeighting::StateNorm;
  bool renormalized = false;
  double lhs = 0.0;
  double rhs = 0.0;      // NaN when not evaluable
  double witness = 0.0;  // lhs − rhs; NaN when not evaluable
  Verdict verdict = Verdict::Inconclusive;
  std::string reason;    // nonempty only when not evaluable
  double truncated_mass = 0.0;
};

/// Heisenberg-picture detected number operators n̂_j(m) for one setting:
/// coefficient matrices (s,t) ↦ U_{js} Ū_{jt}, rank-1 projectors summing to
/// the identity.
std::vector<QuadraticOperator> rotated_number_ops(const ModeUnitary& u);

/// Σ over the p+1 settings of E[rate-difference²]. Every setting contributes
/// equally by the source symmetry (validated against the linop oracle), so
/// one setting is computed and multiplied by p+1. p = 3 uses the complex R
/// statistic, other p the per-mode Σ_j (r_jA − r_jB)² form.
double epr_deficit_rates(const OutcomeDistribution& dist, int p);

/// Same with photon numbers: K at p = 3, Σ_j (n_jA − n_jB)² otherwise.
double epr_deficit_numbers(const OutcomeDistribution& dist, int p);

/// Separable bound for the rate LHS. Empty marginal (E[N] = 0 on either
/// side) has no finite bound: nullopt, reported as not evaluable.
std::optional<double> separable_rhs_rates(const OutcomeDistribution& dist, int p);

/// Separable bound for the number LHS: 3⟨N̂⟩ at p = 3, (p−1)⟨N̂⟩ otherwise.
double separable_rhs_numbers(const OutcomeDistribution& dist, int p);

/// Build the source distribution, apply loss, evaluate one criterion.
WitnessReport criterion(CriterionKind kind, const BsvSpec& spec, Efficiency eta,
                        SectorWeighting weighting = SectorWeighting::StateNorm);

struct CriticalEtaResult {
  std::optional<double> eta_critical;
  int iterations = 0;
  std::string note;  // set when no sign change exists in (0, 1]
};

/// Bisection for the efficiency at which the witness changes sign,
/// to absolute tolerance `tol`. The witness is non-increasing in η for this
/// source (asserted empirically over sweeps), so the bracket is monotone.
CriticalEtaResult critical_eta(CriterionKind kind, const BsvSpec& spec,
                               SectorWeighting weighting = SectorWeighting::StateNorm,
                               double tol = 1e-4);

/// Max entrywise deviation, on the non-vacuum space truncated at `cutoff`,
/// between Σ_m |R̂_m|² and its closed form: Π + Π(3/N̂)Π at p = 3, and for
/// general p the diagonal form
///   Π (1/N̂²)[Σ_i(n_i² + p n_i n_{i+1}) + pN̂ + Σ_{i≠j} ω^{i−j} n_i n_j] Π.
double rate_identity_deviation(int p, int cutoff);

/// Max over random pure states (vacuum included) of Σ_m |⟨R̂_m⟩|²; the bound
/// is 1 for every state, saturated by one photon in one mode.
double rate_mean_bound(int p, int samples, int cutoff, std::uint64_t seed);

/// Σ_{m=0}^{p} Σ_j ⟨r̂_j(m)⟩² for one normalized single-party state; bounded
/// by 2, saturated by any vacuum-free state confined to a single mode.
double complementarity_rates(const StateVector& state, int p);

/// Companion intensity form Σ_{m,j} ⟨n̂_j(m)⟩², bounded by 2⟨N̂⟩².
double complementarity_numbers(const StateVector& state, int p);

struct SamplerReport {
  int requested = 0;
  int evaluated = 0;
  int skipped = 0;        // degenerate draws (a vacuum side), skipped with note
  double min_slack = 0.0; // min over samples and criteria of LHS − RHS
  std::string worst;      // description of the minimizing case
};

/// Separable-state safety check: random product states (Haar-like and
/// coherent-like sides), each criterion's LHS − RHS evaluated on exact
/// per-setting outcome statistics. Rate criteria are evaluated on the
/// vacuum-projected sides (their bounds assume vacuum-free states; the
/// projection of a product state is still a product), intensity and number
/// criteria on the raw sides. min_slack ≥ −1e-9 for separable inputs.
SamplerReport separable_sampler(int p, int samples, std::uint64_t seed);

}  // namespace mubsim
