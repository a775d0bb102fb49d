#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mubsim/witness.hpp"

namespace mubsim {

/// Resolved configuration of one CLI invocation. Grids hold at least one
/// value; single-point commands use the first entry.
struct RunConfig {
  int p = 3;
  std::vector<double> gammas{1.0};
  std::vector<double> etas{1.0};
  int cutoff = 10;
  CriterionKind kind = CriterionKind::RateD3;
  SectorWeighting weighting = SectorWeighting::StateNorm;
  std::optional<bool> renormalized;  // unset → per-kind default
  std::uint64_t seed = 1;
  int jobs = 1;
};

/// Vacuum-projected evaluation is the more sensitive choice for rate
/// criteria and the default there; number/intensity criteria default to the
/// raw state.
bool default_renormalized(CriterionKind kind);
bool renormalized_for(const RunConfig& config);

/// lo..hi inclusive with `steps` points (steps == 1 → {lo}).
std::vector<double> linspace(double lo, double hi, int steps);

/// 12 significant digits, shortest form ("%.12g").
std::string format_sig12(double v);

/// All p+1 setting matrices as [re, im] entry pairs plus a certification
/// block (max unitarity and cross-overlap deviations against 1e-12).
std::string mub_json(int p);

/// Single-point witness report. Degenerate statistics keep the verdict
/// "inconclusive" and carry a reason; rhs/witness are null then.
std::string witness_json(const RunConfig& config);

/// Grid sweep, gamma-major, eta-minor; header
/// criterion,p,gamma,eta,cutoff,lhs,rhs,witness,entangled. Points are
/// evaluated in parallel up to config.jobs; output is byte-identical for
/// any parallelism degree.
std::string sweep_csv(const RunConfig& config);

/// Bisection threshold per gamma: JSON array of
/// {gamma, eta_critical, iterations} entries, null threshold plus reason
/// when the witness does not change sign on (0, 1].
std::string critical_eta_json(const RunConfig& config);

/// Full verification suite; prints a pass/fail table to `out` and returns
/// 0 iff every check passed.
int run_verify(std::ostream& out, std::uint64_t seed);

}  // namespace mubsim
