#pragma once

#include <compare>
#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace mubsim {

using cxd = std::complex<double>;

/// Photon counts per mode for one party; the Fock basis label.
using Occupation = std::vector<int>;

/// Occupation packed into 4-bit fields with mode 0 in the highest field,
/// so unsigned comparison equals lexicographic comparison of the counts.
/// Capacity: at most 16 modes, at most 15 photons in any single mode.
std::uint64_t pack_occupation(std::span<const int> counts);
Occupation unpack_occupation(std::uint64_t key, int modes);
int occupation_total(std::uint64_t key, int modes);
int occupation_total(std::span<const int> counts);

/// Basis label of a bipartite component. Single-party states keep b == 0.
struct JointKey {
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  auto operator<=>(const JointKey&) const = default;
};

/// Sparse state vector over truncated Fock space: every component has at
/// most `cutoff` photons per party. Single-party states use modes_b == 0.
struct StateVector {
  int modes_a = 0;
  int modes_b = 0;
  int cutoff = 0;
  std::map<JointKey, cxd> amps;

  bool single_party() const { return modes_b == 0; }
  double norm_sq() const;
  double norm() const;

  void add(std::span<const int> occ_a, std::span<const int> occ_b, cxd amp);
  void add(std::span<const int> occ_a, cxd amp);
  cxd amplitude(std::span<const int> occ_a, std::span<const int> occ_b) const;
  cxd amplitude(std::span<const int> occ_a) const;
};

/// One-party quadratic form  Σ_{s,t} coeff(s,t) a_s† a_t.
struct QuadraticOperator {
  Eigen::MatrixXcd coeff;

  int modes() const { return static_cast<int>(coeff.rows()); }
  QuadraticOperator adjoint() const { return {coeff.adjoint()}; }
};

/// All occupations of `total` photons over `modes` modes, lexicographically
/// ordered. Size C(total + modes - 1, modes - 1).
std::vector<Occupation> enumerate_basis(int modes, int total);

/// C(n, k) by multiplicative recurrence, exact for the small arguments used here.
double binomial(int n, int k);

bool is_prime(int n);

/// |ψ⟩ / ‖ψ‖. Throws std::runtime_error on (numerically) zero norm.
StateVector normalize(StateVector state);

/// ⟨bra|ket⟩. Both states must share mode counts.
cxd inner(const StateVector& bra, const StateVector& ket);

/// (Σ C_st a_s†a_t)|ψ⟩ for a single-party state. Total photon number is
/// conserved, so the cutoff cannot be exceeded.
StateVector apply_quadratic(const StateVector& state, const QuadraticOperator& op);

/// ⟨ψ|Σ C_st a_s†a_t|ψ⟩; real up to rounding when C is Hermitian.
cxd expect_quadratic(const StateVector& state, const QuadraticOperator& op);

/// ⟨ψ|Ĉ₁Ĉ₂|ψ⟩ evaluated as ⟨Ĉ₁†ψ|Ĉ₂ψ⟩.
cxd expect_quartic(const StateVector& state, const QuadraticOperator& op1,
                   const QuadraticOperator& op2);

/// Drops every component in which either occupied party is the vacuum.
/// Result is not renormalized.
StateVector project_out_vacuum(const StateVector& state);

/// Π (1/N̂) |ψ⟩ for a single-party state: drops the vacuum component and
/// divides each remaining amplitude by its total photon number.
StateVector scale_by_inverse_total(const StateVector& state);

/// Matrix of a quadratic operator restricted to the spanned basis
/// (entries ⟨basis_r| Ĉ |basis_c⟩). Basis occupations must be distinct.
Eigen::MatrixXcd operator_matrix(const QuadraticOperator& op,
                                 const std::vector<Occupation>& basis);

/// Normalized single-party state with i.i.d. complex Gaussian amplitudes on
/// every basis vector with total ≤ cutoff (vacuum included).
StateVector random_state(int modes, int cutoff, std::mt19937_64& rng);

/// Truncated product of coherent amplitudes: component amplitudes
/// Π_s α_s^{n_s}/√(n_s!), renormalized on the truncated space.
StateVector coherent_like_state(std::span<const cxd> alphas, int cutoff);

/// |occ⟩ as a single-party state.
StateVector fock_state(std::span<const int> occ, int cutoff);

}  // namespace mubsim
