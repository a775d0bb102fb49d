#pragma once

#include <vector>

#include <Eigen/Dense>

#include "mubsim/fock.hpp"

namespace mubsim {

/// One multiport analyzer setting. For m < p row j holds the j-th basis
/// vector of the m-th unbiased basis; setting m == p is the identity
/// (computational basis).
struct ModeUnitary {
  int p = 0;
  int setting = 0;
  Eigen::MatrixXcd u;
};

/// ω^k = exp(2πik/p) for k = 0..p−1; exponents are reduced mod p by the
/// callers before indexing.
std::vector<cxd> roots_of_unity(int p);

/// The p+1 settings of the mutually unbiased multiport family for prime p.
/// Odd p:  U(m)_{js} = ω^{js + ms²}/√p with ω = exp(2πi/p).
/// p = 2:  the quadratic phase is the fourth root i, U(m)_{js} = (-1)^{js} i^{ms²}/√2,
///         since with ω = -1 the quadratic term cannot leave the real axis and
///         m = 0, 1 would label the same basis.
/// Throws std::invalid_argument unless p is prime.
std::vector<ModeUnitary> build_mub(int p);

/// Partner matrix for the second party of a two-party source: entrywise
/// complex conjugate, same setting label.
ModeUnitary conjugate_pair(const ModeUnitary& u);

/// max_{jk} |(U†U - 1)_{jk}|.
double unitarity_deviation(const ModeUnitary& u);

/// max_{jk} | |(U V†)_{jk}|² - 1/p | for two settings of the same p.
double unbiasedness_deviation(const ModeUnitary& u, const ModeUnitary& v);

/// Generalized Pauli family on p levels. z and x are the clock and shift
/// matrices; m[k] for k < p is the ω-weighted projector sum onto the k-th
/// unbiased basis, Σ_j ω^j |φ_j(k)⟩⟨φ_j(k)|, and m[p] = z. For odd p the
/// projector form equals the closed form ω^k X Z^{-2k}.
struct GeneralizedPauli {
  int p = 0;
  Eigen::MatrixXcd z;
  Eigen::MatrixXcd x;
  std::vector<Eigen::MatrixXcd> m;
};

GeneralizedPauli build_pauli(int p);

}  // namespace mubsim
