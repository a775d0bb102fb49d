#pragma once

#include <Eigen/Dense>

#include "mubsim/fock.hpp"
#include "mubsim/mub.hpp"

namespace mubsim {

/// Largest total photon number per party accepted by the exact multinomial
/// expansion below.
inline constexpr int kTransformPhotonGuard = 8;

/// Exact linear-optics action on a single-party state: substitutes
/// a_s† → Σ_t u(s,t) a_t† in each component, expands the multinomial
/// product, and collects amplitudes. Row convention: row s of u lists the
/// image of mode s. An analyzer whose outputs are ⟨row j of V| uses
/// u = V.adjoint().
///
/// Direct polynomial expansion, no permanent shortcuts: this is the oracle
/// other modules are validated against, so clarity wins over speed. Guarded
/// at N ≤ 8 photons per component.
StateVector transform_state(const StateVector& state, const Eigen::MatrixXcd& u);
StateVector transform_state(const StateVector& state, const ModeUnitary& u);

/// transform_state on each tensor factor of a bipartite state.
StateVector joint_transform(const StateVector& state, const Eigen::MatrixXcd& u_a,
                            const Eigen::MatrixXcd& u_b);
StateVector joint_transform(const StateVector& state, const ModeUnitary& u_a,
                            const ModeUnitary& u_b);

}  // namespace mubsim
