#include "mubsim/linop.hpp"

#include <cmath>
#include <stdexcept>

namespace mubsim {

namespace {

struct Expanded {
  std::uint64_t key;
  cxd coeff;
};

// Π_s (Σ_t u(s,t) a_t†)^{n_s} |Ω⟩ expanded over target occupations m⃗:
//   Σ_k  Π_{s,t} u(s,t)^{k_st}/k_st!  ·  √(Π_s n_s!) √(Π_t m_t!)  |m⃗⟩
// with k_st ≥ 0, Σ_t k_st = n_s, m_t = Σ_s k_st.
std::vector<Expanded> expand_component(const Occupation& occ, const Eigen::MatrixXcd& u) {
  const int p = static_cast<int>(occ.size());
  const int total = occupation_total(occ);
  if (total > kTransformPhotonGuard)
    throw std::invalid_argument("transform_state: component exceeds the N <= 8 expansion guard");

  double source_fact = 1.0;
  for (int c : occ)
    for (int k = 2; k <= c; ++k) source_fact *= k;

  std::map<std::uint64_t, cxd> acc;
  Occupation target(static_cast<std::size_t>(p), 0);
  // Distribute the n_s quanta of each source mode over all target modes.
  auto rec = [&](auto&& self, int s, int t, int remaining, cxd coeff) -> void {
    if (s == p) {
      acc[pack_occupation(target)] += coeff;
      return;
    }
    if (t == p - 1) {
      cxd c = coeff;
      for (int k = 1; k <= remaining; ++k) c *= u(s, t) / static_cast<double>(k);
      target[static_cast<std::size_t>(t)] += remaining;
      const int next = s + 1;
      self(self, next, 0, next < p ? occ[static_cast<std::size_t>(next)] : 0, c);
      target[static_cast<std::size_t>(t)] -= remaining;
      return;
    }
    cxd c = coeff;
    for (int k = 0; k <= remaining; ++k) {
      target[static_cast<std::size_t>(t)] += k;
      self(self, s, t + 1, remaining - k, c);
      target[static_cast<std::size_t>(t)] -= k;
      c *= u(s, t) / static_cast<double>(k + 1);
    }
  };
  rec(rec, 0, 0, occ.empty() ? 0 : occ[0], cxd{1.0, 0.0});

  std::vector<Expanded> out;
  out.reserve(acc.size());
  for (const auto& [key, coeff] : acc) {
    double target_fact = 1.0;
    for (int c : unpack_occupation(key, p))
      for (int k = 2; k <= c; ++k) target_fact *= k;
    out.push_back({key, coeff * std::sqrt(source_fact * target_fact)});
  }
  return out;
}

void check_matrix(const Eigen::MatrixXcd& u, int p, const char* what) {
  if (u.rows() != p || u.cols() != p)
    throw std::invalid_argument(std::string(what) + ": matrix dimension does not match mode count");
}

}  // namespace

StateVector transform_state(const StateVector& state, const Eigen::MatrixXcd& u) {
  if (!state.single_party())
    throw std::invalid_argument("transform_state: single-party state required");
  check_matrix(u, state.modes_a, "transform_state");
  StateVector out{state.modes_a, 0, state.cutoff, {}};
  for (const auto& [key, amp] : state.amps)
    for (const auto& term : expand_component(unpack_occupation(key.a, state.modes_a), u))
      out.amps[{term.key, 0}] += amp * term.coeff;
  return out;
}

StateVector transform_state(const StateVector& state, const ModeUnitary& u) {
  return transform_state(state, u.u);
}

StateVector joint_transform(const StateVector& state, const Eigen::MatrixXcd& u_a,
                            const Eigen::MatrixXcd& u_b) {
  if (state.single_party())
    throw std::invalid_argument("joint_transform: bipartite state required");
  check_matrix(u_a, state.modes_a, "joint_transform");
  check_matrix(u_b, state.modes_b, "joint_transform");
  StateVector out{state.modes_a, state.modes_b, state.cutoff, {}};
  for (const auto& [key, amp] : state.amps) {
    const auto terms_a = expand_component(unpack_occupation(key.a, state.modes_a), u_a);
    const auto terms_b = expand_component(unpack_occupation(key.b, state.modes_b), u_b);
    for (const auto& ta : terms_a)
      for (const auto& tb : terms_b)
        out.amps[{ta.key, tb.key}] += amp * ta.coeff * tb.coeff;
  }
  return out;
}

StateVector joint_transform(const StateVector& state, const ModeUnitary& u_a,
                            const ModeUnitary& u_b) {
  return joint_transform(state, u_a.u, u_b.u);
}

}  // namespace mubsim
