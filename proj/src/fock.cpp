#include "mubsim/fock.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace mubsim {

namespace {

constexpr int kMaxPackedModes = 16;
constexpr int kMaxPackedCount = 15;

void check_packable(std::span<const int> counts) {
  if (counts.size() > kMaxPackedModes)
    throw std::invalid_argument("occupation exceeds 16 modes");
  for (int c : counts)
    if (c < 0 || c > kMaxPackedCount)
      throw std::invalid_argument("mode count outside [0, 15]");
}

}  // namespace

std::uint64_t pack_occupation(std::span<const int> counts) {
  check_packable(counts);
  std::uint64_t key = 0;
  for (int c : counts) key = (key << 4) | static_cast<std::uint64_t>(c);
  return key;
}

Occupation unpack_occupation(std::uint64_t key, int modes) {
  Occupation occ(static_cast<std::size_t>(modes));
  for (int s = modes - 1; s >= 0; --s) {
    occ[static_cast<std::size_t>(s)] = static_cast<int>(key & 0xF);
    key >>= 4;
  }
  return occ;
}

int occupation_total(std::uint64_t key, int modes) {
  int total = 0;
  for (int s = 0; s < modes; ++s) {
    total += static_cast<int>(key & 0xF);
    key >>= 4;
  }
  return total;
}

int occupation_total(std::span<const int> counts) {
  int total = 0;
  for (int c : counts) total += c;
  return total;
}

double StateVector::norm_sq() const {
  double s = 0.0;
  for (const auto& [key, amp] : amps) s += std::norm(amp);
  return s;
}

double StateVector::norm() const { return std::sqrt(norm_sq()); }

void StateVector::add(std::span<const int> occ_a, std::span<const int> occ_b, cxd amp) {
  if (static_cast<int>(occ_a.size()) != modes_a || static_cast<int>(occ_b.size()) != modes_b)
    throw std::invalid_argument("occupation length does not match party mode count");
  if (occupation_total(occ_a) > cutoff || occupation_total(occ_b) > cutoff)
    throw std::invalid_argument("component exceeds photon-number cutoff");
  amps[{pack_occupation(occ_a), pack_occupation(occ_b)}] += amp;
}

void StateVector::add(std::span<const int> occ_a, cxd amp) {
  add(occ_a, std::span<const int>{}, amp);
}

cxd StateVector::amplitude(std::span<const int> occ_a, std::span<const int> occ_b) const {
  auto it = amps.find({pack_occupation(occ_a), pack_occupation(occ_b)});
  return it == amps.end() ? cxd{0.0, 0.0} : it->second;
}

cxd StateVector::amplitude(std::span<const int> occ_a) const {
  return amplitude(occ_a, std::span<const int>{});
}

std::vector<Occupation> enumerate_basis(int modes, int total) {
  if (modes < 1) throw std::invalid_argument("enumerate_basis: modes must be >= 1");
  if (total < 0) throw std::invalid_argument("enumerate_basis: total must be >= 0");
  std::vector<Occupation> basis;
  Occupation occ(static_cast<std::size_t>(modes), 0);
  // Ascending count on each leading mode = ascending lexicographic order.
  auto rec = [&](auto&& self, int mode, int remaining) -> void {
    if (mode == modes - 1) {
      occ[static_cast<std::size_t>(mode)] = remaining;
      basis.push_back(occ);
      return;
    }
    for (int c = 0; c <= remaining; ++c) {
      occ[static_cast<std::size_t>(mode)] = c;
      self(self, mode + 1, remaining - c);
    }
  };
  rec(rec, 0, total);
  return basis;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  if (k > n - k) k = n - k;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

StateVector normalize(StateVector state) {
  double n = state.norm();
  if (!(n > 1e-300)) throw std::runtime_error("normalize: zero-norm state");
  for (auto& [key, amp] : state.amps) amp /= n;
  return state;
}

cxd inner(const StateVector& bra, const StateVector& ket) {
  if (bra.modes_a != ket.modes_a || bra.modes_b != ket.modes_b)
    throw std::invalid_argument("inner: mode counts differ");
  // Walk the smaller map.
  const StateVector& small = bra.amps.size() <= ket.amps.size() ? bra : ket;
  const StateVector& large = bra.amps.size() <= ket.amps.size() ? ket : bra;
  cxd s{0.0, 0.0};
  for (const auto& [key, amp] : small.amps) {
    auto it = large.amps.find(key);
    if (it == large.amps.end()) continue;
    const cxd& b = (&small == &bra) ? amp : it->second;
    const cxd& k = (&small == &bra) ? it->second : amp;
    s += std::conj(b) * k;
  }
  return s;
}

StateVector apply_quadratic(const StateVector& state, const QuadraticOperator& op) {
  if (!state.single_party())
    throw std::invalid_argument("apply_quadratic: single-party state required");
  if (op.modes() != state.modes_a || op.coeff.cols() != op.coeff.rows())
    throw std::invalid_argument("apply_quadratic: coefficient matrix must be p x p");
  const int p = state.modes_a;
  StateVector out{state.modes_a, 0, state.cutoff, {}};
  Occupation occ;
  for (const auto& [key, amp] : state.amps) {
    occ = unpack_occupation(key.a, p);
    for (int t = 0; t < p; ++t) {
      if (occ[static_cast<std::size_t>(t)] == 0) continue;
      for (int s = 0; s < p; ++s) {
        const cxd c = op.coeff(s, t);
        if (c == cxd{0.0, 0.0}) continue;
        // a_s† a_t |n⟩ = √(n_t) √(n_s - δ_st + 1) |n - e_t + e_s⟩
        Occupation shifted = occ;
        const double f_t = std::sqrt(static_cast<double>(shifted[static_cast<std::size_t>(t)]));
        shifted[static_cast<std::size_t>(t)] -= 1;
        const double f_s =
            std::sqrt(static_cast<double>(shifted[static_cast<std::size_t>(s)] + 1));
        shifted[static_cast<std::size_t>(s)] += 1;
        out.amps[{pack_occupation(shifted), 0}] += amp * c * (f_t * f_s);
      }
    }
  }
  return out;
}

cxd expect_quadratic(const StateVector& state, const QuadraticOperator& op) {
  return inner(state, apply_quadratic(state, op));
}

cxd expect_quartic(const StateVector& state, const QuadraticOperator& op1,
                   const QuadraticOperator& op2) {
  return inner(apply_quadratic(state, op1.adjoint()), apply_quadratic(state, op2));
}

StateVector project_out_vacuum(const StateVector& state) {
  StateVector out{state.modes_a, state.modes_b, state.cutoff, {}};
  for (const auto& [key, amp] : state.amps) {
    if (occupation_total(key.a, state.modes_a) == 0) continue;
    if (state.modes_b > 0 && occupation_total(key.b, state.modes_b) == 0) continue;
    out.amps.emplace(key, amp);
  }
  return out;
}

StateVector scale_by_inverse_total(const StateVector& state) {
  if (!state.single_party())
    throw std::invalid_argument("scale_by_inverse_total: single-party state required");
  StateVector out{state.modes_a, 0, state.cutoff, {}};
  for (const auto& [key, amp] : state.amps) {
    const int n = occupation_total(key.a, state.modes_a);
    if (n == 0) continue;
    out.amps.emplace(key, amp / static_cast<double>(n));
  }
  return out;
}

Eigen::MatrixXcd operator_matrix(const QuadraticOperator& op,
                                 const std::vector<Occupation>& basis) {
  const auto dim = static_cast<Eigen::Index>(basis.size());
  if (dim == 0) throw std::invalid_argument("operator_matrix: empty basis");
  const int p = static_cast<int>(basis.front().size());
  std::unordered_map<std::uint64_t, Eigen::Index> index;
  index.reserve(basis.size());
  for (Eigen::Index i = 0; i < dim; ++i) {
    if (!index.emplace(pack_occupation(basis[static_cast<std::size_t>(i)]), i).second)
      throw std::invalid_argument("operator_matrix: duplicate basis occupation");
  }
  Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    StateVector ket{p, 0, occupation_total(basis[static_cast<std::size_t>(col)]) , {}};
    ket.add(basis[static_cast<std::size_t>(col)], cxd{1.0, 0.0});
    StateVector image = apply_quadratic(ket, op);
    for (const auto& [key, amp] : image.amps) {
      auto it = index.find(key.a);
      if (it == index.end()) continue;  // outside the spanned basis
      mat(it->second, col) += amp;
    }
  }
  return mat;
}

StateVector random_state(int modes, int cutoff, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  StateVector state{modes, 0, cutoff, {}};
  for (int n = 0; n <= cutoff; ++n)
    for (const auto& occ : enumerate_basis(modes, n))
      state.add(occ, cxd{gauss(rng), gauss(rng)});
  return normalize(std::move(state));
}

StateVector coherent_like_state(std::span<const cxd> alphas, int cutoff) {
  const int modes = static_cast<int>(alphas.size());
  StateVector state{modes, 0, cutoff, {}};
  for (int n = 0; n <= cutoff; ++n) {
    for (const auto& occ : enumerate_basis(modes, n)) {
      cxd amp{1.0, 0.0};
      for (int s = 0; s < modes; ++s) {
        double fact = 1.0;
        for (int k = 2; k <= occ[static_cast<std::size_t>(s)]; ++k) fact *= k;
        amp *= std::pow(alphas[static_cast<std::size_t>(s)],
                        occ[static_cast<std::size_t>(s)]) /
               std::sqrt(fact);
      }
      state.add(occ, amp);
    }
  }
  return normalize(std::move(state));
}

StateVector fock_state(std::span<const int> occ, int cutoff) {
  StateVector state{static_cast<int>(occ.size()), 0, cutoff, {}};
  state.add(occ, cxd{1.0, 0.0});
  return state;
}

}  // namespace mubsim
