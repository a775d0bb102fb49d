#include "mubsim/mub.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mubsim {

std::vector<cxd> roots_of_unity(int p) {
  std::vector<cxd> w(static_cast<std::size_t>(p));
  for (int k = 0; k < p; ++k)
    w[static_cast<std::size_t>(k)] = std::polar(1.0, 2.0 * std::numbers::pi * k / p);
  return w;
}

namespace {

void require_prime(int p) {
  if (!is_prime(p)) throw std::invalid_argument("mode count p must be prime");
}

}  // namespace

std::vector<ModeUnitary> build_mub(int p) {
  require_prime(p);
  const double root_p = std::sqrt(static_cast<double>(p));
  std::vector<ModeUnitary> settings;
  settings.reserve(static_cast<std::size_t>(p) + 1);
  const auto omega = roots_of_unity(p);
  const cxd i4[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};  // powers of i
  for (int m = 0; m < p; ++m) {
    Eigen::MatrixXcd u(p, p);
    for (int j = 0; j < p; ++j) {
      for (int s = 0; s < p; ++s) {
        cxd phase;
        if (p == 2)
          phase = i4[(2 * j * s + m * s * s) % 4];
        else
          phase = omega[static_cast<std::size_t>((j * s + m * s * s) % p)];
        u(j, s) = phase / root_p;
      }
    }
    settings.push_back({p, m, std::move(u)});
  }
  settings.push_back({p, p, Eigen::MatrixXcd::Identity(p, p)});
  return settings;
}

ModeUnitary conjugate_pair(const ModeUnitary& u) {
  return {u.p, u.setting, u.u.conjugate()};
}

double unitarity_deviation(const ModeUnitary& u) {
  const auto dim = u.u.rows();
  return (u.u.adjoint() * u.u - Eigen::MatrixXcd::Identity(dim, dim))
      .cwiseAbs()
      .maxCoeff();
}

double unbiasedness_deviation(const ModeUnitary& u, const ModeUnitary& v) {
  if (u.p != v.p) throw std::invalid_argument("settings belong to different p");
  const Eigen::MatrixXcd overlap = u.u * v.u.adjoint();
  return (overlap.cwiseAbs2().array() - 1.0 / u.p).abs().maxCoeff();
}

GeneralizedPauli build_pauli(int p) {
  require_prime(p);
  const auto omega = roots_of_unity(p);
  GeneralizedPauli g;
  g.p = p;
  g.z = Eigen::MatrixXcd::Zero(p, p);
  g.x = Eigen::MatrixXcd::Zero(p, p);
  for (int j = 0; j < p; ++j) {
    g.z(j, j) = omega[static_cast<std::size_t>(j)];
    g.x(j, (j + 1) % p) = 1.0;  // X|j+1⟩ = |j⟩, i.e. ⟨j|X|j+1⟩ = 1
  }
  const auto settings = build_mub(p);
  g.m.reserve(static_cast<std::size_t>(p) + 1);
  for (int k = 0; k < p; ++k) {
    Eigen::MatrixXcd mk = Eigen::MatrixXcd::Zero(p, p);
    for (int j = 0; j < p; ++j) {
      // Projector entries (s,t) = U_{js} Ū_{jt}, matching the coefficient
      // matrices of the detected number operators n̂_j(k).
      const Eigen::RowVectorXcd row = settings[static_cast<std::size_t>(k)].u.row(j);
      mk += omega[static_cast<std::size_t>(j)] * (row.transpose() * row.conjugate());
    }
    g.m.push_back(std::move(mk));
  }
  g.m.push_back(g.z);
  return g;
}

}  // namespace mubsim
