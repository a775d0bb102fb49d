#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "mubsim/linop.hpp"
#include "mubsim/run.hpp"

namespace mubsim {

namespace {

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

// Uniform-amplitude joint sector state: the n-pair component of the source.
StateVector sector_state(int p, int n, int cutoff) {
  StateVector state{p, p, cutoff, {}};
  for (const auto& occ : enumerate_basis(p, n)) state.add(occ, occ, {1.0, 0.0});
  return normalize(std::move(state));
}

double state_diff_norm(const StateVector& x, const StateVector& y) {
  double s = 0.0;
  for (const auto& [key, amp] : x.amps) {
    auto it = y.amps.find(key);
    s += std::norm(amp - (it == y.amps.end() ? cxd{0.0, 0.0} : it->second));
  }
  for (const auto& [key, amp] : y.amps)
    if (!x.amps.count(key)) s += std::norm(amp);
  return std::sqrt(s);
}

Check check_mub_certification() {
  double max_unitarity = 0.0, max_overlap = 0.0;
  for (int p : {2, 3, 5, 7, 11, 13}) {
    const auto settings = build_mub(p);
    for (std::size_t i = 0; i < settings.size(); ++i) {
      max_unitarity = std::max(max_unitarity, unitarity_deviation(settings[i]));
      for (std::size_t j = i + 1; j < settings.size(); ++j)
        max_overlap =
            std::max(max_overlap, unbiasedness_deviation(settings[i], settings[j]));
    }
  }
  return {"mub-certification", max_unitarity < 1e-12 && max_overlap < 1e-12,
          fmt("p in {2,3,5,7,11,13}: max unitarity dev %.3g, max overlap dev %.3g",
              max_unitarity, max_overlap)};
}

Check check_pauli_family() {
  double max_dev = 0.0;
  for (int p : {2, 3, 5, 7}) {
    const auto g = build_pauli(p);
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(p, p);
    for (int k = 0; k <= p; ++k) {
      const auto& m = g.m[static_cast<std::size_t>(k)];
      max_dev = std::max(max_dev, (m.adjoint() * m - id).cwiseAbs().maxCoeff());
      Eigen::MatrixXcd power = id;
      for (int t = 0; t < p; ++t) power *= m;
      max_dev = std::max(max_dev, (power - id).cwiseAbs().maxCoeff());
    }
    if (p == 2) continue;  // closed form degenerates at p = 2
    const auto omega = roots_of_unity(p);
    Eigen::MatrixXcd z_inv2 = id;  // Z^{-2} = (Z†)²
    z_inv2 = g.z.adjoint() * g.z.adjoint();
    Eigen::MatrixXcd zpow = id;
    for (int k = 0; k < p; ++k) {
      const Eigen::MatrixXcd closed =
          omega[static_cast<std::size_t>(k)] * g.x * zpow;
      max_dev = std::max(
          max_dev,
          (closed - g.m[static_cast<std::size_t>(k)]).cwiseAbs().maxCoeff());
      zpow *= z_inv2;
    }
  }
  return {"pauli-family", max_dev < 1e-12,
          fmt("unitarity, order p, odd-p closed form: max dev %.3g", max_dev)};
}

Check check_rate_identity() {
  const double d3 = rate_identity_deviation(3, 6);
  const double d2 = rate_identity_deviation(2, 6);
  return {"rate-identity", d3 < 1e-10 && d2 < 1e-10,
          fmt("cutoff 6: max entry dev %.3g (p=3), %.3g (p=2)", d3, d2)};
}

Check check_rate_mean_bound(std::uint64_t seed) {
  const double max_seen = rate_mean_bound(3, 10000, 4, seed);
  const Occupation one{1, 0, 0};
  const StateVector sat = fock_state(one, 4);
  const auto pauli = build_pauli(3);
  double sat_val = 0.0;
  for (int m = 0; m <= 3; ++m)
    sat_val += std::norm(inner(project_out_vacuum(sat),
                               apply_quadratic(scale_by_inverse_total(sat),
                                               {pauli.m[static_cast<std::size_t>(m)]})));
  return {"rate-mean-bound",
          max_seen <= 1.0 + 1e-10 && std::abs(sat_val - 1.0) < 1e-12,
          fmt("10^4 random states: max %.12g; |1,0,0> saturation %.12g", max_seen, sat_val)};
}

Check check_complementarity(std::uint64_t seed) {
  bool pass = true;
  double worst_rate = 0.0, worst_sat = 0.0;
  for (int p : {2, 3, 5}) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(p));
    for (int i = 0; i < 1000; ++i) {
      const StateVector psi = random_state(p, 4, rng);
      const double rates = complementarity_rates(psi, p);
      const double numbers = complementarity_numbers(psi, p);
      const double mean_n = expect_quadratic(psi, {Eigen::MatrixXcd::Identity(p, p)}).real();
      worst_rate = std::max(worst_rate, rates);
      pass = pass && rates <= 2.0 + 1e-10 && numbers <= 2.0 * mean_n * mean_n + 1e-8;
    }
    Occupation occ(static_cast<std::size_t>(p), 0);
    occ[1] = 2;  // all photons in mode 1, no vacuum component
    const double sat = complementarity_rates(fock_state(occ, 4), p);
    worst_sat = std::max(worst_sat, std::abs(sat - 2.0));
    pass = pass && std::abs(sat - 2.0) < 1e-10;
  }
  return {"complementarity", pass,
          fmt("p in {2,3,5}, 10^3 states each: max rate sum %.12g (bound 2); "
              "saturating config dev %.3g",
              worst_rate, worst_sat)};
}

Check check_epr_invariance() {
  double worst = 0.0;
  for (int p : {2, 3}) {
    const auto settings = build_mub(p);
    for (int n = 1; n <= 4; ++n) {
      const StateVector psi = sector_state(p, n, 4);
      for (const auto& s : settings) {
        // Source symmetry: (V, V̄) leaves the state invariant…
        worst = std::max(
            worst, state_diff_norm(joint_transform(psi, s.u, s.u.conjugate()), psi));
        // …so conjugate analyzers (U†, Uᵀ) reproduce the number-basis
        // distribution.
        const auto analyzed =
            distribution_from_state(joint_transform(psi, s.u.adjoint(), s.u.transpose()));
        const auto number = distribution_from_state(psi);
        for (const auto& [key, prob] : analyzed.prob) {
          auto it = number.prob.find(key);
          const double ref = it == number.prob.end() ? 0.0 : it->second;
          worst = std::max(worst, std::abs(prob - ref));
        }
      }
    }
  }
  // The distribution builder shortcut matches the state it abbreviates.
  const BsvSpec spec{3, 0.8, 6, false};
  const auto dist = ideal_joint_distribution(spec, 0);
  const auto direct = distribution_from_state(build_bsv(spec));
  for (const auto& [key, prob] : direct.prob) {
    auto it = dist.prob.find(key);
    worst = std::max(worst, std::abs(prob - (it == dist.prob.end() ? 0.0 : it->second)));
  }
  return {"epr-invariance", worst < 1e-10,
          fmt("sectors n <= 4, all settings, p in {2,3}: max deviation %.3g", worst)};
}

Check check_setting_symmetry() {
  // The (p+1)x moment shortcut against explicitly rotated settings.
  const BsvSpec spec{3, 0.7, 4, true};
  const auto dist = ideal_joint_distribution(spec, 0);
  const double shortcut = epr_deficit_rates(apply_loss(dist, Efficiency(0.6)), spec.p);

  const StateVector psi = build_bsv(spec);
  const auto settings = build_mub(spec.p);
  const auto omega = roots_of_unity(spec.p);
  double total = 0.0;
  for (const auto& s : settings) {
    const auto analyzed = joint_transform(psi, s.u.adjoint(), s.u.transpose());
    const auto lossy = apply_loss(distribution_from_state(analyzed), Efficiency(0.6));
    for (const auto& [key, prob] : lossy.prob) {
      const Occupation a = unpack_occupation(key.a, spec.p);
      const Occupation b = unpack_occupation(key.b, spec.p);
      const int na = occupation_total(a), nb = occupation_total(b);
      cxd ra{0.0, 0.0}, rb{0.0, 0.0};
      for (int j = 0; j < spec.p; ++j) {
        if (na > 0) ra += omega[static_cast<std::size_t>(j)] * static_cast<double>(a[static_cast<std::size_t>(j)]) / static_cast<double>(na);
        if (nb > 0) rb += omega[static_cast<std::size_t>(j)] * static_cast<double>(b[static_cast<std::size_t>(j)]) / static_cast<double>(nb);
      }
      total += prob * std::norm(ra - rb);
    }
  }
  const double dev = std::abs(shortcut - total);
  return {"setting-symmetry", dev < 1e-10,
          fmt("(p+1)x shortcut vs rotated settings at gamma 0.7, eta 0.6: dev %.3g", dev)};
}

Check check_epr_deficits() {
  double worst = 0.0;
  for (double gamma : {0.5, 1.0, 2.0}) {
    const BsvSpec spec{3, gamma, 10, false};
    const auto dist = apply_loss(ideal_joint_distribution(spec, 3), Efficiency(1.0));
    worst = std::max(worst, epr_deficit_rates(dist, 3));
    worst = std::max(worst, epr_deficit_numbers(dist, 3));
  }
  return {"epr-deficits-at-unit-eta", worst < 1e-12,
          fmt("gamma in {0.5,1,2}, eta 1: max deficit %.3g", worst)};
}

Check check_intensity_threshold() {
  bool pass = true;
  std::string vals;
  for (double gamma : {0.3, 1.0, 2.0}) {
    const auto res =
        critical_eta(CriterionKind::IntensityD3, {3, gamma, 10, false});
    pass = pass && res.eta_critical && std::abs(*res.eta_critical - 0.25) <= 0.005;
    vals += fmt("%s%.6g", vals.empty() ? "" : ", ",
                res.eta_critical ? *res.eta_critical : -1.0);
  }
  return {"intensity-threshold", pass, "eta_c(gamma 0.3, 1, 2) = " + vals + " (target 0.25)"};
}

Check check_rate_threshold_low_gain() {
  const auto res = critical_eta(CriterionKind::RateD3, {3, 0.05, 10, true});
  const bool pass = res.eta_critical && *res.eta_critical >= 0.24 && *res.eta_critical < 0.25;
  return {"rate-threshold-low-gain", pass,
          fmt("eta_c(gamma 0.05) = %.6g (target [0.24, 0.25))",
              res.eta_critical ? *res.eta_critical : -1.0)};
}

Check check_rate_threshold_high_gain() {
  const auto state_norm = critical_eta(CriterionKind::RateD3, {3, 3.0, 10, true},
                                       SectorWeighting::StateNorm);
  const auto literal = critical_eta(CriterionKind::RateD3, {3, 3.0, 10, true},
                                    SectorWeighting::LiteralAppendixC);
  auto in_window = [](const CriticalEtaResult& r) {
    return r.eta_critical && *r.eta_critical >= 0.15 && *r.eta_critical <= 0.16;
  };
  const bool sn = in_window(state_norm), lit = in_window(literal);
  std::string which = sn && lit ? "both conventions reproduce"
                      : sn      ? "state-norm reproduces"
                      : lit     ? "literal-appendix-c reproduces"
                                : "neither convention reproduces";
  return {"rate-threshold-high-gain", sn || lit,
          fmt("gamma 3: eta_c[state-norm] = %.6g, eta_c[literal-appendix-c] = %.6g; ",
              state_norm.eta_critical ? *state_norm.eta_critical : -1.0,
              literal.eta_critical ? *literal.eta_critical : -1.0) +
              which + " the [0.15, 0.16] window"};
}

Check check_separable_safety(std::uint64_t seed) {
  double min_slack = std::numeric_limits<double>::infinity();
  int evaluated = 0, skipped = 0;
  for (int p : {2, 3, 5}) {
    const auto rep = separable_sampler(p, 1000, seed + static_cast<std::uint64_t>(p));
    min_slack = std::min(min_slack, rep.min_slack);
    evaluated += rep.evaluated;
    skipped += rep.skipped;
  }
  return {"separable-safety", min_slack >= -1e-9,
          fmt("p in {2,3,5}, %d products evaluated (%d skipped): min slack %.3g",
              evaluated, skipped, min_slack)};
}

}  // namespace

int run_verify(std::ostream& out, std::uint64_t seed) {
  std::vector<Check> checks;
  checks.push_back(check_mub_certification());
  checks.push_back(check_pauli_family());
  checks.push_back(check_rate_identity());
  checks.push_back(check_rate_mean_bound(seed));
  checks.push_back(check_complementarity(seed));
  checks.push_back(check_epr_invariance());
  checks.push_back(check_setting_symmetry());
  checks.push_back(check_epr_deficits());
  checks.push_back(check_intensity_threshold());
  checks.push_back(check_rate_threshold_low_gain());
  checks.push_back(check_rate_threshold_high_gain());
  checks.push_back(check_separable_safety(seed));

  int passed = 0;
  for (const auto& c : checks) {
    out << (c.pass ? "[PASS] " : "[FAIL] ") << c.name;
    for (std::size_t i = c.name.size(); i < 28; ++i) out << ' ';
    out << c.detail << '\n';
    passed += c.pass ? 1 : 0;
  }
  out << passed << '/' << checks.size() << " checks passed\n";
  return passed == static_cast<int>(checks.size()) ? 0 : 1;
}

}  // namespace mubsim
