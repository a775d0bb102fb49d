#include "mubsim/witness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "mubsim/linop.hpp"

namespace mubsim {

std::string_view to_string(CriterionKind kind) {
  switch (kind) {
    case CriterionKind::RateD3: return "rate-d3";
    case CriterionKind::IntensityD3: return "intensity-d3";
    case CriterionKind::NumberP: return "number-p";
    case CriterionKind::RateP: return "rate-p";
  }
  return "?";
}

std::optional<CriterionKind> parse_criterion(std::string_view name) {
  if (name == "rate-d3") return CriterionKind::RateD3;
  if (name == "intensity-d3") return CriterionKind::IntensityD3;
  if (name == "number-p") return CriterionKind::NumberP;
  if (name == "rate-p") return CriterionKind::RateP;
  return std::nullopt;
}

std::string_view to_string(SectorWeighting weighting) {
  return weighting == SectorWeighting::StateNorm ? "state-norm" : "literal-appendix-c";
}

std::optional<SectorWeighting> parse_weighting(std::string_view name) {
  if (name == "state-norm") return SectorWeighting::StateNorm;
  if (name == "literal-appendix-c") return SectorWeighting::LiteralAppendixC;
  return std::nullopt;
}

std::vector<QuadraticOperator> rotated_number_ops(const ModeUnitary& u) {
  std::vector<QuadraticOperator> ops;
  ops.reserve(static_cast<std::size_t>(u.p));
  for (int j = 0; j < u.p; ++j) {
    const Eigen::RowVectorXcd row = u.u.row(j);
    ops.push_back({row.transpose() * row.conjugate()});
  }
  return ops;
}

namespace {

// One pass over a joint distribution: marginal means, truncated inverse
// moments E[1/N; N>0], and the per-setting difference statistics for every
// criterion form (rates are 0 on empty detections).
struct JointMoments {
  double mean_a = 0.0;
  double mean_b = 0.0;
  double inv_a = 0.0;
  double inv_b = 0.0;
  double rate_d3 = 0.0;  // E|R'_A − R'_B|², p = 3 only
  double int_d3 = 0.0;   // E|K_A − K_B|²,   p = 3 only
  double num_p = 0.0;    // E Σ_j (n_jA − n_jB)²
  double rate_p = 0.0;   // E Σ_j (r_jA − r_jB)²
};

JointMoments joint_moments(const OutcomeDistribution& dist) {
  const int p = dist.modes_per_party;
  const auto omega = roots_of_unity(p);
  JointMoments mom;
  Occupation occ_a, occ_b;
  for (const auto& [key, prob] : dist.prob) {
    occ_a = unpack_occupation(key.a, p);
    occ_b = unpack_occupation(key.b, p);
    const int na = occupation_total(occ_a);
    const int nb = occupation_total(occ_b);
    mom.mean_a += prob * na;
    mom.mean_b += prob * nb;
    if (na > 0) mom.inv_a += prob / na;
    if (nb > 0) mom.inv_b += prob / nb;

    cxd k_a{0.0, 0.0}, k_b{0.0, 0.0};
    double sq_num = 0.0, sq_rate = 0.0;
    for (int j = 0; j < p; ++j) {
      const double nja = occ_a[static_cast<std::size_t>(j)];
      const double njb = occ_b[static_cast<std::size_t>(j)];
      const double dn = nja - njb;
      sq_num += dn * dn;
      const double dr = (na > 0 ? nja / na : 0.0) - (nb > 0 ? njb / nb : 0.0);
      sq_rate += dr * dr;
      k_a += omega[static_cast<std::size_t>(j)] * nja;
      k_b += omega[static_cast<std::size_t>(j)] * njb;
    }
    mom.num_p += prob * sq_num;
    mom.rate_p += prob * sq_rate;
    if (p == 3) {
      mom.int_d3 += prob * std::norm(k_a - k_b);
      const cxd r_a = na > 0 ? k_a / static_cast<double>(na) : cxd{0.0, 0.0};
      const cxd r_b = nb > 0 ? k_b / static_cast<double>(nb) : cxd{0.0, 0.0};
      mom.rate_d3 += prob * std::norm(r_a - r_b);
    }
  }
  return mom;
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

double epr_deficit_rates(const OutcomeDistribution& dist, int p) {
  const auto mom = joint_moments(dist);
  return (p + 1) * (p == 3 ? mom.rate_d3 : mom.rate_p);
}

double epr_deficit_numbers(const OutcomeDistribution& dist, int p) {
  const auto mom = joint_moments(dist);
  return (p + 1) * (p == 3 ? mom.int_d3 : mom.num_p);
}

std::optional<double> separable_rhs_rates(const OutcomeDistribution& dist, int p) {
  const auto mom = joint_moments(dist);
  if (!(mom.mean_a > 0.0) || !(mom.mean_b > 0.0)) return std::nullopt;
  if (p == 3) return 3.0 * (mom.inv_a + mom.inv_b);
  return (p - 1) * (1.0 / mom.mean_a + 1.0 / mom.mean_b);
}

double separable_rhs_numbers(const OutcomeDistribution& dist, int p) {
  const auto mom = joint_moments(dist);
  return (p == 3 ? 3.0 : p - 1.0) * (mom.mean_a + mom.mean_b);
}

WitnessReport criterion(CriterionKind kind, const BsvSpec& spec, Efficiency eta,
                        SectorWeighting weighting) {
  validate(spec);
  const bool d3 = kind == CriterionKind::RateD3 || kind == CriterionKind::IntensityD3;
  if (d3 && spec.p != 3)
    throw std::invalid_argument("criterion: d3 criteria require p = 3");

  const auto lossy =
      apply_loss(ideal_joint_distribution(spec, spec.p, weighting), eta);
  const auto mom = joint_moments(lossy);

  WitnessReport rep;
  rep.kind = kind;
  rep.p = spec.p;
  rep.gamma = spec.gamma;
  rep.eta = eta.eta;
  rep.cutoff = spec.cutoff;
  rep.weighting = weighting;
  rep.renormalized = spec.renormalized;
  rep.truncated_mass = truncated_mass(spec, weighting);

  const double settings = spec.p + 1.0;
  const bool evaluable = mom.mean_a > 0.0 && mom.mean_b > 0.0;
  double rhs = kNaN;
  switch (kind) {
    case CriterionKind::RateD3:
      rep.lhs = settings * mom.rate_d3;
      rhs = 3.0 * (mom.inv_a + mom.inv_b);
      break;
    case CriterionKind::IntensityD3:
      rep.lhs = settings * mom.int_d3;
      rhs = 3.0 * (mom.mean_a + mom.mean_b);
      break;
    case CriterionKind::NumberP:
      rep.lhs = settings * mom.num_p;
      rhs = (spec.p - 1.0) * (mom.mean_a + mom.mean_b);
      break;
    case CriterionKind::RateP:
      rep.lhs = settings * mom.rate_p;
      if (evaluable) rhs = (spec.p - 1.0) * (1.0 / mom.mean_a + 1.0 / mom.mean_b);
      break;
  }
  if (!evaluable) {
    rep.rhs = kNaN;
    rep.witness = kNaN;
    rep.verdict = Verdict::NotEvaluable;
    rep.reason = "no photons detected on a marginal; criterion not evaluable";
    return rep;
  }
  rep.rhs = rhs;
  rep.witness = rep.lhs - rep.rhs;
  rep.verdict = rep.witness < 0.0 ? Verdict::Entangled : Verdict::Inconclusive;
  return rep;
}

CriticalEtaResult critical_eta(CriterionKind kind, const BsvSpec& spec,
                               SectorWeighting weighting, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("critical_eta: tol must be positive");
  CriticalEtaResult res;
  auto witness_at = [&](double e) {
    ++res.iterations;
    return criterion(kind, spec, Efficiency(e), weighting);
  };

  const auto at_one = witness_at(1.0);
  if (at_one.verdict == Verdict::NotEvaluable) {
    res.note = "not evaluable at eta = 1 (no photons in the source)";
    return res;
  }
  if (!(at_one.witness < 0.0)) {
    res.note = "criterion never violated on (0, 1]";
    return res;
  }
  double lo = 1e-3;
  double hi = 1.0;
  const auto at_lo = witness_at(lo);
  if (at_lo.verdict == Verdict::NotEvaluable) {
    res.note = "not evaluable near eta = 0; no bracket";
    return res;
  }
  if (at_lo.witness < 0.0) {
    res.note = "violated at all probed efficiencies in [0.001, 1]";
    return res;
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (witness_at(mid).witness < 0.0 ? hi : lo) = mid;
  }
  res.eta_critical = 0.5 * (lo + hi);
  return res;
}

double rate_identity_deviation(int p, int cutoff) {
  if (!is_prime(p)) throw std::invalid_argument("rate_identity_deviation: p must be prime");
  if (cutoff < 1) throw std::invalid_argument("rate_identity_deviation: cutoff must be >= 1");

  std::vector<Occupation> basis;
  for (int n = 1; n <= cutoff; ++n)
    for (auto& occ : enumerate_basis(p, n)) basis.push_back(std::move(occ));
  const auto dim = static_cast<Eigen::Index>(basis.size());

  Eigen::VectorXd inv_n(dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    inv_n(i) = 1.0 / occupation_total(basis[static_cast<std::size_t>(i)]);

  const auto pauli = build_pauli(p);
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(dim, dim);
  for (int m = 0; m <= p; ++m) {
    const Eigen::MatrixXcd r =
        operator_matrix({pauli.m[static_cast<std::size_t>(m)]}, basis) *
        inv_n.asDiagonal();
    sum += r.adjoint() * r;
  }

  Eigen::MatrixXcd rhs = Eigen::MatrixXcd::Zero(dim, dim);
  if (p == 3) {
    // Π + Π(3/N̂)Π
    for (Eigen::Index i = 0; i < dim; ++i) rhs(i, i) = 1.0 + 3.0 * inv_n(i);
  } else {
    // Π (1/N̂²) [Σ_i(n_i² + p n_i n_{i+1}) + pN̂ + Σ_{i≠j} ω^{i−j} n_i n_j] Π
    const auto omega = roots_of_unity(p);
    for (Eigen::Index i = 0; i < dim; ++i) {
      const auto& occ = basis[static_cast<std::size_t>(i)];
      const int total = occupation_total(occ);
      cxd val{static_cast<double>(p) * total, 0.0};
      for (int a = 0; a < p; ++a) {
        const double na = occ[static_cast<std::size_t>(a)];
        val += na * na + p * na * occ[static_cast<std::size_t>((a + 1) % p)];
        for (int b = 0; b < p; ++b) {
          if (a == b) continue;
          val += omega[static_cast<std::size_t>(((a - b) % p + p) % p)] * na *
                 static_cast<double>(occ[static_cast<std::size_t>(b)]);
        }
      }
      rhs(i, i) = val / static_cast<double>(total * total);
    }
  }
  return (sum - rhs).cwiseAbs().maxCoeff();
}

double rate_mean_bound(int p, int samples, int cutoff, std::uint64_t seed) {
  if (!is_prime(p)) throw std::invalid_argument("rate_mean_bound: p must be prime");
  const auto pauli = build_pauli(p);
  std::mt19937_64 rng(seed);
  double max_seen = 0.0;
  for (int i = 0; i < samples; ++i) {
    const StateVector psi = random_state(p, cutoff, rng);
    const StateVector projected = project_out_vacuum(psi);
    const StateVector scaled = scale_by_inverse_total(psi);
    double s = 0.0;
    for (int m = 0; m <= p; ++m)
      s += std::norm(
          inner(projected, apply_quadratic(scaled, {pauli.m[static_cast<std::size_t>(m)]})));
    if (s > max_seen) max_seen = s;
  }
  return max_seen;
}

double complementarity_rates(const StateVector& state, int p) {
  if (!state.single_party() || state.modes_a != p)
    throw std::invalid_argument("complementarity_rates: one-party state over p modes required");
  const StateVector projected = project_out_vacuum(state);
  const StateVector scaled = scale_by_inverse_total(state);
  double total = 0.0;
  for (const auto& setting : build_mub(p)) {
    for (const auto& op : rotated_number_ops(setting)) {
      const double r = inner(projected, apply_quadratic(scaled, op)).real();
      total += r * r;
    }
  }
  return total;
}

double complementarity_numbers(const StateVector& state, int p) {
  if (!state.single_party() || state.modes_a != p)
    throw std::invalid_argument("complementarity_numbers: one-party state over p modes required");
  double total = 0.0;
  for (const auto& setting : build_mub(p)) {
    for (const auto& op : rotated_number_ops(setting)) {
      const double v = expect_quadratic(state, op).real();
      total += v * v;
    }
  }
  return total;
}

namespace {

// Exact per-setting outcome statistics of one analyzed one-party state.
struct SideStats {
  double mean_n = 0.0;            // E[N] (constant across settings)
  double inv_n = 0.0;             // E[1/N; N>0]
  std::vector<double> n1, n2;     // E[n_j], E[n_j²]
  std::vector<double> r1, r2;     // E[r_j], E[r_j²]
  cxd k{0.0, 0.0};                // E[K], p = 3
  double k2 = 0.0;                // E[|K|²]
  cxd r{0.0, 0.0};                // E[R], p = 3
  double rr = 0.0;                // E[|R|²]
};

SideStats side_stats(const StateVector& analyzed, const std::vector<cxd>& omega) {
  const int p = analyzed.modes_a;
  SideStats st;
  st.n1.assign(static_cast<std::size_t>(p), 0.0);
  st.n2.assign(static_cast<std::size_t>(p), 0.0);
  st.r1.assign(static_cast<std::size_t>(p), 0.0);
  st.r2.assign(static_cast<std::size_t>(p), 0.0);
  for (const auto& [key, amp] : analyzed.amps) {
    const double prob = std::norm(amp);
    if (prob == 0.0) continue;
    const Occupation occ = unpack_occupation(key.a, p);
    const int n = occupation_total(occ);
    st.mean_n += prob * n;
    if (n > 0) st.inv_n += prob / n;
    cxd k{0.0, 0.0};
    for (int j = 0; j < p; ++j) {
      const double nj = occ[static_cast<std::size_t>(j)];
      const double rj = n > 0 ? nj / n : 0.0;
      st.n1[static_cast<std::size_t>(j)] += prob * nj;
      st.n2[static_cast<std::size_t>(j)] += prob * nj * nj;
      st.r1[static_cast<std::size_t>(j)] += prob * rj;
      st.r2[static_cast<std::size_t>(j)] += prob * rj * rj;
      k += omega[static_cast<std::size_t>(j)] * nj;
    }
    st.k += prob * k;
    st.k2 += prob * std::norm(k);
    const cxd r = n > 0 ? k / static_cast<double>(n) : cxd{0.0, 0.0};
    st.r += prob * r;
    st.rr += prob * std::norm(r);
  }
  return st;
}

struct ProductEval {
  double lhs = 0.0;
  double rhs = 0.0;
};

}  // namespace

SamplerReport separable_sampler(int p, int samples, std::uint64_t seed) {
  if (!is_prime(p)) throw std::invalid_argument("separable_sampler: p must be prime");
  const int cutoff = 4;
  const auto settings = build_mub(p);
  const auto omega = roots_of_unity(p);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 0.5);

  SamplerReport report;
  report.requested = samples;
  report.min_slack = std::numeric_limits<double>::infinity();

  auto draw_side = [&](bool coherent) {
    if (!coherent) return random_state(p, cutoff, rng);
    std::vector<cxd> alphas(static_cast<std::size_t>(p));
    for (auto& a : alphas) a = cxd{gauss(rng), gauss(rng)};
    return coherent_like_state(alphas, cutoff);
  };

  for (int i = 0; i < samples; ++i) {
    const StateVector side_a = draw_side(i % 2 == 1);
    const StateVector side_b = draw_side((i / 2) % 2 == 1);
    // A valid rate evaluation needs a non-vacuum component on both sides.
    StateVector proj_a = project_out_vacuum(side_a);
    StateVector proj_b = project_out_vacuum(side_b);
    if (proj_a.norm_sq() < 1e-12 || proj_b.norm_sq() < 1e-12) {
      ++report.skipped;
      continue;
    }
    proj_a = normalize(std::move(proj_a));
    proj_b = normalize(std::move(proj_b));

    ProductEval num, rate, intensity, rate_d3;
    double mean_a = 0.0, mean_b = 0.0, pmean_a = 0.0, pmean_b = 0.0;
    double pinv_a = 0.0, pinv_b = 0.0;
    for (int m = 0; m <= p; ++m) {
      // Analyzer in setting m measures along rows of U(m); the partner
      // station uses the conjugate family.
      const Eigen::MatrixXcd va = settings[static_cast<std::size_t>(m)].u.adjoint();
      const SideStats a = side_stats(transform_state(side_a, va), omega);
      const SideStats b =
          side_stats(transform_state(side_b, va.conjugate()), omega);
      const SideStats pa = side_stats(transform_state(proj_a, va), omega);
      const SideStats pb =
          side_stats(transform_state(proj_b, va.conjugate()), omega);
      if (m == 0) {
        mean_a = a.mean_n;
        mean_b = b.mean_n;
        pmean_a = pa.mean_n;
        pmean_b = pb.mean_n;
        pinv_a = pa.inv_n;
        pinv_b = pb.inv_n;
      }
      for (int j = 0; j < p; ++j) {
        const auto ju = static_cast<std::size_t>(j);
        num.lhs += a.n2[ju] + b.n2[ju] - 2.0 * a.n1[ju] * b.n1[ju];
        rate.lhs += pa.r2[ju] + pb.r2[ju] - 2.0 * pa.r1[ju] * pb.r1[ju];
      }
      if (p == 3) {
        intensity.lhs += a.k2 + b.k2 - 2.0 * (a.k * std::conj(b.k)).real();
        rate_d3.lhs += pa.rr + pb.rr - 2.0 * (pa.r * std::conj(pb.r)).real();
      }
    }
    num.rhs = (p - 1.0) * (mean_a + mean_b);
    rate.rhs = (p - 1.0) * (1.0 / pmean_a + 1.0 / pmean_b);
    intensity.rhs = 3.0 * (mean_a + mean_b);
    rate_d3.rhs = 3.0 * (pinv_a + pinv_b);

    auto record = [&](CriterionKind kind, const ProductEval& ev) {
      const double slack = ev.lhs - ev.rhs;
      if (slack < report.min_slack) {
        report.min_slack = slack;
        char buf[160];
        std::snprintf(buf, sizeof buf, "sample %d, %s: lhs %.6g vs rhs %.6g", i,
                      std::string(to_string(kind)).c_str(), ev.lhs, ev.rhs);
        report.worst = buf;
      }
    };
    record(CriterionKind::NumberP, num);
    record(CriterionKind::RateP, rate);
    if (p == 3) {
      record(CriterionKind::IntensityD3, intensity);
      record(CriterionKind::RateD3, rate_d3);
    }
    ++report.evaluated;
  }
  return report;
}

}  // namespace mubsim
