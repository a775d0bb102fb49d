#include "mubsim/run.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace mubsim {

bool default_renormalized(CriterionKind kind) {
  return kind == CriterionKind::RateD3 || kind == CriterionKind::RateP;
}

bool renormalized_for(const RunConfig& config) {
  return config.renormalized.value_or(default_renormalized(config.kind));
}

std::vector<double> linspace(double lo, double hi, int steps) {
  if (steps < 1) throw std::invalid_argument("linspace: steps must be >= 1");
  if (steps == 1) return {lo};
  std::vector<double> grid(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i)
    grid[static_cast<std::size_t>(i)] = lo + i * (hi - lo) / (steps - 1);
  return grid;
}

std::string format_sig12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

std::string json_number(double v) {
  if (!std::isfinite(v)) return "null";
  return format_sig12(v);
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

BsvSpec spec_for(const RunConfig& config, double gamma) {
  return {config.p, gamma, config.cutoff, renormalized_for(config)};
}

}  // namespace

std::string mub_json(int p) {
  const auto settings = build_mub(p);
  double max_unitarity = 0.0;
  double max_overlap = 0.0;
  for (std::size_t i = 0; i < settings.size(); ++i) {
    max_unitarity = std::max(max_unitarity, unitarity_deviation(settings[i]));
    for (std::size_t j = i + 1; j < settings.size(); ++j)
      max_overlap = std::max(max_overlap, unbiasedness_deviation(settings[i], settings[j]));
  }

  std::ostringstream out;
  out << "{\n  \"p\": " << p << ",\n  \"settings\": [\n";
  for (std::size_t i = 0; i < settings.size(); ++i) {
    const auto& s = settings[i];
    out << "    {\"m\": " << s.setting << ", \"matrix\": [";
    for (int r = 0; r < p; ++r) {
      out << (r ? ", [" : "[");
      for (int c = 0; c < p; ++c) {
        const cxd v = s.u(r, c);
        out << (c ? ", [" : "[") << json_number(v.real()) << ", "
            << json_number(v.imag()) << "]";
      }
      out << "]";
    }
    out << "]}" << (i + 1 < settings.size() ? "," : "") << "\n";
  }
  out << "  ],\n  \"certification\": {\"max_unitarity_dev\": " << json_number(max_unitarity)
      << ", \"max_overlap_dev\": " << json_number(max_overlap)
      << ", \"tolerance\": 1e-12, \"pass\": "
      << bool_str(max_unitarity < 1e-12 && max_overlap < 1e-12) << "}\n}\n";
  return out.str();
}

namespace {

std::string witness_report_json(const WitnessReport& rep) {
  std::ostringstream out;
  out << "{\n"
      << "  \"criterion\": \"" << to_string(rep.kind) << "\",\n"
      << "  \"p\": " << rep.p << ",\n"
      << "  \"gamma\": " << json_number(rep.gamma) << ",\n"
      << "  \"eta\": " << json_number(rep.eta) << ",\n"
      << "  \"cutoff\": " << rep.cutoff << ",\n"
      << "  \"weighting\": \"" << to_string(rep.weighting) << "\",\n"
      << "  \"renormalized\": " << bool_str(rep.renormalized) << ",\n"
      << "  \"lhs\": " << json_number(rep.lhs) << ",\n"
      << "  \"rhs\": " << json_number(rep.rhs) << ",\n"
      << "  \"witness\": " << json_number(rep.witness) << ",\n"
      << "  \"verdict\": \""
      << (rep.verdict == Verdict::Entangled ? "entangled" : "inconclusive") << "\",\n";
  if (rep.verdict == Verdict::NotEvaluable)
    out << "  \"reason\": \"" << rep.reason << "\",\n";
  out << "  \"truncated_mass\": " << json_number(rep.truncated_mass) << "\n}\n";
  return out.str();
}

}  // namespace

std::string witness_json(const RunConfig& config) {
  const auto rep = criterion(config.kind, spec_for(config, config.gammas.front()),
                             Efficiency(config.etas.front()), config.weighting);
  return witness_report_json(rep);
}

std::string sweep_csv(const RunConfig& config) {
  const std::size_t n_gamma = config.gammas.size();
  const std::size_t n_eta = config.etas.size();
  const std::size_t n_points = n_gamma * n_eta;
  std::vector<WitnessReport> reports(n_points);

  const int jobs = std::max(1, config.jobs);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < n_points; i = next.fetch_add(1)) {
      const double gamma = config.gammas[i / n_eta];
      const double eta = config.etas[i % n_eta];
      reports[i] =
          criterion(config.kind, spec_for(config, gamma), Efficiency(eta), config.weighting);
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(jobs));
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::ostringstream out;
  out << "criterion,p,gamma,eta,cutoff,lhs,rhs,witness,entangled\n";
  for (const auto& rep : reports) {
    out << to_string(rep.kind) << ',' << rep.p << ',' << format_sig12(rep.gamma) << ','
        << format_sig12(rep.eta) << ',' << rep.cutoff << ',' << format_sig12(rep.lhs) << ','
        << format_sig12(rep.rhs) << ',' << format_sig12(rep.witness) << ','
        << bool_str(rep.verdict == Verdict::Entangled) << '\n';
  }
  return out.str();
}

std::string critical_eta_json(const RunConfig& config) {
  std::ostringstream out;
  out << "[\n";
  for (std::size_t i = 0; i < config.gammas.size(); ++i) {
    const double gamma = config.gammas[i];
    const auto res = critical_eta(config.kind, spec_for(config, gamma), config.weighting);
    out << "  {\"gamma\": " << json_number(gamma) << ", \"eta_critical\": "
        << (res.eta_critical ? json_number(*res.eta_critical) : "null")
        << ", \"iterations\": " << res.iterations;
    if (!res.note.empty()) out << ", \"reason\": \"" << res.note << "\"";
    out << "}" << (i + 1 < config.gammas.size() ? "," : "") << "\n";
  }
  out << "]\n";
  return out.str();
}

}  // namespace mubsim
