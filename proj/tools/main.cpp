#include <cstdint>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "mubsim/run.hpp"

namespace {

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output path: " + path);
  out << content;
  out.flush();
  if (!out) throw std::runtime_error("failed writing output: " + path);
}

struct GridFlags {
  double single = 1.0;
  double lo = 0.0;
  double hi = 1.0;
  int steps = 0;
  CLI::Option* steps_opt = nullptr;

  std::vector<double> resolve(const char* name) const {
    if (steps_opt->count() == 0) return {single};
    if (lo > hi)
      throw std::invalid_argument(std::string(name) + "-min exceeds " + name + "-max");
    return mubsim::linspace(lo, hi, steps);
  }
};

// --gamma 1.2 or --gamma-min/--gamma-max/--gamma-steps (and same for eta).
void add_grid(CLI::App* cmd, GridFlags& grid, const std::string& name,
              double single_default, double cap_hi) {
  grid.single = single_default;
  auto range = cap_hi > 0 ? CLI::Range(0.0, cap_hi) : CLI::Validator(CLI::NonNegativeNumber);
  auto* single = cmd->add_option("--" + name, grid.single, "single " + name + " value")
                     ->check(range)
                     ->capture_default_str();
  auto* lo = cmd->add_option("--" + name + "-min", grid.lo, name + " grid start")->check(range);
  auto* hi = cmd->add_option("--" + name + "-max", grid.hi, name + " grid end")->check(range);
  grid.steps_opt = cmd->add_option("--" + name + "-steps", grid.steps, name + " grid size")
                       ->check(CLI::PositiveNumber);
  lo->needs(hi)->needs(grid.steps_opt)->excludes(single);
  hi->needs(lo);
  grid.steps_opt->needs(lo);
}

struct CriterionFlags {
  std::string criterion = "rate-d3";
  std::string weighting = "state-norm";
  bool renormalized = false;
  CLI::Option* renorm_opt = nullptr;

  void apply(mubsim::RunConfig& config) const {
    config.kind = *mubsim::parse_criterion(criterion);
    config.weighting = *mubsim::parse_weighting(weighting);
    if (renorm_opt->count()) config.renormalized = renormalized;
  }
};

void add_criterion(CLI::App* cmd, CriterionFlags& flags) {
  cmd->add_option("--criterion", flags.criterion, "separability criterion")
      ->check(CLI::IsMember({"rate-d3", "intensity-d3", "number-p", "rate-p"}))
      ->capture_default_str();
  cmd->add_option("--weighting", flags.weighting, "sector weighting convention")
      ->check(CLI::IsMember({"state-norm", "literal-appendix-c"}))
      ->capture_default_str();
  flags.renorm_opt = cmd->add_flag(
      "--renormalized,!--no-renormalized", flags.renormalized,
      "drop the vacuum sector before evaluating (default: on for rate criteria)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multiport MUB entanglement witnesses for bright squeezed vacuum"};
  app.require_subcommand(1);

  auto* cmd_mub = app.add_subcommand("mub", "export the p+1 MUB unitaries as JSON");
  int mub_p = 3;
  std::string mub_out;
  cmd_mub->add_option("--p", mub_p, "prime dimension")->capture_default_str();
  cmd_mub->add_option("-o,--output", mub_out, "output path (default stdout)");

  auto* cmd_witness =
      app.add_subcommand("witness", "evaluate one criterion at a single point (JSON)");
  int wit_p = 3, wit_cutoff = 10;
  double wit_gamma = 1.0, wit_eta = 1.0;
  std::string wit_out;
  cmd_witness->add_option("--p", wit_p, "prime dimension")->capture_default_str();
  cmd_witness->add_option("--gamma", wit_gamma, "squeezing gain")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd_witness->add_option("--eta", wit_eta, "detection efficiency")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmd_witness->add_option("--cutoff", wit_cutoff, "total-photon cutoff per party")
      ->check(CLI::Range(0, 15))
      ->capture_default_str();
  CriterionFlags wit_crit;
  add_criterion(cmd_witness, wit_crit);
  cmd_witness->add_option("-o,--output", wit_out, "output path (default stdout)");

  auto* cmd_sweep = app.add_subcommand("sweep", "criterion over a (gamma, eta) grid (CSV)");
  int sweep_p = 3, sweep_cutoff = 10, sweep_jobs = 1;
  std::string sweep_out;
  cmd_sweep->add_option("--p", sweep_p, "prime dimension")->capture_default_str();
  GridFlags sweep_gamma, sweep_eta;
  add_grid(cmd_sweep, sweep_gamma, "gamma", 1.0, -1.0);
  add_grid(cmd_sweep, sweep_eta, "eta", 1.0, 1.0);
  cmd_sweep->add_option("--cutoff", sweep_cutoff, "total-photon cutoff per party")
      ->check(CLI::Range(0, 15))
      ->capture_default_str();
  CriterionFlags sweep_crit;
  add_criterion(cmd_sweep, sweep_crit);
  cmd_sweep->add_option("--jobs", sweep_jobs, "parallel evaluations")
      ->check(CLI::Range(1, 256))
      ->capture_default_str();
  cmd_sweep->add_option("-o,--output", sweep_out, "output path (default stdout)");

  auto* cmd_critical =
      app.add_subcommand("critical-eta", "bisect the witness sign change per gamma (JSON)");
  int crit_p = 3, crit_cutoff = 10;
  std::string crit_out;
  cmd_critical->add_option("--p", crit_p, "prime dimension")->capture_default_str();
  GridFlags crit_gamma;
  add_grid(cmd_critical, crit_gamma, "gamma", 1.0, -1.0);
  cmd_critical->add_option("--cutoff", crit_cutoff, "total-photon cutoff per party")
      ->check(CLI::Range(0, 15))
      ->capture_default_str();
  CriterionFlags crit_crit;
  add_criterion(cmd_critical, crit_crit);
  cmd_critical->add_option("-o,--output", crit_out, "output path (default stdout)");

  auto* cmd_verify = app.add_subcommand("verify", "run the full verification suite");
  std::uint64_t verify_seed = 1;
  cmd_verify->add_option("--seed", verify_seed, "sampling seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (cmd_mub->parsed()) {
      write_output(mub_out, mubsim::mub_json(mub_p));
    } else if (cmd_witness->parsed()) {
      mubsim::RunConfig config;
      config.p = wit_p;
      config.gammas = {wit_gamma};
      config.etas = {wit_eta};
      config.cutoff = wit_cutoff;
      wit_crit.apply(config);
      write_output(wit_out, mubsim::witness_json(config));
    } else if (cmd_sweep->parsed()) {
      mubsim::RunConfig config;
      config.p = sweep_p;
      config.gammas = sweep_gamma.resolve("gamma");
      config.etas = sweep_eta.resolve("eta");
      config.cutoff = sweep_cutoff;
      config.jobs = sweep_jobs;
      sweep_crit.apply(config);
      write_output(sweep_out, mubsim::sweep_csv(config));
    } else if (cmd_critical->parsed()) {
      mubsim::RunConfig config;
      config.p = crit_p;
      config.gammas = crit_gamma.resolve("gamma");
      config.cutoff = crit_cutoff;
      crit_crit.apply(config);
      write_output(crit_out, mubsim::critical_eta_json(config));
    } else if (cmd_verify->parsed()) {
      return mubsim::run_verify(std::cout, verify_seed);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
