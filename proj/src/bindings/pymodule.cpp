#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "mubsim/linop.hpp"
#include "mubsim/run.hpp"

namespace py = pybind11;
using namespace mubsim;

namespace {

py::list state_components(const StateVector& state) {
  py::list out;
  for (const auto& [key, amp] : state.amps) {
    py::tuple occ_a = py::cast(unpack_occupation(key.a, state.modes_a));
    py::tuple occ_b = state.single_party()
                          ? py::tuple()
                          : py::tuple(py::cast(unpack_occupation(key.b, state.modes_b)));
    out.append(py::make_tuple(occ_a, occ_b, amp));
  }
  return out;
}

py::list distribution_items(const OutcomeDistribution& dist) {
  py::list out;
  for (const auto& [key, prob] : dist.prob)
    out.append(py::make_tuple(py::cast(unpack_occupation(key.a, dist.modes_per_party)),
                              py::cast(unpack_occupation(key.b, dist.modes_per_party)),
                              prob));
  return out;
}

}  // namespace

PYBIND11_MODULE(_mubsim, m) {
  m.doc() = "multiport MUB entanglement witnesses for bright squeezed vacuum";
  m.attr("__version__") = "0.1.0";

  py::enum_<SectorWeighting>(m, "SectorWeighting")
      .value("STATE_NORM", SectorWeighting::StateNorm)
      .value("LITERAL_APPENDIX_C", SectorWeighting::LiteralAppendixC);

  py::enum_<CriterionKind>(m, "CriterionKind")
      .value("RATE_D3", CriterionKind::RateD3)
      .value("INTENSITY_D3", CriterionKind::IntensityD3)
      .value("NUMBER_P", CriterionKind::NumberP)
      .value("RATE_P", CriterionKind::RateP);

  py::enum_<Verdict>(m, "Verdict")
      .value("ENTANGLED", Verdict::Entangled)
      .value("INCONCLUSIVE", Verdict::Inconclusive)
      .value("NOT_EVALUABLE", Verdict::NotEvaluable);

  py::class_<BsvSpec>(m, "BsvSpec")
      .def(py::init([](int p, double gamma, int cutoff, bool renormalized) {
             BsvSpec spec{p, gamma, cutoff, renormalized};
             validate(spec);
             return spec;
           }),
           py::arg("p") = 3, py::arg("gamma") = 1.0, py::arg("cutoff") = 10,
           py::arg("renormalized") = false)
      .def_readonly("p", &BsvSpec::p)
      .def_readonly("gamma", &BsvSpec::gamma)
      .def_readonly("cutoff", &BsvSpec::cutoff)
      .def_readonly("renormalized", &BsvSpec::renormalized)
      .def("__repr__", [](const BsvSpec& s) {
        std::ostringstream out;
        out << "BsvSpec(p=" << s.p << ", gamma=" << s.gamma << ", cutoff=" << s.cutoff
            << ", renormalized=" << (s.renormalized ? "True" : "False") << ")";
        return out.str();
      });

  py::class_<ModeUnitary>(m, "ModeUnitary")
      .def_readonly("p", &ModeUnitary::p)
      .def_readonly("setting", &ModeUnitary::setting)
      .def_readonly("u", &ModeUnitary::u);

  py::class_<GeneralizedPauli>(m, "GeneralizedPauli")
      .def_readonly("p", &GeneralizedPauli::p)
      .def_readonly("z", &GeneralizedPauli::z)
      .def_readonly("x", &GeneralizedPauli::x)
      .def_readonly("m", &GeneralizedPauli::m);

  py::class_<StateVector>(m, "StateVector")
      .def_readonly("modes_a", &StateVector::modes_a)
      .def_readonly("modes_b", &StateVector::modes_b)
      .def_readonly("cutoff", &StateVector::cutoff)
      .def("norm", &StateVector::norm)
      .def("components", &state_components,
           "list of (occupation_a, occupation_b, amplitude) tuples");

  py::class_<OutcomeDistribution>(m, "OutcomeDistribution")
      .def_readonly("modes_per_party", &OutcomeDistribution::modes_per_party)
      .def("total", &OutcomeDistribution::total)
      .def("items", &distribution_items,
           "list of (occupation_a, occupation_b, probability) tuples");

  py::class_<WitnessReport>(m, "WitnessReport")
      .def_readonly("kind", &WitnessReport::kind)
      .def_readonly("p", &WitnessReport::p)
      .def_readonly("gamma", &WitnessReport::gamma)
      .def_readonly("eta", &WitnessReport::eta)
      .def_readonly("cutoff", &WitnessReport::cutoff)
      .def_readonly("weighting", &WitnessReport::weighting)
      .def_readonly("renormalized", &WitnessReport::renormalized)
      .def_readonly("lhs", &WitnessReport::lhs)
      .def_readonly("rhs", &WitnessReport::rhs)
      .def_readonly("witness", &WitnessReport::witness)
      .def_readonly("verdict", &WitnessReport::verdict)
      .def_readonly("reason", &WitnessReport::reason)
      .def_readonly("truncated_mass", &WitnessReport::truncated_mass)
      .def("__repr__", [](const WitnessReport& r) {
        std::ostringstream out;
        out << "WitnessReport(" << to_string(r.kind) << ", gamma=" << r.gamma
            << ", eta=" << r.eta << ", witness=" << r.witness << ")";
        return out.str();
      });

  py::class_<CriticalEtaResult>(m, "CriticalEtaResult")
      .def_readonly("eta_critical", &CriticalEtaResult::eta_critical)
      .def_readonly("iterations", &CriticalEtaResult::iterations)
      .def_readonly("note", &CriticalEtaResult::note);

  py::class_<SamplerReport>(m, "SamplerReport")
      .def_readonly("requested", &SamplerReport::requested)
      .def_readonly("evaluated", &SamplerReport::evaluated)
      .def_readonly("skipped", &SamplerReport::skipped)
      .def_readonly("min_slack", &SamplerReport::min_slack)
      .def_readonly("worst", &SamplerReport::worst);

  m.def("enumerate_basis", &enumerate_basis, py::arg("modes"), py::arg("total"));
  m.def("is_prime", &is_prime, py::arg("n"));
  m.def("build_mub", &build_mub, py::arg("p"));
  m.def(
      "conjugate_pair", [](const ModeUnitary& u) { return conjugate_pair(u); },
      py::arg("u"));
  m.def("build_pauli", &build_pauli, py::arg("p"));
  m.def("build_bsv", &build_bsv, py::arg("spec"));
  m.def("sector_weights", &sector_weights, py::arg("spec"),
        py::arg("weighting") = SectorWeighting::StateNorm);
  m.def("truncated_mass", &truncated_mass, py::arg("spec"),
        py::arg("weighting") = SectorWeighting::StateNorm);
  m.def("thinning_probability", &thinning_probability, py::arg("m"), py::arg("n"),
        py::arg("eta"));
  m.def(
      "transform_state",
      [](const StateVector& state, const Eigen::MatrixXcd& u) {
        return transform_state(state, u);
      },
      py::arg("state"), py::arg("u"));
  m.def(
      "joint_transform",
      [](const StateVector& state, const Eigen::MatrixXcd& u_a, const Eigen::MatrixXcd& u_b) {
        return joint_transform(state, u_a, u_b);
      },
      py::arg("state"), py::arg("u_a"), py::arg("u_b"));
  m.def("ideal_joint_distribution", &ideal_joint_distribution, py::arg("spec"),
        py::arg("setting"), py::arg("weighting") = SectorWeighting::StateNorm);
  m.def("distribution_from_state", &distribution_from_state, py::arg("state"));
  m.def(
      "apply_loss",
      [](const OutcomeDistribution& dist, double eta, double prune) {
        return apply_loss(dist, Efficiency(eta), prune);
      },
      py::arg("dist"), py::arg("eta"), py::arg("prune") = 1e-16);
  m.def("epr_deficit_rates", &epr_deficit_rates, py::arg("dist"), py::arg("p"));
  m.def("epr_deficit_numbers", &epr_deficit_numbers, py::arg("dist"), py::arg("p"));
  m.def(
      "criterion",
      [](CriterionKind kind, const BsvSpec& spec, double eta, SectorWeighting weighting) {
        return criterion(kind, spec, Efficiency(eta), weighting);
      },
      py::arg("kind"), py::arg("spec"), py::arg("eta") = 1.0,
      py::arg("weighting") = SectorWeighting::StateNorm);
  m.def("critical_eta", &critical_eta, py::arg("kind"), py::arg("spec"),
        py::arg("weighting") = SectorWeighting::StateNorm, py::arg("tol") = 1e-4);
  m.def("rate_identity_deviation", &rate_identity_deviation, py::arg("p"), py::arg("cutoff"));
  m.def("rate_mean_bound", &rate_mean_bound, py::arg("p"), py::arg("samples"),
        py::arg("cutoff"), py::arg("seed"));
  m.def("complementarity_rates", &complementarity_rates, py::arg("state"), py::arg("p"));
  m.def("complementarity_numbers", &complementarity_numbers, py::arg("state"), py::arg("p"));
  m.def("separable_sampler", &separable_sampler, py::arg("p"), py::arg("samples"),
        py::arg("seed"));
  m.def(
      "verify",
      [](std::uint64_t seed) {
        std::ostringstream out;
        const int code = run_verify(out, seed);
        return py::make_tuple(code, out.str());
      },
      py::arg("seed") = 1, "run the verification suite; returns (exit_code, report_text)");
}
