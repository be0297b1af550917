// Copyright 2026 The spintomo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <string>
#include <vector>

#include "spintomo/error.hpp"
#include "spintomo/io.hpp"
#include "spintomo/measurement.hpp"
#include "spintomo/protocol.hpp"
#include "spintomo/reconstruction.hpp"
#include "spintomo/verify.hpp"

namespace py = pybind11;
using namespace spintomo;

namespace {

using ComplexArray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;

CMatrix to_cmatrix(const ComplexArray& a) {
  if (a.ndim() != 2) throw DimensionError("expected a 2-d array");
  CMatrix m(static_cast<std::size_t>(a.shape(0)), static_cast<std::size_t>(a.shape(1)));
  auto v = a.unchecked<2>();
  for (py::ssize_t r = 0; r < a.shape(0); ++r)
    for (py::ssize_t c = 0; c < a.shape(1); ++c) m(r, c) = v(r, c);
  return m;
}

ComplexArray to_array(const CMatrix& m) {
  ComplexArray a({static_cast<py::ssize_t>(m.rows()), static_cast<py::ssize_t>(m.cols())});
  auto v = a.mutable_unchecked<2>();
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) v(r, c) = m(r, c);
  return a;
}

std::map<std::string, double> to_dict(const PauliPolynomial& p) {
  std::map<std::string, double> d;
  for (const auto& [s, c] : p.terms()) d[s.to_string()] = c;
  return d;
}

ModelPreset make_model(const std::string& kind, const std::string& mode, double j) {
  ModelConfig c;
  c.kind = parse_model_kind(kind);
  c.mode = parse_param_mode(mode);
  c.j = j;
  return resolve_model(c);
}

StateKind state_kind(const std::string& s) {
  if (s == "pure") return StateKind::Pure;
  if (s == "mixed") return StateKind::Mixed;
  throw ConfigError("state kind must be 'pure' or 'mixed'");
}

}  // namespace

PYBIND11_MODULE(_spintomo, m) {
  m.doc() = "Spin-qubit state tomography by pulse sequences and single-qubit projective measurement";

  py::register_exception<Error>(m, "SpintomoError", PyExc_ValueError);

  m.def("evolve", [](const ComplexArray& h, double t) { return to_array(evolve(to_cmatrix(h), t)); },
        py::arg("h"), py::arg("t"), "exp(-i h t) for Hermitian h.");
  m.def("expand", [](const ComplexArray& a) { return to_dict(expand(to_cmatrix(a))); }, py::arg("m"),
        "Pauli coefficients Tr(P m) / 2^n of a Hermitian matrix.");
  m.def("pauli_matrix", [](const std::string& s) { return to_array(to_matrix(PauliString::parse(s))); },
        py::arg("label"));
  m.def("pair_hamiltonian", [](double jx, double jy, double jz, double eps_z) {
        return to_array(pair_hamiltonian(jx, jy, jz, eps_z));
      }, py::arg("jx"), py::arg("jy"), py::arg("jz"), py::arg("eps_z") = 0.0);
  m.def("closed_form_u12", [](double jx, double jy, double jz, double eps_z, double t) {
        return to_array(closed_form_u12(TwoQubitParams{jx, jy, jz, eps_z, t}));
      }, py::arg("jx"), py::arg("jy"), py::arg("jz"), py::arg("eps_z"), py::arg("t"));
  m.def("u1", [] { return to_array(u1()); });
  m.def("u2", [] { return to_array(u2()); });

  m.def("equivalent_measurement",
        [](const std::string& sequence, std::size_t pom_qubit, std::size_t n, const std::string& model,
           const std::string& mode) {
          if (pom_qubit == 0) throw ConfigError("pom_qubit is 1-based");
          return to_dict(equivalent_measurement(PulseSequence::parse(sequence), pom_qubit - 1, n,
                                                make_model(model, mode, 1.0)));
        },
        py::arg("sequence"), py::arg("pom_qubit") = 1, py::arg("n") = 2, py::arg("model") = "xy",
        py::arg("mode") = "switchable", "Pauli expansion of W^dag s_z W for a gate string such as 'Y1 U12'.");
  m.def("compile", [](const std::string& sequence, std::size_t n, const std::string& model, const std::string& mode) {
        return to_array(compile(PulseSequence::parse(sequence), n, make_model(model, mode, 1.0)));
      }, py::arg("sequence"), py::arg("n") = 2, py::arg("model") = "xy", py::arg("mode") = "switchable");

  m.def("random_density", [](std::size_t n, const std::string& kind, std::uint64_t seed) {
        return to_array(random_density(n, state_kind(kind), seed).matrix());
      }, py::arg("n"), py::arg("kind") = "pure", py::arg("seed") = 1);
  m.def("to_bloch", [](const ComplexArray& rho) {
        std::map<std::string, double> d;
        const BlochVector b = to_bloch(DensityMatrix(to_cmatrix(rho)));
        for (const auto& [p, v] : b.entries()) d[p.to_string()] = v;
        return d;
      }, py::arg("rho"));
  m.def("from_bloch", [](std::size_t n, const std::map<std::string, double>& r) {
        BlochVector b(n);
        for (const auto& [k, v] : r) b.set(PauliString::parse(k), v);
        return to_array(from_bloch(b).matrix());
      }, py::arg("n"), py::arg("r"));
  m.def("fidelity", [](const ComplexArray& a, const ComplexArray& b) {
        return fidelity(DensityMatrix(to_cmatrix(a)), DensityMatrix(to_cmatrix(b)));
      }, py::arg("a"), py::arg("b"));
  m.def("trace_distance", [](const ComplexArray& a, const ComplexArray& b) {
        return trace_distance(DensityMatrix(to_cmatrix(a)), DensityMatrix(to_cmatrix(b)));
      }, py::arg("a"), py::arg("b"));

  py::class_<TomographyPlan>(m, "Plan")
      .def_readonly("n", &TomographyPlan::n)
      .def_property_readonly("targets", [](const TomographyPlan& p) {
        std::vector<std::string> out;
        for (const auto& t : p.targets) out.push_back(t.to_string());
        return out;
      })
      .def_property_readonly("sequences", [](const TomographyPlan& p) {
        std::vector<std::string> out;
        for (const auto& s : p.settings) out.push_back(s.sequence.to_string());
        return out;
      })
      .def_property_readonly("pom_qubits", [](const TomographyPlan& p) {
        std::vector<std::size_t> out;
        for (const auto& s : p.settings) out.push_back(s.pom_qubit + 1);
        return out;
      })
      .def_property_readonly("ems", [](const TomographyPlan& p) {
        std::vector<std::map<std::string, double>> out;
        for (const auto& s : p.settings) out.push_back(to_dict(s.em));
        return out;
      })
      .def("check", &check_plan)
      .def("fingerprint", &io::plan_fingerprint)
      .def("to_json", [](const TomographyPlan& p) { return io::dump(io::plan_to_json(p)); })
      .def_static("from_json", [](const std::string& s) { return io::plan_from_json(io::json::parse(s)); })
      .def("__len__", [](const TomographyPlan& p) { return p.settings.size(); });

  m.def("plan", [](std::size_t n, const std::string& model, const std::string& mode, std::size_t max_depth,
                   double j) {
        PlannerOptions o;
        o.max_depth = max_depth;
        return plan_tomography(make_model(model, mode, j), n, o);
      }, py::arg("n"), py::arg("model") = "xy", py::arg("mode") = "switchable", py::arg("max_depth") = 4,
      py::arg("j") = 1.0);

  m.def("exact_probabilities", [](const TomographyPlan& plan, const ComplexArray& rho) {
        const DensityMatrix r(to_cmatrix(rho));
        std::vector<double> out;
        for (const auto& s : plan.settings) out.push_back(exact_probability(r, s));
        return out;
      }, py::arg("plan"), py::arg("rho"));
  m.def("simulate", [](const TomographyPlan& plan, const ComplexArray& rho, std::uint64_t shots, std::uint64_t seed) {
        std::vector<std::uint64_t> ones;
        for (const auto& r : simulate(plan, DensityMatrix(to_cmatrix(rho)), shots, seed)) ones.push_back(r.ones);
        return ones;
      }, py::arg("plan"), py::arg("rho"), py::arg("shots"), py::arg("seed"),
      "Counts of |1> outcomes per setting; shots must be positive.");
  m.def("linear_invert", [](const TomographyPlan& plan, const std::vector<double>& probs) {
        std::map<std::string, double> d;
        const BlochVector b = linear_invert(plan, probs);
        for (const auto& [p, v] : b.entries()) d[p.to_string()] = v;
        return d;
      }, py::arg("plan"), py::arg("probs"));
  m.def("reconstruct",
        [](const TomographyPlan& plan, const std::vector<std::uint64_t>& ones, std::uint64_t shots, bool mle) {
          if (ones.size() != plan.settings.size()) throw DimensionError("one count per setting expected");
          std::vector<ShotRecord> recs;
          for (std::size_t i = 0; i < ones.size(); ++i) recs.push_back({i, shots, ones[i], std::nullopt});
          ReconstructionOptions o;
          o.mle = mle;
          const auto r = reconstruct(plan, recs, o);
          py::dict d;
          d["raw"] = to_array(r.raw.matrix());
          d["raw_physical"] = r.raw_physical;
          d["estimate"] = to_array(r.estimate().matrix());
          d["residuals"] = r.residuals;
          if (r.refined) d["log_likelihood"] = r.refined->log_likelihood;
          return d;
        },
        py::arg("plan"), py::arg("ones"), py::arg("shots"), py::arg("mle") = true);

  m.def("verify", [](const std::string& scope) {
        std::vector<std::string> out;
        for (const auto& s : run_verification(scope)) out.push_back(s.to_json().dump());
        return out;
      }, py::arg("scope") = "all", "JSON report per verification suite.");
}
