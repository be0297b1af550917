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

#include "spintomo/verify.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

#include "spintomo/error.hpp"
#include "spintomo/random.hpp"

namespace spintomo {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

double uniform(Rng& rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform(); }

io::json params_json(const TwoQubitParams& p) {
  return {{"jx", p.jx}, {"jy", p.jy}, {"jz", p.jz}, {"eps_z", p.eps_z}, {"t", p.t}};
}

ModelPreset preset(ModelKind kind, ParamMode mode = ParamMode::Switchable) {
  ModelConfig c;
  c.kind = kind;
  c.mode = mode;
  return resolve_model(c);
}

}  // namespace

bool SuiteReport::ok() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

io::json SuiteReport::to_json() const {
  io::json cs = io::json::array();
  for (const auto& c : checks) cs.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  return {{"suite", suite}, {"ok", ok()}, {"checks", std::move(cs)}, {"details", body}};
}

SweepStats closed_form_sweep(std::size_t samples, std::uint64_t seed) {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(seed);
  SweepStats st;
  st.samples = samples;
  for (std::size_t k = 0; k < samples; ++k) {
    TwoQubitParams p;
    p.jx = uniform(rng, 0.1, 2.0);
    p.jy = uniform(rng, 0.1, 2.0);
    p.jz = uniform(rng, 0.1, 2.0);
    p.eps_z = uniform(rng, 0.0, 2.0);
    p.t = uniform(rng, 0.0, 4.0);
    if (k % 10 == 9) {
      p.eps_z = 0.0;
      ++st.zero_field_samples;
    }
    if (p.eps_z > 0 && p.jx == p.jy) p.jy = std::nextafter(p.jy, 3.0);
    const CMatrix exact = evolve(pair_hamiltonian(p.jx, p.jy, p.jz, p.eps_z), p.t);
    const double dev = frobenius_distance(closed_form_u12(p, BetaSign::Signed), exact);
    const double lit = frobenius_distance(closed_form_u12(p, BetaSign::Literal), exact);
    if (dev > st.max_deviation) {
      st.max_deviation = dev;
      st.worst = p;
    }
    st.max_deviation_literal = std::max(st.max_deviation_literal, lit);
    if (lit > 1e-8) ++st.literal_failures;
  }
  st.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return st;
}

SuiteReport verify_closed_form(std::size_t samples, std::uint64_t seed) {
  SuiteReport rep;
  rep.suite = "closed-form";
  const SweepStats st = closed_form_sweep(samples, seed);
  rep.checks.push_back({"closed form matches exp(-iHt) over the sweep", st.max_deviation <= 1e-8,
                        "max Frobenius deviation " + fmt(st.max_deviation) + " over " +
                            std::to_string(st.samples) + " sets"});
  rep.checks.push_back({"sweep runtime under 5 s", st.seconds < 5.0, fmt(st.seconds) + " s"});

  const CMatrix xy = evolve(pair_hamiltonian(1, 1, 0, 0), kPi / 8);
  const double d1 = frobenius_distance(u1(), xy);
  rep.checks.push_back({"XY evolution at pi/(8J) equals U1 (phase-sensitive)", d1 <= 1e-10,
                        "Frobenius deviation " + fmt(d1)});

  const CMatrix heis = evolve(pair_hamiltonian(1, 1, 1, 0), kPi / 8);
  const double ov = phase_overlap(u2(), heis);
  const double phase = global_phase(heis, u2());
  rep.checks.push_back({"Heisenberg evolution at pi/(8J) equals U2 up to a global phase",
                        ov >= 1 - 1e-10, "|Tr(A^dag B)|/4 = " + fmt(ov) + ", phase " + fmt(phase)});

  rep.body = {{"samples", st.samples},
              {"seed", seed},
              {"max_deviation", st.max_deviation},
              {"worst_params", params_json(st.worst)},
              {"zero_field_samples", st.zero_field_samples},
              {"unsigned_beta_max_deviation", st.max_deviation_literal},
              {"unsigned_beta_failures", st.literal_failures},
              {"seconds", st.seconds},
              {"u1_deviation", d1},
              {"u2_overlap", ov},
              {"u2_global_phase", phase},
              {"u2_global_phase_over_pi", phase / kPi}};
  return rep;
}

SuiteReport verify_table() {
  SuiteReport rep;
  rep.suite = "table";
  const TableReport t = verify_reference_table();
  io::json rows = io::json::array();
  auto row_json = [](const TableRow& r) {
    return io::json{{"model", r.model},
                    {"operations", r.operations},
                    {"printed", r.printed},
                    {"computed", r.scaled.to_string()},
                    {"scale", r.scale},
                    {"sum_squares", r.em.sum_squares()},
                    {"status", to_string(r.status)},
                    {"consistent", r.consistent},
                    {"detail", r.detail}};
  };
  for (const auto& r : t.rows) rows.push_back(row_json(r));
  rep.checks.push_back({"18 rows recomputed", t.rows.size() == 18, std::to_string(t.rows.size()) + " rows"});
  rep.checks.push_back({"every computed entry has unit norm and +-1 scaled coefficients", t.all_consistent(),
                        std::to_string(t.count(RowStatus::Match)) + " match, " +
                            std::to_string(t.count(RowStatus::Malformed)) + " malformed, " +
                            std::to_string(t.count(RowStatus::SignFlip)) + " sign flip, " +
                            std::to_string(t.count(RowStatus::Mismatch)) + " mismatch"});
  rep.body = {{"rows", std::move(rows)},
              {"worked_example", row_json(t.worked_example)},
              {"canon", "computed entries"}};
  return rep;
}

SuiteReport verify_three_qubit(std::size_t states, std::uint64_t seed) {
  SuiteReport rep;
  rep.suite = "three-qubit";
  const ModelPreset xy = preset(ModelKind::XY);

  SequenceCompiler c3(3, xy);
  const MeasurementSetting chain = make_setting(c3, PulseSequence::parse("Y1 U12 U23"), 0);
  PauliPolynomial printed(3);
  printed.add(PauliString::parse("X00"), -1 / (2 * kSqrt2));
  printed.add(PauliString::parse("ZY0"), -0.25);
  printed.add(PauliString::parse("ZZX"), 0.25);
  PauliPolynomial expected(3);
  expected.add(PauliString::parse("X00"), -1 / kSqrt2);
  expected.add(PauliString::parse("ZY0"), -0.5);
  expected.add(PauliString::parse("ZZX"), 0.5);
  rep.checks.push_back({"chain em is -x00/sqrt2 - zy0/2 + zzx/2", chain.em.approx_equal(expected, 1e-10),
                        chain.em.to_string()});
  rep.checks.push_back({"chain em has unit norm", std::abs(chain.em.sum_squares() - 1) <= 1e-10,
                        "sum c^2 = " + fmt(chain.em.sum_squares())});
  io::json ratios = io::json::object();
  for (const auto& [p, c] : printed.terms()) ratios[p.to_string()] = chain.em.coefficient(p) / c;

  SequenceCompiler c2(2, xy);
  const MeasurementSetting worked = make_setting(c2, PulseSequence::parse("Y1 U12"), 0);
  const MeasurementSetting shortcut = make_setting(c2, PulseSequence::parse("Y2 U12"), 1);
  PauliPolynomial shortcut_expected(2);
  shortcut_expected.add(PauliString::parse("0X"), -1 / kSqrt2);
  shortcut_expected.add(PauliString::parse("YZ"), -1 / kSqrt2);
  rep.checks.push_back({"second-qubit shortcut em is -(0x + yz)/sqrt2",
                        shortcut.em.approx_equal(shortcut_expected, 1e-10), shortcut.em.to_string()});

  double max_p3 = 0.0, max_p2 = 0.0;
  for (std::size_t k = 0; k < states; ++k) {
    const StateKind kind = k % 2 ? StateKind::Mixed : StateKind::Pure;
    const DensityMatrix r3 = random_density(3, kind, derive_seed(seed, k));
    const BlochVector b3 = to_bloch(r3);
    const double p3 = (2 * kSqrt2 + 2 * b3.get(PauliString::parse("X00")) +
                       kSqrt2 * b3.get(PauliString::parse("ZY0")) - kSqrt2 * b3.get(PauliString::parse("ZZX"))) /
                      (4 * kSqrt2);
    max_p3 = std::max(max_p3, std::abs(exact_probability(r3, chain) - p3));

    const DensityMatrix r2 = random_density(2, kind, derive_seed(seed + 1, k));
    const BlochVector b2 = to_bloch(r2);
    const double p2 = (kSqrt2 + b2.get(PauliString::parse("X0")) + b2.get(PauliString::parse("ZY"))) / (2 * kSqrt2);
    max_p2 = std::max(max_p2, std::abs(exact_probability(r2, worked) - p2));
  }
  rep.checks.push_back({"three-qubit probability formula", max_p3 <= 1e-10,
                        "max deviation " + fmt(max_p3) + " over " + std::to_string(states) + " states"});
  rep.checks.push_back({"two-qubit worked probability (x0, zy)", max_p2 <= 1e-10,
                        "max deviation " + fmt(max_p2) + " over " + std::to_string(states) + " states"});

  rep.body = {{"computed_em", io::polynomial_to_json(chain.em)},
              {"printed_em", io::polynomial_to_json(printed)},
              {"computed_over_printed", std::move(ratios)},
              {"note", "printed coefficients are half the computed ones; the printed probability "
                       "formula agrees with the computed expansion"},
              {"worked_em", io::polynomial_to_json(worked.em)},
              {"shortcut_em", io::polynomial_to_json(shortcut.em)},
              {"probability_max_deviation_three_qubit", max_p3},
              {"probability_max_deviation_two_qubit", max_p2}};
  return rep;
}

SuiteReport verify_probability_paths(std::size_t pairs, std::uint64_t seed) {
  SuiteReport rep;
  rep.suite = "probability";
  std::vector<TomographyPlan> plans;
  for (std::size_t n = 1; n <= 3; ++n) plans.push_back(plan_tomography(preset(ModelKind::XY), n));
  Rng rng(seed);
  double worst = 0.0;
  for (std::size_t k = 0; k < pairs; ++k) {
    const auto& plan = plans[k % plans.size()];
    const auto& s = plan.settings[rng.next() % plan.settings.size()];
    const DensityMatrix rho =
        random_density(plan.n, k % 2 ? StateKind::Mixed : StateKind::Pure, derive_seed(seed, k));
    const ProbabilityPaths pp = probability_paths(rho, s);
    worst = std::max(worst, std::abs(pp.direct - pp.em));
  }
  rep.checks.push_back({"direct trace equals em form", worst <= 1e-10,
                        "max deviation " + fmt(worst) + " over " + std::to_string(pairs) + " pairs"});
  rep.body = {{"pairs", pairs}, {"seed", seed}, {"max_deviation", worst}};
  return rep;
}

std::vector<SuiteReport> run_verification(const std::string& scope) {
  std::vector<SuiteReport> out;
  const bool all = scope == "all";
  bool known = all;
  if (all || scope == "table" || scope == "table1") {
    out.push_back(verify_table());
    known = true;
  }
  if (all || scope == "closed-form" || scope == "eq7") {
    out.push_back(verify_closed_form());
    known = true;
  }
  if (all || scope == "three-qubit" || scope == "eq10") {
    out.push_back(verify_three_qubit());
    known = true;
  }
  if (all || scope == "probability") {
    out.push_back(verify_probability_paths());
    known = true;
  }
  if (!known) {
    throw ConfigError("unknown verification scope '" + scope +
                      "' (expected table, closed-form, three-qubit, probability, all, table1, eq7, eq10)");
  }
  return out;
}

}  // namespace spintomo
