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

#include "spintomo/reconstruction.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "spintomo/error.hpp"

namespace spintomo {

BlochVector linear_invert(const TomographyPlan& plan, const std::vector<double>& probs) {
  if (probs.size() != plan.settings.size()) {
    throw DimensionError("linear_invert: " + std::to_string(probs.size()) + " probabilities for " +
                         std::to_string(plan.settings.size()) + " settings");
  }
  BlochVector r(plan.n);
  std::set<PauliString> determined;
  for (std::size_t i = 0; i < plan.settings.size(); ++i) {
    const auto& em = plan.settings[i].em;
    const PauliString& target = plan.targets[i];
    double rhs = 1.0 - 2.0 * probs[i];
    for (const auto& [q, c] : em.terms()) {
      if (q == target) continue;
      if (!determined.count(q)) {
        throw PlanError("setting " + std::to_string(i) + " (target " + target.to_string() +
                        ") depends on undetermined coefficient " + q.to_string());
      }
      rhs -= c * r.get(q);
    }
    r.set(target, rhs / em.coefficient(target));
    determined.insert(target);
  }
  return r;
}

DensityMatrix psd_project(const CMatrix& h) {
  const EigenSystem es = herm_eigen(h);
  double total = 0.0;
  for (double e : es.eigenvalues) total += std::max(e, 0.0);
  if (total <= 0.0) throw DomainError("psd_project: no positive eigenvalue");
  CMatrix m = apply_spectral(es, [total](double e) { return std::max(e, 0.0) / total; });
  return DensityMatrix(0.5 * (m + m.adjoint()));
}

namespace {

struct Observation {
  CMatrix e;  // W^dag (|1><1|)_l W
  double weight = 0.0;
  double freq = 0.0;
};

std::vector<Observation> observations(const TomographyPlan& plan, const std::vector<ShotRecord>& records) {
  if (records.empty()) throw DomainError("no shot records");
  std::vector<Observation> obs;
  for (const auto& rec : records) {
    if (rec.setting >= plan.settings.size())
      throw DimensionError("record refers to setting " + std::to_string(rec.setting) + " outside the plan");
    if (!rec.exact() && rec.ones > rec.shots)
      throw DomainError("record " + std::to_string(rec.setting) + " has more ones than shots");
    const auto& s = plan.settings[rec.setting];
    const std::size_t d = s.unitary.rows();
    Observation o;
    o.e = (CMatrix::identity(d) - s.em.to_matrix()) * cplx(0.5);
    o.weight = rec.exact() ? 1.0 : static_cast<double>(rec.shots);
    o.freq = rec.p_hat();
    obs.push_back(std::move(o));
  }
  return obs;
}

double prob(const CMatrix& rho, const CMatrix& e) {
  double s = 0.0;
  for (std::size_t i = 0; i < rho.rows(); ++i)
    for (std::size_t j = 0; j < rho.cols(); ++j) s += (rho(i, j) * e(j, i)).real();
  return s;
}

double loglik(const std::vector<Observation>& obs, const CMatrix& rho, double floor) {
  double l = 0.0;
  for (const auto& o : obs) {
    const double p = std::clamp(prob(rho, o.e), floor, 1.0 - floor);
    if (o.freq > 0) l += o.weight * o.freq * std::log(p);
    if (o.freq < 1) l += o.weight * (1.0 - o.freq) * std::log(1.0 - p);
  }
  return l;
}

CMatrix normalized(const CMatrix& t) {
  CMatrix rho = t * t.adjoint();
  rho = 0.5 * (rho + rho.adjoint());
  rho *= 1.0 / rho.trace().real();
  return rho;
}

}  // namespace

double log_likelihood(const TomographyPlan& plan, const std::vector<ShotRecord>& records,
                      const CMatrix& rho, double floor) {
  return loglik(observations(plan, records), rho, floor);
}

MleResult mle_refine(const TomographyPlan& plan, const std::vector<ShotRecord>& records,
                     const DensityMatrix& init, const MleOptions& options) {
  if (init.qubits() != plan.n) throw DimensionError("mle_refine: init and plan differ in qubit count");
  if (!init.physical()) throw DomainError("mle_refine: init has a negative eigenvalue");
  const auto obs = observations(plan, records);
  const std::size_t d = init.dim();
  double total_weight = 0.0;
  for (const auto& o : obs) total_weight += o.weight;

  CMatrix t = apply_spectral(herm_eigen(init.matrix()), [](double e) { return std::sqrt(std::max(e, 0.0)); });
  CMatrix rho = normalized(t);
  double l = loglik(obs, rho, options.probability_floor);

  MleResult res;
  res.log_likelihood.push_back(l);
  double eps = 1.0;
  const CMatrix id = CMatrix::identity(d);
  for (res.iterations = 0; res.iterations < options.max_iterations;) {
    CMatrix r = CMatrix::zeros(d, d);
    for (const auto& o : obs) {
      const double p = std::clamp(prob(rho, o.e), options.probability_floor, 1.0 - options.probability_floor);
      r += o.e * cplx(o.weight * (o.freq / p - (1.0 - o.freq) / (1.0 - p)));
      r += id * cplx(o.weight * (1.0 - o.freq) / (1.0 - p));
    }
    r *= 1.0 / total_weight;
    r = 0.5 * (r + r.adjoint());

    bool accepted = false;
    CMatrix t_new, rho_new;
    double l_new = l;
    for (int k = 0; k < 40; ++k, eps *= 0.5) {
      t_new = (id + r * cplx(eps)) * t;
      rho_new = normalized(t_new);
      l_new = loglik(obs, rho_new, options.probability_floor);
      if (l_new >= l) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      res.converged = true;
      break;
    }
    ++res.iterations;
    const double change = std::abs(l_new - l) / std::max(std::abs(l), 1e-300);
    t = t_new * cplx(1.0 / std::sqrt((t_new * t_new.adjoint()).trace().real()));
    rho = rho_new;
    l = l_new;
    res.log_likelihood.push_back(l);
    eps = std::min(eps * 2.0, 100.0);
    if (change < options.tolerance) {
      res.converged = true;
      break;
    }
  }
  res.rho = DensityMatrix(rho);
  return res;
}

ReconstructionResult reconstruct(const TomographyPlan& plan, const std::vector<ShotRecord>& records,
                                 const ReconstructionOptions& options,
                                 const std::optional<DensityMatrix>& truth) {
  if (records.size() != plan.settings.size())
    throw DimensionError("reconstruct: expected one record per plan setting");
  std::vector<double> probs(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records[i].setting != i) throw DimensionError("reconstruct: records are not in plan order");
    probs[i] = records[i].p_hat();
  }

  ReconstructionResult res;
  res.raw_bloch = linear_invert(plan, probs);
  res.raw = from_bloch(res.raw_bloch);
  res.raw_physical = res.raw.physical();
  res.projected = psd_project(res.raw.matrix());
  if (options.mle && res.raw_physical) {
    // A physical inversion reproduces every frequency, so it already
    // maximizes the likelihood.
    MleResult at_raw{res.projected, {}, 0, true};
    at_raw.log_likelihood.push_back(
        log_likelihood(plan, records, res.projected.matrix(), options.mle_options.probability_floor));
    res.refined = std::move(at_raw);
  } else if (options.mle) {
    const std::size_t d = res.projected.dim();
    CMatrix init = res.projected.matrix() * cplx(1.0 - options.init_mixing) +
                   CMatrix::identity(d) * cplx(options.init_mixing / static_cast<double>(d));
    res.refined = mle_refine(plan, records, DensityMatrix(0.5 * (init + init.adjoint())), options.mle_options);
  }
  const DensityMatrix& est = res.estimate();
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto paths = probability_paths(est, plan.settings[i]);
    res.residuals.push_back(std::abs(paths.direct - probs[i]));
  }
  if (truth) {
    ReconstructionMetrics m;
    m.fidelity = fidelity(est, *truth);
    m.trace_distance = trace_distance(est, *truth);
    m.raw_fidelity = res.raw_physical ? fidelity(res.raw, *truth) : std::nan("");
    m.raw_trace_distance = trace_distance(res.raw, *truth);
    res.metrics = m;
  }
  return res;
}

}  // namespace spintomo
