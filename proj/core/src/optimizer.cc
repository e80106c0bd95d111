// Copyright 2026 The wpir-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "wpir/optimizer.h"

#include <algorithm>
#include <cmath>

namespace wpir {

namespace {

constexpr double kTightTolerance = 1e-12;

// Tie rank: the {0, M-1} support wins every tie, then smaller supports in
// lexicographic order.
bool PreferredOver(const std::vector<int>& a, const std::vector<int>& b,
                   int m_files) {
  const std::vector<int> endpoints = {0, m_files - 1};
  const bool a_end = (a == endpoints);
  const bool b_end = (b == endpoints);
  if (a_end != b_end) return a_end;
  return a < b;
}

struct Candidate {
  std::vector<double> probs;
  std::vector<int> support;
  double value = 0.0;
};

}  // namespace

double LpCoefficients::Budget(double rho) const {
  return metric == Metric::kMil ? rho : std::exp2(rho);
}

LpCoefficients ComputeLpCoefficients(const SchemeParams& params,
                                     Metric metric) {
  LpCoefficients coeffs;
  coeffs.metric = metric;
  coeffs.objective = RateMixWeights(params);
  coeffs.constraint = LeakageCoefficients(params, metric);
  return coeffs;
}

LpSolution SolveOptimal(const SchemeParams& params, Metric metric,
                        double rho) {
  if (!(rho >= 0.0)) {
    throw InvalidArgumentError("leakage budget must be nonnegative");
  }
  const LpCoefficients coeffs = ComputeLpCoefficients(params, metric);
  const std::vector<double>& c = coeffs.objective;
  const std::vector<double>& b = coeffs.constraint;
  const int m_files = params.n_files;
  const double beta = coeffs.Budget(rho);

  bool have_best = false;
  Candidate best;

  auto consider = [&](Candidate candidate) {
    if (!have_best || candidate.value > best.value ||
        (candidate.value == best.value &&
         PreferredOver(candidate.support, best.support, m_files))) {
      best = std::move(candidate);
      have_best = true;
    }
  };

  // Singletons are admitted within the documented feasibility slack so that
  // a budget equal to the cap still yields the pure m' = 0 vertex even when
  // exp2(log2(.)) rounds one ulp short.
  const double slack = kTightTolerance * std::max(1.0, std::abs(beta));

  // Simplex vertices inside the half-space.
  for (int i = 0; i < m_files; ++i) {
    if (b[i] <= beta + slack) {
      Candidate candidate;
      candidate.probs.assign(m_files, 0.0);
      candidate.probs[i] = 1.0;
      candidate.support = {i};
      candidate.value = c[i];
      consider(std::move(candidate));
    }
  }

  // Vertices where the budget constraint is tight between two coordinates.
  for (int i = 0; i < m_files; ++i) {
    for (int j = i + 1; j < m_files; ++j) {
      if (b[i] == b[j]) continue;
      const double t = (beta - b[j]) / (b[i] - b[j]);
      if (!(t > 0.0 && t < 1.0)) continue;
      Candidate candidate;
      candidate.probs.assign(m_files, 0.0);
      candidate.probs[i] = t;
      candidate.probs[j] = 1.0 - t;
      candidate.support = {i, j};
      candidate.value = t * c[i] + (1.0 - t) * c[j];
      consider(std::move(candidate));
    }
  }

  LpSolution solution;
  solution.distribution.probs = best.probs;
  solution.support = best.support;
  solution.objective_value = best.value;
  solution.rate = (1.0 - params.ratio) / (1.0 - best.value);
  double used = 0.0;
  for (int i = 0; i < m_files; ++i) used += best.probs[i] * b[i];
  solution.constraint_tight =
      std::abs(used - beta) <= kTightTolerance * std::max(1.0, std::abs(beta));
  return solution;
}

DiagnosticsReport DCoefficients(const SchemeParams& params, Metric metric) {
  const LpCoefficients coeffs = ComputeLpCoefficients(params, metric);
  const std::vector<double>& c = coeffs.objective;
  const std::vector<double>& b = coeffs.constraint;
  const int m_files = params.n_files;

  DiagnosticsReport report;
  report.within_threshold = ThresholdOk(params, metric);
  const double endpoint_span = c[0] - c[m_files - 1];
  for (int m = 1; m <= m_files - 2; ++m) {
    const double value =
        (c[m] - c[m_files - 1]) - (b[m] / b[0]) * endpoint_span;
    report.d.push_back(value);
    if (value > 0.0) report.positive_indices.push_back(m);
  }
  return report;
}

std::vector<double> TightSupportGains(const SchemeParams& params,
                                      Metric metric) {
  const LpCoefficients coeffs = ComputeLpCoefficients(params, metric);
  const std::vector<double>& c = coeffs.objective;
  const std::vector<double>& b = coeffs.constraint;
  const int m_files = params.n_files;

  std::vector<double> gains;
  const double endpoint_span = c[0] - c[m_files - 1];
  const double denom = b[0] - b[m_files - 1];
  for (int m = 1; m <= m_files - 2; ++m) {
    gains.push_back((c[m] - c[m_files - 1]) -
                    ((b[m] - b[m_files - 1]) / denom) * endpoint_span);
  }
  return gains;
}

bool ThresholdOk(const SchemeParams& params, Metric metric) {
  if (params.strength == 1) return true;
  const double threshold =
      metric == Metric::kMil ? kMilRatioThreshold : kMaxlRatioThreshold;
  return params.ratio <= threshold;
}

TheoremComparison CompareWithTheorem(const SchemeParams& params, Metric metric,
                                     double rho) {
  TheoremComparison comparison;
  comparison.theorem_rate = TheoremRate(params, metric, rho);
  LpSolution lp = SolveOptimal(params, metric, rho);
  comparison.lp_rate = lp.rate;
  comparison.gap = comparison.lp_rate - comparison.theorem_rate;
  comparison.lp_support = std::move(lp.support);
  comparison.diagnostics = DCoefficients(params, metric);
  return comparison;
}

}  // namespace wpir
