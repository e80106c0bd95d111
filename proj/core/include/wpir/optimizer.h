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
//
// Exact rate maximization over mixing distributions. The feasible region is
// the probability simplex cut by one linear leakage constraint, so every
// optimal vertex has support size at most two; enumerating feasible
// singletons and constraint-tight pairs yields the global optimum with no
// tolerance drift.

#ifndef WPIR_OPTIMIZER_H_
#define WPIR_OPTIMIZER_H_

#include <vector>

#include "wpir/analytics.h"
#include "wpir/model.h"

namespace wpir {

// Storage-ratio thresholds below which the two-point distribution is
// class-wise optimal for the coded and colluding settings (replicated
// storage is unconditional).
inline constexpr double kMilRatioThreshold = 0.7828;
inline constexpr double kMaxlRatioThreshold = 0.68;

// Linear program data: maximize <objective, p> subject to
// <constraint, p> <= Budget(rho) over the simplex. The objective is the
// download-expectation weight vector; the constraint row is the leakage
// coefficient vector in native scale (rho for Mil, 2^rho for Maxl).
struct LpCoefficients {
  Metric metric = Metric::kMil;
  std::vector<double> objective;   // strictly decreasing in m'
  std::vector<double> constraint;  // non-increasing for m' >= 1

  double Budget(double rho) const;
};

LpCoefficients ComputeLpCoefficients(const SchemeParams& params,
                                     Metric metric);

struct LpSolution {
  MixingDistribution distribution;
  double objective_value = 0.0;  // <objective, p>
  double rate = 0.0;
  std::vector<int> support;  // indices with positive mass, |support| <= 2
  bool constraint_tight = false;
};

// Globally optimal solution by vertex enumeration. Never infeasible: the
// point mass at m' = M-1 satisfies every nonnegative budget. Ties are broken
// toward support {0, M-1}, then toward the lexicographically smallest
// support, so within-threshold optima reproduce TheoremDistribution
// bit for bit.
LpSolution SolveOptimal(const SchemeParams& params, Metric metric, double rho);

// Interior-direction diagnostics, one value per m' in [1, M-2]:
//   D[m'] = (c[m'] - c[M-1]) - (b[m']/b[0]) * (c[0] - c[M-1]).
// A positive entry signals that moving mass onto that interior point can
// beat the two-point trade-off. Empty for M = 2.
struct DiagnosticsReport {
  std::vector<double> d;           // indexed by m' - 1
  bool within_threshold = false;   // ThresholdOk(params, metric)
  std::vector<int> positive_indices;  // m' values with d > 0
};

DiagnosticsReport DCoefficients(const SchemeParams& params, Metric metric);

// Objective sensitivities along the budget-tight manifold, one per m' in
// [1, M-2]:
//   (c[m'] - c[M-1]) - ((b[m'] - b[M-1]) / (b[0] - b[M-1])) * (c[0] - c[M-1]).
// For Mil this coincides with DCoefficients (b[M-1] = 0). For Maxl the
// constraint's last coefficient is 1, and these shifted values, not the
// plain diagnostics, govern when interior support improves the optimum.
std::vector<double> TightSupportGains(const SchemeParams& params,
                                      Metric metric);

// Whether the parameters sit in the regime where the two-point distribution
// is known to be class-wise optimal: always for replicated storage,
// otherwise ratio <= 0.7828 (Mil) or ratio <= 0.68 (Maxl).
bool ThresholdOk(const SchemeParams& params, Metric metric);

struct TheoremComparison {
  double theorem_rate = 0.0;
  double lp_rate = 0.0;
  double gap = 0.0;  // lp_rate - theorem_rate, >= -1e-12
  std::vector<int> lp_support;
  DiagnosticsReport diagnostics;
};

TheoremComparison CompareWithTheorem(const SchemeParams& params, Metric metric,
                                     double rho);

}  // namespace wpir

#endif  // WPIR_OPTIMIZER_H_
