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
// Closed-form rate and leakage calculus for the mixing-distribution family
// of weak retrieval schemes, plus the two-point distributions that realize
// the published achievable trade-offs. All functions are pure and reentrant.

#ifndef WPIR_ANALYTICS_H_
#define WPIR_ANALYTICS_H_

#include <vector>

#include "wpir/model.h"

namespace wpir {

// Weights of the download expectation: w[m'] = q^(m'+1) for m' in [0, M-1].
// The retrieval rate is (1 - q) / (1 - <w, p>). Computed by iterated
// multiplication so every module sees bit-identical coefficients.
std::vector<double> RateMixWeights(const SchemeParams& params);

// Per-m' leakage coefficients, in the metric's native scale.
//
// Mil (bits, linear in p): b[0] = s*log2(M)/N, b[m'] = log2(M/(m'+1)) for
// m' in [1, M-2], b[M-1] = 0.
// Maxl (inside the log): b[0] = (N + s*(M-1))/N, b[m'] = M/(m'+1) for
// m' in [1, M-1]. The achieved leakage is log2(<b, p>).
std::vector<double> LeakageCoefficients(const SchemeParams& params,
                                        Metric metric);

// Retrieval rate (1 - q) / (1 - E[q^(M'+1)]), in (0, 1]. Equals 1 exactly
// when p is the point mass at m' = 0.
double RetrievalRate(const SchemeParams& params, const MixingDistribution& p);

// Average per-server mutual-information leakage, in bits.
double MilLeakage(const SchemeParams& params, const MixingDistribution& p);

// Worst-server maximal leakage, in bits.
double MaxlLeakage(const SchemeParams& params, const MixingDistribution& p);

double Leakage(const SchemeParams& params, Metric metric,
               const MixingDistribution& p);

// Budget at which the trade-off saturates and rate 1 becomes attainable:
// s*log2(M)/N for Mil, log2(1 + s*(M-1)/N) for Maxl.
double LeakageCap(const SchemeParams& params, Metric metric);

// Two-point distribution supported on {0, M-1} realizing the published
// trade-off at budget rho: the m' = 0 mass is rho*N/(s*log2(M)) for Mil and
// N*(2^rho - 1)/(s*(M-1)) for Maxl, clamped to [0, 1].
MixingDistribution TheoremDistribution(const SchemeParams& params,
                                       Metric metric, double rho);

// Rate of the two-point trade-off, via its closed form
// (1 + (1 - x)_+ * (q + ... + q^(M-1)))^(-1). Agrees with
// RetrievalRate(TheoremDistribution(...)) to 1e-12.
double TheoremRate(const SchemeParams& params, Metric metric, double rho);

// One realized point of the trade-off curve.
struct TradeoffPoint {
  LeakageBudget budget;
  double achieved_leakage = 0.0;  // min(rho, cap), bits
  double rate = 0.0;              // in (0, 1]
  MixingDistribution distribution;
};

TradeoffPoint TheoremTradeoff(const SchemeParams& params, Metric metric,
                              double rho);

}  // namespace wpir

#endif  // WPIR_ANALYTICS_H_
