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

#include "wpir/analytics.h"

#include <algorithm>
#include <cmath>

namespace wpir {

namespace {

// Budget in the metric's native (linear) scale: rho itself for Mil, 2^rho
// for Maxl. The two-point mass and the exact optimizer must derive the m'=0
// mass from the same expression so their outputs coincide bitwise.
double NativeBudget(Metric metric, double rho) {
  return metric == Metric::kMil ? rho : std::exp2(rho);
}

double Dot(const std::vector<double>& a, const std::vector<double>& b) {
  double acc = 0.0;
  for (size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

}  // namespace

std::vector<double> RateMixWeights(const SchemeParams& params) {
  std::vector<double> weights(params.n_files);
  double power = 1.0;
  for (int m = 0; m < params.n_files; ++m) {
    power *= params.ratio;
    weights[m] = power;
  }
  return weights;
}

std::vector<double> LeakageCoefficients(const SchemeParams& params,
                                        Metric metric) {
  const int m_files = params.n_files;
  std::vector<double> b(m_files);
  if (metric == Metric::kMil) {
    b[0] = params.strength * std::log2(static_cast<double>(m_files)) /
           params.n_servers;
    for (int m = 1; m <= m_files - 2; ++m) {
      b[m] = std::log2(static_cast<double>(m_files) / (m + 1));
    }
    b[m_files - 1] = 0.0;
  } else {
    b[0] = 1.0 + static_cast<double>(params.strength) * (m_files - 1) /
                     params.n_servers;
    for (int m = 1; m <= m_files - 1; ++m) {
      b[m] = static_cast<double>(m_files) / (m + 1);
    }
  }
  return b;
}

double RetrievalRate(const SchemeParams& params, const MixingDistribution& p) {
  CheckCompatible(params, p);
  const double expectation = Dot(RateMixWeights(params), p.probs);
  return (1.0 - params.ratio) / (1.0 - expectation);
}

double MilLeakage(const SchemeParams& params, const MixingDistribution& p) {
  CheckCompatible(params, p);
  return Dot(LeakageCoefficients(params, Metric::kMil), p.probs);
}

double MaxlLeakage(const SchemeParams& params, const MixingDistribution& p) {
  CheckCompatible(params, p);
  return std::log2(Dot(LeakageCoefficients(params, Metric::kMaxl), p.probs));
}

double Leakage(const SchemeParams& params, Metric metric,
               const MixingDistribution& p) {
  return metric == Metric::kMil ? MilLeakage(params, p)
                                : MaxlLeakage(params, p);
}

double LeakageCap(const SchemeParams& params, Metric metric) {
  const std::vector<double> b = LeakageCoefficients(params, metric);
  return metric == Metric::kMil ? b[0] : std::log2(b[0]);
}

MixingDistribution TheoremDistribution(const SchemeParams& params,
                                       Metric metric, double rho) {
  if (!(rho >= 0.0)) {
    throw InvalidArgumentError("leakage budget must be nonnegative");
  }
  const std::vector<double> b = LeakageCoefficients(params, metric);
  const double beta = NativeBudget(metric, rho);
  double mass_at_zero = (beta - b.back()) / (b.front() - b.back());
  mass_at_zero = std::clamp(mass_at_zero, 0.0, 1.0);
  std::vector<double> probs(params.n_files, 0.0);
  probs[0] = mass_at_zero;
  probs[params.n_files - 1] += 1.0 - mass_at_zero;
  MixingDistribution dist;
  dist.probs = std::move(probs);
  return dist;
}

double TheoremRate(const SchemeParams& params, Metric metric, double rho) {
  if (!(rho >= 0.0)) {
    throw InvalidArgumentError("leakage budget must be nonnegative");
  }
  const std::vector<double> b = LeakageCoefficients(params, metric);
  const double beta = NativeBudget(metric, rho);
  const double mass_at_zero = (beta - b.back()) / (b.front() - b.back());
  // Tail of the geometric series q + q^2 + ... + q^(M-1).
  const std::vector<double> weights = RateMixWeights(params);
  double geometric = 0.0;
  for (int m = 0; m <= params.n_files - 2; ++m) geometric += weights[m];
  return 1.0 / (1.0 + std::max(0.0, 1.0 - mass_at_zero) * geometric);
}

TradeoffPoint TheoremTradeoff(const SchemeParams& params, Metric metric,
                              double rho) {
  TradeoffPoint point;
  point.budget = MakeBudget(metric, rho);
  point.distribution = TheoremDistribution(params, metric, rho);
  point.achieved_leakage = std::min(rho, LeakageCap(params, metric));
  point.rate = TheoremRate(params, metric, rho);
  return point;
}

}  // namespace wpir
