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

#include "wpir/model.h"

#include <cmath>
#include <cstdlib>

namespace wpir {

namespace {

// Input acceptance is looser than the stored invariant: user-supplied
// vectors may carry up to 1e-9 of rounding slack and get renormalized;
// anything worse is treated as a genuinely wrong input.
constexpr double kSumAcceptTolerance = 1e-9;

}  // namespace

SchemeParams MakeParams(Setting setting, int n_servers, int strength,
                        int n_files) {
  if (n_servers < 2) {
    throw InvalidArgumentError("n_servers must be at least 2, got " +
                               std::to_string(n_servers));
  }
  if (n_files < 2) {
    throw InvalidArgumentError("n_files must be at least 2, got " +
                               std::to_string(n_files));
  }
  if (strength < 1) {
    throw InvalidArgumentError("strength must be at least 1, got " +
                               std::to_string(strength));
  }
  if (strength >= n_servers) {
    // strength == n_servers makes the rate denominator vanish.
    throw InvalidArgumentError(
        "strength must be at most n_servers - 1, got strength=" +
        std::to_string(strength) + " with n_servers=" +
        std::to_string(n_servers));
  }
  if (setting == Setting::kReplicated && strength != 1) {
    throw InvalidArgumentError("replicated setting requires strength 1, got " +
                               std::to_string(strength));
  }
  SchemeParams params;
  params.setting = setting;
  params.n_servers = n_servers;
  params.n_files = n_files;
  params.strength = strength;
  params.ratio = static_cast<double>(strength) / n_servers;
  return params;
}

MixingDistribution MakeDistribution(std::vector<double> probs) {
  if (probs.size() < 2) {
    throw InvalidArgumentError("mixing distribution needs at least 2 entries");
  }
  double sum = 0.0;
  for (double v : probs) {
    if (!(v >= 0.0)) {
      throw InvalidArgumentError("mixing distribution entry is negative: " +
                                 std::to_string(v));
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > kSumAcceptTolerance) {
    throw InvalidArgumentError("mixing distribution sums to " +
                               std::to_string(sum) + ", expected 1");
  }
  for (double& v : probs) v /= sum;
  MixingDistribution dist;
  dist.probs = std::move(probs);
  return dist;
}

MixingDistribution PointMass(int n_files, int m_prime) {
  if (n_files < 2 || m_prime < 0 || m_prime >= n_files) {
    throw InvalidArgumentError("point mass index out of range");
  }
  std::vector<double> probs(n_files, 0.0);
  probs[m_prime] = 1.0;
  MixingDistribution dist;
  dist.probs = std::move(probs);
  return dist;
}

LeakageBudget MakeBudget(Metric metric, double rho) {
  if (!(rho >= 0.0)) {
    throw InvalidArgumentError("leakage budget must be nonnegative, got " +
                               std::to_string(rho));
  }
  return LeakageBudget{metric, rho};
}

const char* ToString(Setting setting) {
  switch (setting) {
    case Setting::kReplicated:
      return "replicated";
    case Setting::kMdsCoded:
      return "mds";
    case Setting::kTColluding:
      return "tcolluding";
  }
  return "unknown";
}

const char* ToString(Metric metric) {
  return metric == Metric::kMil ? "mil" : "maxl";
}

void CheckCompatible(const SchemeParams& params, const MixingDistribution& p) {
  if (p.size() != params.n_files) {
    throw InvalidArgumentError(
        "mixing distribution has " + std::to_string(p.size()) +
        " entries but the system stores " + std::to_string(params.n_files) +
        " files");
  }
}

}  // namespace wpir
