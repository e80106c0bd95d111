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

#ifndef WPIR_MODEL_H_
#define WPIR_MODEL_H_

#include <stdexcept>
#include <string>
#include <vector>

namespace wpir {

// Storage/collusion variants of the retrieval system. All three share one
// parametric family of rate and leakage expressions; they differ only in how
// the strength parameter is interpreted (1, MDS code dimension, or the
// colluding-set size).
enum class Setting {
  kReplicated,
  kMdsCoded,
  kTColluding,
};

// Privacy metric: per-server mutual information (averaged over servers) or
// maximal leakage (worst server).
enum class Metric {
  kMil,
  kMaxl,
};

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A rejected input. Everything that violates a documented precondition
// throws this; no operation returns a partially constructed value.
class InvalidArgumentError : public Error {
 public:
  explicit InvalidArgumentError(const std::string& what) : Error(what) {}
};

// Raised by protocol operations invoked for settings whose wire-level inner
// scheme is not implemented (only replicated storage executes end to end).
class UnsupportedSettingError : public Error {
 public:
  explicit UnsupportedSettingError(const std::string& what) : Error(what) {}
};

// Raised when answers handed to the decoder are structurally inconsistent
// with the query plan (wrong counts or lengths).
class DecodeError : public Error {
 public:
  explicit DecodeError(const std::string& what) : Error(what) {}
};

// Raised when an exact-enumeration instance exceeds the tractable size for
// the selected mode.
class TooLargeError : public Error {
 public:
  explicit TooLargeError(const std::string& what) : Error(what) {}
};

// Validated system parameters. Immutable after construction; safe to share
// across threads.
//
// `strength` is 1 for replicated storage, the code dimension K for MDS-coded
// storage, and the collusion size T for the colluding setting. The ratio
// q = strength / n_servers drives every rate and leakage expression.
struct SchemeParams {
  Setting setting = Setting::kReplicated;
  int n_servers = 0;   // N >= 2
  int n_files = 0;     // M >= 2
  int strength = 0;    // s in [1, N-1]
  double ratio = 0.0;  // q = s / N, cached at construction

  bool replicated() const { return setting == Setting::kReplicated; }
};

// Client-side mixing distribution over the number of undesired files drawn
// into a protocol run, indexed by m' in [0, M-1]. Entries are nonnegative and
// sum to 1 within 1e-12.
struct MixingDistribution {
  std::vector<double> probs;

  int size() const { return static_cast<int>(probs.size()); }
  double operator[](int m_prime) const { return probs[m_prime]; }
};

// Allowed leakage, in bits (all logarithms base 2).
struct LeakageBudget {
  Metric metric = Metric::kMil;
  double rho = 0.0;  // >= 0
};

// Validates and builds SchemeParams.
//
// Rejects N < 2, M < 2, s < 1, s >= N (s = N degenerates the rate
// denominator), and a replicated setting with s != 1.
SchemeParams MakeParams(Setting setting, int n_servers, int strength,
                        int n_files);

// Validates and builds a mixing distribution. Entries must be nonnegative
// and sum to 1 within 1e-9; the vector is renormalized so the stored sum is
// exact to 1e-12. Length must be at least 2.
MixingDistribution MakeDistribution(std::vector<double> probs);

// Point mass at m'.
MixingDistribution PointMass(int n_files, int m_prime);

LeakageBudget MakeBudget(Metric metric, double rho);

const char* ToString(Setting setting);
const char* ToString(Metric metric);

// Throws unless the distribution length matches the file count of `params`.
void CheckCompatible(const SchemeParams& params, const MixingDistribution& p);

}  // namespace wpir

#endif  // WPIR_MODEL_H_
