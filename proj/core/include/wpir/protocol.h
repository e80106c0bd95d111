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
// Executable weak retrieval protocol for replicated, non-colluding storage:
// the client draws the number m' of undesired cover files from its mixing
// distribution, then either downloads the desired file directly from one
// random server (m' = 0) or runs the round-structured k-sum scheme over the
// m'+1 involved files. Includes a Monte-Carlo harness and exact
// enumeration oracles for the leakage metrics.

#ifndef WPIR_PROTOCOL_H_
#define WPIR_PROTOCOL_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "wpir/model.h"
#include "wpir/rng.h"

namespace wpir {

// Group symbols are octets under bitwise addition modulo 2, so sums are
// self-inverse. Every file has exactly N^M symbols; the inner scheme for a
// given m' works on chunks of N^(M-m'-1) symbols so that all m' values share
// one file length.
struct FileLibrary {
  int n_servers = 0;
  int n_files = 0;
  uint64_t file_length = 0;  // N^M symbols
  std::vector<std::vector<uint8_t>> files;
};

// Deterministically pseudo-random library; replicated setting only.
FileLibrary BuildLibrary(const SchemeParams& params, uint64_t seed);

// One wrapper draw: the desired index, the number of cover files, the cover
// set itself, and (when m' = 0) the directly contacted server.
struct WrapperDraw {
  int theta = 0;    // desired file, 1-based
  int m_prime = 0;  // cover-file count in [0, M-1]
  std::vector<int> undesired;  // sorted 1-based cover indices, |.| == m_prime
  int direct_server = -1;      // 0-based; only meaningful when m_prime == 0
};

// Samples m' from p, then a uniform cover set of that size, then (when
// m' = 0) a uniform server to contact directly.
WrapperDraw DrawPlan(const MixingDistribution& p, int theta, int n_servers,
                     SplitMix64& rng);

struct SumTerm {
  uint8_t file_id = 0;  // 1-based
  uint32_t chunk = 0;   // raw chunk index in [0, N^(m'+1))

  friend auto operator<=>(const SumTerm&, const SumTerm&) = default;
};

// One chunk-granularity request: the group sum of the named chunks.
struct SumRequest {
  std::vector<SumTerm> terms;  // sorted, nonempty

  friend auto operator<=>(const SumRequest&, const SumRequest&) = default;
};

struct ServerQuery {
  enum class Kind { kNull, kDirect, kSums };

  Kind kind = Kind::kNull;
  uint8_t direct_file = 0;       // kDirect only, 1-based
  uint32_t chunks_per_file = 0;  // kSums only: N^(m'+1)
  std::vector<SumRequest> sums;  // kSums only, canonically sorted
};

// Client-side record of how to reassemble the desired file. Each recovered
// chunk is an answer block, optionally with one side-information block from
// another server subtracted out.
struct DecodeStep {
  uint32_t chunk = 0;  // raw chunk index of the desired file
  int server = 0;
  uint32_t query_index = 0;
  bool has_side_information = false;
  int si_server = 0;
  uint32_t si_query_index = 0;
};

struct DecodePlan {
  int theta = 0;
  int m_prime = 0;
  uint64_t file_length = 0;
  uint64_t chunk_size = 0;  // symbols per chunk, N^(M-m'-1)
  int direct_server = -1;   // m' = 0 path
  std::vector<DecodeStep> steps;
  std::vector<uint32_t> expected_blocks;  // per server, for validation
};

struct QueryPlan {
  std::vector<ServerQuery> queries;  // one per server
  DecodePlan decode;
};

// Builds the per-server queries for a wrapper draw using explicit chunk
// permutations (one per involved file, each over N^(m'+1) chunks, in
// involved-file order). Exposed separately so enumeration oracles can drive
// the construction through all permutation choices.
QueryPlan BuildQueryPlan(const SchemeParams& params, const WrapperDraw& draw,
                         const std::vector<std::vector<uint32_t>>& perms);

// Samples the chunk permutations from `rng` and builds the plan.
QueryPlan GenerateQueries(const SchemeParams& params, const WrapperDraw& draw,
                          SplitMix64& rng);

// Server side: one block per request (chunk-sized for sums, the whole file
// for a direct request, nothing for null).
std::vector<std::vector<uint8_t>> Answer(const ServerQuery& query,
                                         const FileLibrary& store);

// Reassembles the desired file. Throws DecodeError if the answers are
// structurally inconsistent with the plan.
std::vector<uint8_t> Decode(
    const DecodePlan& plan,
    const std::vector<std::vector<std::vector<uint8_t>>>& answers);

struct QueryTranscript {
  WrapperDraw draw;
  std::vector<ServerQuery> queries;
  std::vector<std::vector<std::vector<uint8_t>>> answers;
  uint64_t download = 0;  // total symbols
  std::vector<uint8_t> decoded;
};

// One full protocol run against the library.
QueryTranscript RunOne(const FileLibrary& library, const SchemeParams& params,
                       const MixingDistribution& p, int theta,
                       SplitMix64& rng);

// Total downloaded symbols for a given m': N^M when m' = 0, otherwise
// N * (N^(m'+1) - 1)/(N - 1) * N^(M-m'-1).
uint64_t DownloadSymbols(const SchemeParams& params, int m_prime);

struct EmpiricalStats {
  uint64_t trials = 0;
  double mean_download = 0.0;
  double empirical_rate = 0.0;  // L / mean(D)
  std::vector<double> mprime_frequencies;
  uint64_t decode_failures = 0;
};

// Seeded Monte-Carlo harness; trial t runs on sub-seed seed ^ t, so results
// are identical for every thread count.
EmpiricalStats RunTrials(const SchemeParams& params,
                         const MixingDistribution& p, uint64_t trials,
                         uint64_t seed, int threads = 1);

enum class AuditMode {
  // Enumerates the per-server query classes (null / direct / involved-set
  // shape), whose conditional distributions are the sufficient statistic of
  // the concrete queries.
  kQueryClasses,
  // Enumerates every chunk permutation of the inner scheme and audits the
  // concrete per-server query distributions. Feasible only while
  // (N^(m'+1))!^(m'+1) stays small; also verifies that each server's query
  // distribution given the involved set does not depend on which member is
  // desired.
  kFullEnumeration,
};

struct ExactStats {
  double expected_download = 0.0;
  std::vector<double> per_server_mil;   // bits
  std::vector<double> per_server_maxl;  // bits
  double mil = 0.0;                     // average over servers
  double maxl = 0.0;                    // max over servers
  // kFullEnumeration only: desired-index invariance of the per-server
  // conditional query distributions held exactly.
  std::optional<bool> inner_symmetry;
};

// Exact leakage and download audit by enumeration; replicated setting only.
ExactStats ExactAudit(const SchemeParams& params, const MixingDistribution& p,
                      AuditMode mode = AuditMode::kQueryClasses);

}  // namespace wpir

#endif  // WPIR_PROTOCOL_H_
