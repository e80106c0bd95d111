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

#include "wpir/protocol.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <string>
#include <thread>

#include "wpir/transcript.h"

namespace wpir {

namespace {

constexpr uint64_t kMaxFileLength = uint64_t{1} << 26;
constexpr double kFullEnumerationLimit = 1e7;

uint64_t PowU64(uint64_t base, int exponent) {
  uint64_t value = 1;
  for (int i = 0; i < exponent; ++i) {
    value *= base;
    if (value > kMaxFileLength) {
      throw TooLargeError("instance size exceeds the supported range");
    }
  }
  return value;
}

void RequireReplicated(const SchemeParams& params, const char* operation) {
  if (!params.replicated()) {
    throw UnsupportedSettingError(
        std::string(operation) +
        " executes the replicated inner scheme only; coded and colluding "
        "settings are covered analytically");
  }
}

uint64_t ChunkSize(const SchemeParams& params, int m_prime) {
  return PowU64(params.n_servers, params.n_files - m_prime - 1);
}

// Sorted positions (into the involved-file list) of the undesired files.
std::vector<int> UndesiredPositions(int involved_count, int desired_pos) {
  std::vector<int> positions;
  for (int i = 0; i < involved_count; ++i) {
    if (i != desired_pos) positions.push_back(i);
  }
  return positions;
}

// All size-k combinations of `items`, lexicographically.
std::vector<std::vector<int>> Combinations(const std::vector<int>& items,
                                           int k) {
  std::vector<std::vector<int>> result;
  const int n = static_cast<int>(items.size());
  if (k < 0 || k > n) return result;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    std::vector<int> combo(k);
    for (int i = 0; i < k; ++i) combo[i] = items[idx[i]];
    result.push_back(std::move(combo));
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return result;
}

uint64_t Binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  uint64_t value = 1;
  for (int i = 1; i <= k; ++i) {
    value = value * static_cast<uint64_t>(n - k + i) / i;
  }
  return value;
}

struct PendingStep {
  uint32_t chunk = 0;
  int server = 0;
  SumRequest request;
  bool has_si = false;
  int si_server = 0;
  SumRequest si_request;
};

}  // namespace

FileLibrary BuildLibrary(const SchemeParams& params, uint64_t seed) {
  RequireReplicated(params, "BuildLibrary");
  const uint64_t length = PowU64(params.n_servers, params.n_files);
  if (length > kMaxFileLength) {
    throw TooLargeError("file length N^M exceeds the supported maximum");
  }
  FileLibrary library;
  library.n_servers = params.n_servers;
  library.n_files = params.n_files;
  library.file_length = length;
  library.files.resize(params.n_files);
  for (int i = 0; i < params.n_files; ++i) {
    SplitMix64 stream(seed ^ (0x517CC1B727220A95ULL * (i + 1)));
    std::vector<uint8_t>& file = library.files[i];
    file.resize(length);
    for (uint64_t pos = 0; pos < length; pos += 8) {
      const uint64_t word = stream.Next();
      for (int b = 0; b < 8 && pos + b < length; ++b) {
        file[pos + b] = static_cast<uint8_t>(word >> (8 * b));
      }
    }
  }
  return library;
}

WrapperDraw DrawPlan(const MixingDistribution& p, int theta, int n_servers,
                     SplitMix64& rng) {
  const int m_files = p.size();
  if (theta < 1 || theta > m_files) {
    throw InvalidArgumentError("desired index out of range");
  }
  if (n_servers < 2) {
    throw InvalidArgumentError("need at least two servers");
  }
  WrapperDraw draw;
  draw.theta = theta;

  const double u = rng.NextUnit();
  double acc = 0.0;
  int m_prime = -1;
  for (int m = 0; m < m_files; ++m) {
    acc += p[m];
    if (u < acc) {
      m_prime = m;
      break;
    }
  }
  if (m_prime < 0) {
    // u landed in the rounding slack past the accumulated sum.
    for (int m = m_files - 1; m >= 0; --m) {
      if (p[m] > 0.0) {
        m_prime = m;
        break;
      }
    }
  }
  draw.m_prime = m_prime;

  // The cover set is a uniform m'-subset of the undesired indices.
  std::vector<int> undesired;
  undesired.reserve(m_files - 1);
  for (int f = 1; f <= m_files; ++f) {
    if (f != theta) undesired.push_back(f);
  }
  for (int i = 0; i < m_prime; ++i) {
    const uint64_t j =
        i + rng.NextBelow(static_cast<uint64_t>(undesired.size()) - i);
    std::swap(undesired[i], undesired[j]);
  }
  undesired.resize(m_prime);
  std::sort(undesired.begin(), undesired.end());
  draw.undesired = std::move(undesired);

  if (m_prime == 0) {
    draw.direct_server =
        static_cast<int>(rng.NextBelow(static_cast<uint64_t>(n_servers)));
  }
  return draw;
}

QueryPlan BuildQueryPlan(const SchemeParams& params, const WrapperDraw& draw,
                         const std::vector<std::vector<uint32_t>>& perms) {
  RequireReplicated(params, "BuildQueryPlan");
  const int n = params.n_servers;
  const int m_files = params.n_files;
  if (draw.theta < 1 || draw.theta > m_files ||
      static_cast<int>(draw.undesired.size()) != draw.m_prime) {
    throw InvalidArgumentError("malformed wrapper draw");
  }

  QueryPlan plan;
  plan.queries.resize(n);
  plan.decode.theta = draw.theta;
  plan.decode.m_prime = draw.m_prime;
  plan.decode.file_length = PowU64(n, m_files);
  plan.decode.chunk_size = ChunkSize(params, draw.m_prime);
  plan.decode.expected_blocks.assign(n, 0);

  if (draw.m_prime == 0) {
    if (draw.direct_server < 0 || draw.direct_server >= n) {
      throw InvalidArgumentError("direct server out of range");
    }
    plan.decode.direct_server = draw.direct_server;
    ServerQuery& query = plan.queries[draw.direct_server];
    query.kind = ServerQuery::Kind::kDirect;
    query.direct_file = static_cast<uint8_t>(draw.theta);
    plan.decode.expected_blocks[draw.direct_server] = 1;
    return plan;
  }

  const int involved_count = draw.m_prime + 1;
  std::vector<int> involved = draw.undesired;
  involved.push_back(draw.theta);
  std::sort(involved.begin(), involved.end());
  int desired_pos = -1;
  for (int i = 0; i < involved_count; ++i) {
    if (involved[i] == draw.theta) desired_pos = i;
    if (i > 0 && involved[i] == involved[i - 1]) {
      throw InvalidArgumentError("cover set contains the desired index");
    }
  }
  const uint64_t chunks = PowU64(n, involved_count);
  if (static_cast<int>(perms.size()) != involved_count) {
    throw InvalidArgumentError("need one chunk permutation per involved file");
  }
  for (const auto& perm : perms) {
    if (perm.size() != chunks) {
      throw InvalidArgumentError("chunk permutation has the wrong size");
    }
  }

  // Fresh-chunk allocator: consumes permuted positions in order, so the raw
  // indices a server sees are a uniformly random injection.
  std::vector<uint64_t> next_fresh(involved_count, 0);
  auto alloc = [&](int pos) -> uint32_t {
    return perms[pos][next_fresh[pos]++];
  };
  auto term_of = [&](int pos, uint32_t chunk) {
    return SumTerm{static_cast<uint8_t>(involved[pos]), chunk};
  };

  std::vector<std::vector<SumRequest>> per_server(n);
  std::vector<PendingStep> pending;
  const std::vector<int> undesired_pos =
      UndesiredPositions(involved_count, desired_pos);

  // Pool of cover-only sums from the previous round, reused as side
  // information by every other server in the current round.
  std::map<std::vector<int>, std::vector<std::pair<int, SumRequest>>> pool;

  // Round 1: one fresh singleton per involved file per server.
  for (int server = 0; server < n; ++server) {
    for (int pos = 0; pos < involved_count; ++pos) {
      const uint32_t chunk = alloc(pos);
      SumRequest request{{term_of(pos, chunk)}};
      per_server[server].push_back(request);
      if (pos == desired_pos) {
        pending.push_back({chunk, server, request, false, 0, {}});
      } else {
        pool[{pos}].push_back({server, request});
      }
    }
  }

  // Round k: every server pairs a fresh desired chunk with each cover sum
  // downloaded elsewhere in round k-1, and contributes fresh cover k-sums
  // that seed round k+1.
  uint64_t cover_multiplicity = 1;  // (N-1)^(k-1) fresh sums per subset
  for (int k = 2; k <= involved_count; ++k) {
    cover_multiplicity *= static_cast<uint64_t>(n - 1);
    std::map<std::vector<int>, std::vector<std::pair<int, SumRequest>>>
        next_pool;
    for (int server = 0; server < n; ++server) {
      for (const auto& subset : Combinations(undesired_pos, k - 1)) {
        const auto it = pool.find(subset);
        if (it == pool.end()) continue;
        for (const auto& [owner, si_request] : it->second) {
          if (owner == server) continue;
          const uint32_t chunk = alloc(desired_pos);
          SumRequest request = si_request;
          request.terms.push_back(term_of(desired_pos, chunk));
          std::sort(request.terms.begin(), request.terms.end());
          per_server[server].push_back(request);
          pending.push_back({chunk, server, request, true, owner, si_request});
        }
      }
      for (const auto& subset : Combinations(undesired_pos, k)) {
        for (uint64_t rep = 0; rep < cover_multiplicity; ++rep) {
          SumRequest request;
          for (int pos : subset) {
            request.terms.push_back(term_of(pos, alloc(pos)));
          }
          std::sort(request.terms.begin(), request.terms.end());
          per_server[server].push_back(request);
          next_pool[subset].push_back({server, request});
        }
      }
    }
    pool = std::move(next_pool);
  }

  // Canonical order: the list a server sees is a function of its content
  // alone, never of the construction schedule.
  for (int server = 0; server < n; ++server) {
    std::sort(per_server[server].begin(), per_server[server].end());
    ServerQuery& query = plan.queries[server];
    query.kind = ServerQuery::Kind::kSums;
    query.chunks_per_file = static_cast<uint32_t>(chunks);
    query.sums = per_server[server];
    plan.decode.expected_blocks[server] =
        static_cast<uint32_t>(query.sums.size());
  }

  auto position_of = [&](int server, const SumRequest& request) -> uint32_t {
    const auto& sums = plan.queries[server].sums;
    const auto it = std::lower_bound(sums.begin(), sums.end(), request);
    if (it == sums.end() || !(*it == request)) {
      throw Error("internal: request missing from its server's query");
    }
    return static_cast<uint32_t>(it - sums.begin());
  };
  for (const PendingStep& step : pending) {
    DecodeStep decode_step;
    decode_step.chunk = step.chunk;
    decode_step.server = step.server;
    decode_step.query_index = position_of(step.server, step.request);
    decode_step.has_side_information = step.has_si;
    if (step.has_si) {
      decode_step.si_server = step.si_server;
      decode_step.si_query_index = position_of(step.si_server, step.si_request);
    }
    plan.decode.steps.push_back(decode_step);
  }
  return plan;
}

QueryPlan GenerateQueries(const SchemeParams& params, const WrapperDraw& draw,
                          SplitMix64& rng) {
  RequireReplicated(params, "GenerateQueries");
  std::vector<std::vector<uint32_t>> perms;
  if (draw.m_prime >= 1) {
    const uint64_t chunks = PowU64(params.n_servers, draw.m_prime + 1);
    for (int i = 0; i <= draw.m_prime; ++i) {
      perms.push_back(rng.NextPermutation(static_cast<uint32_t>(chunks)));
    }
  }
  return BuildQueryPlan(params, draw, perms);
}

std::vector<std::vector<uint8_t>> Answer(const ServerQuery& query,
                                         const FileLibrary& store) {
  std::vector<std::vector<uint8_t>> blocks;
  switch (query.kind) {
    case ServerQuery::Kind::kNull:
      break;
    case ServerQuery::Kind::kDirect: {
      const int file = query.direct_file;
      if (file < 1 || file > store.n_files) {
        throw InvalidArgumentError("direct request names an unknown file");
      }
      blocks.push_back(store.files[file - 1]);
      break;
    }
    case ServerQuery::Kind::kSums: {
      if (query.chunks_per_file == 0 ||
          store.file_length % query.chunks_per_file != 0) {
        throw InvalidArgumentError("chunk granularity does not divide files");
      }
      const uint64_t chunk_size = store.file_length / query.chunks_per_file;
      for (const SumRequest& request : query.sums) {
        std::vector<uint8_t> block(chunk_size, 0);
        for (const SumTerm& term : request.terms) {
          if (term.file_id < 1 || term.file_id > store.n_files ||
              term.chunk >= query.chunks_per_file) {
            throw InvalidArgumentError("sum term out of range");
          }
          const uint8_t* src = store.files[term.file_id - 1].data() +
                               static_cast<uint64_t>(term.chunk) * chunk_size;
          for (uint64_t i = 0; i < chunk_size; ++i) block[i] ^= src[i];
        }
        blocks.push_back(std::move(block));
      }
      break;
    }
  }
  return blocks;
}

std::vector<uint8_t> Decode(
    const DecodePlan& plan,
    const std::vector<std::vector<std::vector<uint8_t>>>& answers) {
  const int n = static_cast<int>(plan.expected_blocks.size());
  if (static_cast<int>(answers.size()) != n) {
    throw DecodeError("answer set does not cover every server");
  }
  for (int server = 0; server < n; ++server) {
    if (answers[server].size() != plan.expected_blocks[server]) {
      throw DecodeError("server " + std::to_string(server) +
                        " returned an unexpected number of blocks");
    }
  }
  if (plan.m_prime == 0) {
    const auto& block = answers[plan.direct_server].at(0);
    if (block.size() != plan.file_length) {
      throw DecodeError("direct download has the wrong length");
    }
    return block;
  }
  std::vector<uint8_t> out(plan.file_length, 0);
  std::vector<bool> covered(plan.file_length / plan.chunk_size, false);
  for (const DecodeStep& step : plan.steps) {
    const auto& block = answers[step.server][step.query_index];
    if (block.size() != plan.chunk_size) {
      throw DecodeError("sum answer has the wrong chunk size");
    }
    uint8_t* dst = out.data() +
                   static_cast<uint64_t>(step.chunk) * plan.chunk_size;
    std::memcpy(dst, block.data(), plan.chunk_size);
    if (step.has_side_information) {
      const auto& si = answers[step.si_server][step.si_query_index];
      if (si.size() != plan.chunk_size) {
        throw DecodeError("side-information block has the wrong chunk size");
      }
      for (uint64_t i = 0; i < plan.chunk_size; ++i) dst[i] ^= si[i];
    }
    if (covered[step.chunk]) {
      throw DecodeError("chunk recovered twice");
    }
    covered[step.chunk] = true;
  }
  for (bool c : covered) {
    if (!c) throw DecodeError("decode plan left a chunk unrecovered");
  }
  return out;
}

QueryTranscript RunOne(const FileLibrary& library, const SchemeParams& params,
                       const MixingDistribution& p, int theta,
                       SplitMix64& rng) {
  CheckCompatible(params, p);
  QueryTranscript transcript;
  transcript.draw = DrawPlan(p, theta, params.n_servers, rng);
  QueryPlan plan = GenerateQueries(params, transcript.draw, rng);
  transcript.queries = std::move(plan.queries);
  transcript.answers.resize(params.n_servers);
  uint64_t download = 0;
  for (int server = 0; server < params.n_servers; ++server) {
    transcript.answers[server] = Answer(transcript.queries[server], library);
    for (const auto& block : transcript.answers[server]) {
      download += block.size();
    }
  }
  transcript.download = download;
  transcript.decoded = Decode(plan.decode, transcript.answers);
  return transcript;
}

uint64_t DownloadSymbols(const SchemeParams& params, int m_prime) {
  RequireReplicated(params, "DownloadSymbols");
  if (m_prime < 0 || m_prime >= params.n_files) {
    throw InvalidArgumentError("m' out of range");
  }
  const uint64_t n = params.n_servers;
  if (m_prime == 0) return PowU64(n, params.n_files);
  const uint64_t per_server = (PowU64(n, m_prime + 1) - 1) / (n - 1);
  return n * per_server * ChunkSize(params, m_prime);
}

EmpiricalStats RunTrials(const SchemeParams& params,
                         const MixingDistribution& p, uint64_t trials,
                         uint64_t seed, int threads) {
  RequireReplicated(params, "RunTrials");
  CheckCompatible(params, p);
  if (trials < 1) {
    throw InvalidArgumentError("need at least one trial");
  }
  const FileLibrary library = BuildLibrary(params, seed);
  const int worker_count =
      std::max(1, std::min<int>(threads, 64));

  struct Partial {
    uint64_t download = 0;
    uint64_t failures = 0;
    std::vector<uint64_t> mprime_counts;
  };
  std::vector<Partial> partials(worker_count);
  for (Partial& partial : partials) {
    partial.mprime_counts.assign(params.n_files, 0);
  }

  auto worker = [&](int w, uint64_t begin, uint64_t end) {
    Partial& partial = partials[w];
    for (uint64_t t = begin; t < end; ++t) {
      SplitMix64 rng(seed ^ t);  // per-trial stream: schedule-independent
      const int theta = 1 + static_cast<int>(rng.NextBelow(params.n_files));
      const QueryTranscript transcript =
          RunOne(library, params, p, theta, rng);
      partial.download += transcript.download;
      partial.mprime_counts[transcript.draw.m_prime] += 1;
      if (transcript.decoded != library.files[theta - 1] ||
          transcript.download !=
              DownloadSymbols(params, transcript.draw.m_prime)) {
        partial.failures += 1;
      }
    }
  };

  if (worker_count == 1) {
    worker(0, 0, trials);
  } else {
    std::vector<std::thread> pool;
    const uint64_t step = (trials + worker_count - 1) / worker_count;
    for (int w = 0; w < worker_count; ++w) {
      const uint64_t begin = std::min<uint64_t>(trials, w * step);
      const uint64_t end = std::min<uint64_t>(trials, begin + step);
      pool.emplace_back(worker, w, begin, end);
    }
    for (std::thread& t : pool) t.join();
  }

  uint64_t total_download = 0;
  uint64_t failures = 0;
  std::vector<uint64_t> counts(params.n_files, 0);
  for (const Partial& partial : partials) {
    total_download += partial.download;
    failures += partial.failures;
    for (int m = 0; m < params.n_files; ++m) {
      counts[m] += partial.mprime_counts[m];
    }
  }

  EmpiricalStats stats;
  stats.trials = trials;
  stats.decode_failures = failures;
  stats.mean_download =
      static_cast<double>(total_download) / static_cast<double>(trials);
  stats.empirical_rate =
      static_cast<double>(library.file_length) / stats.mean_download;
  stats.mprime_frequencies.resize(params.n_files);
  for (int m = 0; m < params.n_files; ++m) {
    stats.mprime_frequencies[m] =
        static_cast<double>(counts[m]) / static_cast<double>(trials);
  }
  return stats;
}

namespace {

ExactStats AuditByQueryClasses(const SchemeParams& params,
                               const MixingDistribution& p) {
  const int n = params.n_servers;
  const int m_files = params.n_files;
  if (m_files > 25) {
    throw TooLargeError("class enumeration supports at most 25 files");
  }
  const double log_m = std::log2(static_cast<double>(m_files));

  // Per-server mutual information, enumerating the query classes: the null
  // class is desired-independent, each direct class pins one index, and
  // each involved-set class of size k spreads uniformly over its members.
  double mil = 0.0;
  if (p[0] > 0.0) {
    // M direct classes, each seen with probability p0/N under its own index.
    mil += m_files * (1.0 / m_files) * (p[0] / n) * log_m;
  }
  double mass_sum = 0.0;  // Maxl accumulator: sum over classes of max prob
  if (p[0] > 0.0) {
    mass_sum += p[0] * (n - 1.0) / n;          // null
    mass_sum += m_files * (p[0] / n);          // direct classes
  }
  for (int k = 2; k <= m_files; ++k) {
    const double weight = p[k - 1];
    if (!(weight > 0.0)) continue;
    const double classes = static_cast<double>(Binomial(m_files, k));
    const double conditional =
        weight / static_cast<double>(Binomial(m_files - 1, k - 1));
    mil += classes * (static_cast<double>(k) / m_files) * conditional *
           std::log2(static_cast<double>(m_files) / k);
    mass_sum += classes * conditional;
  }
  const double maxl = std::log2(mass_sum);

  ExactStats stats;
  stats.per_server_mil.assign(n, mil);
  stats.per_server_maxl.assign(n, maxl);
  stats.mil = mil;
  stats.maxl = maxl;
  double expected = 0.0;
  for (int m = 0; m < m_files; ++m) {
    if (p[m] > 0.0) {
      expected += p[m] * static_cast<double>(DownloadSymbols(params, m));
    }
  }
  stats.expected_download = expected;
  return stats;
}

std::vector<std::vector<uint32_t>> AllPermutations(uint32_t size) {
  std::vector<uint32_t> base(size);
  for (uint32_t i = 0; i < size; ++i) base[i] = i;
  std::vector<std::vector<uint32_t>> perms;
  do {
    perms.push_back(base);
  } while (std::next_permutation(base.begin(), base.end()));
  return perms;
}

ExactStats AuditByFullEnumeration(const SchemeParams& params,
                                  const MixingDistribution& p) {
  const int n = params.n_servers;
  const int m_files = params.n_files;

  for (int m = 1; m < m_files; ++m) {
    if (!(p[m] > 0.0)) continue;
    const double chunks =
        std::pow(static_cast<double>(n), m + 1);
    double factorial = 1.0;
    for (double i = 2; i <= chunks; ++i) factorial *= i;
    if (std::pow(factorial, m + 1) > kFullEnumerationLimit) {
      throw TooLargeError(
          "full enumeration infeasible: permutation space too large at m' = " +
          std::to_string(m));
    }
  }

  // conditional[server][query bytes][theta-1] = P(query | theta)
  std::vector<std::map<std::string, std::vector<double>>> conditional(n);
  auto record = [&](int server, const std::string& key, int theta, double w) {
    auto& slot = conditional[server][key];
    if (slot.empty()) slot.assign(m_files, 0.0);
    slot[theta - 1] += w;
  };

  // Integer count maps for the desired-independence check: per server and
  // involved set, the conditional distribution over concrete queries must
  // be the same whichever member is desired.
  std::map<std::tuple<int, std::vector<int>, int>,
           std::map<std::string, uint64_t>>
      symmetry_counts;

  for (int theta = 1; theta <= m_files; ++theta) {
    if (p[0] > 0.0) {
      for (int direct = 0; direct < n; ++direct) {
        WrapperDraw draw{theta, 0, {}, direct};
        const QueryPlan plan = BuildQueryPlan(params, draw, {});
        const double w = p[0] / n;
        for (int server = 0; server < n; ++server) {
          record(server, SerializeQuery(plan.queries[server]), theta, w);
        }
      }
    }
    std::vector<int> undesired;
    for (int f = 1; f <= m_files; ++f) {
      if (f != theta) undesired.push_back(f);
    }
    for (int m = 1; m < m_files; ++m) {
      if (!(p[m] > 0.0)) continue;
      const uint32_t chunks = static_cast<uint32_t>(PowU64(n, m + 1));
      const auto perms = AllPermutations(chunks);
      const auto covers = Combinations(undesired, m);
      const double cover_weight = p[m] / static_cast<double>(covers.size());
      for (const auto& cover : covers) {
        std::vector<int> involved = cover;
        involved.push_back(theta);
        std::sort(involved.begin(), involved.end());
        // Odometer over one permutation choice per involved file.
        std::vector<size_t> which(m + 1, 0);
        const double w =
            cover_weight / std::pow(static_cast<double>(perms.size()),
                                    static_cast<double>(m + 1));
        for (;;) {
          std::vector<std::vector<uint32_t>> chosen(m + 1);
          for (int i = 0; i <= m; ++i) chosen[i] = perms[which[i]];
          WrapperDraw draw{theta, m, cover, -1};
          const QueryPlan plan = BuildQueryPlan(params, draw, chosen);
          for (int server = 0; server < n; ++server) {
            const std::string key = SerializeQuery(plan.queries[server]);
            record(server, key, theta, w);
            symmetry_counts[{server, involved, theta}][key] += 1;
          }
          int digit = m;
          while (digit >= 0 && ++which[digit] == perms.size()) {
            which[digit] = 0;
            --digit;
          }
          if (digit < 0) break;
        }
      }
    }
  }

  ExactStats stats;
  stats.per_server_mil.resize(n);
  stats.per_server_maxl.resize(n);
  for (int server = 0; server < n; ++server) {
    double mil = 0.0;
    double mass_sum = 0.0;
    for (const auto& [key, probs] : conditional[server]) {
      double marginal = 0.0;
      double peak = 0.0;
      for (double v : probs) {
        marginal += v / m_files;
        peak = std::max(peak, v);
      }
      for (double v : probs) {
        if (v > 0.0) mil += (v / m_files) * std::log2(v / marginal);
      }
      mass_sum += peak;
    }
    stats.per_server_mil[server] = mil;
    stats.per_server_maxl[server] = std::log2(mass_sum);
  }
  double mil_avg = 0.0;
  double maxl_max = stats.per_server_maxl.empty() ? 0.0
                                                  : stats.per_server_maxl[0];
  for (int server = 0; server < n; ++server) {
    mil_avg += stats.per_server_mil[server];
    maxl_max = std::max(maxl_max, stats.per_server_maxl[server]);
  }
  stats.mil = mil_avg / n;
  stats.maxl = maxl_max;

  bool symmetric = true;
  for (const auto& [where, counts] : symmetry_counts) {
    const auto& [server, involved, theta] = where;
    if (theta != involved.front()) continue;
    for (int other : involved) {
      if (other == theta) continue;
      const auto it = symmetry_counts.find({server, involved, other});
      if (it == symmetry_counts.end() || it->second != counts) {
        symmetric = false;
      }
    }
  }
  stats.inner_symmetry = symmetric;

  double expected = 0.0;
  for (int m = 0; m < m_files; ++m) {
    if (p[m] > 0.0) {
      expected += p[m] * static_cast<double>(DownloadSymbols(params, m));
    }
  }
  stats.expected_download = expected;
  return stats;
}

}  // namespace

ExactStats ExactAudit(const SchemeParams& params, const MixingDistribution& p,
                      AuditMode mode) {
  RequireReplicated(params, "ExactAudit");
  CheckCompatible(params, p);
  return mode == AuditMode::kQueryClasses ? AuditByQueryClasses(params, p)
                                          : AuditByFullEnumeration(params, p);
}

}  // namespace wpir
