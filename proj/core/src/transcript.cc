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

#include "wpir/transcript.h"

#include <istream>
#include <ostream>

namespace wpir {

namespace {

constexpr char kMagic[8] = {'W', 'P', 'I', 'R', 'T', 'X', '0', '1'};

void PutU8(std::string& out, uint8_t v) { out.push_back(static_cast<char>(v)); }

void PutU32(std::string& out, uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) {
    out.push_back(static_cast<char>((v >> shift) & 0xFF));
  }
}

void PutU64(std::string& out, uint64_t v) {
  for (int shift = 56; shift >= 0; shift -= 8) {
    out.push_back(static_cast<char>((v >> shift) & 0xFF));
  }
}

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  uint8_t U8() {
    char c;
    if (!in_.get(c)) throw TranscriptError("truncated transcript");
    return static_cast<uint8_t>(c);
  }

  uint32_t U32() {
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v = (v << 8) | U8();
    return v;
  }

  uint64_t U64() {
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | U8();
    return v;
  }

  std::vector<uint8_t> Bytes(uint64_t count) {
    std::vector<uint8_t> data(count);
    if (count > 0 &&
        !in_.read(reinterpret_cast<char*>(data.data()),
                  static_cast<std::streamsize>(count))) {
      throw TranscriptError("truncated transcript payload");
    }
    return data;
  }

 private:
  std::istream& in_;
};

}  // namespace

std::string SerializeQuery(const ServerQuery& query) {
  std::string out;
  switch (query.kind) {
    case ServerQuery::Kind::kNull:
      PutU8(out, 0);
      break;
    case ServerQuery::Kind::kDirect:
      PutU8(out, 1);
      PutU8(out, query.direct_file);
      break;
    case ServerQuery::Kind::kSums:
      PutU8(out, 2);
      PutU32(out, query.chunks_per_file);
      PutU32(out, static_cast<uint32_t>(query.sums.size()));
      for (const SumRequest& request : query.sums) {
        PutU32(out, static_cast<uint32_t>(request.terms.size()));
        for (const SumTerm& term : request.terms) {
          PutU8(out, term.file_id);
          PutU32(out, term.chunk);
        }
      }
      break;
  }
  return out;
}

namespace {

ServerQuery DeserializeQuery(Reader& reader) {
  ServerQuery query;
  switch (reader.U8()) {
    case 0:
      query.kind = ServerQuery::Kind::kNull;
      break;
    case 1:
      query.kind = ServerQuery::Kind::kDirect;
      query.direct_file = reader.U8();
      break;
    case 2: {
      query.kind = ServerQuery::Kind::kSums;
      query.chunks_per_file = reader.U32();
      const uint32_t count = reader.U32();
      if (count > (1u << 24)) {
        throw TranscriptError("implausible request count");
      }
      query.sums.resize(count);
      for (uint32_t i = 0; i < count; ++i) {
        const uint32_t terms = reader.U32();
        if (terms == 0 || terms > 255) {
          throw TranscriptError("implausible term count");
        }
        query.sums[i].terms.resize(terms);
        for (uint32_t t = 0; t < terms; ++t) {
          query.sums[i].terms[t].file_id = reader.U8();
          query.sums[i].terms[t].chunk = reader.U32();
        }
      }
      break;
    }
    default:
      throw TranscriptError("unknown query tag");
  }
  return query;
}

}  // namespace

void WriteTranscript(std::ostream& out, const TranscriptFile& file) {
  const SchemeParams& params = file.params;
  const QueryTranscript& transcript = file.transcript;
  std::string buffer;
  buffer.append(kMagic, sizeof(kMagic));
  PutU8(buffer, 0);  // replicated
  PutU8(buffer, static_cast<uint8_t>(params.n_servers));
  PutU8(buffer, static_cast<uint8_t>(params.n_files));
  PutU8(buffer, static_cast<uint8_t>(params.strength));
  PutU64(buffer, file.library_seed);
  PutU8(buffer, static_cast<uint8_t>(transcript.draw.theta));
  PutU8(buffer, static_cast<uint8_t>(transcript.draw.m_prime));
  PutU8(buffer, transcript.draw.m_prime == 0
                    ? static_cast<uint8_t>(transcript.draw.direct_server)
                    : 0xFF);
  PutU8(buffer, static_cast<uint8_t>(transcript.draw.undesired.size()));
  for (int f : transcript.draw.undesired) {
    PutU8(buffer, static_cast<uint8_t>(f));
  }
  for (int server = 0; server < params.n_servers; ++server) {
    buffer += SerializeQuery(transcript.queries[server]);
    const auto& blocks = transcript.answers[server];
    PutU32(buffer, static_cast<uint32_t>(blocks.size()));
    PutU32(buffer,
           static_cast<uint32_t>(blocks.empty() ? 0 : blocks.front().size()));
    for (const auto& block : blocks) {
      buffer.append(reinterpret_cast<const char*>(block.data()), block.size());
    }
  }
  PutU64(buffer, transcript.download);
  PutU32(buffer, static_cast<uint32_t>(transcript.decoded.size()));
  buffer.append(reinterpret_cast<const char*>(transcript.decoded.data()),
                transcript.decoded.size());
  out.write(buffer.data(), static_cast<std::streamsize>(buffer.size()));
}

TranscriptFile ReadTranscript(std::istream& in) {
  Reader reader(in);
  for (char expected : kMagic) {
    if (static_cast<char>(reader.U8()) != expected) {
      throw TranscriptError("bad transcript magic");
    }
  }
  if (reader.U8() != 0) {
    throw TranscriptError("unsupported setting tag");
  }
  const int n_servers = reader.U8();
  const int n_files = reader.U8();
  const int strength = reader.U8();

  TranscriptFile file;
  file.params = MakeParams(Setting::kReplicated, n_servers, strength, n_files);
  file.library_seed = reader.U64();
  file.transcript.draw.theta = reader.U8();
  file.transcript.draw.m_prime = reader.U8();
  const uint8_t direct = reader.U8();
  file.transcript.draw.direct_server = direct == 0xFF ? -1 : direct;
  const uint8_t cover_count = reader.U8();
  for (int i = 0; i < cover_count; ++i) {
    file.transcript.draw.undesired.push_back(reader.U8());
  }
  file.transcript.queries.resize(n_servers);
  file.transcript.answers.resize(n_servers);
  for (int server = 0; server < n_servers; ++server) {
    file.transcript.queries[server] = DeserializeQuery(reader);
    const uint32_t block_count = reader.U32();
    const uint32_t block_len = reader.U32();
    if (static_cast<uint64_t>(block_count) * block_len > (uint64_t{1} << 32)) {
      throw TranscriptError("implausible answer size");
    }
    for (uint32_t i = 0; i < block_count; ++i) {
      file.transcript.answers[server].push_back(reader.Bytes(block_len));
    }
  }
  file.transcript.download = reader.U64();
  const uint32_t decoded_len = reader.U32();
  file.transcript.decoded = reader.Bytes(decoded_len);
  return file;
}

TranscriptCheck VerifyTranscript(const TranscriptFile& file) {
  const SchemeParams& params = file.params;
  const QueryTranscript& transcript = file.transcript;
  const FileLibrary library = BuildLibrary(params, file.library_seed);

  TranscriptCheck check;
  if (static_cast<int>(transcript.queries.size()) != params.n_servers ||
      static_cast<int>(transcript.answers.size()) != params.n_servers) {
    return check;
  }

  check.answers_match = true;
  uint64_t download = 0;
  uint64_t chunks = 1;
  for (int i = 0; i <= transcript.draw.m_prime; ++i) {
    chunks *= static_cast<uint64_t>(params.n_servers);
  }
  const uint64_t per_server_expected =
      transcript.draw.m_prime == 0
          ? 0
          : (chunks - 1) / (params.n_servers - 1);
  check.query_counts_ok = true;
  for (int server = 0; server < params.n_servers; ++server) {
    const auto expected = Answer(transcript.queries[server], library);
    if (expected != transcript.answers[server]) check.answers_match = false;
    for (const auto& block : transcript.answers[server]) {
      download += block.size();
    }
    if (transcript.draw.m_prime >= 1) {
      if (transcript.queries[server].kind != ServerQuery::Kind::kSums ||
          transcript.queries[server].sums.size() != per_server_expected) {
        check.query_counts_ok = false;
      }
    }
  }
  check.download_law_ok =
      download == transcript.download &&
      transcript.download == DownloadSymbols(params, transcript.draw.m_prime);
  const int theta = transcript.draw.theta;
  check.decoded_matches = theta >= 1 && theta <= params.n_files &&
                          transcript.decoded == library.files[theta - 1];
  return check;
}

}  // namespace wpir
