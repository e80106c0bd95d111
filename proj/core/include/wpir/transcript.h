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
// Bit-exact transcript format. A sum request serializes as a big-endian
// length-prefixed list of (file-id: 1 octet, chunk-index: 4 octets BE)
// pairs; a transcript file is the length-prefixed concatenation of the
// wrapper draw, per-server queries and answers, the download total, and the
// decoded payload.

#ifndef WPIR_TRANSCRIPT_H_
#define WPIR_TRANSCRIPT_H_

#include <iosfwd>
#include <string>

#include "wpir/model.h"
#include "wpir/protocol.h"

namespace wpir {

// Raised on malformed or truncated transcript input.
class TranscriptError : public Error {
 public:
  explicit TranscriptError(const std::string& what) : Error(what) {}
};

// Canonical byte encoding of one per-server query. Also used as the map key
// wherever query distributions are accumulated.
std::string SerializeQuery(const ServerQuery& query);

struct TranscriptFile {
  SchemeParams params;
  uint64_t library_seed = 0;
  QueryTranscript transcript;
};

void WriteTranscript(std::ostream& out, const TranscriptFile& file);
TranscriptFile ReadTranscript(std::istream& in);

struct TranscriptCheck {
  bool answers_match = false;   // answers equal Answer(query, library)
  bool decoded_matches = false; // decoded payload equals the stored file
  bool download_law_ok = false; // download equals the closed form for m'
  bool query_counts_ok = false; // per-server request counts as prescribed

  bool AllOk() const {
    return answers_match && decoded_matches && download_law_ok &&
           query_counts_ok;
  }
};

// Rebuilds the library from the recorded seed and audits the transcript
// against it.
TranscriptCheck VerifyTranscript(const TranscriptFile& file);

}  // namespace wpir

#endif  // WPIR_TRANSCRIPT_H_
