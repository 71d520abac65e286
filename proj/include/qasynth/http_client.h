// Copyright 2026 The qasynth Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QASYNTH_HTTP_CLIENT_H_
#define QASYNTH_HTTP_CLIENT_H_

// JSON-over-HTTP clients for the model service:
//   POST /paraphrase {"sentences","num_return","top_p","temperatures"}
//                    -> {"paraphrases": [[...], ...]}
//   POST /parse      {"utterances"} -> {"logical_forms": [...]}  ("" = no parse)
//   POST /tag        {"tokens"} -> {"tags": [...]}
//   POST /health     -> 200

#include <string>
#include <vector>

#include "qasynth/errors.h"
#include "qasynth/lexicon.h"
#include "qasynth/paraphrase.h"

namespace qasynth {

struct HttpEndpoint {
  std::string base_url;  // "http://host:port", optionally with a path prefix
  double timeout_seconds = 30;
  int retries = 2;       // extra attempts after the first
  int backoff_ms = 200;  // doubled after every failed attempt
};

// POSTs a JSON body and returns the response body. Connection errors,
// timeouts and 5xx responses are retried; 4xx responses are not. Throws
// BackendError once attempts are exhausted.
std::string PostJson(const HttpEndpoint &endpoint, const std::string &path,
                     const std::string &body);

// True when POST /health answers 200.
bool CheckHealth(const HttpEndpoint &endpoint);

class HttpParaphraser : public Paraphraser {
 public:
  explicit HttpParaphraser(HttpEndpoint endpoint) : endpoint_(std::move(endpoint)) {}
  // Throws BackendError on transport failures and malformed responses.
  std::vector<std::vector<std::string>> Paraphrase(const std::vector<std::string> &sentences,
                                                   const ParaphraseConfig &config) override;
  std::string name() const override { return "http"; }
  const HttpEndpoint &endpoint() const { return endpoint_; }

 private:
  HttpEndpoint endpoint_;
};

// Client for a trained semantic parser. One logical form text per input;
// an empty string means the parser produced nothing.
class HttpParser {
 public:
  explicit HttpParser(HttpEndpoint endpoint) : endpoint_(std::move(endpoint)) {}
  std::vector<std::string> Parse(const std::vector<std::string> &utterances) const;

 private:
  HttpEndpoint endpoint_;
};

// Remote POS tagger. Value anchors keep their local tag.
class HttpTagger : public Tagger {
 public:
  explicit HttpTagger(HttpEndpoint endpoint) : endpoint_(std::move(endpoint)) {}
  std::vector<Token> Tag(std::vector<Token> tokens) const override;

 private:
  HttpEndpoint endpoint_;
};

// Request bodies and response decoding, exposed for protocol tests.
std::string EncodeParaphraseRequest(const std::vector<std::string> &sentences,
                                    const ParaphraseConfig &config);
std::vector<std::vector<std::string>> DecodeParaphraseResponse(const std::string &body,
                                                               std::size_t expected);
std::string EncodeParseRequest(const std::vector<std::string> &utterances);
std::vector<std::string> DecodeParseResponse(const std::string &body, std::size_t expected);

}  // namespace qasynth

#endif  // QASYNTH_HTTP_CLIENT_H_
