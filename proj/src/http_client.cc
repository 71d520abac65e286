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

#include "qasynth/http_client.h"

#include <chrono>
#include <thread>

#include "httplib.h"
#include "json.hpp"

namespace qasynth {

namespace {

using Json = nlohmann::ordered_json;

struct Target {
  std::string origin;  // scheme://host:port
  std::string prefix;  // path prefix without trailing slash
};

Target SplitUrl(const std::string &url) {
  const auto scheme = url.find("://");
  if (scheme == std::string::npos) throw BackendError("bad endpoint url '" + url + "'");
  const auto slash = url.find('/', scheme + 3);
  Target t;
  t.origin = url.substr(0, slash);
  if (slash != std::string::npos) {
    t.prefix = url.substr(slash);
    while (!t.prefix.empty() && t.prefix.back() == '/') t.prefix.pop_back();
  }
  return t;
}

Json ParseBody(const std::string &body, const char *what) {
  try {
    return Json::parse(body);
  } catch (const nlohmann::json::exception &e) {
    throw BackendError(std::string(what) + ": response is not JSON: " + e.what());
  }
}

}  // namespace

std::string PostJson(const HttpEndpoint &endpoint, const std::string &path,
                     const std::string &body) {
  const Target target = SplitUrl(endpoint.base_url);
  httplib::Client client(target.origin);
  const auto sec = static_cast<time_t>(endpoint.timeout_seconds);
  const auto usec = static_cast<time_t>((endpoint.timeout_seconds - static_cast<double>(sec)) * 1e6);
  client.set_connection_timeout(sec, usec);
  client.set_read_timeout(sec, usec);
  client.set_write_timeout(sec, usec);

  std::string last_error;
  int backoff = endpoint.backoff_ms;
  for (int attempt = 0; attempt <= endpoint.retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(std::chrono::milliseconds(backoff));
      backoff *= 2;
    }
    auto res = client.Post(target.prefix + path, body, "application/json");
    if (!res) {
      last_error = "connection failed: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status >= 200 && res->status < 300) return res->body;
    last_error = "HTTP " + std::to_string(res->status);
    if (res->status < 500) break;
  }
  throw BackendError("POST " + endpoint.base_url + path + ": " + last_error);
}

bool CheckHealth(const HttpEndpoint &endpoint) {
  HttpEndpoint once = endpoint;
  once.retries = 0;
  try {
    PostJson(once, "/health", "{}");
    return true;
  } catch (const BackendError &) {
    return false;
  }
}

std::string EncodeParaphraseRequest(const std::vector<std::string> &sentences,
                                    const ParaphraseConfig &config) {
  Json j;
  j["sentences"] = sentences;
  j["num_return"] = config.num_return;
  j["top_p"] = config.top_p;
  j["temperatures"] = config.EffectiveTemperatures();
  return j.dump();
}

std::vector<std::vector<std::string>> DecodeParaphraseResponse(const std::string &body,
                                                               std::size_t expected) {
  const Json j = ParseBody(body, "paraphrase");
  if (!j.is_object() || !j.contains("paraphrases") || !j["paraphrases"].is_array())
    throw BackendError("paraphrase: missing 'paraphrases' array");
  const Json &lists = j["paraphrases"];
  if (lists.size() != expected)
    throw BackendError("paraphrase: expected " + std::to_string(expected) + " lists, got " +
                       std::to_string(lists.size()));
  std::vector<std::vector<std::string>> out;
  for (const Json &list : lists) {
    if (!list.is_array()) throw BackendError("paraphrase: entry is not an array");
    std::vector<std::string> texts;
    for (const Json &t : list) {
      if (!t.is_string()) throw BackendError("paraphrase: candidate is not a string");
      texts.push_back(t.get<std::string>());
    }
    out.push_back(std::move(texts));
  }
  return out;
}

std::string EncodeParseRequest(const std::vector<std::string> &utterances) {
  Json j;
  j["utterances"] = utterances;
  return j.dump();
}

std::vector<std::string> DecodeParseResponse(const std::string &body, std::size_t expected) {
  const Json j = ParseBody(body, "parse");
  if (!j.is_object() || !j.contains("logical_forms") || !j["logical_forms"].is_array())
    throw BackendError("parse: missing 'logical_forms' array");
  const Json &lfs = j["logical_forms"];
  if (lfs.size() != expected)
    throw BackendError("parse: expected " + std::to_string(expected) + " logical forms, got " +
                       std::to_string(lfs.size()));
  std::vector<std::string> out;
  for (const Json &lf : lfs) {
    if (lf.is_null()) {
      out.emplace_back();
    } else if (lf.is_string()) {
      out.push_back(lf.get<std::string>());
    } else {
      throw BackendError("parse: logical form is not a string");
    }
  }
  return out;
}

std::vector<std::vector<std::string>> HttpParaphraser::Paraphrase(
    const std::vector<std::string> &sentences, const ParaphraseConfig &config) {
  if (sentences.empty()) return {};
  return DecodeParaphraseResponse(
      PostJson(endpoint_, "/paraphrase", EncodeParaphraseRequest(sentences, config)),
      sentences.size());
}

std::vector<std::string> HttpParser::Parse(const std::vector<std::string> &utterances) const {
  if (utterances.empty()) return {};
  return DecodeParseResponse(PostJson(endpoint_, "/parse", EncodeParseRequest(utterances)),
                             utterances.size());
}

std::vector<Token> HttpTagger::Tag(std::vector<Token> tokens) const {
  Json req;
  req["tokens"] = Json::array();
  for (const Token &t : tokens) req["tokens"].push_back(t.surface);
  const Json j = ParseBody(PostJson(endpoint_, "/tag", req.dump()), "tag");
  if (!j.is_object() || !j.contains("tags") || !j["tags"].is_array() ||
      j["tags"].size() != tokens.size())
    throw BackendError("tag: expected one tag per token");
  std::vector<Token> local = TagTokens(tokens);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].is_value_anchor) {
      tokens[i].tag = local[i].tag;
      continue;
    }
    const Json &tag = j["tags"][i];
    std::optional<PosTag> parsed;
    if (tag.is_string()) parsed = PosTagFromName(tag.get<std::string>());
    if (!parsed) throw BackendError("tag: unknown tag at position " + std::to_string(i));
    tokens[i].tag = *parsed;
  }
  return tokens;
}

}  // namespace qasynth
