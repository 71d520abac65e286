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

#ifndef QASYNTH_ERRORS_H_
#define QASYNTH_ERRORS_H_

#include <stdexcept>
#include <string>
#include <vector>

namespace qasynth {

enum class Severity { kError, kWarning, kNote };

const char *SeverityName(Severity s);

// A located message. `path` uses dotted/indexed notation into the input
// document, e.g. "tables[0].attributes[2].values[1]".
struct Diagnostic {
  Severity severity = Severity::kError;
  std::string path;
  std::string message;

  std::string ToString() const;
  bool operator==(const Diagnostic &) const = default;
};

bool HasErrors(const std::vector<Diagnostic> &diagnostics);

// Base class for every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid user input: schema, template library, annotation dump, dataset,
// logical form text. Maps to CLI exit code 1.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string &message,
                           std::vector<Diagnostic> diagnostics = {});
  const std::vector<Diagnostic> &diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

// A remote paraphraser/parser/tagger failed after retries. Maps to CLI exit
// code 2.
class BackendError : public Error {
 public:
  using Error::Error;
};

}  // namespace qasynth

#endif  // QASYNTH_ERRORS_H_
