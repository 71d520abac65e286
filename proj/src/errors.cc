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

#include "qasynth/errors.h"

#include <algorithm>

namespace qasynth {

const char *SeverityName(Severity s) {
  switch (s) {
    case Severity::kError: return "error";
    case Severity::kWarning: return "warning";
    case Severity::kNote: return "note";
  }
  return "error";
}

std::string Diagnostic::ToString() const {
  std::string out = SeverityName(severity);
  out += ": ";
  if (!path.empty()) {
    out += path;
    out += ": ";
  }
  out += message;
  return out;
}

bool HasErrors(const std::vector<Diagnostic> &diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic &d) {
                       return d.severity == Severity::kError;
                     });
}

namespace {

std::string Summarize(const std::string &message,
                      const std::vector<Diagnostic> &diagnostics) {
  std::string out = message;
  for (const Diagnostic &d : diagnostics) {
    if (d.severity != Severity::kError) continue;
    out += "\n  ";
    out += d.ToString();
  }
  return out;
}

}  // namespace

ValidationError::ValidationError(const std::string &message,
                                 std::vector<Diagnostic> diagnostics)
    : Error(Summarize(message, diagnostics)),
      diagnostics_(std::move(diagnostics)) {}

}  // namespace qasynth
