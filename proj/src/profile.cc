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

#include "qasynth/profile.h"

namespace qasynth {

const std::vector<PipelineProfile> &BuiltinProfiles() {
  static const std::vector<PipelineProfile> kProfiles = [] {
    PipelineProfile schema2qa;
    schema2qa.name = "schema2qa";
    schema2qa.auto_annotate = true;
    schema2qa.loop.rounds = 1;

    PipelineProfile overnight;
    overnight.name = "overnight";
    overnight.auto_annotate = false;
    overnight.loop.rounds = 3;
    return std::vector<PipelineProfile>{schema2qa, overnight};
  }();
  return kProfiles;
}

std::optional<PipelineProfile> FindProfile(std::string_view name) {
  for (const PipelineProfile &p : BuiltinProfiles())
    if (p.name == name) return p;
  return std::nullopt;
}

}  // namespace qasynth
