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

#ifndef QASYNTH_PROFILE_H_
#define QASYNTH_PROFILE_H_

// Named pipeline presets. "schema2qa" runs a single paraphrase round over
// annotated grammars; "overnight" runs three rounds over canonical-only
// annotations.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qasynth/auto_annotator.h"
#include "qasynth/filter.h"
#include "qasynth/paraphrase.h"
#include "qasynth/synthesizer.h"

namespace qasynth {

struct PipelineProfile {
  std::string name;
  bool auto_annotate = true;
  AnnotatorOptions annotator;
  SynthesisOptions synthesis;
  ParaphraseConfig paraphrase;
  LoopOptions loop;
};

const std::vector<PipelineProfile> &BuiltinProfiles();
std::optional<PipelineProfile> FindProfile(std::string_view name);

}  // namespace qasynth

#endif  // QASYNTH_PROFILE_H_
