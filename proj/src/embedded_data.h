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

#ifndef QASYNTH_SRC_EMBEDDED_DATA_H_
#define QASYNTH_SRC_EMBEDDED_DATA_H_

#include <string_view>

namespace qasynth::embedded {

std::string_view starter_library();
std::string_view default_lexicon();
std::string_view default_mock_table();

}  // namespace qasynth::embedded

#endif  // QASYNTH_SRC_EMBEDDED_DATA_H_
