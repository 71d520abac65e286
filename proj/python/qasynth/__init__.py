# Copyright 2026 The qasynth Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Schema-driven question-answering dataset synthesis.

Thin wrappers over the native core. Documents are exchanged as text
(schema JSON, annotation JSONL, dataset TSV); helpers here decode them.
"""

import json

from qasynth import _core
from qasynth._core import BackendError, ValidationError

__all__ = [
    "BackendError",
    "ValidationError",
    "annotate",
    "canonical_lf",
    "dataset_stats",
    "distinct_n",
    "mock_paraphrase",
    "parse",
    "postprocess_placeholders",
    "preprocess_placeholders",
    "read_annotations",
    "read_dataset",
    "starter_library",
    "stem",
    "synthesize",
    "tokenize",
    "validate_library",
    "validate_schema",
]

annotate = _core.annotate
synthesize = _core.synthesize
parse = _core.parse
canonical_lf = _core.canonical_lf
distinct_n = _core.distinct_n
tokenize = _core.tokenize
stem = _core.stem
mock_paraphrase = _core.mock_paraphrase
preprocess_placeholders = _core.preprocess_placeholders
postprocess_placeholders = _core.postprocess_placeholders
validate_schema = _core.validate_schema
validate_library = _core.validate_library
starter_library = _core.starter_library


def read_annotations(jsonl):
    """Decodes an annotation dump into a list of dicts."""
    return [json.loads(line) for line in jsonl.splitlines() if line.strip()]


def read_dataset(tsv):
    """Decodes a dataset into dicts with id, utterance, lf, provenance, round."""
    out = []
    for line in tsv.splitlines():
        if not line:
            continue
        ident, utterance, lf, provenance, rnd = line.split("\t")
        out.append({"id": ident, "utterance": utterance, "lf": lf,
                    "provenance": provenance, "round": int(rnd)})
    return out


def dataset_stats(tsv):
    """Statistics report for a dataset as a dict."""
    return json.loads(_core.dataset_stats(tsv))
