// Copyright (c) 2026 The slrplan Authors
// All rights reserved.
//
// This source code is licensed under the Apache 2.0 license found in the
// LICENSE file in the root directory of this source tree.
#ifndef SLRPLAN_JSON_IO_HPP
#define SLRPLAN_JSON_IO_HPP

#include <json.hpp>

#include "slrplan/corpus.hpp"
#include "slrplan/evaluation.hpp"
#include "slrplan/similarity.hpp"

namespace slrplan {

// Key order is part of the output format, hence ordered_json throughout.
using Json = nlohmann::ordered_json;

Json to_json(const PipelineSetup& setup);
PipelineSetup pipeline_setup_from_json(const Json& j);

Json to_json(const SlrRecord& record);

// Canonical ranked-list document: {query: {mode, model, digest}, results, skipped}.
Json to_json(const RankedList& ranked);
Json results_to_json(const std::vector<SimilarityResult>& results);
Json skipped_to_json(const std::vector<SkippedDocument>& skipped);

Json to_json(const EvaluationReport& report);

// dump() with two-space indentation and a trailing newline.
std::string canonical_text(const Json& j);

}  // namespace slrplan

#endif  // SLRPLAN_JSON_IO_HPP
