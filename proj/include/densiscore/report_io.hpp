// Copyright 2026 The densiscore authors
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

#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "densiscore/experiments.hpp"
#include "densiscore/metrics.hpp"

namespace densiscore {

/// Flat row objects: {metric, mode, mean_convention, value, n, ess, bandwidth}
/// plus weight_min/weight_max diagnostics and an error marker when a metric
/// is undefined. Doubles round-trip losslessly.
nlohmann::json report_rows_to_json(const std::vector<ReportRow>& rows);
std::vector<ReportRow> report_rows_from_json(const nlohmann::json& j);

std::string report_rows_to_csv(const std::vector<ReportRow>& rows);

nlohmann::json study_to_json(const StudyResult& result);

/// Tidy CSV: study,dataset_index,metric,mode,mean_convention,value
std::string study_to_csv(const StudyResult& result);

}  // namespace densiscore
