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

#include "densiscore/report_io.hpp"

#include <cstdio>
#include <sstream>

namespace densiscore {

namespace {

Mode mode_from_string(const std::string& s) {
  if (s == "nw") return Mode::nw;
  if (s == "yw") return Mode::yw;
  if (s == "xw") return Mode::xw;
  throw Error("unknown mode: " + s);
}

MeanConvention convention_from_string(const std::string& s) {
  if (s == "weighted") return MeanConvention::weighted;
  if (s == "plain") return MeanConvention::plain;
  throw Error("unknown mean convention: " + s);
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

nlohmann::json report_rows_to_json(const std::vector<ReportRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& row : rows) {
    nlohmann::json j{{"metric", row.metric},
                     {"mode", to_string(row.mode)},
                     {"mean_convention", to_string(row.convention)},
                     {"value", row.value ? nlohmann::json(*row.value) : nlohmann::json()},
                     {"n", row.n},
                     {"ess", row.ess},
                     {"bandwidth", row.bandwidth ? nlohmann::json(*row.bandwidth) : nlohmann::json()},
                     {"weight_min", row.weight_min},
                     {"weight_max", row.weight_max}};
    if (!row.error.empty()) j["error"] = row.error;
    out.push_back(std::move(j));
  }
  return out;
}

std::vector<ReportRow> report_rows_from_json(const nlohmann::json& j) {
  std::vector<ReportRow> rows;
  for (const auto& item : j) {
    ReportRow row;
    row.metric = item.at("metric").get<std::string>();
    row.mode = mode_from_string(item.at("mode").get<std::string>());
    row.convention = convention_from_string(item.at("mean_convention").get<std::string>());
    if (!item.at("value").is_null()) row.value = item.at("value").get<double>();
    row.n = item.at("n").get<Eigen::Index>();
    row.ess = item.at("ess").get<double>();
    if (!item.at("bandwidth").is_null()) row.bandwidth = item.at("bandwidth").get<double>();
    row.weight_min = item.at("weight_min").get<double>();
    row.weight_max = item.at("weight_max").get<double>();
    if (item.contains("error")) row.error = item.at("error").get<std::string>();
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string report_rows_to_csv(const std::vector<ReportRow>& rows) {
  std::ostringstream out;
  out << "metric,mode,mean_convention,value,n,ess,bandwidth,error\n";
  for (const auto& row : rows) {
    out << row.metric << ',' << to_string(row.mode) << ',' << to_string(row.convention) << ','
        << (row.value ? format_double(*row.value) : "") << ',' << row.n << ','
        << format_double(row.ess) << ',' << (row.bandwidth ? format_double(*row.bandwidth) : "")
        << ',' << row.error << '\n';
  }
  return out.str();
}

nlohmann::json study_to_json(const StudyResult& result) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& entry : result.entries) {
    entries.push_back(nlohmann::json{{"index", entry.index},
                                     {"label", entry.label},
                                     {"rows", report_rows_to_json(entry.rows)}});
  }
  nlohmann::json spreads = nlohmann::json::array();
  for (const auto& s : result.spreads) {
    spreads.push_back(nlohmann::json{{"metric", s.metric},
                                     {"mode", to_string(s.mode)},
                                     {"mean_convention", to_string(s.convention)},
                                     {"spread", s.spread}});
  }
  return nlohmann::json{{"study", result.study},
                        {"config", result.config},
                        {"entries", std::move(entries)},
                        {"spreads", std::move(spreads)}};
}

std::string study_to_csv(const StudyResult& result) {
  std::ostringstream out;
  out << "study,dataset_index,metric,mode,mean_convention,value\n";
  for (const auto& entry : result.entries) {
    for (const auto& row : entry.rows) {
      out << result.study << ',' << entry.index << ',' << row.metric << ','
          << to_string(row.mode) << ',' << to_string(row.convention) << ','
          << (row.value ? format_double(*row.value) : "") << '\n';
    }
  }
  return out.str();
}

}  // namespace densiscore
