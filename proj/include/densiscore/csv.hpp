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

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "densiscore/errors.hpp"

namespace densiscore {

/// Numeric CSV table: header row required, comma separator, decimal point.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<Eigen::VectorXd> columns;

  Eigen::Index rows() const { return columns.empty() ? 0 : columns.front().size(); }
  bool has_column(const std::string& name) const;
  const Eigen::VectorXd& column(const std::string& name) const;  // throws CsvError
  /// Columns named x0, x1, ... assembled into an n x d matrix; d may be 0.
  Eigen::MatrixXd x_matrix() const;
};

CsvTable read_csv(const std::string& path);
CsvTable parse_csv(const std::string& text);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace densiscore
