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

#include "densiscore/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace densiscore {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& raw, size_t line_no, const std::string& name) {
  const std::string s = trim(raw);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw CsvError("line " + std::to_string(line_no) + ", column '" + name +
                   "': not a number: '" + s + "'");
  }
  return value;
}

}  // namespace

bool CsvTable::has_column(const std::string& name) const {
  for (const auto& h : header) {
    if (h == name) return true;
  }
  return false;
}

const Eigen::VectorXd& CsvTable::column(const std::string& name) const {
  for (size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return columns[i];
  }
  throw CsvError("missing column '" + name + "'");
}

Eigen::MatrixXd CsvTable::x_matrix() const {
  std::vector<const Eigen::VectorXd*> xcols;
  for (int d = 0;; ++d) {
    const std::string name = "x" + std::to_string(d);
    if (!has_column(name)) break;
    xcols.push_back(&column(name));
  }
  Eigen::MatrixXd x(rows(), Eigen::Index(xcols.size()));
  for (size_t j = 0; j < xcols.size(); ++j) x.col(Eigen::Index(j)) = *xcols[j];
  return x;
}

CsvTable parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || trim(line).empty())
    throw CsvError("empty input: expected a header row");

  CsvTable table;
  for (const auto& h : split_line(line)) table.header.push_back(trim(h));

  std::vector<std::vector<double>> data(table.header.size());
  size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_line(line);
    if (fields.size() != table.header.size()) {
      throw CsvError("line " + std::to_string(line_no) + ": expected " +
                     std::to_string(table.header.size()) + " fields, got " +
                     std::to_string(fields.size()));
    }
    for (size_t j = 0; j < fields.size(); ++j) {
      data[j].push_back(parse_number(fields[j], line_no, table.header[j]));
    }
  }
  if (data.empty() || data.front().empty()) throw CsvError("no data rows");

  for (auto& col : data) {
    table.columns.push_back(Eigen::Map<Eigen::VectorXd>(col.data(), Eigen::Index(col.size())));
  }
  return table;
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CsvError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str());
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << content;
}

}  // namespace densiscore
