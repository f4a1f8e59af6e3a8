// Copyright 2026 The lindsieve Authors
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

#include "csv.hpp"

#include <cmath>

#include "config.hpp"

namespace lindsieve::cli {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(const std::string& path) : path_(path) {
  if (path.empty()) {
    file_ = stdout;
    return;
  }
  file_ = std::fopen(path.c_str(), "w");
  if (!file_) throw CliError(kExitIo, "cannot open output file '" + path + "' for writing");
  owned_ = true;
}

CsvWriter::~CsvWriter() {
  if (owned_ && file_) std::fclose(file_);
}

void CsvWriter::put(const std::string& s) {
  if (std::fputs(s.c_str(), file_) < 0 || std::fflush(file_) != 0)
    throw CliError(kExitIo, "write failed on '" + (path_.empty() ? std::string("stdout") : path_) + "'");
}

void CsvWriter::header(const std::vector<std::string>& columns) {
  std::string line;
  for (std::size_t i = 0; i < columns.size(); ++i) line += (i ? "," : "") + columns[i];
  put(line + "\n");
}

void CsvWriter::row(const std::vector<Cell>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    if (cells[i]) line += format_number(*cells[i]);
  }
  put(line + "\n");
}

void CsvWriter::comment(const std::string& line) { put("# " + line + "\n"); }

}  // namespace lindsieve::cli
