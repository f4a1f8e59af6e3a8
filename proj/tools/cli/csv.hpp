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

#pragma once

#include <cstdio>
#include <optional>
#include <string>
#include <vector>

namespace lindsieve::cli {

// A CSV cell: a number written with 17 significant digits, or an empty field.
using Cell = std::optional<double>;

std::string format_number(double v);

class CsvWriter {
 public:
  // Writes to stdout when path is empty.
  explicit CsvWriter(const std::string& path);
  ~CsvWriter();
  CsvWriter(const CsvWriter&) = delete;
  CsvWriter& operator=(const CsvWriter&) = delete;

  void header(const std::vector<std::string>& columns);
  void row(const std::vector<Cell>& cells);
  void comment(const std::string& line);

 private:
  void put(const std::string& s);

  std::FILE* file_ = nullptr;
  bool owned_ = false;
  std::string path_;
};

}  // namespace lindsieve::cli
