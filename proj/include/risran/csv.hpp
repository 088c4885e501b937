// SPDX-License-Identifier: Apache-2.0
//
// risran: system-level simulator for RIS-assisted Open RAN slicing
// Copyright (C) 2026 The risran authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace risran
{

// Six significant digits, "%.6g".
std::string format_number(double value);

// Writes comma-separated rows. The header is emitted on construction.
// I/O failures raise std::runtime_error carrying the path.
class CsvWriter
{
  public:
    CsvWriter(const std::filesystem::path &path, const std::vector<std::string> &header);

    void row(const std::vector<std::string> &fields);
    void close();

  private:
    std::filesystem::path path_;
    std::ofstream out_;
    std::size_t columns_;
};

// Reads a simple (unquoted) CSV file. First row is the header.
std::vector<std::vector<std::string>> read_csv(const std::filesystem::path &path);

} // namespace risran
