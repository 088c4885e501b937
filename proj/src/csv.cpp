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

#include "risran/csv.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace risran
{

std::string format_number(double value)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", value);
    return buf;
}

CsvWriter::CsvWriter(const std::filesystem::path &path, const std::vector<std::string> &header)
    : path_(path), out_(path, std::ios::binary | std::ios::trunc), columns_(header.size())
{
    if (!out_)
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    row(header);
}

void CsvWriter::row(const std::vector<std::string> &fields)
{
    if (fields.size() != columns_)
        throw std::logic_error("CSV row width mismatch for '" + path_.string() + "'");
    for (std::size_t i = 0; i < fields.size(); ++i)
    {
        if (i)
            out_ << ',';
        out_ << fields[i];
    }
    out_ << '\n';
    if (!out_)
        throw std::runtime_error("write failed on '" + path_.string() + "'");
}

void CsvWriter::close()
{
    out_.close();
    if (out_.fail())
        throw std::runtime_error("close failed on '" + path_.string() + "'");
}

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open '" + path.string() + "' for reading");
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line))
    {
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ','))
            fields.push_back(field);
        if (!line.empty() && line.back() == ',')
            fields.emplace_back();
        rows.push_back(std::move(fields));
    }
    return rows;
}

} // namespace risran
