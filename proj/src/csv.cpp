// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The celldisc authors

#include "celldisc/csv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "celldisc/common.hpp"

namespace celldisc {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

CsvTable::CsvTable(std::vector<std::string> header, std::string config_hash) : hash_(std::move(config_hash)) {
  header_.push_back("config_hash");
  header_.insert(header_.end(), header.begin(), header.end());
}

void CsvTable::add_row(std::vector<std::string> fields) {
  require(fields.size() + 1 == header_.size(), ErrorCode::InvalidArgument, "row width differs from the header");
  fields.insert(fields.begin(), hash_);
  rows_.push_back(std::move(fields));
}

void CsvTable::append(const CsvTable& other) {
  require(other.header_ == header_, ErrorCode::InvalidArgument, "tables have different headers");
  rows_.insert(rows_.end(), other.rows_.begin(), other.rows_.end());
}

void CsvTable::write(std::ostream& out) const {
  auto line = [&](const std::vector<std::string>& f) {
    for (std::size_t k = 0; k < f.size(); ++k) out << (k ? "," : "") << csv_escape(f[k]);
    out << "\r\n";
  };
  line(header_);
  for (const auto& r : rows_) line(r);
}

std::size_t CsvTable::column(const std::string& name) const {
  const auto it = std::find(header_.begin(), header_.end(), name);
  require(it != header_.end(), ErrorCode::InvalidArgument, "no column named " + name);
  return static_cast<std::size_t>(it - header_.begin());
}

}  // namespace celldisc
