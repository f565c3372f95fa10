// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The celldisc authors

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace celldisc {

/// Nine significant digits, "nan"/"inf" spelled out.
std::string format_double(double x);

/// RFC 4180 quoting: fields with a comma, quote, CR or LF are quoted, quotes doubled.
std::string csv_escape(const std::string& field);

/// A table whose first column is always the config hash.
class CsvTable {
 public:
  CsvTable(std::vector<std::string> header, std::string config_hash);

  const std::vector<std::string>& header() const { return header_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }
  const std::string& config_hash() const { return hash_; }

  /// `fields` excludes the hash column.
  void add_row(std::vector<std::string> fields);
  void append(const CsvTable& other);

  /// CRLF line endings as in RFC 4180.
  void write(std::ostream& out) const;

  /// Column position by header name (hash column is 0).
  std::size_t column(const std::string& name) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
  std::string hash_;
};

}  // namespace celldisc
