// Copyright 2026 The dpdkit Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DPDKIT_CSV_HPP
#define DPDKIT_CSV_HPP

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace dpdkit::csv {

std::vector<std::string> split(std::string_view line, char sep = ',');

/// Parses a decimal number; throws InputError mentioning `context` on
/// non-numeric or non-finite input.
double parse_double(std::string_view cell, const std::string& context);

long parse_long(std::string_view cell, const std::string& context);

/// Shortest decimal string that round-trips exactly to the same double.
std::string format_double(double v);

/// Plain-text key/value file (one `key=value` per line, '#' comments).
std::map<std::string, std::string> read_kv_file(const std::string& path);
void write_kv_file(const std::string& path,
                   const std::vector<std::pair<std::string, std::string>>& entries);

std::vector<std::string> read_lines(const std::string& path);

}  // namespace dpdkit::csv

#endif  // DPDKIT_CSV_HPP
