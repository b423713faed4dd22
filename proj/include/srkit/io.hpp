#pragma once

#include <string>
#include <vector>

#include "srkit/core.hpp"

namespace srkit {

// Text format: n on the first line, then one row of n-1 1-based ids per
// agent. '#' lines and blank lines are skipped.
Instance parse_instance(const std::string& text);
std::string serialize_instance(const Instance& inst);

Instance read_instance_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

// JSON with 1-based ids.
std::string matching_to_json(const Matching& m);
Matching matching_from_json(const std::string& text);
std::string partition_to_json(const Partition& p);
Partition partition_from_json(const std::string& text);

// "matching" or "partition", judged by the keys present.
std::string json_kind(const std::string& text);

} // namespace srkit
