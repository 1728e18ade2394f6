#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "freezetag/instance.hpp"
#include "freezetag/wakeup_tree.hpp"

namespace freezetag::io {

using json = nlohmann::json;

json instance_to_json(const Instance& instance);
// Throws ValidationError with the offending field for schema problems.
Instance instance_from_json(const json& document);

// Parses instance text; malformed JSON is reported with line and column.
Instance parse_instance_text(const std::string& text);
Instance parse_instance(const std::string& path);
void write_instance(const std::string& path, const Instance& instance);

json schedule_to_json(const Schedule& schedule, std::size_t robots);
Schedule schedule_from_json(const json& document);
// Reads a schedule file and rebuilds its wake-up tree (robot count taken from the file).
WakeUpTree load_schedule_tree(const std::string& path);

// 64-bit FNV-1a of the canonical instance serialization, as 16 hex digits.
std::string instance_digest(const Instance& instance);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace freezetag::io
