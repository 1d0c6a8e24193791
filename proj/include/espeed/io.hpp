#ifndef ESPEED_IO_HPP
#define ESPEED_IO_HPP

#include <filesystem>
#include <string>

#include <json.hpp>

#include "espeed/model.hpp"

namespace espeed {

using json = nlohmann::json;

// {"kind":"rigid"|"moldable"|"dedicated","m":int,"energy":float,"alpha":float,
//  "jobs":[{"id":int,"work":float,"size":int | "delta":int | "fix":[int,...]}]}
// Unknown top-level keys (metadata) are ignored on read.
json instance_to_json(const Instance& inst);
Instance instance_from_json(const json& j);

// {"pieces":[{"job":int,"procs":[int],"start":float,"end":float,"speed":float}]}
json schedule_to_json(const Schedule& sched);
Schedule schedule_from_json(const json& j);

json read_json(const std::filesystem::path& path);
// Writes j with two-space indentation and a trailing newline.
void write_json(const std::filesystem::path& path, const json& j);
void write_text(const std::filesystem::path& path, const std::string& text);

// Rounds to 9 significant digits, used for report output.
double round9(double v);

}  // namespace espeed

#endif
